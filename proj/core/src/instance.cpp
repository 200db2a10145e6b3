#include "equisched/instance.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace equisched {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::General: return "GENERAL";
    case Variant::Esup: return "ESUP";
    case Variant::Essd: return "ESSD";
    case Variant::Espc: return "ESPC";
  }
  throw std::logic_error("unknown variant");
}

Variant variant_from_string(const std::string& s) {
  if (s == "GENERAL") return Variant::General;
  if (s == "ESUP") return Variant::Esup;
  if (s == "ESSD") return Variant::Essd;
  if (s == "ESPC") return Variant::Espc;
  throw std::invalid_argument("unknown variant: " + s);
}

void Dag::normalize() {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

std::vector<int> topological_order(const Dag& dag, int node_count) {
  std::vector<std::vector<int>> succ(node_count);
  std::vector<int> indeg(node_count, 0);
  for (auto [a, b] : dag.arcs) {
    if (a < 0 || a >= node_count || b < 0 || b >= node_count)
      throw std::invalid_argument("dag arc endpoint out of range");
    if (a == b) throw std::invalid_argument("dag has a self-loop");
    succ[a].push_back(b);
    ++indeg[b];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < node_count; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(node_count);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != node_count)
    throw std::invalid_argument("precedence graph has a cycle");
  return order;
}

bool is_acyclic(const Dag& dag, int node_count) {
  try {
    topological_order(dag, node_count);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

bool Day::has_uniform_deadline() const {
  for (const Job& j : jobs)
    if (j.deadline != jobs.front().deadline) return false;
  return true;
}

int Day::common_deadline() const {
  if (jobs.empty()) throw std::invalid_argument("day has no jobs");
  if (!has_uniform_deadline())
    throw std::invalid_argument("day deadlines are not uniform");
  return jobs.front().deadline;
}

int Day::max_deadline() const {
  int d = 0;
  for (const Job& j : jobs) d = std::max(d, j.deadline);
  return d;
}

void Instance::validate() const {
  if (n < 1) throw std::invalid_argument("instance needs at least one client");
  if (days.empty()) throw std::invalid_argument("instance needs at least one day");
  if (k < 0 || k > m()) throw std::invalid_argument("k must lie in {0..m}");
  for (int j = 0; j < m(); ++j) {
    const Day& day = days[j];
    const std::string where = "day " + std::to_string(j + 1) + ": ";
    if (static_cast<int>(day.jobs.size()) != n)
      throw std::invalid_argument(where + "expected one job per client");
    if (day.machines < 1)
      throw std::invalid_argument(where + "machine count must be positive");
    for (const Job& job : day.jobs) {
      if (job.processing < 1)
        throw std::invalid_argument(where + "processing times must be positive");
      if (job.deadline < 1)
        throw std::invalid_argument(where + "deadlines must be positive");
      if (job.release < 0 || job.release >= job.deadline)
        throw std::invalid_argument(where + "release dates must satisfy 0 <= r < d");
    }
    if (day.precedence) {
      if (variant != Variant::Espc)
        throw std::invalid_argument(where + "precedence DAGs are only valid for ESPC");
      if (!is_acyclic(*day.precedence, n))
        throw std::invalid_argument(where + "precedence graph has a cycle");
    }
    switch (variant) {
      case Variant::General:
        break;
      case Variant::Esup:
        for (const Job& job : day.jobs)
          if (job.processing != 1)
            throw std::invalid_argument(where + "ESUP requires unit processing times");
        break;
      case Variant::Essd:
        if (!day.has_uniform_deadline())
          throw std::invalid_argument(where + "ESSD requires a single deadline per day");
        for (const Job& job : day.jobs)
          if (job.release != 0)
            throw std::invalid_argument(where + "ESSD does not support release dates");
        if (day.machines != 1)
          throw std::invalid_argument(where + "ESSD does not support parallel machines");
        break;
      case Variant::Espc:
        if (!day.precedence)
          throw std::invalid_argument(where + "ESPC requires a precedence DAG");
        if (!day.has_uniform_deadline())
          throw std::invalid_argument(where + "ESPC requires a single deadline per day");
        for (const Job& job : day.jobs) {
          if (job.processing != 1)
            throw std::invalid_argument(where + "ESPC requires unit processing times");
          if (job.release != 0)
            throw std::invalid_argument(where + "ESPC does not support release dates");
        }
        if (day.machines != 1)
          throw std::invalid_argument(where + "ESPC does not support parallel machines");
        break;
    }
  }
  if (starred) {
    for (int j = 1; j < m(); ++j)
      if (!(days[j] == days.front()))
        throw std::invalid_argument("starred instance has differing days");
  }
}

void Instance::normalize() {
  if (variant == Variant::Esup) {
    for (Day& day : days)
      for (Job& job : day.jobs)
        job.deadline = std::min(job.deadline, job.release + n);
  } else if (variant == Variant::Espc) {
    for (Day& day : days)
      for (Job& job : day.jobs) job.deadline = std::min(job.deadline, n);
  }
  validate();
}

}  // namespace equisched
