#include "equisched/feasibility.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "equisched/bipartite.hpp"

namespace equisched {

namespace {

void check_clients(const Day& day, const std::vector<int>& clients) {
  const int n = static_cast<int>(day.jobs.size());
  for (size_t idx = 0; idx < clients.size(); ++idx) {
    int c = clients[idx];
    if (c < 0 || c >= n) throw std::invalid_argument("client index out of range");
    if (idx > 0 && clients[idx] <= clients[idx - 1])
      throw std::invalid_argument("client set must be strictly increasing");
  }
}

// Esup slot feasibility. Fast path: with no release dates on one machine,
// sorting members by deadline ascending and checking that the r-th member
// has deadline >= r decides feasibility. Otherwise a bipartite matching of
// members to (time, machine) slots is computed.
bool esup_realizable(const Day& day, const std::vector<int>& clients) {
  bool plain = day.machines == 1;
  for (int c : clients) plain = plain && day.jobs[c].release == 0;
  if (plain) {
    std::vector<int> deadlines;
    deadlines.reserve(clients.size());
    for (int c : clients) deadlines.push_back(day.jobs[c].deadline);
    std::sort(deadlines.begin(), deadlines.end());
    for (size_t r = 0; r < deadlines.size(); ++r)
      if (deadlines[r] < static_cast<int>(r) + 1) return false;
    return true;
  }
  int max_d = 0;
  for (int c : clients) max_d = std::max(max_d, day.jobs[c].deadline);
  // right vertex for time t on machine x: (t - 1) * machines + x
  std::vector<std::vector<int>> adj(clients.size());
  for (size_t i = 0; i < clients.size(); ++i) {
    const Job& job = day.jobs[clients[i]];
    for (int t = job.release + 1; t <= job.deadline; ++t)
      for (int x = 0; x < day.machines; ++x)
        adj[i].push_back((t - 1) * day.machines + x);
  }
  BipartiteMatching matching = hopcroft_karp_matching(adj, max_d * day.machines);
  return matching.size == static_cast<int>(clients.size());
}

bool espc_closed(const Dag& dag, const std::vector<int>& clients) {
  auto in_set = [&](int c) {
    return std::binary_search(clients.begin(), clients.end(), c);
  };
  for (auto [a, b] : dag.arcs)
    if (in_set(b) && !in_set(a)) return false;
  return true;
}

// Exhaustive ordering search for a prescribed set on a General day. Jobs
// outside the set are pushed after the set, which can only help members.
bool general_search(const Day& day, const std::vector<int>& clients,
                    std::vector<int>* witness_order) {
  std::vector<int> remaining(clients);
  std::vector<int> chosen;
  chosen.reserve(clients.size());
  std::function<bool(int)> rec = [&](int finish_time) -> bool {
    if (remaining.empty()) {
      if (witness_order) *witness_order = chosen;
      return true;
    }
    for (size_t i = 0; i < remaining.size(); ++i) {
      int c = remaining[i];
      const Job& job = day.jobs[c];
      int completes = std::max(finish_time, job.release) + job.processing;
      if (completes > job.deadline) continue;
      remaining.erase(remaining.begin() + i);
      chosen.push_back(c);
      if (rec(completes)) return true;
      chosen.pop_back();
      remaining.insert(remaining.begin() + i, c);
    }
    return false;
  };
  return rec(0);
}

std::vector<int> set_complement(int n, const std::vector<int>& clients) {
  std::vector<int> rest;
  rest.reserve(n - clients.size());
  size_t pos = 0;
  for (int c = 0; c < n; ++c) {
    if (pos < clients.size() && clients[pos] == c) {
      ++pos;
    } else {
      rest.push_back(c);
    }
  }
  return rest;
}

}  // namespace

bool realizable_set(const Day& day, Variant variant, const std::vector<int>& clients,
                    const Caps& caps) {
  check_clients(day, clients);
  if (clients.empty()) return true;
  switch (variant) {
    case Variant::Essd: {
      long long total = 0;
      for (int c : clients) total += day.jobs[c].processing;
      return total <= day.common_deadline();
    }
    case Variant::Esup:
      return esup_realizable(day, clients);
    case Variant::Espc: {
      if (!day.precedence)
        throw std::invalid_argument("ESPC day is missing its precedence DAG");
      if (static_cast<int>(clients.size()) > day.common_deadline()) return false;
      return espc_closed(*day.precedence, clients);
    }
    case Variant::General: {
      if (static_cast<int>(clients.size()) > caps.general_permutation_clients)
        throw CapExceeded("GENERAL-day set too large for exhaustive search");
      return general_search(day, clients, nullptr);
    }
  }
  throw std::logic_error("unknown variant");
}

std::vector<int> completion_times(const Day& day, const std::vector<int>& order) {
  const int n = static_cast<int>(day.jobs.size());
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("order must contain every client exactly once");
  std::vector<int> completion(n, 0);
  // machine id -> time the machine becomes free; earliest machine wins,
  // ties broken by machine id via the pair ordering
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                      std::greater<>>
      machines;
  for (int x = 0; x < day.machines; ++x) machines.emplace(0, x);
  std::vector<char> seen(n, 0);
  for (int c : order) {
    if (c < 0 || c >= n || seen[c])
      throw std::invalid_argument("order must contain every client exactly once");
    seen[c] = 1;
    auto [free_at, x] = machines.top();
    machines.pop();
    const Job& job = day.jobs[c];
    int done = std::max(free_at, job.release) + job.processing;
    completion[c] = done;
    machines.emplace(done, x);
  }
  return completion;
}

std::vector<int> ancestor_closure(const Dag& dag, int n, const std::vector<int>& clients) {
  std::vector<std::vector<int>> pred(n);
  for (auto [a, b] : dag.arcs) pred[b].push_back(a);
  std::vector<char> in_set(n, 0);
  std::vector<int> stack(clients);
  for (int c : clients) in_set[c] = 1;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int p : pred[c]) {
      if (!in_set[p]) {
        in_set[p] = 1;
        stack.push_back(p);
      }
    }
  }
  std::vector<int> closed;
  for (int c = 0; c < n; ++c)
    if (in_set[c]) closed.push_back(c);
  return closed;
}

std::vector<int> canonical_permutation(const Day& day, Variant variant,
                                       const std::vector<int>& clients,
                                       const Caps& caps) {
  check_clients(day, clients);
  const int n = static_cast<int>(day.jobs.size());
  std::vector<int> order;
  order.reserve(n);
  switch (variant) {
    case Variant::Essd: {
      if (!realizable_set(day, variant, clients, caps))
        throw std::invalid_argument("set is not realizable on this day");
      order = clients;  // members in input order, total fits the deadline
      break;
    }
    case Variant::Esup: {
      if (!realizable_set(day, variant, clients, caps))
        throw std::invalid_argument("set is not realizable on this day");
      // Earliest-deadline-first over released members, slot by slot.
      std::vector<int> pending(clients);
      std::vector<long long> machine_free(day.machines, 0);
      while (!pending.empty()) {
        // next slot start: earliest machine availability, but no earlier
        // than the earliest release among pending members
        long long start = *std::min_element(machine_free.begin(), machine_free.end());
        long long min_release = day.jobs[pending.front()].release;
        for (int c : pending)
          min_release = std::min<long long>(min_release, day.jobs[c].release);
        start = std::max(start, min_release);
        int pick = -1;
        for (size_t i = 0; i < pending.size(); ++i) {
          int c = pending[i];
          if (day.jobs[c].release > start) continue;
          if (pick < 0 || day.jobs[c].deadline < day.jobs[pick].deadline) pick = c;
        }
        auto it = std::min_element(machine_free.begin(), machine_free.end());
        *it = start + 1;
        order.push_back(pick);
        pending.erase(std::find(pending.begin(), pending.end(), pick));
      }
      break;
    }
    case Variant::Espc: {
      if (!realizable_set(day, variant, clients, caps))
        throw std::invalid_argument("set is not realizable on this day");
      // Kahn's algorithm preferring set members; the set is closed, so all
      // members can be emitted before any non-member.
      std::vector<std::vector<int>> succ(n);
      std::vector<int> indeg(n, 0);
      for (auto [a, b] : day.precedence->arcs) {
        succ[a].push_back(b);
        ++indeg[b];
      }
      std::vector<char> member(n, 0);
      for (int c : clients) member[c] = 1;
      auto cmp = [&](int a, int b) {
        if (member[a] != member[b]) return member[a] < member[b];  // members first
        return a > b;
      };
      std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
      for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
      while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int w : succ[v])
          if (--indeg[w] == 0) ready.push(w);
      }
      break;
    }
    case Variant::General: {
      if (static_cast<int>(clients.size()) > caps.general_permutation_clients)
        throw CapExceeded("GENERAL-day set too large for exhaustive search");
      if (!general_search(day, clients, &order))
        throw std::invalid_argument("set is not realizable on this day");
      break;
    }
  }
  for (int c : set_complement(n, clients))
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
  return order;
}

EquityReport verify_solution(const Instance& inst, const Solution& sol, const Caps& caps) {
  if (static_cast<int>(sol.satisfied.size()) != inst.m())
    throw std::invalid_argument("solution must contain one satisfied set per day");
  EquityReport report;
  report.satisfied_days.assign(inst.n, 0);
  for (int j = 0; j < inst.m(); ++j) {
    std::vector<int> set(sol.satisfied[j]);
    std::sort(set.begin(), set.end());
    bool ok = std::adjacent_find(set.begin(), set.end()) == set.end();
    for (int c : set) ok = ok && c >= 0 && c < inst.n;
    ok = ok && realizable_set(inst.days[j], inst.variant, set, caps);
    if (!ok) {
      report.invalid_days.push_back(j);
      continue;
    }
    for (int c : set) ++report.satisfied_days[c];
  }
  report.min_count = *std::min_element(report.satisfied_days.begin(),
                                       report.satisfied_days.end());
  report.k_equitable = report.valid() && report.min_count >= inst.k;
  return report;
}

std::vector<int> moore_hodgson(const std::vector<std::pair<int, int>>& jobs) {
  const int n = static_cast<int>(jobs.size());
  std::vector<int> by_deadline(n);
  for (int i = 0; i < n; ++i) by_deadline[i] = i;
  std::stable_sort(by_deadline.begin(), by_deadline.end(),
                   [&](int a, int b) { return jobs[a].second < jobs[b].second; });
  // max-heap over (processing, index): evict the longest job on overflow
  std::priority_queue<std::pair<int, int>> scheduled;
  long long elapsed = 0;
  for (int i : by_deadline) {
    if (jobs[i].first < 1)
      throw std::invalid_argument("processing times must be positive");
    scheduled.emplace(jobs[i].first, i);
    elapsed += jobs[i].first;
    if (elapsed > jobs[i].second) {
      elapsed -= scheduled.top().first;
      scheduled.pop();
    }
  }
  std::vector<int> result;
  result.reserve(scheduled.size());
  while (!scheduled.empty()) {
    result.push_back(scheduled.top().second);
    scheduled.pop();
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace equisched
