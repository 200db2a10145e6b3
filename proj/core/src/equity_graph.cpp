#include "equisched/equity_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace equisched {

EquityGraph build_equity_graph(const Instance& inst, int k) {
  if (inst.variant != Variant::Esup)
    throw std::invalid_argument("equity graph requires an ESUP instance");
  if (k < 0 || k > inst.m()) throw std::invalid_argument("k must lie in {0..m}");
  for (const Day& day : inst.days)
    for (const Job& job : day.jobs)
      if (job.processing != 1)
        throw std::invalid_argument("equity graph requires unit processing times");

  EquityGraph g;
  g.n = inst.n;
  g.m = inst.m();
  g.k = k;
  // slot vertex lookup: per day, (machine, time) -> vertex id
  std::vector<std::vector<int>> slot_id(g.m);
  for (int j = 0; j < g.m; ++j) {
    const Day& day = inst.days[j];
    const int d_star = day.max_deadline();
    slot_id[j].assign(day.machines * d_star, -1);
    for (int x = 0; x < day.machines; ++x) {
      for (int t = 1; t <= d_star; ++t) {
        slot_id[j][x * d_star + (t - 1)] = static_cast<int>(g.slots.size());
        g.slots.push_back({j, t, x});
      }
    }
  }
  g.adj.assign(g.left_count(), {});
  g.window.assign(g.left_count(), {0, 0});
  for (int j = 0; j < g.m; ++j) {
    const Day& day = inst.days[j];
    const int d_star = day.max_deadline();
    for (int i = 0; i < g.n; ++i) {
      const Job& job = day.jobs[i];
      const int left = g.left_of(i, j);
      g.window[left] = {job.release, job.deadline};
      std::vector<int>& edges = g.adj[left];
      for (int t = job.release + 1; t <= job.deadline; ++t)
        for (int x = 0; x < day.machines; ++x)
          edges.push_back(slot_id[j][x * d_star + (t - 1)]);
      for (int ord = 0; ord < g.m - k; ++ord) edges.push_back(g.miss_vertex(i, ord));
    }
  }
  return g;
}

BipartiteMatching hopcroft_karp(const EquityGraph& graph) {
  return hopcroft_karp_matching(graph.adj, graph.right_count());
}

void compact_slots(const EquityGraph& graph, BipartiteMatching& matching) {
  size_t pos = 0;
  while (pos < graph.slots.size()) {
    // slots of one (day, machine) run are contiguous with ascending times
    size_t end = pos + 1;
    while (end < graph.slots.size() &&
           graph.slots[end].day == graph.slots[pos].day &&
           graph.slots[end].machine == graph.slots[pos].machine)
      ++end;
    for (size_t a = pos; a < end; ++a) {
      if (matching.right_match[a] >= 0) continue;
      const int t = graph.slots[a].time;
      for (size_t b = a + 1; b < end; ++b) {
        int left = matching.right_match[b];
        if (left < 0) continue;
        if (graph.window[left].first >= t) continue;  // released too late for t
        matching.right_match[a] = left;
        matching.left_match[left] = static_cast<int>(a);
        matching.right_match[b] = -1;
        break;
      }
    }
    pos = end;
  }
}

std::optional<Solution> solve_esup(const Instance& inst) {
  EquityGraph graph = build_equity_graph(inst, inst.k);
  BipartiteMatching matching = hopcroft_karp(graph);
  if (matching.size != graph.left_count()) return std::nullopt;
  compact_slots(graph, matching);
  Solution sol;
  sol.satisfied.assign(inst.m(), {});
  sol.slots.emplace(inst.m());
  for (int j = 0; j < inst.m(); ++j) {
    for (int i = 0; i < inst.n; ++i) {
      int right = matching.left_match[graph.left_of(i, j)];
      if (right >= 0 && graph.is_slot(right)) {
        const EquityGraph::Slot& slot = graph.slots[right];
        sol.satisfied[j].push_back(i);
        (*sol.slots)[j].push_back({i, slot.time, slot.machine});
      }
    }
  }
  return sol;
}

void attach_esup_slots(const Instance& inst, Solution& sol) {
  if (inst.variant != Variant::Esup)
    throw std::invalid_argument("slot derivation requires an ESUP instance");
  if (static_cast<int>(sol.satisfied.size()) != inst.m())
    throw std::invalid_argument("solution must cover every day");
  sol.slots.emplace(inst.m());
  for (int j = 0; j < inst.m(); ++j) {
    const Day& day = inst.days[j];
    std::vector<int> pending(sol.satisfied[j]);
    std::sort(pending.begin(), pending.end());
    // machines become free at time 0; each unit job occupies one slot
    std::vector<int> machine_free(day.machines, 0);
    while (!pending.empty()) {
      int x = static_cast<int>(std::min_element(machine_free.begin(), machine_free.end()) -
                               machine_free.begin());
      int start = machine_free[x];
      int min_release = day.jobs[pending.front()].release;
      for (int c : pending) min_release = std::min(min_release, day.jobs[c].release);
      start = std::max(start, min_release);
      int pick = -1;
      for (int c : pending) {
        if (day.jobs[c].release > start) continue;
        if (pick < 0 || day.jobs[c].deadline < day.jobs[pick].deadline) pick = c;
      }
      int done = start + 1;
      if (done > day.jobs[pick].deadline)
        throw std::invalid_argument("satisfied set is not realizable on day " +
                                    std::to_string(j + 1));
      machine_free[x] = done;
      (*sol.slots)[j].push_back({pick, done, x});
      pending.erase(std::find(pending.begin(), pending.end(), pick));
    }
    std::sort((*sol.slots)[j].begin(), (*sol.slots)[j].end(),
              [](const SlotAssignment& a, const SlotAssignment& b) {
                return a.client < b.client;
              });
  }
}

BipartiteMatching matching_from_solution(const EquityGraph& graph, const Solution& sol) {
  if (static_cast<int>(sol.satisfied.size()) != graph.m)
    throw std::invalid_argument("solution must cover every day");
  if (!sol.slots)
    throw std::invalid_argument("solution carries no slot assignments");
  BipartiteMatching matching;
  matching.left_match.assign(graph.left_count(), -1);
  matching.right_match.assign(graph.right_count(), -1);

  // slot lookup by (day, time, machine)
  std::map<std::tuple<int, int, int>, int> slot_at;
  for (size_t s = 0; s < graph.slots.size(); ++s)
    slot_at[{graph.slots[s].day, graph.slots[s].time, graph.slots[s].machine}] =
        static_cast<int>(s);

  std::vector<int> misses(graph.n, 0);
  for (int j = 0; j < graph.m; ++j) {
    std::vector<char> satisfied(graph.n, 0);
    for (int c : sol.satisfied[j]) satisfied[c] = 1;
    for (const SlotAssignment& a : (*sol.slots)[j]) {
      int left = graph.left_of(a.client, j);
      auto it = slot_at.find({j, a.slot, a.machine});
      if (it == slot_at.end())
        throw std::invalid_argument("slot assignment outside the graph");
      int slot = it->second;
      if (a.slot <= graph.window[left].first || a.slot > graph.window[left].second)
        throw std::invalid_argument("slot assignment outside the job's window");
      if (matching.right_match[slot] >= 0)
        throw std::invalid_argument("two jobs share a completion slot");
      matching.left_match[left] = slot;
      matching.right_match[slot] = left;
      ++matching.size;
    }
    for (int i = 0; i < graph.n; ++i) {
      if (satisfied[i]) continue;
      int ordinal = misses[i]++;
      if (ordinal >= graph.m - graph.k)
        throw std::invalid_argument("solution is not k-equitable");
      int left = graph.left_of(i, j);
      int miss = graph.miss_vertex(i, ordinal);
      matching.left_match[left] = miss;
      matching.right_match[miss] = left;
      ++matching.size;
    }
  }
  return matching;
}

}  // namespace equisched
