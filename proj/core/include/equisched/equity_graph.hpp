#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "equisched/bipartite.hpp"
#include "equisched/instance.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// Bipartite graph deciding ESUP feasibility. Left vertices stand for the
// job of client i on day j. Right vertices come in two groups: completion
// slots (time t on machine x of day j, representing a job finished on time)
// and per-client "miss tokens" (client i may be unsatisfied on up to m - k
// days). A matching covering the whole left side is exactly a k-equitable
// set of schedules.
struct EquityGraph {
  int n = 0;
  int m = 0;
  int k = 0;

  struct Slot {
    int day = 0;
    int time = 0;  // 1-based completion time
    int machine = 0;
  };

  std::vector<Slot> slots;            // slot vertices, in (day, machine, time) order
  std::vector<std::vector<int>> adj;  // left vertex -> right vertices
  std::vector<std::pair<int, int>> window;  // left vertex -> (release, deadline)

  int left_count() const { return n * m; }
  int miss_count() const { return n * (m - k); }
  int right_count() const { return static_cast<int>(slots.size()) + miss_count(); }
  int left_of(int client, int day) const { return day * n + client; }
  int client_of(int left) const { return left % n; }
  int day_of(int left) const { return left / n; }
  bool is_slot(int right) const { return right < static_cast<int>(slots.size()); }
  int miss_vertex(int client, int ordinal) const {
    return static_cast<int>(slots.size()) + client * (m - k) + ordinal;
  }
};

EquityGraph build_equity_graph(const Instance& inst, int k);

// Maximum matching on the equity graph (adjacency order is fixed by the
// construction, so the result is reproducible).
BipartiteMatching hopcroft_karp(const EquityGraph& graph);

// Exchanges matched slots downward, scanning (day, machine, time)
// lexicographically, so that matched slot times sit as low as the release
// dates allow (with no release dates this yields a strict prefix per day
// and machine). Matching size and the matched left vertices are preserved.
void compact_slots(const EquityGraph& graph, BipartiteMatching& matching);

// Full ESUP pipeline: build the graph, match, and extract a solution.
// Returns nullopt when no k-equitable set of schedules exists. The returned
// solution carries explicit slot assignments.
std::optional<Solution> solve_esup(const Instance& inst);

// Derives slot assignments for the satisfied sets of an ESUP solution
// (earliest-deadline-first over released members). Throws if some set is
// not realizable.
void attach_esup_slots(const Instance& inst, Solution& sol);

// The schedule-to-matching direction: turns a solution with slot
// assignments into a left-perfect matching, sending each unsatisfied job of
// client i to the miss token numbered by how many days of client i were
// unsatisfied before. Used to cross-check the graph construction.
BipartiteMatching matching_from_solution(const EquityGraph& graph, const Solution& sol);

}  // namespace equisched
