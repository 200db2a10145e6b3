#pragma once

#include <utility>
#include <vector>

#include "equisched/caps.hpp"
#include "equisched/instance.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// True iff some feasible schedule of the day's jobs lets at least the given
// clients meet their deadlines. The check depends on the variant:
//   Essd: total processing time of the set fits the common deadline,
//   Esup: the set admits an assignment of members to per-machine time slots
//         within their (release, deadline] windows,
//   Espc: the set is closed under predecessors and fits the common deadline,
//   General: exhaustive search over orderings of the set (small sets only).
bool realizable_set(const Day& day, Variant variant, const std::vector<int>& clients,
                    const Caps& caps = Caps::defaults());

// A processing order (position -> client) under which every member of the
// given realizable set completes by its deadline. Throws if the set is not
// realizable.
std::vector<int> canonical_permutation(const Day& day, Variant variant,
                                       const std::vector<int>& clients,
                                       const Caps& caps = Caps::defaults());

// Per-client completion times induced by processing jobs in the given order,
// assigning each job to the earliest-available machine and honouring release
// dates. Position p in `order` holds a client index.
std::vector<int> completion_times(const Day& day, const std::vector<int>& order);

// Counts, for every client, the days on which it appears in a realizable
// satisfied set, and reports k-equitability against inst.k. Days whose set
// is not realizable are flagged and contribute to no client.
EquityReport verify_solution(const Instance& inst, const Solution& sol,
                             const Caps& caps = Caps::defaults());

// Single-day baseline: a maximum-cardinality set of jobs that can all meet
// their deadlines on one machine. Jobs are (processing, deadline) pairs.
std::vector<int> moore_hodgson(const std::vector<std::pair<int, int>>& jobs);

// Smallest predecessor-closed superset of the given clients.
std::vector<int> ancestor_closure(const Dag& dag, int n, const std::vector<int>& clients);

}  // namespace equisched
