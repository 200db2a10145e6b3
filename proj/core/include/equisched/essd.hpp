#pragma once

#include <optional>
#include <vector>

#include "equisched/caps.hpp"
#include "equisched/instance.hpp"
#include "equisched/ip.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// Exact ESSD decision by dynamic programming over per-day budget vectors:
// entry (i, b_1..b_m) is true iff clients 1..i can each be scheduled on
// exactly k days with the total processing time on day j at most b_j.
// Budget vectors are encoded in mixed radix over (d_j + 1); the table has
// prod_j (d_j + 1) columns and is refused beyond caps.table_cells.
std::optional<Solution> solve_essd_dp_days(const Instance& inst,
                                           const Caps& caps = Caps::defaults());

// Exact ESSD decision by dynamic programming over per-client day counts:
// entry (j, l_1..l_n) is true iff days 1..j admit schedules under which
// client i is satisfied on l_i days. Counts saturate at k (extra days never
// hurt), so the table has (k + 1)^n columns per day.
std::optional<Solution> solve_essd_dp_clients(const Instance& inst,
                                              const Caps& caps = Caps::defaults());

// Days j and j' are equivalent when exactly the same client subsets fit
// before the deadline on both. The signature stores, for every subset mask,
// whether the subset fits; classes partition the days.
struct DayClass {
  std::vector<bool> signature;  // indexed by subset mask, 2^n entries
  std::vector<int> days;        // members, ascending
};

std::vector<DayClass> day_equivalence_classes(const Instance& inst,
                                              const Caps& caps = Caps::defaults());

// Integer program with one variable x_{E,S} per (class E, subset S) pair:
// x_{E,S} = 0 when S overflows the days of E, every client is covered at
// least k times, and each class distributes exactly its |E| days.
IpModel build_essd_ilp(const Instance& inst, const std::vector<DayClass>& classes);

// Turns a feasible assignment of build_essd_ilp into a solution by giving
// x_{E,S} of the days in class E the satisfied set S.
Solution essd_solution_from_assignment(const Instance& inst,
                                       const std::vector<DayClass>& classes,
                                       const std::vector<long long>& assignment);

// Pipeline: classes -> model -> solve_ip -> solution.
std::optional<Solution> solve_essd_ilp(const Instance& inst,
                                       const Caps& caps = Caps::defaults());

}  // namespace equisched
