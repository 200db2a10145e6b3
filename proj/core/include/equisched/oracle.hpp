#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equisched/caps.hpp"
#include "equisched/instance.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// The maximal realizable satisfied sets of one day, as client bitmasks.
// The list is an antichain: no listed set contains another. Restricting the
// exhaustive search to these sets loses nothing because realizability is
// monotone downward.
struct DayOptionSet {
  std::vector<std::uint64_t> maximal_sets;
};

DayOptionSet maximal_realizable_sets(const Day& day, Variant variant,
                                     const Caps& caps = Caps::defaults());

struct DecideResult {
  bool feasible = false;
  std::optional<Solution> witness;  // passes verify_solution when feasible
};

// Ground-truth decision procedure: true iff some choice of one realizable
// set per day satisfies every client on at least k days. Desk scale only;
// throws CapExceeded when the search budget runs out.
DecideResult brute_force_decide(const Instance& inst, int k,
                                const Caps& caps = Caps::defaults());

struct MaxKResult {
  int k_star = 0;
  Solution witness;  // k_star-equitable
};

// Largest k for which the instance admits a k-equitable set of schedules
// (binary search over brute_force_decide; k-feasibility is monotone).
MaxKResult brute_force_max_k(const Instance& inst, const Caps& caps = Caps::defaults());

}  // namespace equisched
