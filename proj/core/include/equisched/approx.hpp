#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equisched/instance.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// Identical-days ESSD data: per-client processing times, m days, one common
// deadline, and the target equity parameter k.
struct StarInstance {
  std::vector<int> processing;
  int m = 0;
  int deadline = 0;
  int k = 0;

  int n() const { return static_cast<int>(processing.size()); }
};

StarInstance star_from_instance(const Instance& inst);  // requires ESSD*
Instance instance_from_star(const StarInstance& star);

// Why the approximation gave up. FAIL certifies that no k-equitable set of
// schedules exists at the requested k.
enum class ApproxFail {
  None,
  JobExceedsDeadline,     // some job can never finish on time
  PairExceedsDeadline,    // two jobs cannot share a day although they must
  FourLargeClients,       // four clients above d/3 cannot coexist
  LargePlacementOverflow, // a large job did not fit its greedy days
  TailTooShort,           // m mod k' leaves no room for the block swap
  SecondOverflow,         // the block swap is spent and another client spilled
  SwapOverflow,           // the tail days cannot host the swapped pair
  RoundRobinIncomplete,   // the small-client list survived every day
  RecursionFailed,        // the reduced-deadline subproblem certified NO
};

std::string to_string(ApproxFail reason);

struct ApproxResult {
  std::optional<Solution> solution;  // k_prime-equitable when present
  int k_prime = 0;
  ApproxFail reason = ApproxFail::None;

  bool failed() const { return !solution.has_value(); }
};

// Guaranteed-window approximation for ESSD*: succeeds with a k'-equitable
// solution, 2*floor(k/3) <= k' <= floor(2k/3), whenever a k-equitable
// solution exists; FAIL certifies a NO instance. Dispatches on k <= m/2.
ApproxResult approx_essd_star(const StarInstance& inst);

// First-fit-decreasing into blocks of k' = 2*floor(k/3) consecutive days,
// with one block swap into the tail days on the first overflow.
ApproxResult approx_small_k(const StarInstance& inst);

// Large/small client split at d/3 with k' = floor(2k/3): screens, special
// cases for small total processing, greedy placement of the up-to-three
// large clients, and a round-robin fill for the small ones.
ApproxResult approx_large_k(const StarInstance& inst);

}  // namespace equisched
