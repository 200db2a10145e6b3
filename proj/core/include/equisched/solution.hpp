#pragma once

#include <optional>
#include <vector>

namespace equisched {

// Completion slot of a satisfied client, as produced by the ESUP solver.
struct SlotAssignment {
  int client = 0;
  int slot = 0;  // completion time, 1-based
  int machine = 0;
};

// A solution is stored as one satisfied-client set per day; explicit
// schedules (permutations) are derived on demand from these sets. Slot
// assignments are an optional extra produced by the matching-based solver.
struct Solution {
  std::vector<std::vector<int>> satisfied;  // per day, sorted 0-based clients
  std::optional<std::vector<std::vector<SlotAssignment>>> slots;
};

struct EquityReport {
  std::vector<int> satisfied_days;  // per client
  int min_count = 0;
  bool k_equitable = false;
  std::vector<int> invalid_days;  // days whose satisfied set is not realizable

  bool valid() const { return invalid_days.empty(); }
};

}  // namespace equisched
