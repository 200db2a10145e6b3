#pragma once

#include <stdexcept>

namespace equisched {

// Thrown when a solver would exceed its configured table or search budget.
// Distinct from infeasibility: the caller learns that the question was not
// answered, not that the answer is "no".
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource limits for the exponential-in-the-worst-case solvers. The
// EQUISCHED_CAP environment variable, when set to a positive integer,
// overrides both table_cells and search_nodes.
struct Caps {
  long long table_cells = 4'000'000;    // max DP table cells / model variables
  long long search_nodes = 64'000'000;  // max DFS nodes (ip solver, oracle)
  int signature_clients = 12;           // max n for 2^n feasibility signatures
  int general_permutation_clients = 8;  // max set size for GENERAL-day search

  static const Caps& defaults();  // defaults with EQUISCHED_CAP applied
};

}  // namespace equisched
