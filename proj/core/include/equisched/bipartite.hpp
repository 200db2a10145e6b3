#pragma once

#include <vector>

namespace equisched {

struct BipartiteMatching {
  std::vector<int> left_match;   // left vertex -> right vertex or -1
  std::vector<int> right_match;  // right vertex -> left vertex or -1
  int size = 0;
};

// Hopcroft-Karp maximum-cardinality matching. The graph is given as one
// adjacency list per left vertex; neighbours index the right side. The
// result is deterministic for a fixed adjacency order.
BipartiteMatching hopcroft_karp_matching(const std::vector<std::vector<int>>& adj,
                                         int right_count);

}  // namespace equisched
