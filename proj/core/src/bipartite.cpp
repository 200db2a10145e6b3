#include "equisched/bipartite.hpp"

#include <limits>
#include <queue>

namespace equisched {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const std::vector<std::vector<int>>& adj;
  std::vector<int>& left_match;
  std::vector<int>& right_match;
  std::vector<int> dist;

  bool bfs() {
    std::queue<int> queue;
    const int n_left = static_cast<int>(adj.size());
    dist.assign(n_left, kInf);
    for (int u = 0; u < n_left; ++u) {
      if (left_match[u] < 0) {
        dist[u] = 0;
        queue.push(u);
      }
    }
    bool reachable_free = false;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int v : adj[u]) {
        int w = right_match[v];
        if (w < 0) {
          reachable_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int u) {
    for (int v : adj[u]) {
      int w = right_match[v];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
        left_match[u] = v;
        right_match[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }
};

}  // namespace

BipartiteMatching hopcroft_karp_matching(const std::vector<std::vector<int>>& adj,
                                         int right_count) {
  BipartiteMatching result;
  result.left_match.assign(adj.size(), -1);
  result.right_match.assign(right_count, -1);
  HopcroftKarp hk{adj, result.left_match, result.right_match, {}};
  while (hk.bfs()) {
    for (int u = 0; u < static_cast<int>(adj.size()); ++u)
      if (result.left_match[u] < 0 && hk.dfs(u)) ++result.size;
  }
  return result;
}

}  // namespace equisched
