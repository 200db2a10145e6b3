#include "equisched/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "equisched/feasibility.hpp"

namespace equisched {

namespace {

std::vector<int> mask_to_clients(std::uint64_t mask) {
  std::vector<int> clients;
  for (int c = 0; mask; ++c, mask >>= 1)
    if (mask & 1) clients.push_back(c);
  return clients;
}

struct EnumBudget {
  long long nodes_left;
  long long option_limit;  // < 0: unlimited
  bool exceeded = false;

  bool spend() {
    if (--nodes_left < 0) throw CapExceeded("oracle exceeded its search-node budget");
    return true;
  }
};

// Maximal subsets with total processing within the common deadline.
// Exclude-branches force the eventual total above d - p_c, which prunes the
// search to (near) the maximal sets themselves.
void enumerate_essd(const Day& day, EnumBudget& budget,
                    std::vector<std::uint64_t>& out) {
  const int n = static_cast<int>(day.jobs.size());
  const long long d = day.common_deadline();
  std::vector<long long> suffix(n + 1, 0);
  for (int c = n - 1; c >= 0; --c)
    suffix[c] = suffix[c + 1] + day.jobs[c].processing;

  std::uint64_t set = 0;
  auto rec = [&](auto&& self, int c, long long sum, long long required) -> void {
    budget.spend();
    if (budget.exceeded) return;
    if (c == n) {
      if (sum >= required) {
        out.push_back(set);
        if (budget.option_limit >= 0 &&
            static_cast<long long>(out.size()) > budget.option_limit)
          budget.exceeded = true;
      }
      return;
    }
    if (sum + suffix[c] < required) return;  // cannot reach maximality
    const long long p = day.jobs[c].processing;
    if (sum + p <= d) {
      set |= 1ULL << c;
      self(self, c + 1, sum + p, required);
      set &= ~(1ULL << c);
      if (budget.exceeded) return;
    }
    // excluding c means any maximal completion must overflow with c
    self(self, c + 1, sum, std::max(required, d - p + 1));
  };
  rec(rec, 0, 0, 0);
}

// Maximal predecessor-closed sets of size at most the common deadline,
// enumerated over clients in topological order.
void enumerate_espc(const Day& day, EnumBudget& budget,
                    std::vector<std::uint64_t>& out) {
  const int n = static_cast<int>(day.jobs.size());
  const int d = std::min(day.common_deadline(), n);
  if (!day.precedence)
    throw std::invalid_argument("ESPC day is missing its precedence DAG");
  const std::vector<int> topo = topological_order(*day.precedence, n);
  std::vector<std::uint64_t> pred_mask(n, 0);
  for (auto [a, b] : day.precedence->arcs) pred_mask[b] |= 1ULL << a;

  std::uint64_t set = 0;
  auto maximal = [&]() {
    std::uint64_t size = static_cast<std::uint64_t>(__builtin_popcountll(set));
    if (static_cast<int>(size) >= d) return true;
    for (int v = 0; v < n; ++v)
      if (!(set >> v & 1) && (pred_mask[v] & ~set) == 0) return false;
    return true;
  };
  auto rec = [&](auto&& self, int idx, int size) -> void {
    budget.spend();
    if (budget.exceeded) return;
    if (idx == n) {
      if (maximal()) {
        out.push_back(set);
        if (budget.option_limit >= 0 &&
            static_cast<long long>(out.size()) > budget.option_limit)
          budget.exceeded = true;
      }
      return;
    }
    const int v = topo[idx];
    if (size < d && (pred_mask[v] & ~set) == 0) {
      set |= 1ULL << v;
      self(self, idx + 1, size + 1);
      set &= ~(1ULL << v);
      if (budget.exceeded) return;
    }
    self(self, idx + 1, size);
  };
  rec(rec, 0, 0);
}

// Generic path for monotone families (Esup slot feasibility, General-day
// permutation feasibility): include/exclude with a membership test per
// step and a one-extension maximality test at the leaves.
void enumerate_monotone(const Day& day, Variant variant, const Caps& caps,
                        EnumBudget& budget, std::vector<std::uint64_t>& out) {
  const int n = static_cast<int>(day.jobs.size());
  std::vector<int> members;
  auto feasible_with = [&](int extra) {
    std::vector<int> cand(members);
    cand.insert(std::lower_bound(cand.begin(), cand.end(), extra), extra);
    return realizable_set(day, variant, cand, caps);
  };
  auto rec = [&](auto&& self, int c) -> void {
    budget.spend();
    if (budget.exceeded) return;
    if (c == n) {
      for (int v = 0; v < n; ++v) {
        if (std::binary_search(members.begin(), members.end(), v)) continue;
        if (feasible_with(v)) return;  // extendable, not maximal
      }
      out.push_back(std::accumulate(members.begin(), members.end(), std::uint64_t{0},
                                    [](std::uint64_t m, int v) { return m | 1ULL << v; }));
      if (budget.option_limit >= 0 &&
          static_cast<long long>(out.size()) > budget.option_limit)
        budget.exceeded = true;
      return;
    }
    if (feasible_with(c)) {
      members.insert(std::lower_bound(members.begin(), members.end(), c), c);
      self(self, c + 1);
      members.erase(std::find(members.begin(), members.end(), c));
      if (budget.exceeded) return;
    }
    self(self, c + 1);
  };
  rec(rec, 0);
}

std::vector<std::uint64_t> enumerate_day(const Day& day, Variant variant,
                                         const Caps& caps, long long option_limit,
                                         bool& exceeded) {
  std::vector<std::uint64_t> out;
  EnumBudget budget{caps.search_nodes, option_limit};
  switch (variant) {
    case Variant::Essd: enumerate_essd(day, budget, out); break;
    case Variant::Espc: enumerate_espc(day, budget, out); break;
    case Variant::Esup:
    case Variant::General: enumerate_monotone(day, variant, caps, budget, out); break;
  }
  exceeded = budget.exceeded;
  if (exceeded) out.clear();
  std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    if (pa != pb) return pa > pb;  // larger coverage first
    return a < b;
  });
  return out;
}

// Can client c be satisfied on this day at all?
bool singleton_realizable(const Day& day, Variant variant, int c, const Caps& caps) {
  if (variant == Variant::Espc) {
    std::vector<int> closed = ancestor_closure(*day.precedence, day.jobs.size(), {c});
    return realizable_set(day, variant, closed, caps);
  }
  return realizable_set(day, variant, {c}, caps);
}

// Can the whole set `needed` be part of one realizable set on this day?
bool coverable_together(const Day& day, Variant variant,
                        const std::vector<int>& needed, const Caps& caps) {
  if (variant == Variant::Espc) {
    std::vector<int> closed = ancestor_closure(*day.precedence, day.jobs.size(), needed);
    return realizable_set(day, variant, closed, caps);
  }
  return realizable_set(day, variant, needed, caps);
}

struct DecideSearch {
  const Instance& inst;
  const int k;
  const Caps& caps;
  std::vector<int> day_order;                       // search position -> day
  std::vector<std::vector<std::uint64_t>> options;  // per position (last may be empty)
  bool last_day_deferred = false;
  std::vector<int> max_cover;        // per position, upper bound on |option|
  std::vector<char> coverable;      // [pos * n + c]: c coverable at position
  std::vector<int> suffix_possible;  // [pos * n + c]: coverable days at >= pos
  std::vector<int> counts;
  std::vector<int> chosen;  // per position, option index (-1 for last day)
  std::vector<int> last_day_set;
  long long nodes = 0;
  bool starred_essd = false;
  long long weighted_need_cap = 0;  // d per day for the starred weighted bound
  bool memo_enabled = false;  // starred instances: dead states keyed by
  std::unordered_set<std::uint64_t> dead_states;  // (pos, min option, counts)

  bool feasible = false;

  explicit DecideSearch(const Instance& i, int k_, const Caps& c)
      : inst(i), k(k_), caps(c) {}

  int n() const { return inst.n; }
  int m() const { return inst.m(); }

  std::uint64_t memo_key(int pos) const {
    std::uint64_t key = static_cast<std::uint64_t>(pos);
    key = key << 7 | static_cast<std::uint64_t>(pos > 0 ? chosen[pos - 1] : 0);
    for (int c = 0; c < n(); ++c)
      key = key << 4 | static_cast<std::uint64_t>(std::min(counts[c], k));
    return key;
  }

  bool search(int pos) {
    if (++nodes > caps.search_nodes)
      throw CapExceeded("oracle exceeded its search-node budget");
    if (memo_enabled && pos > 0 && pos < m()) {
      std::uint64_t key = memo_key(pos);
      if (dead_states.count(key)) return false;
      bool found = search_body(pos);
      if (!found) dead_states.insert(key);
      return found;
    }
    return search_body(pos);
  }

  bool search_body(int pos) {
    // per-client reachability and aggregate-coverage pruning
    long long needed_total = 0;
    for (int c = 0; c < n(); ++c) {
      int need = k - counts[c];
      if (need <= 0) continue;
      if (suffix_possible[pos * n() + c] < need) return false;
      needed_total += need;
    }
    if (needed_total == 0 && pos < m()) {
      // nothing left to cover; keep the first option everywhere
      for (int p = pos; p < m(); ++p) chosen[p] = options[p].empty() ? -1 : 0;
      if (last_day_deferred) last_day_set.clear();
      return true;
    }
    long long cover_left = 0;
    for (int p = pos; p < m(); ++p) cover_left += max_cover[p];
    if (needed_total > cover_left) return false;
    if (starred_essd) {
      long long weight_needed = 0;
      for (int c = 0; c < n(); ++c)
        if (counts[c] < k)
          weight_needed +=
              static_cast<long long>(inst.days[0].jobs[c].processing) * (k - counts[c]);
      if (weight_needed > (m() - pos) * weighted_need_cap) return false;
    }

    if (pos == m()) return needed_total == 0;
    if (pos == m() - 1 && last_day_deferred) {
      std::vector<int> needed;
      for (int c = 0; c < n(); ++c) {
        if (counts[c] >= k) continue;
        if (counts[c] < k - 1) return false;
        needed.push_back(c);
      }
      if (!coverable_together(inst.days[day_order[pos]], inst.variant, needed, caps))
        return false;
      last_day_set = needed;
      return true;
    }

    int first_option = 0;
    if (inst.starred && pos > 0) first_option = chosen[pos - 1];  // multiset order
    bool tried_useless = false;
    for (int oi = first_option; oi < static_cast<int>(options[pos].size()); ++oi) {
      std::uint64_t set = options[pos][oi];
      bool useful = false;
      for (std::uint64_t rest = set; rest;) {
        int c = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (counts[c] < k) {
          useful = true;
          break;
        }
      }
      if (!useful) {
        if (tried_useless) continue;  // interchangeable choices, try one
        tried_useless = true;
      }
      chosen[pos] = oi;
      for (std::uint64_t rest = set; rest;) {
        int c = __builtin_ctzll(rest);
        rest &= rest - 1;
        ++counts[c];
      }
      bool found = search(pos + 1);
      for (std::uint64_t rest = set; rest;) {
        int c = __builtin_ctzll(rest);
        rest &= rest - 1;
        --counts[c];
      }
      if (found) return true;
    }
    return false;
  }
};

}  // namespace

DayOptionSet maximal_realizable_sets(const Day& day, Variant variant, const Caps& caps) {
  if (day.jobs.size() > 63)
    throw CapExceeded("oracle day options support at most 63 clients");
  bool exceeded = false;
  DayOptionSet result;
  result.maximal_sets = enumerate_day(day, variant, caps, -1, exceeded);
  return result;
}

DecideResult brute_force_decide(const Instance& inst, int k, const Caps& caps) {
  if (k < 0 || k > inst.m()) throw std::invalid_argument("k must lie in {0..m}");
  if (inst.n > 63) throw CapExceeded("oracle supports at most 63 clients");
  DecideResult result;
  if (k == 0) {
    result.feasible = true;
    result.witness = Solution{std::vector<std::vector<int>>(inst.m()), std::nullopt};
    return result;
  }

  DecideSearch search(inst, k, caps);
  const int m = inst.m();
  const long long first_pass_limit = 4096;

  std::vector<std::vector<std::uint64_t>> options(m);
  std::vector<char> deferred(m, 0);
  for (int j = 0; j < m; ++j) {
    bool exceeded = false;
    options[j] = enumerate_day(inst.days[j], inst.variant, caps, first_pass_limit, exceeded);
    deferred[j] = exceeded;
  }
  // at most one day may stay un-enumerated (it is handled by a direct
  // realizability check at the end of the search)
  int keep_deferred = -1;
  for (int j = 0; j < m; ++j)
    if (deferred[j]) keep_deferred = j;
  for (int j = 0; j < m; ++j) {
    if (deferred[j] && j != keep_deferred) {
      bool exceeded = false;
      options[j] = enumerate_day(inst.days[j], inst.variant, caps, -1, exceeded);
      deferred[j] = false;
    }
  }

  search.day_order.resize(m);
  for (int j = 0; j < m; ++j) search.day_order[j] = j;
  if (!inst.starred) {
    std::stable_sort(search.day_order.begin(), search.day_order.end(), [&](int a, int b) {
      if (deferred[a] != deferred[b]) return deferred[b] != 0;  // deferred day last
      return options[a].size() < options[b].size();
    });
  }
  search.options.resize(m);
  for (int pos = 0; pos < m; ++pos) search.options[pos] = options[search.day_order[pos]];
  search.last_day_deferred = keep_deferred >= 0;

  search.max_cover.assign(m, 0);
  search.coverable.assign(m * inst.n, 0);
  for (int pos = 0; pos < m; ++pos) {
    const Day& day = inst.days[search.day_order[pos]];
    if (pos == m - 1 && search.last_day_deferred) {
      int bound = 0;
      for (int c = 0; c < inst.n; ++c) {
        if (singleton_realizable(day, inst.variant, c, caps)) {
          search.coverable[pos * inst.n + c] = 1;
          ++bound;
        }
      }
      if (inst.variant == Variant::Essd || inst.variant == Variant::Espc)
        bound = std::min(bound, day.common_deadline());
      search.max_cover[pos] = std::max(bound, 0);
    } else {
      for (const std::uint64_t set : search.options[pos]) {
        search.max_cover[pos] =
            std::max(search.max_cover[pos], __builtin_popcountll(set));
        for (std::uint64_t rest = set; rest;) {
          int c = __builtin_ctzll(rest);
          rest &= rest - 1;
          search.coverable[pos * inst.n + c] = 1;
        }
      }
    }
  }
  search.suffix_possible.assign((m + 1) * inst.n, 0);
  for (int pos = m - 1; pos >= 0; --pos)
    for (int c = 0; c < inst.n; ++c)
      search.suffix_possible[pos * inst.n + c] =
          search.suffix_possible[(pos + 1) * inst.n + c] +
          (search.coverable[pos * inst.n + c] ? 1 : 0);

  search.counts.assign(inst.n, 0);
  search.chosen.assign(m, -1);
  search.starred_essd = inst.starred && inst.variant == Variant::Essd;
  if (search.starred_essd) search.weighted_need_cap = inst.days[0].common_deadline();
  std::size_t widest = 0;
  for (int pos = 0; pos < m; ++pos) widest = std::max(widest, search.options[pos].size());
  search.memo_enabled = inst.starred && inst.n <= 12 && k <= 15 && m <= 15 &&
                        widest <= 127 && !search.last_day_deferred;

  result.feasible = search.search(0);
  if (result.feasible) {
    Solution witness;
    witness.satisfied.assign(m, {});
    for (int pos = 0; pos < m; ++pos) {
      int day = search.day_order[pos];
      if (pos == m - 1 && search.last_day_deferred) {
        witness.satisfied[day] = search.last_day_set;
      } else if (search.chosen[pos] >= 0) {
        witness.satisfied[day] = mask_to_clients(search.options[pos][search.chosen[pos]]);
      }
    }
    result.witness = std::move(witness);
  }
  return result;
}

MaxKResult brute_force_max_k(const Instance& inst, const Caps& caps) {
  MaxKResult result;
  int lo = 0, hi = inst.m();
  Solution best{std::vector<std::vector<int>>(inst.m()), std::nullopt};
  while (lo < hi) {  // invariant: lo is feasible, hi + 1 is not
    int mid = (lo + hi + 1) / 2;
    DecideResult decision = brute_force_decide(inst, mid, caps);
    if (decision.feasible) {
      lo = mid;
      best = std::move(*decision.witness);
    } else {
      hi = mid - 1;
    }
  }
  result.k_star = lo;
  result.witness = std::move(best);
  return result;
}

}  // namespace equisched
