#include "equisched/approx.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace equisched {

StarInstance star_from_instance(const Instance& inst) {
  if (inst.variant != Variant::Essd || !inst.starred)
    throw std::invalid_argument("approximation requires a starred ESSD instance");
  inst.validate();
  StarInstance star;
  star.m = inst.m();
  star.k = inst.k;
  star.deadline = inst.days.front().common_deadline();
  for (const Job& job : inst.days.front().jobs) star.processing.push_back(job.processing);
  return star;
}

Instance instance_from_star(const StarInstance& star) {
  Instance inst;
  inst.variant = Variant::Essd;
  inst.starred = true;
  inst.n = star.n();
  inst.k = star.k;
  Day day;
  for (int p : star.processing) day.jobs.push_back({p, star.deadline, 0});
  inst.days.assign(star.m, day);
  inst.validate();
  return inst;
}

std::string to_string(ApproxFail reason) {
  switch (reason) {
    case ApproxFail::None: return "none";
    case ApproxFail::JobExceedsDeadline: return "job-exceeds-deadline";
    case ApproxFail::PairExceedsDeadline: return "pair-exceeds-deadline";
    case ApproxFail::FourLargeClients: return "four-large-clients";
    case ApproxFail::LargePlacementOverflow: return "large-placement-overflow";
    case ApproxFail::TailTooShort: return "tail-too-short";
    case ApproxFail::SecondOverflow: return "second-overflow";
    case ApproxFail::SwapOverflow: return "swap-overflow";
    case ApproxFail::RoundRobinIncomplete: return "round-robin-incomplete";
    case ApproxFail::RecursionFailed: return "recursion-failed";
  }
  return "unknown";
}

namespace {

struct Board {
  const StarInstance& inst;
  std::vector<long long> load;                 // per day
  std::vector<std::vector<int>> client_days;   // per client, days used (sorted)

  explicit Board(const StarInstance& i)
      : inst(i), load(i.m, 0), client_days(i.n()) {}

  bool on_day(int client, int day) const {
    const std::vector<int>& days = client_days[client];
    return std::binary_search(days.begin(), days.end(), day);
  }

  void add(int client, int day) {
    load[day] += inst.processing[client];
    std::vector<int>& days = client_days[client];
    days.insert(std::lower_bound(days.begin(), days.end(), day), day);
  }

  void remove(int client, int day) {
    load[day] -= inst.processing[client];
    std::vector<int>& days = client_days[client];
    days.erase(std::find(days.begin(), days.end(), day));
  }

  Solution to_solution() const {
    Solution sol;
    sol.satisfied.assign(inst.m, {});
    for (int c = 0; c < inst.n(); ++c)
      for (int day : client_days[c]) sol.satisfied[day].push_back(c);
    for (std::vector<int>& day : sol.satisfied) std::sort(day.begin(), day.end());
    return sol;
  }

  // the `count` days with the most free processing time, earliest first on ties
  std::vector<int> freest_days(int count) const {
    std::vector<int> days(inst.m);
    std::iota(days.begin(), days.end(), 0);
    std::stable_sort(days.begin(), days.end(),
                     [&](int a, int b) { return load[a] < load[b]; });
    days.resize(count);
    return days;
  }
};

ApproxResult fail(ApproxFail reason) { return {std::nullopt, 0, reason}; }

ApproxResult success(const Board& board, int k_prime) {
  return {board.to_solution(), k_prime, ApproxFail::None};
}

ApproxResult empty_success(const StarInstance& inst) {
  Solution sol;
  sol.satisfied.assign(inst.m, {});
  return {std::move(sol), 0, ApproxFail::None};
}

// clients ordered by processing time descending, index ascending on ties
std::vector<int> decreasing_order(const StarInstance& inst) {
  std::vector<int> order(inst.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.processing[a] > inst.processing[b];
  });
  return order;
}

}  // namespace

ApproxResult approx_small_k(const StarInstance& inst) {
  const int m = inst.m;
  const long long d = inst.deadline;
  const int k_prime = 2 * (inst.k / 3);
  if (k_prime == 0) return empty_success(inst);
  for (int p : inst.processing)
    if (p > d) return fail(ApproxFail::JobExceedsDeadline);

  Board board(inst);
  bool swap_spent = false;
  for (int c : decreasing_order(inst)) {
    const int p = inst.processing[c];
    std::vector<int> room;
    for (int j = 0; j < m && static_cast<int>(room.size()) < k_prime; ++j)
      if (board.load[j] + p <= d) room.push_back(j);
    if (static_cast<int>(room.size()) == k_prime) {
      for (int j : room) board.add(c, j);
      continue;
    }
    // overflow: all blocks of k' consecutive days are full
    if (m % k_prime < k_prime / 2) return fail(ApproxFail::TailTooShort);
    if (swap_spent) return fail(ApproxFail::SecondOverflow);
    swap_spent = true;
    // the client with the smallest job on day floor(2m/3) + 1 donates the
    // first half of its block; both clients move into the tail days
    const int probe_day = (2 * m) / 3;  // 0-based day floor(2m/3) + 1
    int donor = -1;
    for (int c2 = 0; c2 < inst.n(); ++c2) {
      if (!board.on_day(c2, probe_day)) continue;
      if (donor < 0 || inst.processing[c2] < inst.processing[donor]) donor = c2;
    }
    if (donor < 0) throw std::logic_error("overflow day carries no job");
    const int donor_first = board.client_days[donor].front();
    const int tail_start = m - (m % k_prime);  // 0-based first tail day
    if (inst.processing[c] + inst.processing[donor] > d)
      return fail(ApproxFail::SwapOverflow);
    for (int t = 0; t < k_prime / 2; ++t) {
      board.remove(donor, donor_first + t);
      board.add(c, donor_first + t);
    }
    for (int t = 0; t < k_prime / 2; ++t) {
      board.add(c, tail_start + t);
      board.add(donor, tail_start + t);
    }
  }
  return success(board, k_prime);
}

namespace {

// Step 1 of the large-k branch: schedule the large clients on the k days
// with the most free time each, then replace ceil(k/3) of the first and of
// the second large client's jobs by the jobs of all small clients.
ApproxResult large_k_small_sum(const StarInstance& inst, const std::vector<int>& larges,
                               const std::vector<int>& smalls, int k_prime) {
  const long long d = inst.deadline;
  Board board(inst);
  for (int c : larges) {
    std::vector<int> days = board.freest_days(inst.k);
    for (int j : days) {
      if (board.load[j] + inst.processing[c] > d)
        return fail(ApproxFail::LargePlacementOverflow);
      board.add(c, j);
    }
  }
  const int replace = (inst.k + 2) / 3;  // ceil(k/3)
  std::vector<int> taken;
  for (int round = 0; round < 2; ++round) {
    const int c = larges[round];
    int replaced = 0;
    for (int j : board.client_days[c]) {
      if (replaced == replace) break;
      if (std::find(taken.begin(), taken.end(), j) != taken.end()) continue;
      taken.push_back(j);
      ++replaced;
    }
    if (replaced != replace)
      throw std::logic_error("large client lacks days for the replacement");
  }
  for (int idx = 0; idx < static_cast<int>(taken.size()); ++idx) {
    const int c = larges[idx / replace];
    const int j = taken[idx];
    board.remove(c, j);
    for (int s : smalls) board.add(s, j);
    if (board.load[j] > d)
      throw std::logic_error("small-client replacement overflowed a day");
  }
  return success(board, k_prime);
}

}  // namespace

ApproxResult approx_large_k(const StarInstance& inst) {
  const int m = inst.m;
  const long long d = inst.deadline;
  const int k_prime = (2 * inst.k) / 3;
  if (k_prime == 0) return empty_success(inst);
  for (int p : inst.processing)
    if (p > d) return fail(ApproxFail::JobExceedsDeadline);
  // with k > m/2 any two clients must share a day somewhere
  for (int a = 0; a < inst.n(); ++a)
    for (int b = a + 1; b < inst.n(); ++b)
      if (inst.processing[a] + inst.processing[b] > d)
        return fail(ApproxFail::PairExceedsDeadline);

  std::vector<int> larges, smalls;
  long long small_sum = 0;
  for (int c : decreasing_order(inst)) {
    if (3LL * inst.processing[c] > d) {
      larges.push_back(c);
    } else {
      smalls.push_back(c);
      small_sum += inst.processing[c];
    }
  }
  if (larges.size() >= 4) return fail(ApproxFail::FourLargeClients);

  // Step 1: tiny small-client mass, at least two large clients
  if (3 * small_sum <= d && larges.size() >= 2)
    return large_k_small_sum(inst, larges, smalls, k_prime);

  // Step 2: small-client mass at most 2d/3, at most two large clients
  if (3 * small_sum <= 2 * d && larges.size() <= 2) {
    if (larges.empty()) {
      Board board(inst);
      for (int j = 0; j < k_prime; ++j)
        for (int s : smalls) board.add(s, j);
      return success(board, k_prime);
    }
    if (larges.size() == 1) {
      const int ell = larges.front();
      Board board(inst);
      for (int j = 0; j < k_prime; ++j) board.add(ell, j);
      for (int j = k_prime; j < m; ++j)
        for (int s : smalls) board.add(s, j);
      if (m < 2 * k_prime && !smalls.empty()) {
        // the first k' days must also host small jobs; recurse with the
        // residual deadline and target
        StarInstance sub;
        for (int s : smalls) sub.processing.push_back(inst.processing[s]);
        sub.m = k_prime;
        sub.deadline = inst.deadline - inst.processing[ell];
        sub.k = inst.k + k_prime - m;
        ApproxResult rec = approx_essd_star(sub);
        if (rec.failed()) return fail(ApproxFail::RecursionFailed);
        for (int j = 0; j < k_prime; ++j)
          for (int s_idx : rec.solution->satisfied[j]) board.add(smalls[s_idx], j);
      }
      return success(board, k_prime);
    }
    if (2 * k_prime < m) {  // two large clients on disjoint day ranges
      Board board(inst);
      for (int j = 0; j < k_prime; ++j)
        for (int c : larges) board.add(c, j);
      for (int j = m - k_prime; j < m; ++j)
        for (int s : smalls) board.add(s, j);
      return success(board, k_prime);
    }
  }

  // Steps 3 and 4: greedy large placement, then a round-robin of the small
  // clients over the remaining capacity
  Board board(inst);
  for (int c : larges) {
    std::vector<int> days = board.freest_days(k_prime);
    for (int j : days) {
      if (board.load[j] + inst.processing[c] > d)
        return fail(ApproxFail::LargePlacementOverflow);
      board.add(c, j);
    }
  }
  std::vector<int> list;
  for (int round = 0; round < k_prime; ++round)
    for (int s : smalls) list.push_back(s);
  size_t head = 0;
  for (int j = 0; j < m && head < list.size(); ++j) {
    while (head < list.size()) {
      const int c = list[head];
      if (board.on_day(c, j) || board.load[j] + inst.processing[c] > d) break;
      board.add(c, j);
      ++head;
    }
  }
  if (head < list.size()) return fail(ApproxFail::RoundRobinIncomplete);
  return success(board, k_prime);
}

ApproxResult approx_essd_star(const StarInstance& inst) {
  if (inst.m < 1) throw std::invalid_argument("instance needs at least one day");
  if (inst.k < 0 || inst.k > inst.m) throw std::invalid_argument("k must lie in {0..m}");
  for (int p : inst.processing)
    if (p < 1) throw std::invalid_argument("processing times must be positive");
  if (inst.k == 0) return empty_success(inst);
  if (2 * inst.k <= inst.m) return approx_small_k(inst);
  return approx_large_k(inst);
}

}  // namespace equisched
