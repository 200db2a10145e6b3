#include "equisched/espc.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace equisched {

namespace {

void require_espc(const Instance& inst) {
  if (inst.variant != Variant::Espc)
    throw std::invalid_argument("solver requires an ESPC instance");
  for (const Day& day : inst.days)
    if (!day.precedence)
      throw std::invalid_argument("ESPC day is missing its precedence DAG");
}

}  // namespace

int ArcClientProfile::gamma(int group, int deadline) const {
  auto it = groups[group].days_by_deadline.find(deadline);
  return it == groups[group].days_by_deadline.end() ? 0 : it->second;
}

int ArcClientProfile::gamma_le(int group, int deadline) const {
  int total = 0;
  for (auto [d, count] : groups[group].days_by_deadline) {
    if (d > deadline) break;
    total += count;
  }
  return total;
}

ArcClientProfile arc_client_profile(const Instance& inst) {
  require_espc(inst);
  ArcClientProfile profile;
  std::set<int> clients;
  std::set<std::pair<int, int>> arcs;
  std::map<std::vector<std::pair<int, int>>, int> group_of;
  for (int j = 0; j < inst.m(); ++j) {
    const Day& day = inst.days[j];
    for (auto [a, b] : day.precedence->arcs) {
      clients.insert(a);
      clients.insert(b);
      arcs.insert({a, b});
    }
    auto [it, inserted] = group_of.try_emplace(day.precedence->arcs, profile.groups.size());
    if (inserted) profile.groups.push_back({*day.precedence, {}, {}});
    ArcClientProfile::DagGroup& group = profile.groups[it->second];
    group.days.push_back(j);
    ++group.days_by_deadline[day.common_deadline()];
  }
  profile.arc_clients.assign(clients.begin(), clients.end());
  profile.alpha = static_cast<int>(profile.arc_clients.size());
  profile.beta = static_cast<int>(arcs.size());
  return profile;
}

namespace {

// arcs of one DAG translated into positions of arc_clients
std::vector<std::pair<int, int>> arcs_in_a(const Dag& dag,
                                           const std::vector<int>& arc_clients) {
  std::vector<std::pair<int, int>> result;
  auto position = [&](int client) {
    return static_cast<int>(std::lower_bound(arc_clients.begin(), arc_clients.end(),
                                             client) -
                            arc_clients.begin());
  };
  for (auto [a, b] : dag.arcs) result.emplace_back(position(a), position(b));
  return result;
}

bool violates_precedence(std::uint32_t mask,
                         const std::vector<std::pair<int, int>>& arcs) {
  for (auto [a, b] : arcs)
    if ((mask >> b & 1) && !(mask >> a & 1)) return true;
  return false;
}

}  // namespace

IpModel build_espc_ilp(const Instance& inst, const ArcClientProfile& profile,
                       EspcIlpIndex& index, const Caps& caps) {
  require_espc(inst);
  const int n = inst.n;
  const int alpha = profile.alpha;
  index.n = n;
  index.alpha = alpha;
  index.groups = static_cast<int>(profile.groups.size());
  index.d_lo = n - alpha + 1;
  if ((1LL << alpha) > caps.table_cells ||
      static_cast<long long>(index.total()) > caps.table_cells)
    throw CapExceeded("espc model exceeds the configured cap");

  IpModel model;
  const int subsets = index.subsets();
  for (int g = 0; g < index.groups; ++g) {
    const long long low_days = profile.gamma_le(g, n - alpha);
    for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
      model.add_variable("xle_G" + std::to_string(g) + "_A" + std::to_string(mask), 0,
                         low_days);
    for (int d = index.d_lo; d <= n; ++d)
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
        model.add_variable("x_G" + std::to_string(g) + "_A" + std::to_string(mask) +
                               "_d" + std::to_string(d),
                           0, profile.gamma(g, d));
  }

  // (1) per-(DAG, deadline) totals for the high-deadline family
  for (int g = 0; g < index.groups; ++g) {
    for (int d = index.d_lo; d <= n; ++d) {
      std::vector<LinearTerm> terms;
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
        terms.push_back({index.var_d(g, mask, d), 1});
      model.add_constraint("eq1_G" + std::to_string(g) + "_d" + std::to_string(d),
                           std::move(terms), Relation::Equal, profile.gamma(g, d));
    }
  }
  // (2) totals for the low-deadline family
  for (int g = 0; g < index.groups; ++g) {
    std::vector<LinearTerm> terms;
    for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
      terms.push_back({index.var_le(g, mask), 1});
    model.add_constraint("eq2_G" + std::to_string(g), std::move(terms), Relation::Equal,
                         profile.gamma_le(g, n - alpha));
  }
  // (3) every arc client collects at least k scheduled jobs
  for (int a = 0; a < alpha; ++a) {
    std::vector<LinearTerm> terms;
    for (int g = 0; g < index.groups; ++g) {
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask) {
        if (!(mask >> a & 1)) continue;
        terms.push_back({index.var_le(g, mask), 1});
        for (int d = index.d_lo; d <= n; ++d)
          terms.push_back({index.var_d(g, mask, d), 1});
      }
    }
    model.add_constraint("eq3_client" + std::to_string(profile.arc_clients[a]),
                         std::move(terms), Relation::GreaterEq, inst.k);
  }
  // (4) no day schedules more arc clients than its deadline
  for (int g = 0; g < index.groups; ++g)
    for (int d = index.d_lo; d <= n; ++d)
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
        if (__builtin_popcount(mask) > d)
          model.add_constraint("eq4_G" + std::to_string(g) + "_A" + std::to_string(mask) +
                                   "_d" + std::to_string(d),
                               {{index.var_d(g, mask, d), 1}}, Relation::Equal, 0);
  // (5) prefix feasibility of the low-deadline days
  for (int g = 0; g < index.groups; ++g) {
    for (int d = 1; d <= n - alpha; ++d) {
      std::vector<LinearTerm> terms;
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
        if (__builtin_popcount(mask) <= d) terms.push_back({index.var_le(g, mask), 1});
      model.add_constraint("eq5_G" + std::to_string(g) + "_d" + std::to_string(d),
                           std::move(terms), Relation::GreaterEq, profile.gamma_le(g, d));
    }
  }
  // (6)/(7) subsets that break a precedence arc are unusable
  for (int g = 0; g < index.groups; ++g) {
    const std::vector<std::pair<int, int>> arcs =
        arcs_in_a(profile.groups[g].dag, profile.arc_clients);
    for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask) {
      if (!violates_precedence(mask, arcs)) continue;
      model.add_constraint("eq6_G" + std::to_string(g) + "_A" + std::to_string(mask),
                           {{index.var_le(g, mask), 1}}, Relation::Equal, 0);
      for (int d = index.d_lo; d <= n; ++d)
        model.add_constraint("eq7_G" + std::to_string(g) + "_A" + std::to_string(mask) +
                                 "_d" + std::to_string(d),
                             {{index.var_d(g, mask, d), 1}}, Relation::Equal, 0);
    }
  }
  // (8) enough free slots remain for the clients outside A
  {
    std::vector<LinearTerm> terms;
    for (int g = 0; g < index.groups; ++g) {
      for (int d = index.d_lo; d <= n; ++d)
        for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
          terms.push_back({index.var_d(g, mask, d),
                           std::min<long long>(d - __builtin_popcount(mask), n - alpha)});
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask)
        if (__builtin_popcount(mask) != 0)
          terms.push_back({index.var_le(g, mask), -__builtin_popcount(mask)});
    }
    long long low_deadline_slots = 0;
    for (const Day& day : inst.days)
      if (day.common_deadline() <= n - alpha) low_deadline_slots += day.common_deadline();
    model.add_constraint("eq8", std::move(terms), Relation::GreaterEq,
                         static_cast<long long>(inst.k) * (n - alpha) -
                             low_deadline_slots);
  }
  return model;
}

Solution realize_espc_solution(const Instance& inst, const ArcClientProfile& profile,
                               const EspcIlpIndex& index,
                               const std::vector<long long>& assignment) {
  require_espc(inst);
  const int n = inst.n;
  const int alpha = profile.alpha;
  const int subsets = index.subsets();
  std::vector<std::uint32_t> day_mask(inst.m(), 0);

  for (int g = 0; g < index.groups; ++g) {
    const ArcClientProfile::DagGroup& group = profile.groups[g];
    // high-deadline days, bucketed by exact deadline
    for (int d = index.d_lo; d <= inst.n; ++d) {
      std::vector<int> bucket;
      for (int day : group.days)
        if (inst.days[day].common_deadline() == d) bucket.push_back(day);
      size_t next = 0;
      for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(subsets); ++mask) {
        for (long long copies = assignment[index.var_d(g, mask, d)]; copies > 0;
             --copies) {
          if (next >= bucket.size())
            throw std::logic_error("espc assignment overfills a deadline bucket");
          day_mask[bucket[next++]] = mask;
        }
      }
      if (next != bucket.size())
        throw std::logic_error("espc assignment does not cover a deadline bucket");
    }
    // low-deadline days: smaller subsets onto earlier deadlines
    std::vector<int> low_days;
    for (int day : group.days)
      if (inst.days[day].common_deadline() <= n - alpha) low_days.push_back(day);
    std::sort(low_days.begin(), low_days.end(), [&](int a, int b) {
      int da = inst.days[a].common_deadline(), db = inst.days[b].common_deadline();
      if (da != db) return da < db;
      return a < b;
    });
    std::vector<std::uint32_t> expanded;
    std::vector<std::uint32_t> order(subsets);
    for (int mask = 0; mask < subsets; ++mask) order[mask] = mask;
    std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
      return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (std::uint32_t mask : order)
      for (long long copies = assignment[index.var_le(g, mask)]; copies > 0; --copies)
        expanded.push_back(mask);
    if (expanded.size() != low_days.size())
      throw std::logic_error("espc assignment does not cover the low-deadline days");
    for (size_t t = 0; t < low_days.size(); ++t) {
      if (__builtin_popcount(expanded[t]) > inst.days[low_days[t]].common_deadline())
        throw std::logic_error("espc assignment overloads a low-deadline day");
      day_mask[low_days[t]] = expanded[t];
    }
  }

  // clients outside A fill the remaining slots, least-scheduled first
  std::vector<int> outside;
  {
    std::vector<char> in_a(n, 0);
    for (int c : profile.arc_clients) in_a[c] = 1;
    for (int c = 0; c < n; ++c)
      if (!in_a[c]) outside.push_back(c);
  }
  std::vector<int> scheduled_count(n, 0);
  Solution sol;
  sol.satisfied.assign(inst.m(), {});
  for (int j = 0; j < inst.m(); ++j) {
    std::vector<int>& set = sol.satisfied[j];
    for (int a = 0; a < alpha; ++a)
      if (day_mask[j] >> a & 1) set.push_back(profile.arc_clients[a]);
    const int deadline = inst.days[j].common_deadline();
    std::vector<char> on_day(n, 0);
    for (int c : set) on_day[c] = 1;
    while (static_cast<int>(set.size()) < deadline) {
      int pick = -1;
      for (int c : outside) {
        if (on_day[c]) continue;
        if (pick < 0 || scheduled_count[c] < scheduled_count[pick]) pick = c;
      }
      if (pick < 0) break;  // every outside client already runs today
      on_day[pick] = 1;
      set.push_back(pick);
      ++scheduled_count[pick];
    }
    std::sort(set.begin(), set.end());
  }
  return sol;
}

std::optional<Solution> solve_espc(const Instance& inst, const Caps& caps) {
  ArcClientProfile profile = arc_client_profile(inst);
  EspcIlpIndex index;
  IpModel model = build_espc_ilp(inst, profile, index, caps);
  std::optional<std::vector<long long>> assignment = solve_ip(model, caps);
  if (!assignment) return std::nullopt;
  return realize_espc_solution(inst, profile, index, *assignment);
}

}  // namespace equisched
