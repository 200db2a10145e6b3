#include "equisched/essd.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace equisched {

namespace {

void require_essd(const Instance& inst) {
  if (inst.variant != Variant::Essd)
    throw std::invalid_argument("solver requires an ESSD instance");
}

// Lexicographically first k-subset of {0..m-1}, then successor enumeration.
bool first_combination(std::vector<int>& pick, int m, int k) {
  if (k > m) return false;
  pick.resize(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  return true;
}

bool next_combination(std::vector<int>& pick, int m) {
  const int k = static_cast<int>(pick.size());
  for (int i = k - 1; i >= 0; --i) {
    if (pick[i] < m - k + i) {
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Solution> solve_essd_dp_days(const Instance& inst, const Caps& caps) {
  require_essd(inst);
  const int n = inst.n;
  const int m = inst.m();
  const int k = inst.k;

  std::vector<int> deadline(m);
  std::vector<long long> radix(m + 1, 1);  // radix[j] = prod_{j' < j} (d_j' + 1)
  for (int j = 0; j < m; ++j) {
    deadline[j] = inst.days[j].common_deadline();
    radix[j + 1] = radix[j] * (deadline[j] + 1);
    if (radix[j + 1] > caps.table_cells)
      throw CapExceeded("budget-vector table exceeds the configured cap");
  }
  const long long cells = radix[m];

  // layers[i][code] : clients 0..i-1 placed, budgets encoded in mixed radix
  std::vector<std::vector<bool>> layers(n + 1, std::vector<bool>(cells, false));
  layers[0].assign(cells, true);

  std::vector<int> pick;
  std::vector<int> budgets(m);
  std::vector<int> p(m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < m; ++j) p[j] = inst.days[j].jobs[i - 1].processing;
    for (long long code = 0; code < cells; ++code) {
      long long rest = code;
      for (int j = 0; j < m; ++j) {
        budgets[j] = static_cast<int>(rest % (deadline[j] + 1));
        rest /= deadline[j] + 1;
      }
      bool ok = false;
      first_combination(pick, m, k);
      do {
        long long prev = code;
        bool fits = true;
        for (int day : pick) {
          if (budgets[day] < p[day]) {
            fits = false;
            break;
          }
          prev -= radix[day] * p[day];
        }
        if (fits && layers[i - 1][prev]) {
          ok = true;
          break;
        }
      } while (next_combination(pick, m));
      layers[i][code] = ok;
    }
  }

  if (!layers[n][cells - 1]) return std::nullopt;

  // traceback: rediscover, per client, the first day subset that works
  Solution sol;
  sol.satisfied.assign(m, {});
  long long code = cells - 1;
  for (int i = n; i >= 1; --i) {
    if (k == 0) continue;
    long long rest = code;
    for (int j = 0; j < m; ++j) {
      budgets[j] = static_cast<int>(rest % (deadline[j] + 1));
      rest /= deadline[j] + 1;
    }
    bool found = false;
    first_combination(pick, m, k);
    do {
      long long prev = code;
      bool fits = true;
      for (int day : pick) {
        int p = inst.days[day].jobs[i - 1].processing;
        if (budgets[day] < p) {
          fits = false;
          break;
        }
        prev -= radix[day] * p;
      }
      if (fits && layers[i - 1][prev]) {
        for (int day : pick) sol.satisfied[day].push_back(i - 1);
        code = prev;
        found = true;
        break;
      }
    } while (next_combination(pick, m));
    if (!found) throw std::logic_error("dp-days traceback lost its witness");
  }
  for (std::vector<int>& day : sol.satisfied) std::sort(day.begin(), day.end());
  return sol;
}

std::optional<Solution> solve_essd_dp_clients(const Instance& inst, const Caps& caps) {
  require_essd(inst);
  const int n = inst.n;
  const int m = inst.m();
  const int k = inst.k;

  long long cells = 1;
  for (int i = 0; i < n; ++i) {
    cells *= k + 1;
    if (cells > caps.table_cells)
      throw CapExceeded("count-vector table exceeds the configured cap");
  }

  // forward reachability over saturating count vectors, one layer per day
  std::vector<std::vector<bool>> layers(m + 1, std::vector<bool>(cells, false));
  // witness per (day, state): subset scheduled on that day and predecessor
  std::vector<std::vector<std::pair<int, long long>>> trace(
      m + 1, std::vector<std::pair<int, long long>>(cells, {-1, -1}));
  layers[0][0] = true;

  std::vector<long long> power(n + 1, 1);
  for (int i = 0; i < n; ++i) power[i + 1] = power[i] * (k + 1);

  std::vector<int> counts(n);
  for (int j = 1; j <= m; ++j) {
    const Day& day = inst.days[j - 1];
    const long long d = day.common_deadline();
    // subsets with total processing within the deadline
    std::vector<int> feasible_subsets;
    for (int mask = 0; mask < (1 << n); ++mask) {
      long long total = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) total += day.jobs[i].processing;
      if (total <= d) feasible_subsets.push_back(mask);
    }
    for (long long code = 0; code < cells; ++code) {
      if (!layers[j - 1][code]) continue;
      long long rest = code;
      for (int i = 0; i < n; ++i) {
        counts[i] = static_cast<int>(rest % (k + 1));
        rest /= k + 1;
      }
      for (int mask : feasible_subsets) {
        long long next = code;
        for (int i = 0; i < n; ++i)
          if ((mask >> i & 1) && counts[i] < k) next += power[i];
        if (!layers[j][next]) {
          layers[j][next] = true;
          trace[j][next] = {mask, code};
        }
      }
    }
  }

  const long long goal = cells - 1;
  if (!layers[m][goal]) return std::nullopt;

  Solution sol;
  sol.satisfied.assign(m, {});
  long long state = goal;
  for (int j = m; j >= 1; --j) {
    auto [mask, prev] = trace[j][state];
    if (mask < 0) throw std::logic_error("dp-clients traceback lost its witness");
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) sol.satisfied[j - 1].push_back(i);
    state = prev;
  }
  return sol;
}

std::vector<DayClass> day_equivalence_classes(const Instance& inst, const Caps& caps) {
  require_essd(inst);
  if (inst.n > caps.signature_clients)
    throw CapExceeded("feasibility signatures are capped at " +
                      std::to_string(caps.signature_clients) + " clients");
  const int n = inst.n;
  std::map<std::vector<bool>, int> index_of;
  std::vector<DayClass> classes;
  for (int j = 0; j < inst.m(); ++j) {
    const Day& day = inst.days[j];
    const long long d = day.common_deadline();
    std::vector<bool> signature(std::size_t{1} << n);
    for (int mask = 0; mask < (1 << n); ++mask) {
      long long total = 0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) total += day.jobs[i].processing;
      signature[mask] = total <= d;
    }
    auto [it, inserted] = index_of.try_emplace(signature, classes.size());
    if (inserted) classes.push_back({signature, {}});
    classes[it->second].days.push_back(j);
  }
  return classes;
}

IpModel build_essd_ilp(const Instance& inst, const std::vector<DayClass>& classes) {
  require_essd(inst);
  const int n = inst.n;
  IpModel model;
  // variable x_{E,S}: how many days of class E schedule exactly the set S
  std::vector<std::vector<int>> var(classes.size());
  for (size_t e = 0; e < classes.size(); ++e) {
    var[e].resize(std::size_t{1} << n);
    const long long size = static_cast<long long>(classes[e].days.size());
    for (int mask = 0; mask < (1 << n); ++mask)
      var[e][mask] = model.add_variable(
          "xE" + std::to_string(e) + "_S" + std::to_string(mask), 0, size);
  }
  // forbidden pairs: S does not fit the days of E
  for (size_t e = 0; e < classes.size(); ++e)
    for (int mask = 0; mask < (1 << n); ++mask)
      if (!classes[e].signature[mask])
        model.add_constraint("forbid_E" + std::to_string(e) + "_S" + std::to_string(mask),
                             {{var[e][mask], 1}}, Relation::Equal, 0);
  // every client appears in at least k scheduled sets
  for (int i = 0; i < n; ++i) {
    std::vector<LinearTerm> terms;
    for (size_t e = 0; e < classes.size(); ++e)
      for (int mask = 0; mask < (1 << n); ++mask)
        if (mask >> i & 1) terms.push_back({var[e][mask], 1});
    model.add_constraint("cover_client" + std::to_string(i), std::move(terms),
                         Relation::GreaterEq, inst.k);
  }
  // each class hands out exactly its days
  for (size_t e = 0; e < classes.size(); ++e) {
    std::vector<LinearTerm> terms;
    for (int mask = 0; mask < (1 << n); ++mask) terms.push_back({var[e][mask], 1});
    model.add_constraint("days_E" + std::to_string(e), std::move(terms), Relation::Equal,
                         static_cast<long long>(classes[e].days.size()));
  }
  return model;
}

Solution essd_solution_from_assignment(const Instance& inst,
                                       const std::vector<DayClass>& classes,
                                       const std::vector<long long>& assignment) {
  const int n = inst.n;
  Solution sol;
  sol.satisfied.assign(inst.m(), {});
  size_t v = 0;
  for (const DayClass& cls : classes) {
    size_t next_day = 0;
    for (int mask = 0; mask < (1 << n); ++mask, ++v) {
      for (long long copies = assignment[v]; copies > 0; --copies) {
        if (next_day >= cls.days.size())
          throw std::logic_error("class assignment exceeds its day count");
        int day = cls.days[next_day++];
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) sol.satisfied[day].push_back(i);
      }
    }
    if (next_day != cls.days.size())
      throw std::logic_error("class assignment does not cover its days");
  }
  return sol;
}

std::optional<Solution> solve_essd_ilp(const Instance& inst, const Caps& caps) {
  std::vector<DayClass> classes = day_equivalence_classes(inst, caps);
  if (static_cast<long long>(classes.size()) * (1LL << inst.n) > caps.table_cells)
    throw CapExceeded("class model exceeds the configured cap");
  IpModel model = build_essd_ilp(inst, classes);
  std::optional<std::vector<long long>> assignment = solve_ip(model, caps);
  if (!assignment) return std::nullopt;
  return essd_solution_from_assignment(inst, classes, *assignment);
}

}  // namespace equisched
