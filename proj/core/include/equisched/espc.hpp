#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "equisched/caps.hpp"
#include "equisched/instance.hpp"
#include "equisched/ip.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// Summary of an ESPC instance around the clients that carry precedence
// arcs: the set A of arc-incident clients, the distinct precedence DAGs
// (identified by exact arc-set equality), and per-(DAG, deadline) day
// counts gamma(G, d).
struct ArcClientProfile {
  std::vector<int> arc_clients;  // A, ascending
  int alpha = 0;                 // |A|
  int beta = 0;                  // distinct arcs across all days

  struct DagGroup {
    Dag dag;
    std::vector<int> days;                 // member days, ascending
    std::map<int, int> days_by_deadline;   // deadline -> count
  };
  std::vector<DagGroup> groups;

  int gamma(int group, int deadline) const;
  int gamma_le(int group, int deadline) const;  // days with deadline <= given
};

ArcClientProfile arc_client_profile(const Instance& inst);

// Variable layout of the ESPC integer program. Subsets of A are bitmasks
// over positions in arc_clients. For each distinct DAG G there is one
// variable per (subset, deadline d in {n-alpha+1 .. n}) pair plus one
// variable per subset covering all days with deadline at most n - alpha.
struct EspcIlpIndex {
  int n = 0;
  int alpha = 0;
  int groups = 0;
  int d_lo = 0;  // n - alpha + 1

  int subsets() const { return 1 << alpha; }
  int per_group() const { return subsets() * (1 + std::max(0, n - d_lo + 1)); }
  int var_le(int group, std::uint32_t mask) const {
    return group * per_group() + static_cast<int>(mask);
  }
  int var_d(int group, std::uint32_t mask, int deadline) const {
    return group * per_group() + subsets() * (1 + deadline - d_lo) +
           static_cast<int>(mask);
  }
  int total() const { return groups * per_group(); }
};

// The eight constraint families: per-(DAG, deadline) totals, totals of the
// low-deadline family, coverage of every arc client, no overloaded day,
// prefix feasibility of low-deadline days, precedence zeroing for both
// variable families, and the aggregate slot count for clients outside A.
IpModel build_espc_ilp(const Instance& inst, const ArcClientProfile& profile,
                       EspcIlpIndex& index, const Caps& caps = Caps::defaults());

// Turns a feasible assignment into a solution: distributes day
// multiplicities to subsets of A (larger subsets onto later deadlines for
// the low-deadline family), then sweeps the days filling free slots with
// the least-scheduled clients outside A.
Solution realize_espc_solution(const Instance& inst, const ArcClientProfile& profile,
                               const EspcIlpIndex& index,
                               const std::vector<long long>& assignment);

// Pipeline: profile -> model -> solve_ip -> realize.
std::optional<Solution> solve_espc(const Instance& inst,
                                   const Caps& caps = Caps::defaults());

}  // namespace equisched
