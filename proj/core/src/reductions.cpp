#include "equisched/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "equisched/bipartite.hpp"
#include "equisched/feasibility.hpp"

namespace equisched::reductions {

void Graph::normalize() {
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("graph has a self-loop");
    if (a < 0 || a >= vertices || b < 0 || b >= vertices)
      throw std::invalid_argument("edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Graph::adjacent(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

bool Graph::is_regular(int degree) const {
  std::vector<int> deg(vertices, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return std::all_of(deg.begin(), deg.end(), [&](int d) { return d == degree; });
}

void NaeFormula::validate() const {
  std::vector<int> occurrences(variables, 0);
  for (const std::vector<int>& clause : clauses) {
    if (clause.size() != 2 && clause.size() != 3)
      throw std::invalid_argument("clauses must contain two or three variables");
    for (int v : clause) {
      if (v < 0 || v >= variables)
        throw std::invalid_argument("clause variable out of range");
      ++occurrences[v];
    }
    for (size_t a = 0; a < clause.size(); ++a)
      for (size_t b = a + 1; b < clause.size(); ++b)
        if (clause[a] == clause[b])
          throw std::invalid_argument("clause repeats a variable");
  }
  for (int v = 0; v < variables; ++v)
    if (occurrences[v] != 3)
      throw std::invalid_argument("every variable must occur in exactly three clauses");
}

namespace {

bool extend_vertex_set(const Graph& g, int size, bool want_adjacent,
                       std::vector<int>& chosen, int next) {
  if (static_cast<int>(chosen.size()) == size) return true;
  for (int v = next; v < g.vertices; ++v) {
    if (g.vertices - v < size - static_cast<int>(chosen.size())) return false;
    bool compatible = true;
    for (int u : chosen)
      if (g.adjacent(u, v) != want_adjacent) {
        compatible = false;
        break;
      }
    if (!compatible) continue;
    chosen.push_back(v);
    if (extend_vertex_set(g, size, want_adjacent, chosen, v + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool has_independent_set(const Graph& g, int size) {
  if (size <= 0) return true;
  if (size > g.vertices) return false;
  std::vector<int> chosen;
  return extend_vertex_set(g, size, false, chosen, 0);
}

bool has_clique(const Graph& g, int size) {
  if (size <= 0) return true;
  if (size > g.vertices) return false;
  std::vector<int> chosen;
  return extend_vertex_set(g, size, true, chosen, 0);
}

bool is_independent_set(const Graph& g, const std::vector<int>& vertex_set) {
  for (size_t a = 0; a < vertex_set.size(); ++a)
    for (size_t b = a + 1; b < vertex_set.size(); ++b)
      if (vertex_set[a] == vertex_set[b] || g.adjacent(vertex_set[a], vertex_set[b]))
        return false;
  return true;
}

bool is_clique(const Graph& g, const std::vector<int>& vertex_set) {
  for (size_t a = 0; a < vertex_set.size(); ++a)
    for (size_t b = a + 1; b < vertex_set.size(); ++b)
      if (vertex_set[a] == vertex_set[b] || !g.adjacent(vertex_set[a], vertex_set[b]))
        return false;
  return true;
}

bool bin_packing_feasible(const BinPacking& bp) {
  std::vector<int> order(bp.sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return bp.sizes[a] > bp.sizes[b]; });
  std::vector<long long> loads(bp.bins, 0);
  auto rec = [&](auto&& self, size_t idx) -> bool {
    if (idx == order.size()) return true;
    const int size = bp.sizes[order[idx]];
    long long tried = -1;
    for (int b = 0; b < bp.bins; ++b) {
      if (loads[b] == tried) continue;  // identical bins are interchangeable
      if (loads[b] + size > bp.capacity) continue;
      tried = loads[b];
      loads[b] += size;
      if (self(self, idx + 1)) return true;
      loads[b] -= size;
    }
    return false;
  };
  return rec(rec, 0);
}

bool nae_satisfies(const NaeFormula& f, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != f.variables) return false;
  for (const std::vector<int>& clause : f.clauses) {
    bool any_true = false, any_false = false;
    for (int v : clause) {
      any_true = any_true || assignment[v];
      any_false = any_false || !assignment[v];
    }
    if (!any_true || !any_false) return false;
  }
  return true;
}

bool nae_satisfiable(const NaeFormula& f) {
  if (f.variables > 24) throw CapExceeded("NAE brute force is capped at 24 variables");
  for (std::uint32_t bits = 0; bits < (1u << f.variables); ++bits) {
    std::vector<bool> assignment(f.variables);
    for (int v = 0; v < f.variables; ++v) assignment[v] = bits >> v & 1;
    if (nae_satisfies(f, assignment)) return true;
  }
  return f.variables == 0 && f.clauses.empty();
}

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::IndependentSet: return "independent-set";
    case ReductionKind::BinPacking: return "bin-packing";
    case ReductionKind::Clique: return "clique";
    case ReductionKind::NaeSat: return "nae-sat";
    case ReductionKind::EspcStar: return "espc-star";
    case ReductionKind::PathCap: return "path-cap";
  }
  return "unknown";
}

ReductionCertificate reduce_independent_set(const Graph& graph, int l) {
  Graph g = graph;
  g.normalize();
  if (!g.is_regular(3)) throw std::invalid_argument("graph must be 3-regular");
  if (l < 1 || l > g.vertices)
    throw std::invalid_argument("independent-set size out of range");
  const int nv = g.vertices;
  const int ne = static_cast<int>(g.edges.size());

  ReductionCertificate cert;
  cert.kind = ReductionKind::IndependentSet;
  cert.graph = g;
  cert.parameter = l;
  cert.vertex_clients = nv;
  cert.edge_clients = ne;

  Instance& inst = cert.produced;
  inst.variant = Variant::Essd;
  inst.n = nv + ne;
  inst.k = 1;
  // day i (one per vertex): only the job of vertex client i fits alone, or
  // the unit jobs of the edges incident to vertex i fit together
  for (int i = 0; i < nv; ++i) {
    Day day;
    day.jobs.resize(inst.n);
    for (int v = 0; v < nv; ++v) day.jobs[v] = {v == i ? 3 : 4, 3, 0};
    for (int e = 0; e < ne; ++e) {
      bool incident = g.edges[e].first == i || g.edges[e].second == i;
      day.jobs[nv + e] = {incident ? 1 : 4, 3, 0};
    }
    inst.days.push_back(std::move(day));
  }
  // overflow days: any single vertex client fits
  for (int j = nv; j < 2 * nv - l; ++j) {
    Day day;
    day.jobs.resize(inst.n);
    for (int v = 0; v < nv; ++v) day.jobs[v] = {3, 3, 0};
    for (int e = 0; e < ne; ++e) day.jobs[nv + e] = {4, 3, 0};
    inst.days.push_back(std::move(day));
  }
  inst.normalize();
  return cert;
}

ReductionCertificate reduce_bin_packing(const BinPacking& bp) {
  if (bp.bins < 1) throw std::invalid_argument("need at least one bin");
  if (bp.capacity < 1) throw std::invalid_argument("bin capacity must be positive");
  if (bp.sizes.empty()) throw std::invalid_argument("need at least one item");
  for (int s : bp.sizes)
    if (s < 1) throw std::invalid_argument("item sizes must be positive");

  ReductionCertificate cert;
  cert.kind = ReductionKind::BinPacking;
  cert.packing = bp;

  Instance& inst = cert.produced;
  inst.variant = Variant::Essd;
  inst.starred = true;
  inst.n = static_cast<int>(bp.sizes.size());
  inst.k = 1;
  Day day;
  for (int s : bp.sizes) day.jobs.push_back({s, bp.capacity, 0});
  inst.days.assign(bp.bins, day);
  inst.normalize();
  return cert;
}

ReductionCertificate reduce_clique(const Graph& graph, int h) {
  Graph g = graph;
  g.normalize();
  if (h < 2 || h > g.vertices) throw std::invalid_argument("clique size out of range");
  const int nv = g.vertices;
  const int ne = static_cast<int>(g.edges.size());
  const int pairs = h * (h - 1) / 2;

  ReductionCertificate cert;
  cert.kind = ReductionKind::Clique;
  cert.graph = g;
  cert.parameter = h;
  cert.vertex_clients = nv;
  cert.edge_clients = ne;

  Instance& inst = cert.produced;
  inst.variant = Variant::Espc;
  inst.k = 1;
  if (ne < pairs) {
    // Day one would get a nonpositive deadline; the answer is trivially NO,
    // so emit a canonical infeasible two-day instance instead.
    cert.trivial_no = true;
    inst.n = 2;
    Day day;
    day.jobs = {{1, 1, 0}, {1, 1, 0}};
    day.precedence = Dag{{{0, 1}}};
    inst.days.assign(2, day);
    inst.normalize();
    return cert;
  }

  inst.n = nv + ne;
  // day one: a path through all vertex clients feeding every edge client
  {
    Day day;
    day.jobs.assign(inst.n, {1, nv + ne - pairs, 0});
    Dag dag;
    for (int v = 0; v + 1 < nv; ++v) dag.arcs.emplace_back(v, v + 1);
    for (int e = 0; e < ne; ++e) dag.arcs.emplace_back(nv - 1, nv + e);
    dag.normalize();
    day.precedence = std::move(dag);
    inst.days.push_back(std::move(day));
  }
  // day two: each edge client behind its two endpoints
  {
    Day day;
    day.jobs.assign(inst.n, {1, h + pairs, 0});
    Dag dag;
    for (int e = 0; e < ne; ++e) {
      dag.arcs.emplace_back(g.edges[e].first, nv + e);
      dag.arcs.emplace_back(g.edges[e].second, nv + e);
    }
    dag.normalize();
    day.precedence = std::move(dag);
    inst.days.push_back(std::move(day));
  }
  inst.normalize();
  return cert;
}

namespace {

// One day of the NAE construction: up to two paths; every client not named
// in a path is appended to the tail of path `chain_into`, in ascending
// order, so that it cannot finish before the deadline of three.
Day nae_day(int n, std::vector<std::vector<int>> paths, size_t chain_into) {
  std::vector<char> placed(n, 0);
  for (const std::vector<int>& path : paths)
    for (int c : path) {
      if (placed[c]) throw std::logic_error("client repeated across paths");
      placed[c] = 1;
    }
  for (int c = 0; c < n; ++c)
    if (!placed[c]) paths[chain_into].push_back(c);
  Day day;
  day.jobs.assign(n, {1, 3, 0});
  Dag dag;
  for (const std::vector<int>& path : paths)
    for (size_t t = 0; t + 1 < path.size(); ++t)
      dag.arcs.emplace_back(path[t], path[t + 1]);
  dag.normalize();
  day.precedence = std::move(dag);
  return day;
}

}  // namespace

ReductionCertificate reduce_nae_sat(const NaeFormula& formula) {
  formula.validate();
  const int a = formula.variables;
  const int clauses = static_cast<int>(formula.clauses.size());

  // a matching saturating the variables in the variable-clause incidence
  // graph; it exists by Hall's condition because every variable meets three
  // clauses and clauses hold at most three variables
  std::vector<std::vector<int>> incidence(a);
  for (int c = 0; c < clauses; ++c)
    for (int v : formula.clauses[c]) incidence[v].push_back(c);
  BipartiteMatching matching = hopcroft_karp_matching(incidence, clauses);
  if (matching.size != a)
    throw std::invalid_argument("incidence graph has no variable-saturating matching");

  // occurrence numbering: the matched clause is the third occurrence of its
  // variable, the other two keep input order
  std::map<std::pair<int, int>, int> occurrence;  // (variable, clause) -> 0|1|2
  for (int v = 0; v < a; ++v) {
    int t = 0;
    for (int c : incidence[v])
      if (c != matching.left_match[v]) occurrence[{v, c}] = t++;
    occurrence[{v, matching.left_match[v]}] = 2;
  }
  // clause-internal order: the variable matched to the clause goes last
  std::vector<std::vector<int>> ordered(clauses);
  for (int c = 0; c < clauses; ++c) {
    int last = matching.right_match[c];
    for (int v : formula.clauses[c])
      if (v != last) ordered[c].push_back(v);
    if (last >= 0) ordered[c].push_back(last);
  }

  ReductionCertificate cert;
  cert.kind = ReductionKind::NaeSat;
  cert.formula = formula;

  const int n = 6 * a + 3;
  auto t_client = [&](int variable, int occ) { return variable * 6 + occ; };
  auto f_client = [&](int variable, int occ) { return variable * 6 + 3 + occ; };
  const int d1 = 6 * a, d2 = 6 * a + 1, d3 = 6 * a + 2;

  Instance& inst = cert.produced;
  inst.variant = Variant::Espc;
  inst.n = n;
  inst.k = 1;

  // dummy day: one long path headed by the three dummy clients
  inst.days.push_back(nae_day(n, {{d1, d2, d3}}, 0));
  // variable days: the true triple against the false triple
  cert.variable_day.resize(a);
  cert.false_clients.resize(a);
  for (int v = 0; v < a; ++v) {
    cert.variable_day[v] = static_cast<int>(inst.days.size());
    cert.false_clients[v] = {f_client(v, 0), f_client(v, 1), f_client(v, 2)};
    inst.days.push_back(nae_day(
        n,
        {{t_client(v, 0), t_client(v, 1), t_client(v, 2)},
         {f_client(v, 0), f_client(v, 1), f_client(v, 2)}},
        1));
  }
  // clause days, two-variable clauses first
  for (int c = 0; c < clauses; ++c) {
    if (ordered[c].size() != 2) continue;
    const int y = ordered[c][0], z = ordered[c][1];
    const int ty = occurrence[{y, c}], tz = occurrence[{z, c}];
    inst.days.push_back(nae_day(
        n, {{d1, t_client(y, ty), f_client(z, tz)}, {d2, f_client(y, ty), t_client(z, tz)}},
        0));
  }
  for (int c = 0; c < clauses; ++c) {
    if (ordered[c].size() != 3) continue;
    const int y = ordered[c][0], z = ordered[c][1], w = ordered[c][2];
    const int t1 = occurrence[{y, c}], t2 = occurrence[{z, c}], t3 = occurrence[{w, c}];
    inst.days.push_back(nae_day(
        n,
        {{f_client(y, t1), f_client(z, t2), t_client(w, t3)},
         {t_client(y, t1), t_client(z, t2), f_client(w, t3)}},
        0));
    inst.days.push_back(nae_day(
        n, {{d1, f_client(y, t1), t_client(z, t2)}, {d2, t_client(y, t1), f_client(z, t2)}},
        0));
  }
  inst.normalize();
  return cert;
}

ReductionCertificate expand_to_espc_star(const Instance& essd_star, long long unary_cap) {
  if (essd_star.variant != Variant::Essd || !essd_star.starred)
    throw std::invalid_argument("expansion requires a starred ESSD instance");
  essd_star.validate();
  const int n = essd_star.n;
  const Day& source_day = essd_star.days.front();
  long long dummies = 0;
  for (const Job& job : source_day.jobs) dummies += job.processing - 1;
  if (dummies > unary_cap)
    throw CapExceeded("unary path expansion exceeds the configured cap");

  ReductionCertificate cert;
  cert.kind = ReductionKind::EspcStar;
  cert.source_instance = essd_star;
  cert.original_clients.resize(n);
  std::iota(cert.original_clients.begin(), cert.original_clients.end(), 0);

  Instance& inst = cert.produced;
  inst.variant = Variant::Espc;
  inst.starred = true;
  inst.n = n + static_cast<int>(dummies);
  inst.k = essd_star.k;
  Day day;
  day.jobs.assign(inst.n, {1, source_day.common_deadline(), 0});
  Dag dag;
  int next_dummy = n;
  for (int i = 0; i < n; ++i) {
    int previous = -1;
    for (int step = 1; step < source_day.jobs[i].processing; ++step) {
      if (previous >= 0) dag.arcs.emplace_back(previous, next_dummy);
      previous = next_dummy++;
    }
    if (previous >= 0) dag.arcs.emplace_back(previous, i);
  }
  dag.normalize();
  day.precedence = std::move(dag);
  inst.days.assign(essd_star.m(), day);
  inst.normalize();
  return cert;
}

namespace {

// Decomposes a disjoint-path DAG into its paths; throws if the DAG is not a
// union of vertex-disjoint paths.
std::vector<std::vector<int>> path_decomposition(const Dag& dag, int n) {
  std::vector<int> succ(n, -1), pred(n, -1);
  for (auto [a, b] : dag.arcs) {
    if (succ[a] != -1 || pred[b] != -1)
      throw std::invalid_argument("precedence DAG is not a union of disjoint paths");
    succ[a] = b;
    pred[b] = a;
  }
  std::vector<std::vector<int>> paths;
  std::vector<char> visited(n, 0);
  for (int v = 0; v < n; ++v) {
    if (pred[v] != -1 || visited[v]) continue;
    std::vector<int> path;
    for (int u = v; u != -1; u = succ[u]) {
      if (visited[u])
        throw std::invalid_argument("precedence DAG is not a union of disjoint paths");
      visited[u] = 1;
      path.push_back(u);
    }
    paths.push_back(std::move(path));
  }
  for (int v = 0; v < n; ++v)
    if (!visited[v])
      throw std::invalid_argument("precedence DAG is not a union of disjoint paths");
  return paths;
}

}  // namespace

ReductionCertificate cap_path_lengths(const Instance& espc_paths) {
  if (espc_paths.variant != Variant::Espc)
    throw std::invalid_argument("path capping requires an ESPC instance");
  if (espc_paths.k != 1)
    throw std::invalid_argument("path capping is defined for k = 1");
  espc_paths.validate();
  for (const Day& day : espc_paths.days)
    if (day.common_deadline() != 3)
      throw std::invalid_argument("path capping is defined for deadline 3");
  const int n = espc_paths.n;
  const int m = espc_paths.m();

  ReductionCertificate cert;
  cert.kind = ReductionKind::PathCap;
  cert.source_instance = espc_paths;
  cert.original_clients.resize(n);
  std::iota(cert.original_clients.begin(), cert.original_clients.end(), 0);

  Instance& inst = cert.produced;
  inst.variant = Variant::Espc;
  inst.n = n + 3 * n;  // three absorbing dummies per original client
  inst.k = 1;

  for (int j = 0; j < m; ++j) {
    std::vector<std::vector<int>> paths =
        path_decomposition(*espc_paths.days[j].precedence, n);
    Dag dag;
    int next_dummy = n;
    std::vector<int> leftover;
    for (const std::vector<int>& path : paths) {
      for (size_t t = 0; t + 1 < path.size() && t + 1 < 4; ++t)
        dag.arcs.emplace_back(path[t], path[t + 1]);
      for (size_t t = 4; t < path.size(); ++t) {
        // a three-dummy prefix keeps this deep job out of reach of d = 3
        int a = next_dummy++, b = next_dummy++, c = next_dummy++;
        dag.arcs.emplace_back(a, b);
        dag.arcs.emplace_back(b, c);
        dag.arcs.emplace_back(c, path[t]);
      }
    }
    for (int dummy = next_dummy; dummy < inst.n; ++dummy) leftover.push_back(dummy);
    for (size_t t = 0; t < leftover.size(); ++t)
      if (t % 4 != 0) dag.arcs.emplace_back(leftover[t - 1], leftover[t]);
    dag.normalize();
    Day day;
    day.jobs.assign(inst.n, {1, 3, 0});
    day.precedence = std::move(dag);
    inst.days.push_back(std::move(day));
  }
  // absorbing days: one path of three dummies feeding each original client
  Day absorb;
  absorb.jobs.assign(inst.n, {1, 3, 0});
  Dag dag;
  for (int q = 0; q < n; ++q) {
    dag.arcs.emplace_back(n + 3 * q, n + 3 * q + 1);
    dag.arcs.emplace_back(n + 3 * q + 1, n + 3 * q + 2);
    dag.arcs.emplace_back(n + 3 * q + 2, q);
  }
  dag.normalize();
  absorb.precedence = std::move(dag);
  for (int q = 0; q < n; ++q) {
    cert.tagged_days.push_back(static_cast<int>(inst.days.size()));
    inst.days.push_back(absorb);
  }
  inst.normalize();
  return cert;
}

PullBack pull_back(const ReductionCertificate& cert, const Solution& sol) {
  EquityReport report = verify_solution(cert.produced, sol);
  if (!report.k_equitable)
    throw std::invalid_argument("solution is not k-equitable for the produced instance");
  PullBack result;
  switch (cert.kind) {
    case ReductionKind::IndependentSet: {
      for (int v = 0; v < cert.vertex_clients; ++v)
        if (std::binary_search(sol.satisfied[v].begin(), sol.satisfied[v].end(), v))
          result.vertex_set.push_back(v);
      if (static_cast<int>(result.vertex_set.size()) < cert.parameter ||
          !is_independent_set(cert.graph, result.vertex_set))
        throw std::invalid_argument("solution does not induce an independent set");
      break;
    }
    case ReductionKind::BinPacking: {
      result.item_to_bin.assign(cert.produced.n, -1);
      for (int j = 0; j < cert.produced.m(); ++j)
        for (int item : sol.satisfied[j])
          if (result.item_to_bin[item] < 0) result.item_to_bin[item] = j;
      std::vector<long long> load(cert.packing.bins, 0);
      for (int item = 0; item < cert.produced.n; ++item) {
        if (result.item_to_bin[item] < 0)
          throw std::invalid_argument("solution leaves an item unpacked");
        load[result.item_to_bin[item]] += cert.packing.sizes[item];
      }
      for (long long l : load)
        if (l > cert.packing.capacity)
          throw std::invalid_argument("solution overfills a bin");
      break;
    }
    case ReductionKind::Clique: {
      if (cert.trivial_no)
        throw std::invalid_argument("trivially infeasible reduction has no certificate");
      for (int v = 0; v < cert.vertex_clients; ++v)
        if (std::binary_search(sol.satisfied[1].begin(), sol.satisfied[1].end(), v))
          result.vertex_set.push_back(v);
      if (static_cast<int>(result.vertex_set.size()) != cert.parameter ||
          !is_clique(cert.graph, result.vertex_set))
        throw std::invalid_argument("solution does not induce a clique");
      break;
    }
    case ReductionKind::NaeSat: {
      const int a = cert.formula.variables;
      result.assignment.assign(a, false);
      for (int v = 0; v < a; ++v) {
        const std::vector<int>& day = sol.satisfied[cert.variable_day[v]];
        bool all_false_clients = true;
        for (int c : cert.false_clients[v])
          all_false_clients =
              all_false_clients && std::binary_search(day.begin(), day.end(), c);
        result.assignment[v] = all_false_clients;
      }
      if (!nae_satisfies(cert.formula, result.assignment))
        throw std::invalid_argument("solution does not induce an NAE assignment");
      break;
    }
    case ReductionKind::EspcStar:
    case ReductionKind::PathCap: {
      const int source_days = cert.source_instance.m();
      const int source_clients = cert.source_instance.n;
      result.source_solution.satisfied.assign(source_days, {});
      for (int j = 0; j < source_days; ++j)
        for (int c : sol.satisfied[j])
          if (c < source_clients) result.source_solution.satisfied[j].push_back(c);
      EquityReport back = verify_solution(cert.source_instance, result.source_solution);
      if (!back.k_equitable)
        throw std::invalid_argument("solution does not map back to the source instance");
      break;
    }
  }
  return result;
}

std::string serialize_certificate(const ReductionCertificate& cert) {
  nlohmann::json doc;
  doc["kind"] = to_string(cert.kind);
  doc["trivial_no"] = cert.trivial_no;
  doc["produced"] = {{"n", cert.produced.n},
                     {"m", cert.produced.m()},
                     {"k", cert.produced.k},
                     {"variant", equisched::to_string(cert.produced.variant)}};
  switch (cert.kind) {
    case ReductionKind::IndependentSet:
    case ReductionKind::Clique: {
      doc["parameter"] = cert.parameter;
      doc["graph"] = {{"vertices", cert.graph.vertices}, {"edges", nlohmann::json::array()}};
      for (auto [a, b] : cert.graph.edges)
        doc["graph"]["edges"].push_back({a + 1, b + 1});
      doc["vertex_clients"] = cert.vertex_clients;
      doc["edge_clients"] = cert.edge_clients;
      break;
    }
    case ReductionKind::BinPacking: {
      doc["packing"] = {{"bins", cert.packing.bins},
                        {"capacity", cert.packing.capacity},
                        {"sizes", cert.packing.sizes}};
      break;
    }
    case ReductionKind::NaeSat: {
      doc["formula"] = {{"variables", cert.formula.variables},
                        {"clauses", nlohmann::json::array()}};
      for (const std::vector<int>& clause : cert.formula.clauses) {
        nlohmann::json c = nlohmann::json::array();
        for (int v : clause) c.push_back(v + 1);
        doc["formula"]["clauses"].push_back(c);
      }
      doc["variable_day"] = nlohmann::json::array();
      for (int day : cert.variable_day) doc["variable_day"].push_back(day + 1);
      break;
    }
    case ReductionKind::EspcStar:
    case ReductionKind::PathCap: {
      doc["source_clients"] = static_cast<int>(cert.original_clients.size());
      doc["tagged_days"] = nlohmann::json::array();
      for (int day : cert.tagged_days) doc["tagged_days"].push_back(day + 1);
      break;
    }
  }
  return doc.dump(2) + "\n";
}

Instance generate_random(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || spec.m < 1) throw std::invalid_argument("need n >= 1 and m >= 1");
  if (spec.k < 0 || spec.k > spec.m) throw std::invalid_argument("k must lie in {0..m}");
  if (spec.processing_max < 1 || spec.deadline_max < 1)
    throw std::invalid_argument("processing and deadline ranges must be positive");
  if (spec.release_probability < 0.0 || spec.release_probability > 1.0)
    throw std::invalid_argument("release probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  Instance inst;
  inst.variant = spec.variant;
  inst.starred = spec.starred;
  inst.n = spec.n;
  inst.k = spec.k;
  const int day_count = spec.starred ? 1 : spec.m;
  for (int j = 0; j < day_count; ++j) {
    Day day;
    day.jobs.resize(spec.n);
    switch (spec.variant) {
      case Variant::Esup: {
        for (Job& job : day.jobs) {
          job.processing = 1;
          job.deadline = uniform(1, spec.deadline_max);
          if (spec.release_probability > 0.0 &&
              std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
                  spec.release_probability)
            job.release = uniform(0, job.deadline - 1);
        }
        if (spec.machines_max > 1) day.machines = uniform(1, spec.machines_max);
        break;
      }
      case Variant::Essd: {
        int deadline = uniform(1, spec.deadline_max);
        for (Job& job : day.jobs) {
          job.processing = uniform(1, spec.processing_max);
          job.deadline = deadline;
        }
        break;
      }
      case Variant::Espc: {
        int deadline = uniform(1, spec.deadline_max);
        for (Job& job : day.jobs) {
          job.processing = 1;
          job.deadline = deadline;
        }
        Dag dag;
        int pool = spec.arc_client_pool > 0 ? std::min(spec.arc_client_pool, spec.n)
                                            : spec.n;
        std::vector<int> candidates(pool);
        std::iota(candidates.begin(), candidates.end(), 0);
        std::shuffle(candidates.begin(), candidates.end(), rng);
        size_t cursor = 0;
        const int paths = uniform(0, spec.dag_paths_max);
        for (int p = 0; p < paths; ++p) {
          int length = uniform(2, std::max(2, spec.dag_path_length_max));
          std::vector<int> path;
          while (static_cast<int>(path.size()) < length && cursor < candidates.size())
            path.push_back(candidates[cursor++]);
          for (size_t t = 0; t + 1 < path.size(); ++t)
            dag.arcs.emplace_back(path[t], path[t + 1]);
        }
        dag.normalize();
        day.precedence = std::move(dag);
        break;
      }
      case Variant::General: {
        for (Job& job : day.jobs) {
          job.processing = uniform(1, spec.processing_max);
          job.deadline = uniform(1, spec.deadline_max);
          if (spec.release_probability > 0.0 &&
              std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
                  spec.release_probability)
            job.release = uniform(0, job.deadline - 1);
        }
        break;
      }
    }
    inst.days.push_back(std::move(day));
  }
  if (spec.starred) inst.days.assign(spec.m, inst.days.front());
  inst.normalize();
  return inst;
}

namespace {

std::vector<long long> all_integers(const std::string& text) {
  std::vector<long long> values;
  std::istringstream in(text);
  long long v;
  while (in >> v) values.push_back(v);
  return values;
}

}  // namespace

Graph parse_dimacs_graph(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      int edges = 0;
      if (!(ls >> kind >> g.vertices >> edges))
        throw std::invalid_argument("malformed DIMACS problem line");
      have_header = true;
    } else if (tag == "e") {
      int a = 0, b = 0;
      if (!have_header) throw std::invalid_argument("edge before DIMACS problem line");
      if (!(ls >> a >> b)) throw std::invalid_argument("malformed DIMACS edge line");
      g.edges.emplace_back(a - 1, b - 1);
    } else {
      throw std::invalid_argument("unexpected DIMACS line: " + line);
    }
  }
  if (!have_header) throw std::invalid_argument("missing DIMACS problem line");
  g.normalize();
  return g;
}

BinPacking parse_bin_packing(const std::string& text) {
  std::vector<long long> values = all_integers(text);
  if (values.size() < 3)
    throw std::invalid_argument("bin-packing input needs bins, capacity, and items");
  BinPacking bp;
  bp.bins = static_cast<int>(values[0]);
  bp.capacity = static_cast<int>(values[1]);
  for (size_t i = 2; i < values.size(); ++i) bp.sizes.push_back(static_cast<int>(values[i]));
  return bp;
}

NaeFormula parse_dimacs_cnf(const std::string& text) {
  NaeFormula f;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::vector<int> clause;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      int clauses = 0;
      if (!(ls >> kind >> f.variables >> clauses) || kind != "cnf")
        throw std::invalid_argument("malformed CNF problem line");
      have_header = true;
      continue;
    }
    if (!have_header) throw std::invalid_argument("clause before CNF problem line");
    std::istringstream rest(line);
    long long literal;
    while (rest >> literal) {
      if (literal == 0) {
        if (!clause.empty()) f.clauses.push_back(clause);
        clause.clear();
      } else {
        if (literal < 0)
          throw std::invalid_argument("only positive (monotone) literals are supported");
        clause.push_back(static_cast<int>(literal) - 1);
      }
    }
  }
  if (!clause.empty()) f.clauses.push_back(clause);
  f.validate();
  return f;
}

}  // namespace equisched::reductions
