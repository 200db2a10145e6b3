#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "equisched/caps.hpp"
#include "equisched/instance.hpp"
#include "equisched/solution.hpp"

namespace equisched::reductions {

// Undirected simple graph, 0-based vertices, edges stored with a < b.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  void normalize();  // orients a < b, sorts, deduplicates, validates
  bool adjacent(int a, int b) const;
  bool is_regular(int degree) const;
};

struct BinPacking {
  std::vector<int> sizes;
  int bins = 0;
  int capacity = 0;
};

// Monotone formula: clauses of two or three distinct positive variables,
// every variable occurring in exactly three clauses (counted per clause).
struct NaeFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const;
};

// Brute-force checkers for the source problems (desk scale).
bool has_independent_set(const Graph& g, int size);
bool has_clique(const Graph& g, int size);
bool bin_packing_feasible(const BinPacking& bp);
bool nae_satisfiable(const NaeFormula& f);

bool is_independent_set(const Graph& g, const std::vector<int>& vertex_set);
bool is_clique(const Graph& g, const std::vector<int>& vertex_set);
bool nae_satisfies(const NaeFormula& f, const std::vector<bool>& assignment);

enum class ReductionKind {
  IndependentSet,  // 3-regular Independent Set -> ESSD, k = 1, d = 3
  BinPacking,      // Unary Bin Packing -> ESSD*, k = 1
  Clique,          // Clique -> ESPC with two days, k = 1
  NaeSat,          // restricted monotone NAE-SAT -> ESPC, d = 3, two paths
  EspcStar,        // ESSD* -> ESPC* via unary processing-time paths
  PathCap,         // ESPC path instance -> paths of length at most four
};

std::string to_string(ReductionKind kind);

// A produced instance together with its source and the layout data needed
// to map a schedule back onto a source certificate.
struct ReductionCertificate {
  ReductionKind kind = ReductionKind::IndependentSet;
  Instance produced;

  Graph graph;          // IndependentSet / Clique
  int parameter = 0;    // independent-set size l or clique size h
  BinPacking packing;   // BinPacking
  NaeFormula formula;   // NaeSat
  Instance source_instance;  // EspcStar / PathCap

  bool trivial_no = false;  // Clique with fewer than C(h,2) edges

  int vertex_clients = 0;
  int edge_clients = 0;
  std::vector<int> variable_day;                    // NaeSat: day of variable j
  std::vector<std::array<int, 3>> false_clients;    // NaeSat: F-occurrence clients
  std::vector<int> original_clients;                // EspcStar / PathCap
  std::vector<int> tagged_days;                     // PathCap: appended days
};

// The source certificate recovered from a schedule; the member matching the
// reduction kind is filled in.
struct PullBack {
  std::vector<int> vertex_set;   // IndependentSet / Clique
  std::vector<int> item_to_bin;  // BinPacking
  std::vector<bool> assignment;  // NaeSat
  Solution source_solution;      // EspcStar / PathCap
};

ReductionCertificate reduce_independent_set(const Graph& g, int l);
ReductionCertificate reduce_bin_packing(const BinPacking& bp);
ReductionCertificate reduce_clique(const Graph& g, int h);
ReductionCertificate reduce_nae_sat(const NaeFormula& f);

// Models each processing time p by a path of p unit jobs ending in the
// original client; preserves k-equitability of the original clients in
// both directions.
ReductionCertificate expand_to_espc_star(const Instance& essd_star, long long unary_cap);

// Rebuilds a k = 1, d = 3 path-DAG ESPC instance so every path has length
// at most four, introducing three dummy clients per original client and one
// absorbing day per original client (appended and tagged).
ReductionCertificate cap_path_lengths(const Instance& espc_paths);

// Maps a k-equitable solution of the produced instance to a source
// certificate and re-validates it against the source; throws
// std::invalid_argument when the solution does not support one.
PullBack pull_back(const ReductionCertificate& cert, const Solution& sol);

std::string serialize_certificate(const ReductionCertificate& cert);

// Seeded instance generator. The same spec and seed always produce the
// same instance, byte for byte.
struct GeneratorSpec {
  Variant variant = Variant::Essd;
  bool starred = false;
  int n = 2;
  int m = 2;
  int k = 1;
  int processing_max = 4;
  int deadline_max = 4;
  double release_probability = 0.0;  // Esup / General
  int machines_max = 1;              // Esup
  int dag_paths_max = 1;             // Espc: disjoint paths per day
  int dag_path_length_max = 3;       // Espc: vertices per path
  int arc_client_pool = 0;           // Espc: clients eligible for arcs (0 = all)
};

Instance generate_random(const GeneratorSpec& spec, std::uint64_t seed);

// Input formats of the reduce subcommand.
Graph parse_dimacs_graph(const std::string& text);       // p edge N M / e u v
BinPacking parse_bin_packing(const std::string& text);   // b B s_1 s_2 ...
NaeFormula parse_dimacs_cnf(const std::string& text);    // p cnf A B / positive clauses

}  // namespace equisched::reductions
