#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equisched {

// The four problem flavours. General places no restriction on the per-day
// job data; the other three restrict it as follows:
//   Esup: unit processing times (release dates and parallel machines allowed),
//   Essd: one shared deadline per day,
//   Espc: unit processing times, one shared deadline per day, and a
//         precedence DAG per day.
enum class Variant { General, Esup, Essd, Espc };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Precedence constraints over client indices (0-based). An arc (a, b) means
// the job of client a must be processed before the job of client b.
struct Dag {
  std::vector<std::pair<int, int>> arcs;

  // Sorts and deduplicates the arc list; identity of a DAG is its arc set.
  void normalize();
  bool operator==(const Dag&) const = default;
};

bool is_acyclic(const Dag& dag, int node_count);

// Topological order of all node_count clients; throws std::invalid_argument
// on a cycle. Ties are broken by lowest client index.
std::vector<int> topological_order(const Dag& dag, int node_count);

struct Job {
  int processing = 1;
  int deadline = 1;
  int release = 0;
  bool operator==(const Job&) const = default;
};

struct Day {
  std::vector<Job> jobs;          // exactly n entries, indexed by client
  std::optional<Dag> precedence;  // required for Espc days
  int machines = 1;
  bool operator==(const Day&) const = default;

  bool has_uniform_deadline() const;
  int common_deadline() const;  // throws if deadlines differ
  int max_deadline() const;
};

// A full problem instance: n clients, m days, equity parameter k.
// Client and day indices are 0-based in memory and 1-based in files.
struct Instance {
  Variant variant = Variant::General;
  bool starred = false;
  int n = 0;
  int k = 0;
  std::vector<Day> days;

  int m() const { return static_cast<int>(days.size()); }

  // Checks all structural invariants for the declared variant; throws
  // std::invalid_argument with a description of the first violation.
  void validate() const;

  // Clamps deadlines of unit-processing-time days (Esup/Espc) to the number
  // of slots that can ever be used, then validates. A job with release r on
  // an Esup day never needs a completion slot beyond r + n, and an Espc day
  // never schedules more than n jobs, so the clamp preserves feasibility.
  void normalize();
};

}  // namespace equisched
