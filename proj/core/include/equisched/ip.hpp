#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equisched/caps.hpp"

namespace equisched {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearTerm {
  int var = 0;
  long long coefficient = 0;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::LessEq;
  long long rhs = 0;
};

struct IpVariable {
  std::string name;
  long long lower = 0;
  long long upper = 0;
};

// A bounded-domain integer program: finitely-bounded integer variables,
// linear constraints, and either pure feasibility or a linear objective to
// maximize.
struct IpModel {
  std::vector<IpVariable> variables;
  std::vector<LinearConstraint> constraints;
  std::vector<LinearTerm> objective;  // empty = feasibility only
  bool maximize = false;

  int add_variable(std::string name, long long lower, long long upper);
  void add_constraint(std::string name, std::vector<LinearTerm> terms,
                      Relation relation, long long rhs);
};

// Depth-first search over variables in declaration order, values ascending,
// with per-constraint slack-based bound tightening. Returns a feasible
// assignment (an objective-maximal one when an objective is present) or
// nullopt when the model is infeasible. Throws CapExceeded when the node
// budget runs out before an answer is established.
std::optional<std::vector<long long>> solve_ip(const IpModel& model,
                                               const Caps& caps = Caps::defaults());

// CPLEX-LP-format text (Minimize/Maximize, Subject To, Bounds, General, End).
std::string export_lp(const IpModel& model);

// Parses the subset of the CPLEX LP format produced by export_lp.
IpModel parse_lp(const std::string& text);

}  // namespace equisched
