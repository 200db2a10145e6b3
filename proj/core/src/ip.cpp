#include "equisched/ip.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace equisched {

int IpModel::add_variable(std::string name, long long lower, long long upper) {
  if (lower > upper)
    throw std::invalid_argument("variable " + name + " has an empty domain");
  variables.push_back({std::move(name), lower, upper});
  return static_cast<int>(variables.size()) - 1;
}

void IpModel::add_constraint(std::string name, std::vector<LinearTerm> terms,
                             Relation relation, long long rhs) {
  for (const LinearTerm& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(variables.size()))
      throw std::invalid_argument("constraint " + name + " references an unknown variable");
  constraints.push_back({std::move(name), std::move(terms), relation, rhs});
}

namespace {

struct Searcher {
  const IpModel& model;
  const Caps& caps;
  long long nodes = 0;

  // per-constraint running state over the assigned prefix
  std::vector<long long> assigned_sum;  // sum over assigned terms
  std::vector<long long> min_rest;      // minimal contribution of unassigned terms
  std::vector<long long> max_rest;      // maximal contribution of unassigned terms
  std::vector<std::vector<std::pair<int, long long>>> by_var;  // var -> (constraint, coef)
  std::vector<long long> values;
  std::vector<long long> best;
  bool have_best = false;
  long long best_objective = 0;
  std::vector<std::pair<int, long long>> objective_by_var;
  long long objective_assigned = 0;
  long long objective_max_rest = 0;

  explicit Searcher(const IpModel& m, const Caps& c) : model(m), caps(c) {
    const int vars = static_cast<int>(model.variables.size());
    const int cons = static_cast<int>(model.constraints.size());
    assigned_sum.assign(cons, 0);
    min_rest.assign(cons, 0);
    max_rest.assign(cons, 0);
    by_var.assign(vars, {});
    values.assign(vars, 0);
    for (int ci = 0; ci < cons; ++ci) {
      for (const LinearTerm& t : model.constraints[ci].terms) {
        by_var[t.var].emplace_back(ci, t.coefficient);
        const IpVariable& v = model.variables[t.var];
        if (t.coefficient >= 0) {
          min_rest[ci] += t.coefficient * v.lower;
          max_rest[ci] += t.coefficient * v.upper;
        } else {
          min_rest[ci] += t.coefficient * v.upper;
          max_rest[ci] += t.coefficient * v.lower;
        }
      }
    }
    objective_by_var.resize(vars, {-1, 0});
    for (const LinearTerm& t : model.objective) {
      objective_by_var[t.var] = {0, t.coefficient};
      const IpVariable& v = model.variables[t.var];
      objective_max_rest += t.coefficient >= 0 ? t.coefficient * v.upper
                                               : t.coefficient * v.lower;
    }
  }

  bool constraint_possible(int ci) const {
    const LinearConstraint& c = model.constraints[ci];
    long long lo = assigned_sum[ci] + min_rest[ci];
    long long hi = assigned_sum[ci] + max_rest[ci];
    switch (c.relation) {
      case Relation::LessEq: return lo <= c.rhs;
      case Relation::GreaterEq: return hi >= c.rhs;
      case Relation::Equal: return lo <= c.rhs && hi >= c.rhs;
    }
    return false;
  }

  // Tightens the branching interval of variable `var` (already removed from
  // the rest-bounds of its constraints) using each constraint's slack.
  void tighten(int var, long long& lo, long long& hi) const {
    for (auto [ci, coef] : by_var[var]) {
      if (coef == 0) continue;
      const LinearConstraint& c = model.constraints[ci];
      if (c.relation != Relation::GreaterEq) {  // x bounded by <= or =
        long long slack = c.rhs - assigned_sum[ci] - min_rest[ci];
        if (coef > 0) {
          long long bound = slack >= 0 ? slack / coef
                                       : -((-slack + coef - 1) / coef);
          hi = std::min(hi, bound);
        } else {
          long long bound = slack >= 0 ? -(slack / -coef)
                                       : (-slack + (-coef) - 1) / -coef;
          lo = std::max(lo, bound);
        }
      }
      if (c.relation != Relation::LessEq) {  // x bounded by >= or =
        long long need = c.rhs - assigned_sum[ci] - max_rest[ci];
        if (coef > 0) {
          long long bound = need <= 0 ? -((-need) / coef)
                                      : (need + coef - 1) / coef;
          lo = std::max(lo, bound);
        } else {
          long long bound = need <= 0 ? (-need) / -coef
                                      : -((need + (-coef) - 1) / -coef);
          hi = std::min(hi, bound);
        }
      }
    }
  }

  bool search(int var) {
    if (++nodes > caps.search_nodes)
      throw CapExceeded("ip solver exceeded its search-node budget");
    if (var == static_cast<int>(model.variables.size())) {
      if (model.objective.empty()) {
        best = values;
        return true;  // feasibility: stop at the first witness
      }
      if (!have_best || objective_assigned > best_objective) {
        have_best = true;
        best_objective = objective_assigned;
        best = values;
      }
      return false;
    }
    if (!model.objective.empty() && have_best &&
        objective_assigned + objective_max_rest <= best_objective)
      return false;
    const IpVariable& v = model.variables[var];
    // remove this variable from the rest-bounds of its constraints
    for (auto [ci, coef] : by_var[var]) {
      if (coef >= 0) {
        min_rest[ci] -= coef * v.lower;
        max_rest[ci] -= coef * v.upper;
      } else {
        min_rest[ci] -= coef * v.upper;
        max_rest[ci] -= coef * v.lower;
      }
    }
    long long obj_coef = objective_by_var[var].first >= 0 ? objective_by_var[var].second : 0;
    if (objective_by_var[var].first >= 0)
      objective_max_rest -= obj_coef >= 0 ? obj_coef * v.upper : obj_coef * v.lower;

    long long lo = v.lower, hi = v.upper;
    tighten(var, lo, hi);
    bool done = false;
    for (long long x = lo; x <= hi && !done; ++x) {
      for (auto [ci, coef] : by_var[var]) assigned_sum[ci] += coef * x;
      objective_assigned += obj_coef * x;
      values[var] = x;
      bool viable = true;
      for (auto [ci, coef] : by_var[var])
        viable = viable && constraint_possible(ci);
      if (viable) done = search(var + 1);
      for (auto [ci, coef] : by_var[var]) assigned_sum[ci] -= coef * x;
      objective_assigned -= obj_coef * x;
    }

    for (auto [ci, coef] : by_var[var]) {
      if (coef >= 0) {
        min_rest[ci] += coef * v.lower;
        max_rest[ci] += coef * v.upper;
      } else {
        min_rest[ci] += coef * v.upper;
        max_rest[ci] += coef * v.lower;
      }
    }
    if (objective_by_var[var].first >= 0)
      objective_max_rest += obj_coef >= 0 ? obj_coef * v.upper : obj_coef * v.lower;
    return done;
  }
};

bool satisfies(const IpModel& model, const std::vector<long long>& values) {
  for (const LinearConstraint& c : model.constraints) {
    long long sum = 0;
    for (const LinearTerm& t : c.terms) sum += t.coefficient * values[t.var];
    bool ok = c.relation == Relation::LessEq      ? sum <= c.rhs
              : c.relation == Relation::GreaterEq ? sum >= c.rhs
                                                  : sum == c.rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<long long>> solve_ip(const IpModel& model, const Caps& caps) {
  for (const IpVariable& v : model.variables)
    if (v.lower > v.upper) return std::nullopt;
  Searcher searcher(model, caps);
  for (int ci = 0; ci < static_cast<int>(model.constraints.size()); ++ci)
    if (!searcher.constraint_possible(ci)) return std::nullopt;
  bool found = searcher.search(0);
  if (!found && !(searcher.have_best && !model.objective.empty())) return std::nullopt;
  if (!satisfies(model, searcher.best))
    throw std::logic_error("ip solver produced an invalid assignment");
  return searcher.best;
}

namespace {

void append_terms(std::ostringstream& out, const std::vector<LinearTerm>& terms,
                  const IpModel& model) {
  bool first = true;
  for (const LinearTerm& t : terms) {
    if (t.coefficient == 0) continue;
    long long mag = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    out << (t.coefficient < 0 ? " - " : (first ? " " : " + ")) << mag << ' '
        << model.variables[t.var].name;
    first = false;
  }
  if (first) out << " 0 " << (model.variables.empty() ? "x" : model.variables[0].name);
}

}  // namespace

std::string export_lp(const IpModel& model) {
  std::ostringstream out;
  out << (model.maximize && !model.objective.empty() ? "Maximize\n" : "Minimize\n");
  out << " obj:";
  if (!model.objective.empty()) {
    append_terms(out, model.objective, model);
  }
  out << "\nSubject To\n";
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const LinearConstraint& c = model.constraints[i];
    out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    append_terms(out, c.terms, model);
    switch (c.relation) {
      case Relation::LessEq: out << " <= "; break;
      case Relation::GreaterEq: out << " >= "; break;
      case Relation::Equal: out << " = "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const IpVariable& v : model.variables)
    out << ' ' << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
  out << "General\n";
  for (const IpVariable& v : model.variables) out << ' ' << v.name << '\n';
  out << "End\n";
  return out.str();
}

namespace {

struct LpTokenizer {
  std::vector<std::string> tokens;
  size_t pos = 0;

  explicit LpTokenizer(const std::string& text) {
    std::string current;
    auto flush = [&] {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    };
    for (size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '\\') {  // comment to end of line
        flush();
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else if (ch == ':' || ch == '+') {
        flush();
        tokens.push_back(std::string(1, ch));
      } else if (ch == '<' || ch == '>' || ch == '=') {
        flush();
        std::string op(1, ch);
        if (i + 1 < text.size() && text[i + 1] == '=') {
          op += '=';
          ++i;
        }
        tokens.push_back(op);
      } else if (ch == '-') {
        flush();
        tokens.push_back("-");
      } else {
        current += ch;
      }
    }
    flush();
  }

  bool done() const { return pos >= tokens.size(); }
  const std::string& peek() const { return tokens[pos]; }
  std::string next() { return tokens[pos++]; }
};

bool is_number(const std::string& tok) {
  if (tok.empty()) return false;
  for (char ch : tok)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

bool keyword(const std::string& tok, const char* word) {
  if (tok.size() != std::string(word).size()) return false;
  for (size_t i = 0; i < tok.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(tok[i])) != word[i]) return false;
  return true;
}

bool section_start(LpTokenizer& tz) {
  if (tz.done()) return true;
  const std::string& t = tz.peek();
  return keyword(t, "subject") || keyword(t, "bounds") || keyword(t, "general") ||
         keyword(t, "end") || keyword(t, "minimize") || keyword(t, "maximize");
}

// Parses "<sign>? <int>? <name>" terms until a relation or section keyword.
std::vector<LinearTerm> parse_terms(LpTokenizer& tz,
                                    std::map<std::string, int>& var_ids,
                                    std::vector<std::string>& var_order) {
  std::vector<LinearTerm> terms;
  while (!tz.done() && !section_start(tz)) {
    const std::string& t = tz.peek();
    if (t == "<=" || t == ">=" || t == "=") break;
    long long sign = 1;
    if (tz.peek() == "+") {
      tz.next();
    } else if (tz.peek() == "-") {
      sign = -1;
      tz.next();
    }
    long long coef = 1;
    if (!tz.done() && is_number(tz.peek())) coef = std::stoll(tz.next());
    if (tz.done() || is_number(tz.peek()) || section_start(tz)) {
      // bare constant, only the zero placeholder is produced by export_lp
      if (coef != 0) throw std::invalid_argument("unexpected constant in LP expression");
      continue;
    }
    std::string name = tz.next();
    auto it = var_ids.find(name);
    int id;
    if (it == var_ids.end()) {
      id = static_cast<int>(var_order.size());
      var_ids.emplace(name, id);
      var_order.push_back(name);
    } else {
      id = it->second;
    }
    if (sign * coef != 0) terms.push_back({id, sign * coef});
  }
  return terms;
}

long long parse_signed_number(LpTokenizer& tz) {
  long long sign = 1;
  if (!tz.done() && tz.peek() == "-") {
    sign = -1;
    tz.next();
  }
  if (tz.done() || !is_number(tz.peek()))
    throw std::invalid_argument("expected a number in LP file");
  return sign * std::stoll(tz.next());
}

}  // namespace

IpModel parse_lp(const std::string& text) {
  LpTokenizer tz(text);
  IpModel model;
  std::map<std::string, int> var_ids;
  std::vector<std::string> var_order;
  std::map<std::string, std::pair<long long, long long>> bounds;

  if (tz.done()) throw std::invalid_argument("empty LP file");
  if (keyword(tz.peek(), "maximize")) {
    model.maximize = true;
    tz.next();
  } else if (keyword(tz.peek(), "minimize")) {
    tz.next();
  } else {
    throw std::invalid_argument("LP file must start with Minimize or Maximize");
  }
  // objective: "name: terms"
  if (!tz.done() && !section_start(tz)) {
    std::string label = tz.next();
    if (tz.done() || tz.next() != ":")
      throw std::invalid_argument("objective must be labelled");
    model.objective = parse_terms(tz, var_ids, var_order);
  }
  if (tz.done() || !keyword(tz.next(), "subject") || tz.done() || !keyword(tz.next(), "to"))
    throw std::invalid_argument("expected Subject To section");
  struct RawConstraint {
    std::string name;
    std::vector<LinearTerm> terms;
    Relation rel;
    long long rhs;
  };
  std::vector<RawConstraint> raw;
  while (!tz.done() && !section_start(tz)) {
    std::string name = tz.next();
    if (tz.done() || tz.next() != ":")
      throw std::invalid_argument("constraints must be labelled");
    std::vector<LinearTerm> terms = parse_terms(tz, var_ids, var_order);
    if (tz.done()) throw std::invalid_argument("constraint " + name + " has no relation");
    std::string op = tz.next();
    Relation rel = op == "<=" ? Relation::LessEq
                 : op == ">=" ? Relation::GreaterEq
                 : op == "="  ? Relation::Equal
                              : throw std::invalid_argument("bad relation " + op);
    raw.push_back({name, std::move(terms), rel, parse_signed_number(tz)});
  }
  if (!tz.done() && keyword(tz.peek(), "bounds")) {
    tz.next();
    while (!tz.done() && !section_start(tz)) {
      long long lo = parse_signed_number(tz);
      if (tz.done() || tz.next() != "<=")
        throw std::invalid_argument("bounds lines must read lo <= var <= hi");
      std::string name = tz.next();
      if (tz.done() || tz.next() != "<=")
        throw std::invalid_argument("bounds lines must read lo <= var <= hi");
      long long hi = parse_signed_number(tz);
      if (!var_ids.count(name)) {
        var_ids.emplace(name, static_cast<int>(var_order.size()));
        var_order.push_back(name);
      }
      bounds[name] = {lo, hi};
    }
  }
  if (!tz.done() && keyword(tz.peek(), "general")) {
    tz.next();
    while (!tz.done() && !section_start(tz)) {
      std::string name = tz.next();
      if (!var_ids.count(name)) {
        var_ids.emplace(name, static_cast<int>(var_order.size()));
        var_order.push_back(name);
      }
    }
  }
  if (tz.done() || !keyword(tz.next(), "end"))
    throw std::invalid_argument("LP file must end with End");

  for (const std::string& name : var_order) {
    auto it = bounds.find(name);
    if (it == bounds.end())
      throw std::invalid_argument("variable " + name + " has no bounds");
    model.add_variable(name, it->second.first, it->second.second);
  }
  for (RawConstraint& c : raw)
    model.add_constraint(std::move(c.name), std::move(c.terms), c.rel, c.rhs);
  return model;
}

}  // namespace equisched
