#include "equisched/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace equisched {

namespace {

using nlohmann::json;

json day_to_json(const Day& day) {
  json out;
  out["processing"] = json::array();
  for (const Job& job : day.jobs) out["processing"].push_back(job.processing);
  if (day.has_uniform_deadline() && !day.jobs.empty()) {
    out["deadline"] = day.jobs.front().deadline;
  } else {
    out["deadlines"] = json::array();
    for (const Job& job : day.jobs) out["deadlines"].push_back(job.deadline);
  }
  bool any_release = false;
  for (const Job& job : day.jobs) any_release = any_release || job.release != 0;
  if (any_release) {
    out["release"] = json::array();
    for (const Job& job : day.jobs) out["release"].push_back(job.release);
  }
  if (day.precedence) {
    out["edges"] = json::array();
    for (auto [a, b] : day.precedence->arcs)
      out["edges"].push_back(json::array({a + 1, b + 1}));
  }
  if (day.machines != 1) out["machines"] = day.machines;
  return out;
}

Day day_from_json(const json& in, int n) {
  Day day;
  if (!in.contains("processing") || !in["processing"].is_array())
    throw std::invalid_argument("day is missing its processing array");
  if (static_cast<int>(in["processing"].size()) != n)
    throw std::invalid_argument("processing array must have n entries");
  day.jobs.resize(n);
  for (int i = 0; i < n; ++i) day.jobs[i].processing = in["processing"][i].get<int>();
  if (in.contains("deadline") == in.contains("deadlines"))
    throw std::invalid_argument("day needs exactly one of deadline / deadlines");
  if (in.contains("deadline")) {
    int d = in["deadline"].get<int>();
    for (Job& job : day.jobs) job.deadline = d;
  } else {
    if (static_cast<int>(in["deadlines"].size()) != n)
      throw std::invalid_argument("deadlines array must have n entries");
    for (int i = 0; i < n; ++i) day.jobs[i].deadline = in["deadlines"][i].get<int>();
  }
  if (in.contains("release")) {
    if (static_cast<int>(in["release"].size()) != n)
      throw std::invalid_argument("release array must have n entries");
    for (int i = 0; i < n; ++i) day.jobs[i].release = in["release"][i].get<int>();
  }
  if (in.contains("edges")) {
    Dag dag;
    for (const json& e : in["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("each edge must be a [from, to] pair");
      int a = e[0].get<int>(), b = e[1].get<int>();
      if (a < 1 || a > n || b < 1 || b > n)
        throw std::invalid_argument("edge endpoint out of range (indices are 1-based)");
      dag.arcs.emplace_back(a - 1, b - 1);
    }
    dag.normalize();
    day.precedence = std::move(dag);
  }
  if (in.contains("machines")) day.machines = in["machines"].get<int>();
  return day;
}

json parse_text(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("malformed JSON document");
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["variant"] = to_string(inst.variant);
  doc["starred"] = inst.starred;
  doc["n"] = inst.n;
  doc["m"] = inst.m();
  doc["k"] = inst.k;
  doc["days"] = json::array();
  for (const Day& day : inst.days) doc["days"].push_back(day_to_json(day));
  return doc.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  json doc = parse_text(text);
  Instance inst;
  for (const char* key : {"variant", "starred", "n", "m", "k", "days"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("instance is missing field ") + key);
  inst.variant = variant_from_string(doc["variant"].get<std::string>());
  inst.starred = doc["starred"].get<bool>();
  inst.n = doc["n"].get<int>();
  inst.k = doc["k"].get<int>();
  int m = doc["m"].get<int>();
  if (!doc["days"].is_array() || static_cast<int>(doc["days"].size()) != m)
    throw std::invalid_argument("m does not match the number of days");
  for (const json& d : doc["days"]) inst.days.push_back(day_from_json(d, inst.n));
  inst.normalize();
  return inst;
}

std::string serialize_solution(const Solution& sol) {
  json doc;
  doc["satisfied"] = json::array();
  for (const std::vector<int>& set : sol.satisfied) {
    json day = json::array();
    for (int c : set) day.push_back(c + 1);
    doc["satisfied"].push_back(day);
  }
  return doc.dump(2) + "\n";
}

Solution parse_solution(const std::string& text) {
  json doc = parse_text(text);
  if (!doc.contains("satisfied") || !doc["satisfied"].is_array())
    throw std::invalid_argument("solution is missing its satisfied array");
  Solution sol;
  for (const json& day : doc["satisfied"]) {
    std::vector<int> set;
    for (const json& c : day) {
      int v = c.get<int>();
      if (v < 1) throw std::invalid_argument("client indices are 1-based");
      set.push_back(v - 1);
    }
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end())
      throw std::invalid_argument("a client appears twice in one day");
    sol.satisfied.push_back(std::move(set));
  }
  return sol;
}

Instance load_instance_file(const std::string& path) {
  return parse_instance(read_file(path));
}

void save_instance_file(const Instance& inst, const std::string& path) {
  write_file(path, serialize_instance(inst));
}

Solution load_solution_file(const std::string& path) {
  return parse_solution(read_file(path));
}

void save_solution_file(const Solution& sol, const std::string& path) {
  write_file(path, serialize_solution(sol));
}

}  // namespace equisched
