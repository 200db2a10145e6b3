#pragma once

#include <string>

#include "equisched/instance.hpp"
#include "equisched/solution.hpp"

namespace equisched {

// Instances and solutions serialize to UTF-8 JSON. Client and day indices
// are 1-based in files. Parsing normalizes and validates the instance and
// throws std::invalid_argument / std::runtime_error on malformed input.

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

std::string serialize_solution(const Solution& sol);
Solution parse_solution(const std::string& text);

Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& inst, const std::string& path);

Solution load_solution_file(const std::string& path);
void save_solution_file(const Solution& sol, const std::string& path);

}  // namespace equisched
