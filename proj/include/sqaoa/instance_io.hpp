#pragma once

#include "sqaoa/model.hpp"

#include <filesystem>
#include <string>

namespace sqaoa {

// Instance file format:
//   { "name": str, "n": int, "m": int, "edges": [[i,j],...],
//     "demands": [int,...], "capacities": [int,...] | null }
// Parse errors and invariant violations throw std::invalid_argument with the
// offending field (and byte position for syntax errors) in the message.
ProblemInstance parse_instance_json(const std::string& text, const std::string& source = "<string>");
ProblemInstance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const ProblemInstance& inst);
void save_instance(const ProblemInstance& inst, const std::filesystem::path& path);

} // namespace sqaoa
