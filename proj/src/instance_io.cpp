#include "sqaoa/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sqaoa {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw std::invalid_argument(source + ": " + what);
}

int require_int(const json& j, const char* field, const std::string& source) {
  if (!j.contains(field)) fail(source, std::string("missing field '") + field + "'");
  const auto& v = j.at(field);
  if (!v.is_number_integer()) fail(source, std::string("field '") + field + "' must be an integer");
  return v.get<int>();
}

} // namespace

ProblemInstance parse_instance_json(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("JSON syntax error: ") + e.what());
  }
  if (!j.is_object()) fail(source, "top level must be a JSON object");

  ProblemInstance inst;
  inst.n = require_int(j, "n", source);
  inst.m = require_int(j, "m", source);

  if (j.contains("name")) {
    if (!j["name"].is_string()) fail(source, "field 'name' must be a string");
    inst.name = j["name"].get<std::string>();
  }

  if (!j.contains("edges") || !j["edges"].is_array())
    fail(source, "field 'edges' must be an array of [i,j] pairs");
  size_t idx = 0;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(source, "field 'edges[" + std::to_string(idx) + "]' must be a pair of integers");
    inst.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    ++idx;
  }

  if (!j.contains("demands") || !j["demands"].is_array())
    fail(source, "field 'demands' must be an array of integers");
  idx = 0;
  for (const auto& d : j["demands"]) {
    if (!d.is_number_integer())
      fail(source, "field 'demands[" + std::to_string(idx) + "]' must be an integer");
    inst.demands.push_back(d.get<int>());
    ++idx;
  }

  if (j.contains("capacities") && !j["capacities"].is_null()) {
    if (!j["capacities"].is_array())
      fail(source, "field 'capacities' must be an array of integers or null");
    std::vector<int> caps;
    idx = 0;
    for (const auto& c : j["capacities"]) {
      if (!c.is_number_integer())
        fail(source, "field 'capacities[" + std::to_string(idx) + "]' must be an integer");
      caps.push_back(c.get<int>());
      ++idx;
    }
    inst.capacities = std::move(caps);
  }

  try {
    inst.normalize_and_validate();
  } catch (const std::invalid_argument& e) {
    fail(source, e.what());
  }
  return inst;
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path.string() + ": cannot open instance file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str(), path.string());
}

std::string instance_to_json(const ProblemInstance& inst) {
  json j;
  j["name"] = inst.name;
  j["n"] = inst.n;
  j["m"] = inst.m;
  j["edges"] = json::array();
  for (const auto& [a, b] : inst.edges) j["edges"].push_back({a, b});
  j["demands"] = inst.demands;
  if (inst.capacities)
    j["capacities"] = *inst.capacities;
  else
    j["capacities"] = nullptr;
  return j.dump(2) + "\n";
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot write instance file");
  out << instance_to_json(inst);
}

} // namespace sqaoa
