#pragma once

// JSON concept-space files.
//
//   {
//     "dimension_names": ["hue", "round", "sweet"],
//     "domains": {"color": [0], "shape": [1], "taste": [2]},
//     "concepts": {
//       "red": {
//         "cuboids": [{"p_min": [0.9, "-inf", "-inf"], "p_max": [1.0, "inf", "inf"]}],
//         "mu0": 1.0,
//         "c": 20.0,
//         "weights": {"domains": {"color": 1.0}, "dimensions": {"color": {"0": 1.0}}}
//       }
//     }
//   }
//
// A concept is defined on the domains named in its weights. Weights are
// normalized on load.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cspace/concept.hpp"
#include "cspace/core.hpp"
#include "cspace/cuboid.hpp"
#include "cspace/error.hpp"
#include "cspace/space.hpp"
#include "cspace/weights.hpp"

namespace cspace {

struct SpaceDocument {
  std::vector<std::string> dimension_names;
  Space space;
  std::map<std::string, Concept> concepts;

  friend bool operator==(const SpaceDocument&, const SpaceDocument&) = default;
};

namespace detail {

using nlohmann::json;

inline void require_keys(const json& obj, const std::set<std::string>& required, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& key : required) {
    if (!obj.contains(key)) throw ValidationError(where + " is missing \"" + key + "\"");
  }
  for (const auto& [key, value] : obj.items()) {
    if (allowed.count(key) == 0) throw ValidationError(where + " has unknown key \"" + key + "\"");
  }
}

inline double read_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + " must be a number");
  return v.get<double>();
}

inline double read_bound(const json& v, const std::string& where) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw ValidationError(where + " must be a number, \"inf\" or \"-inf\"");
  }
  return read_number(v, where);
}

inline json write_bound(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline std::vector<double> read_bounds(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError(where + " must be an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_bound(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline DimIndex read_index(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw ValidationError(where + " must be a non-negative integer");
  return v.get<DimIndex>();
}

inline DimIndex parse_index_key(const std::string& key, const std::string& where) {
  if (key.empty() || !std::all_of(key.begin(), key.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw ValidationError(where + " has non-numeric dimension key \"" + key + "\"");
  }
  return std::stoul(key);
}

inline Weights read_weights(const json& v, const std::string& where) {
  require_keys(v, {"domains", "dimensions"}, {"domains", "dimensions"}, where);
  if (!v["domains"].is_object()) throw ValidationError(where + ".domains must be an object");
  if (!v["dimensions"].is_object()) throw ValidationError(where + ".dimensions must be an object");
  Weights::DomainMap domains;
  for (const auto& [id, w] : v["domains"].items()) domains[id] = read_number(w, where + ".domains." + id);
  Weights::DimensionTable dims;
  for (const auto& [id, table] : v["dimensions"].items()) {
    if (!table.is_object()) throw ValidationError(where + ".dimensions." + id + " must be an object");
    auto& row = dims[id];
    for (const auto& [key, w] : table.items()) {
      row[parse_index_key(key, where + ".dimensions." + id)] = read_number(w, where + ".dimensions." + id + "." + key);
    }
  }
  return make_weights(std::move(domains), std::move(dims));
}

inline json write_weights(const Weights& w) {
  json domains = json::object();
  json dims = json::object();
  for (const auto& [id, dw] : w.domain_weights()) {
    domains[id] = dw;
    json row = json::object();
    for (const auto& [d, wd] : w.dimension_weights().at(id)) row[std::to_string(d)] = wd;
    dims[id] = std::move(row);
  }
  return {{"domains", std::move(domains)}, {"dimensions", std::move(dims)}};
}

inline Concept read_concept(const json& v, const Space& space, const std::string& where) {
  require_keys(v, {"cuboids", "mu0", "c", "weights"}, {"cuboids", "mu0", "c", "weights"}, where);
  Weights weights = read_weights(v["weights"], where + ".weights");
  space.check_weights(weights);
  const DomainSet domains = weights.domains();
  if (!v["cuboids"].is_array()) throw ValidationError(where + ".cuboids must be an array");
  std::vector<Cuboid> cuboids;
  for (std::size_t i = 0; i < v["cuboids"].size(); ++i) {
    const std::string at = where + ".cuboids[" + std::to_string(i) + "]";
    const json& c = v["cuboids"][i];
    require_keys(c, {"p_min", "p_max"}, {"p_min", "p_max"}, at);
    cuboids.emplace_back(read_bounds(c["p_min"], at + ".p_min"), read_bounds(c["p_max"], at + ".p_max"), domains, space);
  }
  return Concept(make_core(std::move(cuboids), domains), read_number(v["mu0"], where + ".mu0"),
                 read_number(v["c"], where + ".c"), std::move(weights));
}

inline json write_concept(const Concept& t) {
  json cuboids = json::array();
  for (const auto& c : t.core().cuboids()) {
    json lo = json::array();
    json hi = json::array();
    for (double x : c.p_min()) lo.push_back(write_bound(x));
    for (double x : c.p_max()) hi.push_back(write_bound(x));
    cuboids.push_back({{"p_min", std::move(lo)}, {"p_max", std::move(hi)}});
  }
  return {{"cuboids", std::move(cuboids)}, {"mu0", t.mu0()}, {"c", t.c()}, {"weights", write_weights(t.weights())}};
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte > 0 ? byte - 1 : 0, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Parses and validates a space file. Syntax errors raise ParseError with the
/// position; anything else that is wrong raises ValidationError.
inline SpaceDocument parse_space(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte);
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    throw ParseError(pos == std::string::npos ? msg : msg.substr(pos), line, column);
  }
  detail::require_keys(root, {"dimension_names", "domains", "concepts"}, {"dimension_names", "domains", "concepts"},
                       "document");
  const json& names = root["dimension_names"];
  if (!names.is_array()) throw ValidationError("dimension_names must be an array");
  std::vector<std::string> dimension_names;
  for (const auto& n : names) {
    if (!n.is_string()) throw ValidationError("dimension_names must hold strings");
    dimension_names.push_back(n.get<std::string>());
  }
  if (!root["domains"].is_object()) throw ValidationError("domains must be an object");
  Space::DomainTable table;
  for (const auto& [id, dims] : root["domains"].items()) {
    if (!dims.is_array()) throw ValidationError("domains." + id + " must be an array");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      table[id].push_back(detail::read_index(dims[i], "domains." + id + "[" + std::to_string(i) + "]"));
    }
  }
  std::optional<Space> space;
  try {
    space.emplace(dimension_names.size(), std::move(table));
  } catch (const Error& e) {
    throw ValidationError(std::string("invalid space: ") + e.what());
  }
  if (!root["concepts"].is_object()) throw ValidationError("concepts must be an object");
  std::map<std::string, Concept> concepts;
  for (const auto& [name, value] : root["concepts"].items()) {
    try {
      concepts.emplace(name, detail::read_concept(value, *space, "concepts." + name));
    } catch (const Error& e) {
      throw ValidationError("concept '" + name + "': " + e.what());
    }
  }
  return {std::move(dimension_names), std::move(*space), std::move(concepts)};
}

/// Canonical text: sorted keys, shortest round-trip floats, two-space indent.
inline std::string serialize_space(const SpaceDocument& doc) {
  using detail::json;
  json domains = json::object();
  for (const auto& [id, dims] : doc.space.domains()) domains[id] = dims;
  json concepts = json::object();
  for (const auto& [name, t] : doc.concepts) concepts[name] = detail::write_concept(t);
  const json root = {{"dimension_names", doc.dimension_names}, {"domains", std::move(domains)},
                     {"concepts", std::move(concepts)}};
  return root.dump(2) + "\n";
}

}  // namespace cspace
