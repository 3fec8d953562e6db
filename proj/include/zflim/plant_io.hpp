#pragma once

// Plant files and the built-in benchmark plants.
//
// A plant file is a JSON object {"name": ..., "num": [...], "den": [...]}
// with coefficients in descending powers of z.

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zflim/lti.hpp"

namespace zflim {

struct Plant {
  std::string name;
  std::vector<double> num;  ///< descending powers of z
  std::vector<double> den;

  TransferFunction transfer_function() const { return TransferFunction::from_descending(num, den); }

  friend bool operator==(const Plant&, const Plant&) = default;
};

inline const std::array<Plant, 6>& builtin_plants() {
  static const std::array<Plant, 6> plants{{
      {"ex1", {0.1, 0.0}, {1.0, -1.8, 0.81}},
      {"ex2", {1.0, -1.5, 0.5, -0.5, 0.5}, {4.4, -8.957, 9.893, -5.671, 2.207, -0.5}},
      {"ex3", {1.0, -1.95, 0.9, 0.05}, {1.0, -2.8, 3.5, -2.412, 0.7209}},
      {"ex4",
       {-2.265, -2.428, -0.2606, 0.253, 0.04455},
       {1.0, 2.465, 2.201, 0.8429, 0.1188, 0.0006787}},
      {"ex5",
       {-2.225, 3.239, -1.708, 0.517, -0.1603, 0.03239},
       {1.0, -1.825, 1.927, -1.226, 0.1525, 0.1836, -0.05546}},
      {"ex6", {-0.08658, 0.007162}, {1.0, 1.415, 0.5523}},
  }};
  return plants;
}

inline const Plant& builtin_plant(std::string_view name) {
  for (const auto& p : builtin_plants()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown example '" + std::string(name) + "'");
}

inline nlohmann::json to_json(const Plant& p) {
  return {{"name", p.name}, {"num", p.num}, {"den", p.den}};
}

inline Plant plant_from_json(const nlohmann::json& j) {
  try {
    Plant p;
    p.name = j.value("name", std::string("plant"));
    p.num = j.at("num").get<std::vector<double>>();
    p.den = j.at("den").get<std::vector<double>>();
    if (p.num.empty() || p.den.empty()) throw Error(ErrorCode::ParseError, "num and den must be non-empty");
    (void)p.transfer_function();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("plant: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, std::string("plant: ") + e.what());
  }
}

inline Plant parse_plant(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("plant: ") + e.what());
  }
  return plant_from_json(j);
}

/// Serialization uses the shortest round-trip representation of each double.
inline std::string dump_plant(const Plant& p) { return to_json(p).dump(2) + "\n"; }

inline Plant load_plant(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open plant file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_plant(ss.str());
}

}  // namespace zflim
