#pragma once

#include <array>
#include <random>
#include <string>

#include "zflim/zflim.hpp"

namespace zflim::testing {

inline TransferFunction plant(const std::string& name) { return builtin_plant(name).transfer_function(); }

inline TransferFunction tf_desc(std::vector<double> num, std::vector<double> den) {
  return TransferFunction::from_descending(num, den);
}

inline constexpr std::array<const char*, 6> kPlantNames{"ex1", "ex2", "ex3", "ex4", "ex5", "ex6"};

struct TableRow {
  const char* name;
  double value;
  std::int64_t alpha;
  std::int64_t beta;
};

// Reference single-frequency bounds and witness frequencies.
inline constexpr std::array<TableRow, 6> kSingleMonotone{{
    {"ex1", 13.028374, 2, 7},
    {"ex2", 3.824040, 1, 2},
    {"ex3", 0.802745, 2, 5},
    {"ex4", 0.846657, 2, 3},
    {"ex5", 0.374491, 1, 3},
    {"ex6", 13.262035, 2, 3},
}};
inline constexpr std::array<TableRow, 6> kSingleOdd{{
    {"ex1", 13.575410, 1, 3},
    {"ex2", 3.824040, 1, 2},
    {"ex3", 1.105649, 1, 2},
    {"ex4", 0.987671, 1, 2},
    {"ex5", 0.374491, 1, 3},
    {"ex6", 22.686907, 1, 2},
}};

// Reference primal lower bounds with the tap counts used for them.
struct LowerRow {
  const char* name;
  double monotone;
  int n_z_monotone;
  double odd;
  int n_z_odd;
};
inline constexpr std::array<LowerRow, 6> kLower{{
    {"ex1", 13.028317, 6, 13.511322, 20},
    {"ex2", 3.823996, 5, 3.824034, 10},
    {"ex3", 0.802714, 5, 1.105645, 2},
    {"ex4", 0.846650, 5, 0.987666, 2},
    {"ex5", 0.374445, 10, 0.374484, 8},
    {"ex6", 13.262027, 8, 22.686904, 6},
}};

inline constexpr std::array<double, 6> kNyquist{36.10000, 7.90700, 2.74550, 1.23987, 0.51373, 37.36307};

/// Random multiplier of the class: up to max_support taps at lags in
/// [-max_lag, max_lag] \ {0}, l1 norm drawn in [0, 1].
inline FirMultiplier random_multiplier(std::mt19937_64& rng, MultiplierClass cls, int max_support = 40,
                                       int max_lag = 60) {
  std::uniform_int_distribution<int> count(1, max_support);
  std::uniform_int_distribution<int> lag(-max_lag, max_lag - 1);
  std::exponential_distribution<double> weight(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FirMultiplier::Taps taps;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int l = lag(rng);
    if (l >= 0) ++l;
    double h = weight(rng);
    if (cls == MultiplierClass::odd && unit(rng) < 0.5) h = -h;
    taps[l] += h;
  }
  double l1 = 0.0;
  for (auto& [l, h] : taps) l1 += std::abs(h);
  const double target = unit(rng);
  for (auto& [l, h] : taps) h *= target / l1 * (1.0 - 1e-12);
  return FirMultiplier(std::move(taps), cls);
}

}  // namespace zflim::testing
