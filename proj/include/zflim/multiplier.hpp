#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <string_view>

#include "zflim/error.hpp"

namespace zflim {

/// Zames-Falb class: `monotone` covers slope-restricted nonlinearities,
/// `odd` additionally assumes odd symmetry and allows taps of either sign.
enum class MultiplierClass { monotone, odd };

constexpr std::string_view to_string(MultiplierClass c) {
  return c == MultiplierClass::monotone ? "monotone" : "odd";
}

inline MultiplierClass parse_class(std::string_view s) {
  if (s == "monotone") return MultiplierClass::monotone;
  if (s == "odd") return MultiplierClass::odd;
  throw Error(ErrorCode::InvalidArgument, "unknown multiplier class '" + std::string(s) + "'");
}

/// FIR multiplier M(z) = 1 - sum_i h_i z^{-i} with h_0 = 0 and ||h||_1 <= 1.
/// Monotone-class multipliers have nonnegative taps.
class FirMultiplier {
 public:
  using Taps = std::map<std::int64_t, double>;

  FirMultiplier() = default;

  FirMultiplier(Taps taps, MultiplierClass cls) : taps_(std::move(taps)), class_(cls) {
    double l1 = 0.0;
    for (auto it = taps_.begin(); it != taps_.end();) {
      if (it->first == 0) throw Error(ErrorCode::InvalidArgument, "multiplier tap h_0 must be absent");
      if (!std::isfinite(it->second)) throw Error(ErrorCode::InvalidArgument, "tap is not finite");
      if (cls == MultiplierClass::monotone && it->second < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "monotone-class multiplier with a negative tap");
      }
      l1 += std::abs(it->second);
      it = it->second == 0.0 ? taps_.erase(it) : std::next(it);
    }
    if (l1 > 1.0 + 1e-12) throw Error(ErrorCode::InvalidArgument, "multiplier taps exceed unit l1 norm");
  }

  const Taps& taps() const { return taps_; }
  MultiplierClass multiplier_class() const { return class_; }

  double l1_norm() const {
    double s = 0.0;
    for (const auto& [i, h] : taps_) s += std::abs(h);
    return s;
  }

  /// M(e^{jw}).
  std::complex<double> response(double omega) const {
    std::complex<double> m = 1.0;
    for (const auto& [i, h] : taps_) m -= h * std::polar(1.0, -omega * static_cast<double>(i));
    return m;
  }

  double phase(double omega) const { return std::arg(response(omega)); }

 private:
  Taps taps_;
  MultiplierClass class_ = MultiplierClass::monotone;
};

}  // namespace zflim
