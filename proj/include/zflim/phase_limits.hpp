#pragma once

// Closed-form phase limits of the multiplier classes at rational frequencies,
// single-frequency certificates of non-existence, and the resulting slope
// upper bound scanned over all frequencies with bounded denominator.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "zflim/lti.hpp"
#include "zflim/multiplier.hpp"
#include "zflim/rational.hpp"

namespace zflim {

/// Largest |phase| any multiplier of the class can have at w = (alpha/beta) pi.
/// Monotone class with even alpha: (pi/2)(1 - 2/beta); otherwise
/// (pi/2)(1 - 1/beta). At w = pi both classes are real (bound 0).
inline double phase_limit(const RationalFrequency& rf, MultiplierClass cls) {
  const double half_pi = 0.5 * std::numbers::pi;
  if (rf.is_pi()) return 0.0;
  const double beta = static_cast<double>(rf.beta());
  if (cls == MultiplierClass::monotone && !rf.alpha_odd()) return half_pi * (1.0 - 2.0 / beta);
  return half_pi * (1.0 - 1.0 / beta);
}

/// Number of sectors used by the slope formula: 2 beta unless the class is
/// monotone and alpha is even.
inline std::int64_t effective_beta(const RationalFrequency& rf, MultiplierClass cls) {
  return (cls == MultiplierClass::odd || rf.alpha_odd()) ? 2 * rf.beta() : rf.beta();
}

/// True when the single frequency w1 = rf proves that no multiplier of the
/// class makes Re{M G} positive on [0, pi]: Re{G(e^{jw1})(1 - e^{-jw1 i})} <= 0
/// for every i (and also with 1 + e^{-jw1 i} for the odd class). Periodicity
/// reduces the check to i = 0..T-1. `slack` relaxes the comparison for
/// boundary regression tests; the default is the exact condition.
inline bool single_freq_certificate(const TransferFunction& g, const RationalFrequency& rf,
                                    MultiplierClass cls, double slack = 0.0) {
  const Complex gw = evaluate(g, rf.omega());
  const std::int64_t t = period(rf);
  for (std::int64_t i = 0; i < t; ++i) {
    const Complex e = exponential_at(rf, i);
    if ((gw * (1.0 - e)).real() > slack) return false;
    if (cls == MultiplierClass::odd && (gw * (1.0 + e)).real() > slack) return false;
  }
  return true;
}

/// Slope at which G + 1/k enters the sector of half-angle pi/beta_eff around
/// the negative real axis at w:
///   -tan(pi/b) / (R tan(pi/b) + I),  R = Re G(e^{jw}), I = |Im G(e^{jw})|.
/// Evaluated as -sin/(R sin + I cos) so beta_eff = 2 (w = pi) needs no special case.
inline double sector_slope(const TransferFunction& g, double omega, std::int64_t beta_eff) {
  if (beta_eff < 2) throw Error(ErrorCode::InvalidArgument, "beta_eff must be at least 2");
  const Complex gw = evaluate(g, omega);
  const double r = gw.real();
  const double im = std::abs(gw.imag());
  const double angle = std::numbers::pi / static_cast<double>(beta_eff);
  const double s = std::sin(angle), c = std::cos(angle);
  const double den = r * s + im * c;
  if (std::abs(den) < 1e-14) {
    throw Error(ErrorCode::DegenerateDenominator, "sector slope denominator vanishes");
  }
  return -s / den;
}

/// Certified upper bound on the admissible slope from one rational
/// frequency, or nullopt when the frequency gives no obstruction.
inline std::optional<double> single_freq_upper_bound(const TransferFunction& g, const RationalFrequency& rf,
                                                     MultiplierClass cls) {
  try {
    const double k = sector_slope(g, rf.omega(), effective_beta(rf, cls));
    if (k > 0.0 && std::isfinite(k)) return k;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateDenominator) throw;
  }
  return std::nullopt;
}

struct SlopeBoundResult {
  double k_upper = std::numeric_limits<double>::infinity();
  std::optional<RationalFrequency> witness;
  MultiplierClass multiplier_class = MultiplierClass::monotone;
};

/// Minimum single-frequency bound over every rational frequency with
/// beta <= beta_max.
inline SlopeBoundResult scan_upper_bound(const TransferFunction& g, MultiplierClass cls, std::int64_t beta_max = 50) {
  if (beta_max < 2) throw Error(ErrorCode::InvalidArgument, "beta_max must be at least 2");
  SlopeBoundResult best;
  best.multiplier_class = cls;
  for (const auto& rf : coprime_frequencies(beta_max)) {
    if (auto k = single_freq_upper_bound(g, rf, cls); k && *k < best.k_upper) {
      best.k_upper = *k;
      best.witness = rf;
    }
  }
  return best;
}

}  // namespace zflim
