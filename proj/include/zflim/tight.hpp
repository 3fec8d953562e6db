#pragma once

// One-tap multipliers that attain the phase limit at a rational frequency,
// and near-quadrature multipliers at (approximately) irrational frequencies.

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <optional>

#include "zflim/multiplier.hpp"
#include "zflim/phase_limits.hpp"
#include "zflim/rational.hpp"

namespace zflim {

enum class PhaseSign { positive, negative };

inline constexpr double kTightPhaseTolerance = 1e-12;

/// A one-tap multiplier 1 - h z^{-i}, |h| = 1, whose phase at rf equals
/// sign * phase_limit(rf, cls). Candidates are built from the Stern-Brocot
/// neighbours of alpha/beta and verified by direct evaluation; the first
/// one that meets the limit is returned.
inline FirMultiplier construct_tight_multiplier(const RationalFrequency& rf, MultiplierClass cls, PhaseSign sign) {
  const double limit = phase_limit(rf, cls);
  const double target = sign == PhaseSign::positive ? limit : -limit;
  const auto nb = stern_brocot_neighbors(rf);
  const std::array<std::int64_t, 6> lags{nb.q_left, nb.q_right, 2 * nb.q_left, 2 * nb.q_right, rf.beta(),
                                         2 * rf.beta()};
  const std::array<double, 2> monotone_taps{1.0, 0.0};
  const std::array<double, 2> odd_taps{1.0, -1.0};
  const auto& tap_values = cls == MultiplierClass::monotone ? monotone_taps : odd_taps;

  for (std::int64_t n : lags) {
    for (std::int64_t index : {n, -n}) {
      for (double h : tap_values) {
        if (h == 0.0) continue;
        // 1 - h e^{-jw index}, with the exponential reduced exactly.
        const std::complex<double> m = 1.0 - h * exponential_at(rf, index);
        if (std::abs(m) < 1e-9) continue;
        if (std::abs(std::arg(m) - target) <= kTightPhaseTolerance) {
          return FirMultiplier({{index, h}}, cls);
        }
      }
    }
  }
  throw Error(ErrorCode::NoTightCandidate, "no one-tap candidate attains the phase limit at " +
                                               std::to_string(rf.alpha()) + "/" + std::to_string(rf.beta()));
}

/// Monotone multiplier 1 - z^{+-n} whose phase at w = gamma pi exceeds
/// pi/2 - epsilon in magnitude. Walks the Stern-Brocot path to gamma with
/// accelerated turns. For each fraction p/q met on the way it tries n = q and
/// the smallest n = m q >= pi/(2 epsilon) with m p even, and returns the first
/// candidate that clears the threshold.
inline FirMultiplier irrational_approx_multiplier(double gamma, double epsilon) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const double omega = gamma * std::numbers::pi;
  const double threshold = 0.5 * std::numbers::pi - epsilon;
  const double q_min = 0.5 * std::numbers::pi / epsilon;
  const double resolution = 1.0 / (64.0 * DBL_EPSILON);

  auto exhausted = [&] {
    return Error(ErrorCode::PrecisionExhausted, "required denominator exceeds the resolution of gamma");
  };
  auto try_fraction = [&](std::int64_t p, std::int64_t q) -> std::optional<FirMultiplier> {
    auto m = static_cast<std::int64_t>(std::ceil(q_min / static_cast<double>(q)));
    if (p % 2 != 0 && m % 2 != 0) ++m;
    if (static_cast<double>(m) * static_cast<double>(q) > resolution) throw exhausted();
    for (std::int64_t n : {q, m * q}) {
      for (std::int64_t index : {n, -n}) {
        FirMultiplier cand({{index, 1.0}}, MultiplierClass::monotone);
        if (cand.phase(omega) > threshold) return cand;
      }
    }
    return std::nullopt;
  };

  std::int64_t pl = 0, ql = 1, pr = 1, qr = 1;
  if (auto m = try_fraction(pl, ql)) return *m;
  if (auto m = try_fraction(pr, qr)) return *m;
  for (;;) {
    if (static_cast<double>(ql) * static_cast<double>(qr) > resolution) throw exhausted();
    // One accelerated turn towards gamma; a tie makes the mediant the right end.
    const double mediant = static_cast<double>(pl + pr) / static_cast<double>(ql + qr);
    const bool go_right = gamma <= mediant;
    const double k = go_right ? std::floor((static_cast<double>(pr) - gamma * static_cast<double>(qr)) /
                                           (gamma * static_cast<double>(ql) - static_cast<double>(pl)))
                              : std::floor((gamma * static_cast<double>(ql) - static_cast<double>(pl)) /
                                           (static_cast<double>(pr) - gamma * static_cast<double>(qr)));
    // gamma equals the fixed end to working precision.
    if (!std::isfinite(k) || k > resolution) throw exhausted();
    const auto steps = static_cast<std::int64_t>(std::max(1.0, k));
    if (go_right) {
      pr += steps * pl;
      qr += steps * ql;
      if (auto m = try_fraction(pr, qr)) return *m;
    } else {
      pl += steps * pr;
      ql += steps * qr;
      if (auto m = try_fraction(pl, ql)) return *m;
    }
  }
}

}  // namespace zflim
