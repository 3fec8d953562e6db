#pragma once

// Interval phase limitation: if Im M > rho Re M on [a, b] for a multiplier of
// the class, then rho < interval_limit(a, b). Used by a grid/bisection search
// for a slope upper bound, kept for comparison with the rational-frequency
// bounds (it is slower and more conservative).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "zflim/lti.hpp"
#include "zflim/multiplier.hpp"

namespace zflim {

inline constexpr std::int64_t kIntervalSearchTerms = 100000;

namespace detail {

inline void check_interval(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= std::numbers::pi)) {
    throw Error(ErrorCode::InvalidInterval, "interval must satisfy 0 <= a < b <= pi");
  }
}

/// Walks mu(n), n = 1..n_max, where
///   psi(n) = (cos an - cos bn)/n,  phi(n) = (sin an - sin bn)/n,
///   mu(n) = |psi| / ((b-a) + phi)     (monotone)
///   mu(n) = |psi| / ((b-a) - |phi|)   (odd).
/// Calls visit(mu) for each term; visit returns false to stop. Stops by
/// itself once n is large enough that (2/n)/((b-a) - 2/n) <= tail_below,
/// since no later term can exceed that. tail_below may change during the walk.
template <class Visit>
void walk_interval_terms(double a, double b, MultiplierClass cls, std::int64_t n_max, const double& tail_below,
                         Visit&& visit) {
  const double width = b - a;
  const std::complex<double> step_a = std::polar(1.0, a), step_b = std::polar(1.0, b);
  std::complex<double> za = step_a, zb = step_b;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double inv_n = 1.0 / static_cast<double>(n);
    const double psi = (za.real() - zb.real()) * inv_n;
    const double phi = (za.imag() - zb.imag()) * inv_n;
    const double den = cls == MultiplierClass::monotone ? width + phi : width - std::abs(phi);
    if (den >= 1e-12 && !visit(std::abs(psi) / den)) return;
    const double envelope_den = width - 2.0 * inv_n;
    if (envelope_den > 0.0 && 2.0 * inv_n / envelope_den <= tail_below) return;
    za *= step_a;
    zb *= step_b;
    if (n % 1024 == 0) {
      za = std::polar(1.0, std::fmod(a * static_cast<double>(n + 1), 2.0 * std::numbers::pi));
      zb = std::polar(1.0, std::fmod(b * static_cast<double>(n + 1), 2.0 * std::numbers::pi));
    }
  }
}

}  // namespace detail

/// max over n = 1..n_max of mu(n).
inline double interval_limit(double a, double b, MultiplierClass cls, std::int64_t n_max = kIntervalSearchTerms) {
  detail::check_interval(a, b);
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be positive");
  double best = 0.0;
  detail::walk_interval_terms(a, b, cls, n_max, best, [&](double mu) {
    best = std::max(best, mu);
    return true;
  });
  return best;
}

/// Single term mu(n).
inline double interval_term(double a, double b, MultiplierClass cls, std::int64_t n) {
  detail::check_interval(a, b);
  const double nn = static_cast<double>(n);
  const double psi = (std::cos(a * nn) - std::cos(b * nn)) / nn;
  const double phi = (std::sin(a * nn) - std::sin(b * nn)) / nn;
  const double den = cls == MultiplierClass::monotone ? (b - a) + phi : (b - a) - std::abs(phi);
  return std::abs(psi) / den;
}

/// True when interval_limit(a, b) <= threshold, deciding as early as possible.
inline bool interval_limit_at_most(double a, double b, MultiplierClass cls, double threshold,
                                   std::int64_t n_max = kIntervalSearchTerms) {
  detail::check_interval(a, b);
  bool exceeded = false;
  detail::walk_interval_terms(a, b, cls, n_max, threshold, [&](double mu) {
    exceeded = mu > threshold;
    return !exceeded;
  });
  return !exceeded;
}

struct LegacyResult {
  double k_upper = 0.0;
  bool obstruction_found = false;  ///< false: no pair obstructs up to k_hi, k_upper = k_hi
  double a = 0.0;                  ///< interval of the last obstruction found
  double b = 0.0;
  double resolution = 0.0;
  double wall_time = 0.0;
};

namespace detail {

/// First interval (lexicographic in a, then b) on which the phase the
/// multiplier would need exceeds the interval limit. Intervals consist of
/// consecutive grid points with Re G~ <= 0 and no change in the sign of
/// Im G~; the needed phase at each point is |arg G~| - pi/2.
inline std::optional<std::pair<double, double>> find_obstruction(const std::vector<double>& omega,
                                                                 const std::vector<Complex>& value, double offset,
                                                                 MultiplierClass cls, std::int64_t n_max) {
  const std::size_t n = omega.size();
  std::vector<char> selected(n);
  std::vector<double> need(n);
  std::vector<int> sign(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex g = value[i] + offset;
    selected[i] = g.real() <= 0.0;
    const double eta = std::abs(std::arg(g)) - 0.5 * std::numbers::pi;
    need[i] = eta >= 0.5 * std::numbers::pi ? std::numeric_limits<double>::infinity() : std::tan(std::max(eta, 0.0));
    sign[i] = g.imag() > 0.0 ? 1 : (g.imag() < 0.0 ? -1 : 0);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!selected[i]) continue;
    double tau = need[i];
    int run_sign = sign[i];
    for (std::size_t j = i + 1; j < n && selected[j]; ++j) {
      if (sign[j] != 0) {
        if (run_sign != 0 && sign[j] != run_sign) break;
        run_sign = sign[j];
      }
      tau = std::min(tau, need[j]);
      if (tau <= 0.0) break;
      if (omega[j] > omega[i] && interval_limit_at_most(omega[i], omega[j], cls, tau, n_max)) {
        return std::pair{omega[i], omega[j]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Bisection on k using interval obstructions on a uniform grid of the given
/// resolution over [0, pi]. A gain with an obstruction becomes the new upper
/// end; returns the upper end once the bracket is below tol_k.
inline LegacyResult legacy_upper_bound(const TransferFunction& g, MultiplierClass cls, double resolution, double k_lo,
                                       double k_hi, double tol_k, std::int64_t n_max = kIntervalSearchTerms) {
  if (!(k_lo > 0.0 && k_lo < k_hi && tol_k > 0.0)) {
    throw Error(ErrorCode::BracketInvalid, "need 0 < k_lo < k_hi and tol_k > 0");
  }
  if (!(resolution > 0.0 && resolution < std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument, "resolution must lie in (0, pi)");
  }
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> omega;
  for (std::int64_t i = 0; static_cast<double>(i) * resolution < std::numbers::pi; ++i) {
    omega.push_back(static_cast<double>(i) * resolution);
  }
  omega.push_back(std::numbers::pi);
  std::vector<Complex> value;
  value.reserve(omega.size());
  for (double w : omega) value.push_back(evaluate(g, w));

  LegacyResult out;
  out.resolution = resolution;
  if (auto hit = detail::find_obstruction(omega, value, 1.0 / k_hi, cls, n_max)) {
    out.obstruction_found = true;
    std::tie(out.a, out.b) = *hit;
  }
  while (k_hi - k_lo > tol_k) {
    const double k = 0.5 * (k_lo + k_hi);
    if (auto hit = detail::find_obstruction(omega, value, 1.0 / k, cls, n_max)) {
      k_hi = k;
      out.obstruction_found = true;
      std::tie(out.a, out.b) = *hit;
    } else {
      k_lo = k;
    }
  }
  out.k_upper = k_hi;
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace zflim
