#pragma once

// Rational frequencies w = (alpha/beta) pi, periodicity of e^{-jwi}, and
// Stern-Brocot neighbours.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "zflim/error.hpp"

namespace zflim {

/// w = (alpha/beta) pi with alpha, beta coprime and 0 < alpha < beta, or
/// alpha = beta = 1 for w = pi.
class RationalFrequency {
 public:
  RationalFrequency(std::int64_t alpha, std::int64_t beta) : alpha_(alpha), beta_(beta) {
    if (alpha < 1 || beta < 1) throw Error(ErrorCode::InvalidArgument, "alpha and beta must be positive");
    if (std::gcd(alpha, beta) != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  std::to_string(alpha) + "/" + std::to_string(beta) + " is not in lowest terms");
    }
    if (alpha > beta || (alpha == beta && beta != 1)) {
      throw Error(ErrorCode::InvalidArgument, "frequency must lie in (0, pi]");
    }
  }

  std::int64_t alpha() const { return alpha_; }
  std::int64_t beta() const { return beta_; }
  double omega() const { return std::numbers::pi * static_cast<double>(alpha_) / static_cast<double>(beta_); }
  bool alpha_odd() const { return alpha_ % 2 != 0; }
  bool is_pi() const { return alpha_ == 1 && beta_ == 1; }

  friend bool operator==(const RationalFrequency&, const RationalFrequency&) = default;

 private:
  std::int64_t alpha_;
  std::int64_t beta_;
};

/// Minimal period of i -> e^{-jwi}: 2 beta for odd alpha, beta for even alpha.
inline std::int64_t period(const RationalFrequency& rf) {
  return rf.alpha_odd() ? 2 * rf.beta() : rf.beta();
}

/// Exact value of e^{-jwi}. The angle is reduced with integer arithmetic so
/// that large i does not lose precision.
inline std::complex<double> exponential_at(const RationalFrequency& rf, std::int64_t i) {
  const std::int64_t two_beta = 2 * rf.beta();
  std::int64_t m = (rf.alpha() % two_beta) * (((i % two_beta) + two_beta) % two_beta) % two_beta;
  // Multiples of pi/2 are returned exactly so that sign tests on the axes are not decided by round-off.
  if ((2 * m) % rf.beta() == 0) {
    constexpr std::complex<double> axis[] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    return axis[(2 * m) / rf.beta()];
  }
  return std::polar(1.0, -std::numbers::pi * static_cast<double>(m) / static_cast<double>(rf.beta()));
}

/// Phases of e^{-jwi} for i = 0..T-1, wrapped into (-2pi, 0] and sorted in
/// decreasing order: {0, -step, -2 step, ...}.
inline std::vector<double> phase_set(const RationalFrequency& rf) {
  const std::int64_t t = period(rf);
  const std::int64_t two_beta = 2 * rf.beta();
  std::vector<std::int64_t> steps;
  steps.reserve(static_cast<std::size_t>(t));
  for (std::int64_t i = 0; i < t; ++i) steps.push_back((rf.alpha() * i) % two_beta);
  std::ranges::sort(steps);
  std::vector<double> out;
  out.reserve(steps.size());
  for (std::int64_t s : steps) out.push_back(-std::numbers::pi * static_cast<double>(s) / static_cast<double>(rf.beta()));
  return out;
}

/// Parents of a fraction in the Stern-Brocot tree: left < target < right
/// with right_p*left_q - left_p*right_q = 1 and the target as their mediant.
struct SternBrocotNeighbors {
  std::int64_t p_left = 0;
  std::int64_t q_left = 1;
  std::int64_t p_right = 1;
  std::int64_t q_right = 1;
};

/// Accelerated mediant descent (runs of equal turns are taken in one step,
/// as with continued-fraction convergents), O(log beta) iterations.
inline SternBrocotNeighbors stern_brocot_neighbors(const RationalFrequency& rf) {
  SternBrocotNeighbors n;
  if (rf.is_pi()) return n;
  using Wide = __int128;
  const Wide a = rf.alpha(), b = rf.beta();
  Wide pl = 0, ql = 1, pr = 1, qr = 1;
  for (;;) {
    const Wide mp = pl + pr, mq = ql + qr;
    const Wide lhs = a * mq, rhs = b * mp;
    if (lhs == rhs) break;
    if (lhs < rhs) {
      // target < mediant: move the right end towards the left one k times.
      const Wide num = b * pr - a * qr, den = a * ql - b * pl;
      const Wide k = std::max<Wide>(1, (num - 1) / den);
      pr += k * pl;
      qr += k * ql;
    } else {
      const Wide num = a * ql - b * pl, den = b * pr - a * qr;
      const Wide k = std::max<Wide>(1, (num - 1) / den);
      pl += k * pr;
      ql += k * qr;
    }
  }
  n.p_left = static_cast<std::int64_t>(pl);
  n.q_left = static_cast<std::int64_t>(ql);
  n.p_right = static_cast<std::int64_t>(pr);
  n.q_right = static_cast<std::int64_t>(qr);
  return n;
}

/// All valid rational frequencies with beta <= beta_max, in increasing order
/// of w, generated as the Farey sequence of that order (0/1 excluded).
inline std::vector<RationalFrequency> coprime_frequencies(std::int64_t beta_max) {
  if (beta_max < 1) throw Error(ErrorCode::InvalidArgument, "beta_max must be positive");
  std::vector<RationalFrequency> out;
  std::int64_t a = 0, b = 1, c = 1, d = beta_max;
  while (c <= beta_max) {
    const std::int64_t k = (beta_max + b) / d;
    const std::int64_t e = k * c - a, f = k * d - b;
    a = c; b = d; c = e; d = f;
    out.emplace_back(a, b);
    if (a == 1 && b == 1) break;
  }
  return out;
}

}  // namespace zflim
