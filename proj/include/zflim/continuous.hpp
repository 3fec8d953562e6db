#pragma once

// Continuous-time non-existence checks from frequency-response samples.
// With f(t) = sum_{r<N} Re{l_r G(jw_r) e^{-jw_r t}} and the left-hand side
// s = sum_{r<=N} Re{l_r G(jw_r)} (w_N = infinity, G(j inf) real):
//   odd class:      s <= -sup_t |f(t)|
//   monotone class: s <=  inf_t f(t)
// The extrema over t are taken over a sampled window. Between samples f is
// bounded through its Lipschitz constant L = sum l_r |G(jw_r)| w_r, which
// makes the check conservative with respect to the window.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "zflim/lti.hpp"

namespace zflim {

struct CtCertificateInput {
  std::vector<double> freqs;  ///< finite frequencies (rad/s), strictly increasing and positive
  std::vector<Complex> values;
  std::vector<double> lambdas;
  std::optional<double> value_at_infinity;  ///< real limit G(j inf), if the infinite frequency is used
  double lambda_infinity = 0.0;
  std::optional<double> t_horizon;  ///< default 200 periods of the lowest frequency
  std::optional<double> t_step;     ///< default 1/200 period of the highest frequency
  double t_start = 0.0;
  bool lipschitz_pad = true;  ///< false: plain sampled extrema (exact for integer-period embeddings)
};

inline void validate(const CtCertificateInput& in) {
  if (in.freqs.size() != in.values.size() || in.freqs.size() != in.lambdas.size()) {
    throw Error(ErrorCode::InvalidArgument, "freqs, values and lambdas must have equal length");
  }
  bool any_positive = in.value_at_infinity && in.lambda_infinity > 0.0;
  for (std::size_t r = 0; r < in.freqs.size(); ++r) {
    if (!(in.freqs[r] > 0.0) || !std::isfinite(in.freqs[r])) {
      throw Error(ErrorCode::InvalidArgument, "finite frequencies must be positive");
    }
    if (r > 0 && !(in.freqs[r] > in.freqs[r - 1])) {
      throw Error(ErrorCode::InvalidArgument, "frequencies must be strictly increasing");
    }
    if (!(in.lambdas[r] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
    any_positive = any_positive || in.lambdas[r] > 0.0;
  }
  if (!(in.lambda_infinity >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative");
  if (!any_positive) throw Error(ErrorCode::InvalidArgument, "at least one weight must be positive");
  if (in.t_horizon && !(*in.t_horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_horizon must be positive");
  if (in.t_step && !(*in.t_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_step must be positive");
}

struct CtExtrema {
  double lhs = 0.0;        ///< s
  double sup_upper = 0.0;  ///< upper bound on sup f over the window
  double inf_lower = 0.0;  ///< lower bound on inf f over the window
  double abs_sup_upper = 0.0;
  double lipschitz = 0.0;
  std::int64_t samples = 0;
};

inline CtExtrema ct_extrema(const CtCertificateInput& in) {
  validate(in);
  CtExtrema e;
  for (std::size_t r = 0; r < in.freqs.size(); ++r) {
    e.lhs += in.lambdas[r] * in.values[r].real();
    e.lipschitz += in.lambdas[r] * std::abs(in.values[r]) * in.freqs[r];
  }
  if (in.value_at_infinity) e.lhs += in.lambda_infinity * *in.value_at_infinity;
  if (in.freqs.empty()) {
    e.samples = 1;
    return e;
  }

  const double two_pi = 2.0 * std::numbers::pi;
  const double horizon = in.t_horizon.value_or(200.0 * two_pi / in.freqs.front());
  const double step = in.t_step.value_or(two_pi / in.freqs.back() / 200.0);
  const auto intervals = static_cast<std::int64_t>(std::ceil(horizon / step - 1e-9));

  auto f = [&](double t) {
    double s = 0.0;
    for (std::size_t r = 0; r < in.freqs.size(); ++r) {
      s += in.lambdas[r] * (in.values[r] * std::polar(1.0, -in.freqs[r] * t)).real();
    }
    return s;
  };

  const double pad = in.lipschitz_pad ? e.lipschitz * step : 0.0;
  double prev = f(in.t_start);
  e.sup_upper = e.inf_lower = prev;
  for (std::int64_t k = 1; k <= intervals; ++k) {
    const double cur = f(in.t_start + static_cast<double>(k) * step);
    if (in.lipschitz_pad) {
      // Max and min of an L-Lipschitz function on the interval between two samples.
      e.sup_upper = std::max(e.sup_upper, 0.5 * (prev + cur + pad));
      e.inf_lower = std::min(e.inf_lower, 0.5 * (prev + cur - pad));
    } else {
      e.sup_upper = std::max(e.sup_upper, cur);
      e.inf_lower = std::min(e.inf_lower, cur);
    }
    prev = cur;
  }
  e.abs_sup_upper = std::max(e.sup_upper, -e.inf_lower);
  e.samples = intervals + 1;
  return e;
}

struct CtCheckResult {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  CtExtrema extrema;
};

/// Odd class: true when s <= -sup_t |f(t)| (with the window bound).
inline CtCheckResult ct_check_odd(const CtCertificateInput& in) {
  const auto e = ct_extrema(in);
  return {e.lhs <= -e.abs_sup_upper, e.lhs, -e.abs_sup_upper, e};
}

/// Monotone class: true when s <= inf_t f(t) (with the window bound).
inline CtCheckResult ct_check_nonodd(const CtCertificateInput& in) {
  const auto e = ct_extrema(in);
  return {e.lhs <= e.inf_lower, e.lhs, e.inf_lower, e};
}

}  // namespace zflim
