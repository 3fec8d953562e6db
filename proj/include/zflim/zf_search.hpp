#pragma once

// Primal search for an FIR multiplier with Re{M G~} > 0 on [0, pi], posed as a
// linear program on a frequency grid, and bisection on the slope for a lower
// bound.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "zflim/lti.hpp"
#include "zflim/multiplier.hpp"
#include "zflim/rational.hpp"
#include "zflim/simplex.hpp"

namespace zflim {

struct SearchConfig {
  int n_z = 5;               ///< taps at lags -n_z..-1 and 1..n_z
  int grid_size = 2000;      ///< uniform points on [0, pi]
  double eps_pos = 1e-7;     ///< required margin, relative to 1 + |G~|
  double delta_norm = 1e-6;  ///< ||h||_1 <= 1 - delta_norm
  std::vector<double> extra_freqs;
  int recheck_factor = 10;   ///< dense re-check grid is this many times finer
  int max_refinements = 5;   ///< re-solves after adding violated re-check points
  std::int64_t rational_beta_max = 12;
};

inline void validate(const SearchConfig& c) {
  if (c.n_z < 1) throw Error(ErrorCode::InvalidArgument, "n_z must be positive");
  if (c.grid_size < 2) throw Error(ErrorCode::InvalidArgument, "grid_size must be at least 2");
  if (!(c.eps_pos > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_pos must be positive");
  if (!(c.delta_norm > 0.0 && c.delta_norm < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta_norm must lie in (0, 1)");
  }
  if (c.recheck_factor < 1 || c.max_refinements < 0) {
    throw Error(ErrorCode::InvalidArgument, "invalid re-check settings");
  }
}

/// Samples of a plant on the search grid and on the dense re-check grid.
/// Shifting by 1/k only adds a constant, so bisection reuses one table.
struct SearchSamples {
  std::vector<double> omega;
  std::vector<Complex> value;
  std::vector<double> dense_omega;
  std::vector<Complex> dense_value;

  SearchSamples shifted(double offset) const {
    SearchSamples s = *this;
    for (auto& v : s.value) v += offset;
    for (auto& v : s.dense_value) v += offset;
    return s;
  }
};

inline std::vector<double> search_grid(const SearchConfig& c) {
  std::vector<double> w;
  const double pi = std::numbers::pi;
  for (int i = 0; i < c.grid_size; ++i) w.push_back(pi * i / (c.grid_size - 1));
  for (const auto& rf : coprime_frequencies(c.rational_beta_max)) w.push_back(rf.omega());
  for (double x : c.extra_freqs) {
    if (x >= 0.0 && x <= pi) w.push_back(x);
  }
  std::ranges::sort(w);
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

inline SearchSamples sample_plant(const TransferFunction& g, const SearchConfig& c) {
  validate(c);
  SearchSamples s;
  s.omega = search_grid(c);
  for (double w : s.omega) s.value.push_back(evaluate(g, w));
  const int dense = c.grid_size * c.recheck_factor;
  for (int i = 0; i < dense; ++i) {
    const double w = std::numbers::pi * i / (dense - 1);
    s.dense_omega.push_back(w);
    s.dense_value.push_back(evaluate(g, w));
  }
  return s;
}

namespace detail {

inline std::vector<std::int64_t> search_lags(int n_z) {
  std::vector<std::int64_t> lags;
  for (std::int64_t i = -n_z; i <= n_z; ++i) {
    if (i != 0) lags.push_back(i);
  }
  return lags;
}

/// Max-margin LP
///   max t  s.t.  sum_i h_i Re{e^{-jw i} G~} + t (1 + |G~|) <= Re G~  on the grid,
///                sum |h_i| <= 1 - delta_norm,
/// with t shifted by t0 so that h = 0 is a feasible start. Returns the taps
/// (lag order of search_lags) and the margin.
inline std::pair<Eigen::VectorXd, double> max_margin_taps(const std::vector<double>& omega,
                                                         const std::vector<Complex>& value,
                                                         const std::vector<std::int64_t>& lags, MultiplierClass cls,
                                                         double delta_norm) {
  const Eigen::Index nl = static_cast<Eigen::Index>(lags.size());
  const Eigen::Index nh = cls == MultiplierClass::odd ? 2 * nl : nl;
  const Eigen::Index m = static_cast<Eigen::Index>(omega.size());

  double t0 = 0.0;
  for (Eigen::Index g = 0; g < m; ++g) {
    t0 = std::max(t0, -value[g].real() / (1.0 + std::abs(value[g])));
  }

  Eigen::MatrixXd a(m + 1, nh + 1);
  Eigen::VectorXd b(m + 1);
  for (Eigen::Index g = 0; g < m; ++g) {
    const Complex gv = value[g];
    const double weight = 1.0 + std::abs(gv);
    for (Eigen::Index l = 0; l < nl; ++l) {
      const double e = (std::polar(1.0, -omega[g] * static_cast<double>(lags[l])) * gv).real();
      a(g, l) = e;
      if (cls == MultiplierClass::odd) a(g, nl + l) = -e;
    }
    a(g, nh) = weight;
    b[g] = std::max(0.0, gv.real() + t0 * weight);
  }
  a.row(m).setOnes();
  a(m, nh) = 0.0;
  b[m] = 1.0 - delta_norm;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(nh + 1);
  c[nh] = 1.0;
  const auto sol = lp::maximize(a, b, c);
  if (sol.status != lp::Status::optimal) {
    throw Error(ErrorCode::LpNumericalFailure, "multiplier search LP did not reach an optimum");
  }
  Eigen::VectorXd h = sol.x.head(nl);
  if (cls == MultiplierClass::odd) h -= sol.x.segment(nl, nl);
  return {h, sol.x[nh] - t0};
}

inline double real_part_product(const FirMultiplier& mult, double omega, Complex g) {
  return (mult.response(omega) * g).real();
}

}  // namespace detail

/// Searches for M in the class with Re{M G~} >= eps_pos (1 + |G~|) on the
/// grid, then re-checks Re{M G~} >= 0 on the dense grid. Violated dense
/// points are added to the grid and the LP re-solved, up to max_refinements
/// times.
inline std::optional<FirMultiplier> find_multiplier(const SearchSamples& samples, const SearchConfig& config,
                                                    MultiplierClass cls) {
  validate(config);
  const auto lags = detail::search_lags(config.n_z);
  std::vector<double> omega = samples.omega;
  std::vector<Complex> value = samples.value;

  for (int round = 0; round <= config.max_refinements; ++round) {
    const auto [h, margin] = detail::max_margin_taps(omega, value, lags, cls, config.delta_norm);
    if (!(margin >= config.eps_pos)) return std::nullopt;

    // Rescale away LP round-off so the norm bound holds exactly.
    const double l1 = h.cwiseAbs().sum();
    const double cap = 1.0 - config.delta_norm;
    const double shrink = l1 > cap ? cap / l1 : 1.0;
    FirMultiplier::Taps taps;
    for (std::size_t l = 0; l < lags.size(); ++l) {
      double v = h[static_cast<Eigen::Index>(l)] * shrink;
      if (cls == MultiplierClass::monotone) v = std::max(v, 0.0);
      if (v != 0.0) taps[lags[l]] = v;
    }
    FirMultiplier mult(std::move(taps), cls);

    std::size_t added = 0;
    for (std::size_t d = 0; d < samples.dense_omega.size(); ++d) {
      if (detail::real_part_product(mult, samples.dense_omega[d], samples.dense_value[d]) < 0.0) {
        omega.push_back(samples.dense_omega[d]);
        value.push_back(samples.dense_value[d]);
        ++added;
      }
    }
    if (added == 0) return mult;
  }
  return std::nullopt;
}

inline std::optional<FirMultiplier> find_multiplier(const TransferFunction& g_tilde, const SearchConfig& config,
                                                    MultiplierClass cls) {
  return find_multiplier(sample_plant(g_tilde, config), config, cls);
}

struct LowerBoundResult {
  double k = 0.0;
  FirMultiplier multiplier;
};

/// Largest k (within tol_k) at which find_multiplier succeeds for G + 1/k.
inline LowerBoundResult bisect_lower_bound(const TransferFunction& g, const SearchConfig& config,
                                           MultiplierClass cls, double k_lo, double k_hi, double tol_k) {
  if (!(k_lo > 0.0 && k_lo < k_hi && tol_k > 0.0)) {
    throw Error(ErrorCode::BracketInvalid, "need 0 < k_lo < k_hi and tol_k > 0");
  }
  const auto base = sample_plant(g, config);
  auto probe = [&](double k) { return find_multiplier(base.shifted(1.0 / k), config, cls); };
  auto found = probe(k_lo);
  if (!found) throw Error(ErrorCode::BracketInvalid, "no multiplier at k_lo = " + std::to_string(k_lo));
  if (probe(k_hi)) throw Error(ErrorCode::BracketInvalid, "multiplier already exists at k_hi = " + std::to_string(k_hi));

  LowerBoundResult out{k_lo, *found};
  while (k_hi - k_lo > tol_k) {
    const double mid = 0.5 * (k_lo + k_hi);
    if (auto m = probe(mid)) {
      k_lo = mid;
      out.multiplier = *m;
    } else {
      k_hi = mid;
    }
  }
  out.k = k_lo;
  return out;
}

}  // namespace zflim
