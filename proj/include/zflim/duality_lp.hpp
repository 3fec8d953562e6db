#pragma once

// Multi-frequency certificates of non-existence. On the grid w_r = r pi/beta,
// r = 1..beta-1, a nonnegative nonzero weight vector L with
//   L' v_i^- <= 0                 for i = 0..2beta-1   (monotone class)
//   L' v_i^- <= 0, L' v_i^+ <= 0                        (odd class)
// where v_i^{-/+}[r] = Re{(1 -/+ e^{-j w_r i}) G(e^{j w_r})}, rules out every
// Zames-Falb multiplier of the class for G.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zflim/lti.hpp"
#include "zflim/multiplier.hpp"
#include "zflim/simplex.hpp"

namespace zflim {

struct CertificateVectors {
  std::int64_t beta = 0;
  Eigen::MatrixXd v_minus;  ///< 2 beta rows (lag i), beta-1 columns (frequency r)
  Eigen::MatrixXd v_plus;
};

/// Frequencies r pi / beta, r = 1..beta-1.
inline std::vector<double> certificate_frequencies(std::int64_t beta) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(beta - 1));
  for (std::int64_t r = 1; r < beta; ++r) w.push_back(std::numbers::pi * static_cast<double>(r) / static_cast<double>(beta));
  return w;
}

/// Vectors from precomputed responses values[r-1] = G(e^{j r pi/beta}).
inline CertificateVectors build_vectors_from_values(std::int64_t beta, std::span<const Complex> values) {
  if (beta < 2) throw Error(ErrorCode::InvalidArgument, "beta must be at least 2");
  if (static_cast<std::int64_t>(values.size()) != beta - 1) {
    throw Error(ErrorCode::InvalidArgument, "expected beta-1 frequency responses");
  }
  const std::int64_t rows = 2 * beta;
  CertificateVectors v{beta, Eigen::MatrixXd(rows, beta - 1), Eigen::MatrixXd(rows, beta - 1)};
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t r = 1; r < beta; ++r) {
      // e^{-j w_r i} with w_r i = (r i mod 2 beta) pi / beta.
      const std::int64_t m = (r * i) % rows;
      const Complex e = std::polar(1.0, -std::numbers::pi * static_cast<double>(m) / static_cast<double>(beta));
      const Complex g = values[static_cast<std::size_t>(r - 1)];
      v.v_minus(i, r - 1) = ((1.0 - e) * g).real();
      v.v_plus(i, r - 1) = ((1.0 + e) * g).real();
    }
  }
  return v;
}

inline CertificateVectors build_vectors(const TransferFunction& g_tilde, std::int64_t beta) {
  std::vector<Complex> values;
  for (double w : certificate_frequencies(beta)) values.push_back(evaluate(g_tilde, w));
  return build_vectors_from_values(beta, values);
}

/// max_i L' v_i over the rows relevant to the class, in plain loops.
inline double certificate_residual(const CertificateVectors& v, std::span<const double> lambdas, MultiplierClass cls) {
  double worst = -std::numeric_limits<double>::infinity();
  auto scan = [&](const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double s = 0.0;
      for (Eigen::Index r = 0; r < m.cols(); ++r) s += lambdas[static_cast<std::size_t>(r)] * m(i, r);
      worst = std::max(worst, s);
    }
  };
  scan(v.v_minus);
  if (cls == MultiplierClass::odd) scan(v.v_plus);
  return worst;
}

struct DualityCertificate {
  std::int64_t beta = 0;
  std::vector<double> freqs;
  std::vector<double> lambdas;  ///< nonnegative, summing to one
  MultiplierClass multiplier_class = MultiplierClass::monotone;
  double margin = 0.0;        ///< -residual_max; never positive since row i = 0 of v^- is zero
  double residual_max = 0.0;  ///< max_i L' v_i recomputed from the returned weights
};

inline constexpr double kLpTolerance = 1e-9;
inline constexpr double kRhsPerturbation = 1e-10;

/// Solves  max t  s.t.  L >= 0, sum L = 1, L' v_i <= -t  for the class rows.
/// The problem is the matrix game with payoff -v_i[r]; after an affine shift
/// to a positive payoff it becomes  max 1'y s.t. P'y <= 1, y >= 0  whose
/// row multipliers are the weights. Returns a certificate when the weights,
/// checked directly against the vectors, give max_i L' v_i <= tol. The
/// tolerance is relative to the largest |v_i[r]|, which makes the test
/// invariant under scaling of G.
inline std::optional<DualityCertificate> lp_certificate(const TransferFunction& g_tilde, std::int64_t beta,
                                                        MultiplierClass cls, double tol_lp = kLpTolerance) {
  const auto v = build_vectors(g_tilde, beta);
  const Eigen::Index n = beta - 1;
  Eigen::MatrixXd rows = v.v_minus;
  if (cls == MultiplierClass::odd) {
    rows.conservativeResize(v.v_minus.rows() + v.v_plus.rows(), Eigen::NoChange);
    rows.bottomRows(v.v_plus.rows()) = v.v_plus;
  }
  const double scale = rows.cwiseAbs().maxCoeff();

  DualityCertificate cert;
  cert.beta = beta;
  cert.freqs = certificate_frequencies(beta);
  cert.multiplier_class = cls;

  Eigen::VectorXd lambdas;
  if (scale == 0.0) {
    lambdas = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  } else {
    const Eigen::MatrixXd payoff = (2.0 - (rows / scale).array()).matrix();  // entries in [1, 3]
    // The optimum is highly degenerate (row 0 of v^- is identically zero and
    // many rows tie). A tiny perturbation of the right-hand side breaks the
    // ties; the weights are re-verified against the exact vectors below.
    std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(beta));
    std::uniform_real_distribution<double> jitter(0.0, kRhsPerturbation);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index r = 0; r < n; ++r) rhs[r] = 1.0 + jitter(rng);
    const auto sol = lp::maximize(payoff.transpose(), rhs, Eigen::VectorXd::Ones(rows.rows()));
    if (sol.status != lp::Status::optimal || !(sol.objective > 0.0)) {
      throw Error(ErrorCode::LpNumericalFailure, "certificate LP did not reach an optimum");
    }
    const double total = sol.y.sum();
    if (!(total > 0.0)) throw Error(ErrorCode::LpNumericalFailure, "certificate LP returned zero weights");
    lambdas = sol.y / total;
  }

  const double tol = tol_lp * scale;
  cert.lambdas.assign(lambdas.data(), lambdas.data() + lambdas.size());
  cert.residual_max = scale == 0.0 ? 0.0 : certificate_residual(v, cert.lambdas, cls);
  cert.margin = -cert.residual_max;
  if (cert.residual_max > tol) return std::nullopt;
  return cert;
}

struct UpperBoundResult {
  double k = 0.0;
  DualityCertificate certificate;
  std::vector<double> non_monotone_gains;  ///< gains above k where no certificate was found
};

/// Bisection on the slope: smallest k (within tol_k) at which G + 1/k has a
/// certificate. Assumes certificate existence is monotone in k; five gains
/// between the result and the initial k_hi are spot-checked and any that
/// fail are reported.
inline UpperBoundResult bisect_upper_bound(const TransferFunction& g, std::int64_t beta, MultiplierClass cls,
                                           double k_lo, double k_hi, double tol_k, double tol_lp = kLpTolerance) {
  if (!(k_lo > 0.0 && k_lo < k_hi && tol_k > 0.0)) {
    throw Error(ErrorCode::BracketInvalid, "need 0 < k_lo < k_hi and tol_k > 0");
  }
  auto cert_at = [&](double k) { return lp_certificate(shift_by_inverse_gain(g, k), beta, cls, tol_lp); };
  auto top = cert_at(k_hi);
  if (!top) throw Error(ErrorCode::BracketInvalid, "no certificate at k_hi = " + std::to_string(k_hi));
  if (cert_at(k_lo)) throw Error(ErrorCode::BracketInvalid, "certificate already exists at k_lo = " + std::to_string(k_lo));

  const double k_top = k_hi;
  UpperBoundResult out;
  out.certificate = *top;
  while (k_hi - k_lo > tol_k) {
    const double mid = 0.5 * (k_lo + k_hi);
    if (auto c = cert_at(mid)) {
      k_hi = mid;
      out.certificate = *c;
    } else {
      k_lo = mid;
    }
  }
  out.k = k_hi;
  for (int s = 1; s <= 5; ++s) {
    const double k = k_hi + (k_top - k_hi) * s / 6.0;
    if (k > k_hi && !cert_at(k)) out.non_monotone_gains.push_back(k);
  }
  return out;
}

}  // namespace zflim
