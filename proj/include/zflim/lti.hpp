#pragma once

// Real rational discrete-time transfer functions: unit-circle evaluation,
// poles, stability, affine arithmetic and the Nyquist value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zflim/error.hpp"

namespace zflim {

using Complex = std::complex<double>;

/// Unit-circle point e^{jw}.
inline Complex unit_phasor(double omega) { return std::polar(1.0, omega); }

/// Real polynomial in z, coefficients in ascending powers (coeffs()[k]
/// multiplies z^k). Trailing zeros are trimmed; the zero polynomial is {0}.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}

  explicit Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
    for (double c : coeffs_) {
      if (!std::isfinite(c)) {
        throw Error(ErrorCode::InvalidArgument, "polynomial coefficient is not finite");
      }
    }
    trim();
  }

  static Polynomial from_descending(std::span<const double> descending) {
    return Polynomial(std::vector<double>(descending.rbegin(), descending.rend()));
  }

  std::span<const double> coeffs() const { return coeffs_; }
  std::vector<double> descending() const { return {coeffs_.rbegin(), coeffs_.rend()}; }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }

  /// Sum of absolute coefficients.
  double scale() const {
    double s = 0.0;
    for (double c : coeffs_) s += std::abs(c);
    return s;
  }

  Complex operator()(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Complex derivative_at(Complex z) const {
    Complex acc = 0.0;
    for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs_[k];
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(double s, const Polynomial& p) {
    std::vector<double> out(p.coeffs_);
    for (double& c : out) c *= s;
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  std::vector<double> coeffs_;
};

/// Proper real rational transfer function num(z)/den(z).
class TransferFunction {
 public:
  TransferFunction() : num_(std::vector<double>{0.0}), den_(std::vector<double>{1.0}) {}

  TransferFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "denominator is the zero polynomial");
    if (!num_.is_zero() && num_.degree() > den_.degree()) {
      throw Error(ErrorCode::InvalidArgument, "transfer function is not proper");
    }
  }

  /// Coefficients as printed in tables: highest power of z first.
  static TransferFunction from_descending(std::span<const double> num, std::span<const double> den) {
    return {Polynomial::from_descending(num), Polynomial::from_descending(den)};
  }

  static TransferFunction constant(double value) {
    return {Polynomial(std::vector<double>{value}), Polynomial(std::vector<double>{1.0})};
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  friend bool operator==(const TransferFunction&, const TransferFunction&) = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

inline constexpr double kDenominatorTolerance = 1e-12;
inline constexpr double kStabilityMargin = 1e-9;

/// G(e^{jw}). Throws PoleOnUnitCircle when the denominator vanishes there.
inline Complex evaluate(const TransferFunction& tf, double omega) {
  const Complex z = unit_phasor(omega);
  const Complex d = tf.den()(z);
  if (std::abs(d) < kDenominatorTolerance * tf.den().scale()) {
    throw Error(ErrorCode::PoleOnUnitCircle, "denominator vanishes at omega = " + std::to_string(omega));
  }
  return tf.num()(z) / d;
}

/// Roots of a polynomial with multiplicity: companion-matrix eigenvalues
/// followed by Newton polishing against the original coefficients.
inline std::vector<Complex> roots(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const auto c = p.coeffs();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::RootFindingFailed, "companion eigenvalue iteration did not converge");
  }

  const double coef_scale = p.scale();
  std::vector<Complex> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Complex z = solver.eigenvalues()[i];
    double residual = std::abs(p(z));
    for (int iter = 0; iter < 60; ++iter) {
      const Complex dp = p.derivative_at(z);
      if (dp == Complex(0.0) || residual == 0.0) break;
      const Complex candidate = z - p(z) / dp;
      const double r = std::abs(p(candidate));
      if (!(r < residual)) break;
      z = candidate;
      residual = r;
    }
    const double tol = 1e-10 * coef_scale * std::pow(std::max(1.0, std::abs(z)), n);
    if (residual > tol) {
      throw Error(ErrorCode::RootFindingFailed, "root residual " + std::to_string(residual) +
                                                    " above target " + std::to_string(tol));
    }
    out.push_back(z);
  }
  return out;
}

inline std::vector<Complex> poles(const TransferFunction& tf) { return roots(tf.den()); }

inline bool is_stable(const TransferFunction& tf) {
  return std::ranges::all_of(poles(tf), [](Complex p) { return std::abs(p) < 1.0 - kStabilityMargin; });
}

/// G + 1/k, the loop-transformed plant for slope restriction [0, k].
inline TransferFunction shift_by_inverse_gain(const TransferFunction& tf, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidGain, "gain must be positive and finite");
  }
  return {k * tf.num() + tf.den(), k * tf.den()};
}

/// Sum of weighted transfer functions over a common denominator. Terms that
/// share a bit-identical denominator are grouped first to keep the degree low.
inline TransferFunction affine_combine(std::span<const std::pair<double, TransferFunction>> terms) {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "affine_combine needs at least one term");
  std::vector<std::pair<Polynomial, Polynomial>> groups;  // (numerator sum, denominator)
  for (const auto& [w, tf] : terms) {
    if (!std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "weight is not finite");
    auto it = std::ranges::find_if(groups, [&](const auto& g) { return g.second == tf.den(); });
    if (it == groups.end()) {
      groups.emplace_back(w * tf.num(), tf.den());
    } else {
      it->first = it->first + w * tf.num();
    }
  }
  Polynomial num(std::vector<double>{0.0});
  Polynomial den(std::vector<double>{1.0});
  for (const auto& [gn, gd] : groups) {
    num = num * gd + gn * den;
    den = den * gd;
  }
  return {num, den};
}

inline TransferFunction affine_combine(std::initializer_list<std::pair<double, TransferFunction>> terms) {
  return affine_combine(std::span<const std::pair<double, TransferFunction>>(terms.begin(), terms.size()));
}

struct NyquistOptions {
  int scan_points = 20001;
  double bisection_tol = 1e-12;
  double tangential_tol = 1e-9;
};

/// Smallest gain k such that -1/k lies on the negative real part of the
/// frequency response locus over [0, pi]; +inf if the locus never crosses
/// the negative real axis.
inline double nyquist_value(const TransferFunction& tf, const NyquistOptions& opt = {}) {
  if (!is_stable(tf)) throw Error(ErrorCode::NotStable, "Nyquist value requires a stable plant");
  const int n = std::max(opt.scan_points, 3);
  const double pi = std::numbers::pi;
  std::vector<double> w(n), im(n);
  for (int i = 0; i < n; ++i) {
    w[i] = pi * i / (n - 1);
    im[i] = evaluate(tf, w[i]).imag();
  }
  std::vector<double> crossings{evaluate(tf, 0.0).real(), evaluate(tf, pi).real()};
  for (int i = 0; i + 1 < n; ++i) {
    if (im[i] == 0.0 && i > 0) crossings.push_back(evaluate(tf, w[i]).real());
    if (im[i] * im[i + 1] < 0.0) {
      double lo = w[i], hi = w[i + 1], flo = im[i];
      while (hi - lo > opt.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = evaluate(tf, mid).imag();
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
      }
      crossings.push_back(evaluate(tf, 0.5 * (lo + hi)).real());
    }
    // Locus touching the axis without a sign change.
    if (i > 0 && std::abs(im[i]) < opt.tangential_tol && std::abs(im[i]) <= std::abs(im[i - 1]) &&
        std::abs(im[i]) <= std::abs(im[i + 1])) {
      crossings.push_back(evaluate(tf, w[i]).real());
    }
  }
  double k_n = std::numeric_limits<double>::infinity();
  for (double re : crossings) {
    if (re < 0.0) k_n = std::min(k_n, -1.0 / re);
  }
  return k_n;
}

}  // namespace zflim
