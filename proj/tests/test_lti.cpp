#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"

using namespace zflim;
using zflim::testing::plant;
using zflim::testing::tf_desc;

namespace {

TransferFunction unit_delay() {
  return {Polynomial(std::vector<double>{1.0}), Polynomial(std::vector<double>{0.0, 1.0})};
}

// Nyquist oracle: 1e6-point grid, each sign change of Im G located by linear
// interpolation of the neighbouring samples.
double brute_force_nyquist(const TransferFunction& g) {
  const int n = 1000000;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double re) {
    if (re < 0.0) best = std::min(best, -1.0 / re);
  };
  Complex prev = evaluate(g, 0.0);
  consider(prev.real());
  for (int i = 1; i < n; ++i) {
    const Complex cur = evaluate(g, std::numbers::pi * i / (n - 1));
    if (prev.imag() * cur.imag() < 0.0) {
      const double t = prev.imag() / (prev.imag() - cur.imag());
      consider(prev.real() + t * (cur.real() - prev.real()));
    }
    prev = cur;
  }
  consider(prev.real());
  return best;
}

}  // namespace

TEST(Polynomial, TrimsAndEvaluates) {
  Polynomial p(std::vector<double>{1.0, 2.0, 0.0, 0.0});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(p(Complex(2.0)), Complex(5.0));
  EXPECT_TRUE(Polynomial(std::vector<double>{0.0, 0.0}).is_zero());
  EXPECT_EQ(Polynomial::from_descending(std::vector<double>{1.0, -1.8, 0.81}).coeffs()[0], 0.81);
}

TEST(TransferFunction, RejectsImproperAndZeroDenominator) {
  EXPECT_THROW(tf_desc({1.0, 0.0, 0.0}, {1.0, 0.5}), Error);
  EXPECT_THROW(tf_desc({1.0}, {0.0}), Error);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(TransferFunction::constant(1.0), 0.7), Complex(1.0));
  EXPECT_NEAR(evaluate(plant("ex1"), std::numbers::pi).real(), -0.1 / 3.61, 1e-15);
  EXPECT_NEAR(std::abs(evaluate(plant("ex1"), std::numbers::pi).imag()), 0.0, 1e-15);
  const Complex d = evaluate(unit_delay(), std::numbers::pi / 2);
  EXPECT_NEAR(d.real(), 0.0, 1e-15);
  EXPECT_NEAR(d.imag(), -1.0, 1e-15);
}

TEST(Evaluate, PoleOnUnitCircle) {
  try {
    (void)evaluate(tf_desc({1.0}, {1.0, -1.0}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleOnUnitCircle);
  }
}

TEST(Evaluate, ConjugateSymmetry) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> w(-std::numbers::pi, std::numbers::pi);
  for (const char* name : zflim::testing::kPlantNames) {
    const auto g = plant(name);
    for (int i = 0; i < 1000; ++i) {
      const double omega = w(rng);
      const Complex a = evaluate(g, omega), b = std::conj(evaluate(g, -omega));
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST(Poles, DoubleRoot) {
  const auto p = poles(plant("ex1"));
  ASSERT_EQ(p.size(), 2u);
  for (const auto& z : p) EXPECT_NEAR(std::abs(z - 0.9), 0.0, 1e-6);
}

TEST(Poles, QuadraticFormulaOracle) {
  const auto g = plant("ex6");
  const auto p = poles(g);
  ASSERT_EQ(p.size(), 2u);
  const Complex disc = std::sqrt(Complex(1.415 * 1.415 - 4 * 0.5523));
  const Complex r1 = (-1.415 + disc) / 2.0, r2 = (-1.415 - disc) / 2.0;
  for (const auto& z : p) {
    EXPECT_LE(std::abs(g.den()(z)), 1e-10 * g.den().scale());
    EXPECT_LT(std::min(std::abs(z - r1), std::abs(z - r2)), 1e-10);
  }
}

TEST(Poles, ConstantDenominator) { EXPECT_TRUE(poles(TransferFunction::constant(2.0)).empty()); }

TEST(Poles, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.05, 0.95), angle(0.0, std::numbers::pi);
  std::uniform_int_distribution<int> pairs(0, 4);
  int checked = 0;
  while (checked < 200) {
    std::vector<Complex> truth;
    const int np = pairs(rng);
    for (int i = 0; i < np; ++i) {
      const Complex z = std::polar(radius(rng), angle(rng));
      truth.push_back(z);
      truth.push_back(std::conj(z));
    }
    if (truth.size() < 8 && (truth.empty() || radius(rng) < 0.5)) truth.emplace_back(2.0 * radius(rng) - 1.0, 0.0);
    if (truth.empty() || truth.size() > 8) continue;
    bool separated = true;
    for (std::size_t i = 0; i < truth.size(); ++i)
      for (std::size_t j = i + 1; j < truth.size(); ++j) separated = separated && std::abs(truth[i] - truth[j]) > 0.1;
    if (!separated) continue;

    Polynomial den(std::vector<double>{1.0});
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (truth[i].imag() > 0.0) {
        den = den * Polynomial(std::vector<double>{std::norm(truth[i]), -2.0 * truth[i].real(), 1.0});
      } else if (truth[i].imag() == 0.0) {
        den = den * Polynomial(std::vector<double>{-truth[i].real(), 1.0});
      }
    }
    auto found = roots(den);
    ASSERT_EQ(found.size(), truth.size());
    for (const auto& t : truth) {
      auto it = std::ranges::min_element(found, {}, [&](Complex z) { return std::abs(z - t); });
      EXPECT_LT(std::abs(*it - t), 1e-8);
      found.erase(it);
    }
    ++checked;
  }
}

TEST(Stability, Examples) {
  EXPECT_TRUE(is_stable(plant("ex1")));
  EXPECT_FALSE(is_stable(tf_desc({1.0}, {1.0, -1.0})));
  for (const char* name : zflim::testing::kPlantNames) EXPECT_TRUE(is_stable(plant(name))) << name;
}

TEST(ShiftByInverseGain, Examples) {
  const auto half = shift_by_inverse_gain(TransferFunction::constant(0.0), 2.0);
  EXPECT_EQ(evaluate(half, 1.3), Complex(0.5));
  EXPECT_LT(std::abs(evaluate(shift_by_inverse_gain(plant("ex1"), 36.1), std::numbers::pi)), 1e-6);
  try {
    (void)shift_by_inverse_gain(plant("ex1"), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGain);
  }
}

TEST(ShiftByInverseGain, Pointwise) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(0.0, std::numbers::pi);
  const auto g = plant("ex2");
  const auto shifted = shift_by_inverse_gain(g, 3.7);
  for (int i = 0; i < 100; ++i) {
    const double omega = w(rng);
    EXPECT_NEAR(std::abs(evaluate(shifted, omega) - (evaluate(g, omega) + 1.0 / 3.7)), 0.0, 1e-12);
  }
}

TEST(AffineCombine, PointwiseOracle) {
  const auto g1 = plant("ex1"), g2 = plant("ex2");
  const auto s1 = shift_by_inverse_gain(g1, 12.9), s2 = shift_by_inverse_gain(g2, 3.8);
  const auto mix = affine_combine({{0.2, s1}, {0.8, s2}});
  for (double w : {0.1, std::numbers::pi / 2, 2.0, 3.0}) {
    const Complex expect = 0.2 * evaluate(s1, w) + 0.8 * evaluate(s2, w);
    EXPECT_NEAR(std::abs(evaluate(mix, w) - expect), 0.0, 1e-10);
  }
  const auto same = affine_combine({{1.0, g2}});
  const auto halves = affine_combine({{0.5, g2}, {0.5, g2}});
  for (double w : {0.3, 1.1, 2.9}) {
    EXPECT_NEAR(std::abs(evaluate(same, w) - evaluate(g2, w)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(evaluate(halves, w) - evaluate(g2, w)), 0.0, 1e-12);
  }
}

TEST(Nyquist, TableValues) {
  for (std::size_t i = 0; i < 6; ++i) {
    const double expect = zflim::testing::kNyquist[i];
    EXPECT_NEAR(nyquist_value(plant(zflim::testing::kPlantNames[i])), expect, 1e-3 * expect)
        << zflim::testing::kPlantNames[i];
  }
}

TEST(Nyquist, UnitDelayAndUnstable) {
  EXPECT_NEAR(nyquist_value(unit_delay()), 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(nyquist_value(TransferFunction::constant(1.0))));
  try {
    (void)nyquist_value(tf_desc({1.0}, {1.0, -1.2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStable);
  }
}

TEST(Nyquist, BruteForceOracle) {
  for (const char* name : zflim::testing::kPlantNames) {
    const auto g = plant(name);
    const double oracle = brute_force_nyquist(g);
    EXPECT_NEAR(nyquist_value(g), oracle, 1e-3 * oracle) << name;
  }
}

TEST(Nyquist, ClosedLoopStableBelowValue) {
  for (const char* name : zflim::testing::kPlantNames) {
    const auto g = plant(name);
    const double kn = nyquist_value(g);
    for (double f : {0.1, 0.5, 0.99}) {
      const TransferFunction closed(g.num(), (f * kn) * g.num() + g.den());
      EXPECT_TRUE(is_stable(closed)) << name << " at " << f << " k_N";
    }
  }
}
