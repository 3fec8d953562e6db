// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace zflim;
using zflim::testing::plant;

namespace {

constexpr MultiplierClass kBoth[] = {MultiplierClass::monotone, MultiplierClass::odd};

const auto& single_rows(MultiplierClass cls) {
  return cls == MultiplierClass::monotone ? zflim::testing::kSingleMonotone : zflim::testing::kSingleOdd;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    pass = false;
    detail << " [" << why << "]";
  }
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_s) o.fail("over time budget of " + std::to_string(budget_s) + " s");
  if (!o.pass) ++failures;
  std::printf("%s  %d  %-40s %8.2fs %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void nyquist_values(Outcome& o) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    const double k = nyquist_value(plant(zflim::testing::kPlantNames[i]));
    const double e = rel(k, zflim::testing::kNyquist[i]);
    worst = std::max(worst, e);
    if (e > 1e-3) o.fail(std::string(zflim::testing::kPlantNames[i]) + " = " + std::to_string(k));
  }
  o.detail << "max rel err " << worst;
}

void single_frequency_table(Outcome& o) {
  double worst = 0.0;
  for (auto cls : kBoth) {
    for (const auto& row : single_rows(cls)) {
      const auto r = scan_upper_bound(plant(row.name), cls, 50);
      worst = std::max(worst, std::abs(r.k_upper - row.value));
      if (std::abs(r.k_upper - row.value) > 1e-4) o.fail(std::string(row.name) + " value");
      if (!r.witness || !(*r.witness == RationalFrequency(row.alpha, row.beta))) {
        o.fail(std::string(row.name) + " witness");
      }
    }
  }
  o.detail << "12 entries, max abs err " << worst;
}

void lp_bound_ex1(Outcome& o) {
  const auto r = bisect_upper_bound(plant("ex1"), 250, MultiplierClass::odd, 13.0, 14.0, 1e-4);
  o.detail << "k = " << r.k;
  if (std::abs(r.k - 13.5117) > 5e-4) o.fail("outside 13.5117 +- 5e-4");
}

void nonconvexity(Outcome& o) {
  const auto mix = affine_combine({{0.2, shift_by_inverse_gain(plant("ex1"), 12.9)},
                                   {0.8, shift_by_inverse_gain(plant("ex2"), 3.8)}});
  bool any = false;
  const auto v = build_vectors(mix, 40);
  const double scale = std::max(v.v_minus.cwiseAbs().maxCoeff(), v.v_plus.cwiseAbs().maxCoeff());
  for (auto cls : kBoth) {
    const auto c = lp_certificate(mix, 40, cls);
    if (!c) continue;
    const double residual = certificate_residual(v, c->lambdas, cls);
    o.detail << to_string(cls) << " residual " << residual << "; ";
    if (residual <= kLpTolerance * scale) any = true;
  }
  if (!any) o.fail("no verified certificate");
}

void lower_bounds(Outcome& o) {
  double worst = 0.0;
  for (const auto& row : zflim::testing::kLower) {
    for (auto cls : kBoth) {
      const bool mono = cls == MultiplierClass::monotone;
      SearchConfig cfg;
      cfg.n_z = mono ? row.n_z_monotone : row.n_z_odd;
      const double reference = mono ? row.monotone : row.odd;
      const auto g = plant(row.name);
      const double up = scan_upper_bound(g, cls, 50).k_upper;
      const auto r = bisect_lower_bound(g, cfg, cls, 0.5 * up, 1.001 * up, 1e-6 * up);
      const double e = rel(r.k, reference);
      worst = std::max(worst, e);
      if (e > 0.02) o.fail(std::string(row.name) + " " + std::string(to_string(cls)) + " = " + std::to_string(r.k));
      if (r.k > up + kChainSlack) o.fail(std::string(row.name) + " above upper bound");
    }
  }
  o.detail << "max rel err " << worst * 100 << "%";
}

void tightness(Outcome& o) {
  int checked = 0;
  for (const auto& rf : coprime_frequencies(30)) {
    for (auto cls : kBoth) {
      const double limit = phase_limit(rf, cls);
      if (!(limit > 0.0)) continue;
      for (auto s : {PhaseSign::positive, PhaseSign::negative}) {
        const auto m = construct_tight_multiplier(rf, cls, s);
        bool valid = m.taps().count(0) == 0 && m.l1_norm() <= 1.0;
        for (const auto& [lag, h] : m.taps()) valid = valid && (cls == MultiplierClass::odd || h >= 0.0);
        const double target = s == PhaseSign::positive ? limit : -limit;
        if (!valid || std::abs(m.phase(rf.omega()) - target) > 1e-12) {
          o.fail(std::to_string(rf.alpha()) + "/" + std::to_string(rf.beta()));
        }
        ++checked;
      }
    }
  }
  o.detail << checked << " multipliers";
}

void certificate_soundness(Outcome& o) {
  std::mt19937_64 rng(2024);
  double worst = -std::numeric_limits<double>::infinity();
  for (auto cls : kBoth) {
    for (const auto& row : single_rows(cls)) {
      const auto g = shift_by_inverse_gain(plant(row.name), 1.01 * row.value);
      const std::int64_t beta = auto_lp_beta(RationalFrequency(row.alpha, row.beta));
      const auto c = lp_certificate(g, beta, cls);
      if (!c) {
        o.fail(std::string(row.name) + " no certificate");
        continue;
      }
      std::vector<Complex> gw;
      for (double w : c->freqs) gw.push_back(evaluate(g, w));
      for (int i = 0; i < 1000; ++i) {
        const auto m = zflim::testing::random_multiplier(rng, cls);
        double s = 0.0;
        for (std::size_t r = 0; r < gw.size(); ++r) s += c->lambdas[r] * (m.response(c->freqs[r]) * gw[r]).real();
        worst = std::max(worst, s);
        if (s > 1e-9) {
          o.fail(std::string(row.name) + " " + std::string(to_string(cls)) + " sum " + std::to_string(s));
          break;
        }
      }
    }
  }
  o.detail << "12000 multipliers, max weighted sum " << worst;
}

void legacy_comparison(Outcome& o) {
  for (auto cls : kBoth) {
    for (const auto& row : single_rows(cls)) {
      const auto g = plant(row.name);
      const double k_n = nyquist_value(g);
      const auto r = legacy_upper_bound(g, cls, 1e-3, 1e-3 * row.value, std::min(k_n, 2.0 * row.value), 1e-5);
      o.detail << row.name << (cls == MultiplierClass::odd ? "o" : "m") << "=" << r.k_upper << " ";
      if (r.k_upper < row.value - 1e-6) o.fail(std::string(row.name) + " below single-frequency bound");
    }
  }
}

void continuous_properties(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0), c(-1.0, 1.0);
  std::uniform_int_distribution<int> beta_dist(2, 30), count(1, 4);
  int flips = 0, mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    // Refinement: halving the step never turns a true check false.
    CtCertificateInput in;
    double w = 0.0, total = 0.0;
    const int n = count(rng);
    for (int r = 0; r < n; ++r) {
      w += 0.2 + 2.0 * u(rng);
      in.freqs.push_back(w);
      in.values.emplace_back(c(rng), c(rng));
      in.lambdas.push_back(u(rng) + 0.05);
      total += in.lambdas.back();
    }
    in.value_at_infinity = -3.0 * u(rng);
    in.lambda_infinity = u(rng);
    total += in.lambda_infinity;
    for (double& l : in.lambdas) l /= total;
    in.lambda_infinity /= total;
    in.t_horizon = 20.0 * 2.0 * std::numbers::pi / in.freqs.front();
    in.t_step = 0.05;
    bool odd_prev = false, nonodd_prev = false;
    for (int level = 0; level < 4; ++level) {
      const bool odd = ct_check_odd(in).holds, nonodd = ct_check_nonodd(in).holds;
      flips += (odd_prev && !odd) + (nonodd_prev && !nonodd);
      odd_prev = odd;
      nonodd_prev = nonodd;
      *in.t_step *= 0.5;
    }

    // Embedding: integer times over one period give the discrete residual.
    const std::int64_t beta = beta_dist(rng);
    const auto g = shift_by_inverse_gain(plant(zflim::testing::kPlantNames[i % 6]), 0.5 + 30.0 * u(rng));
    CtCertificateInput d;
    d.freqs = certificate_frequencies(beta);
    for (double f : d.freqs) d.values.push_back(evaluate(g, f));
    total = 0.0;
    for (std::int64_t r = 1; r < beta; ++r) total += d.lambdas.emplace_back(u(rng));
    for (double& l : d.lambdas) l /= total;
    d.t_step = 1.0;
    d.t_horizon = static_cast<double>(2 * beta);
    d.lipschitz_pad = false;
    const auto v = build_vectors_from_values(beta, d.values);
    for (auto cls : kBoth) {
      const double residual = certificate_residual(v, d.lambdas, cls);
      const auto r = cls == MultiplierClass::odd ? ct_check_odd(d) : ct_check_nonodd(d);
      if (std::abs((r.lhs - r.rhs) - residual) > 1e-12) ++mismatches;
    }
  }
  o.detail << "100 instances, " << flips << " refinement flips, " << mismatches << " embedding mismatches";
  if (flips || mismatches) o.fail("property violated");
}

}  // namespace

int main() {
  run(1, "Nyquist values", 1.0, nyquist_values);
  run(2, "single-frequency upper bounds", 5.0, single_frequency_table);
  run(3, "LP upper bound, ex1 odd, beta 250", 600.0, lp_bound_ex1);
  run(4, "non-convexity witness", 30.0, nonconvexity);
  run(5, "primal lower bounds", 900.0, lower_bounds);
  run(6, "tight multipliers", 5.0, tightness);
  run(7, "certificate soundness sampling", 30.0, certificate_soundness);
  run(8, "legacy bound comparison", 600.0, legacy_comparison);
  run(9, "continuous-time properties", 60.0, continuous_properties);
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
