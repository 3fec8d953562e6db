#pragma once

// Per-plant analysis: Nyquist value, rational-frequency upper bound, LP
// upper bound, primal lower bound, and the ordering checks between them.

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zflim/duality_lp.hpp"
#include "zflim/lti.hpp"
#include "zflim/phase_limits.hpp"
#include "zflim/plant_io.hpp"
#include "zflim/zf_search.hpp"

namespace zflim {

/// JSON number, with infinities as the strings "inf"/"-inf" and NaN as null.
inline nlohmann::json json_number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline nlohmann::json taps_json(const FirMultiplier& m) {
  nlohmann::json taps = nlohmann::json::object();
  for (const auto& [i, h] : m.taps()) taps[std::to_string(i)] = h;
  return taps;
}

struct AnalysisOptions {
  std::int64_t beta_max = 50;
  std::int64_t lp_beta = 0;  ///< 0: multiple of the witness denominator close to kAutoLpBeta
  int n_z = 5;
  int grid = 2000;
  double tol_k = 1e-4;
};

inline constexpr std::int64_t kAutoLpBeta = 60;
inline constexpr double kChainSlack = 1e-6;

/// LP grid size used when none is requested: the smallest multiple of the
/// witness denominator that reaches kAutoLpBeta, so the witness frequency is
/// on the LP grid.
inline std::int64_t auto_lp_beta(const RationalFrequency& witness) {
  const std::int64_t b = std::max<std::int64_t>(witness.beta(), 2);
  return b * std::max<std::int64_t>(1, (kAutoLpBeta + b - 1) / b);
}

struct AnalysisReport {
  std::string plant_name;
  MultiplierClass multiplier_class = MultiplierClass::monotone;
  double k_nyquist = std::numeric_limits<double>::quiet_NaN();

  double k_lower = std::numeric_limits<double>::quiet_NaN();
  std::optional<FirMultiplier> lower_multiplier;

  double k_upper_single = std::numeric_limits<double>::quiet_NaN();
  std::optional<RationalFrequency> witness;

  double k_upper_lp = std::numeric_limits<double>::quiet_NaN();
  std::int64_t lp_beta = 0;
  std::vector<double> non_monotone_gains;

  double dual_gap_percent = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> wall_times;
  std::vector<std::string> notes;
  std::vector<std::string> chain_violations;
  std::optional<Error> failure;  ///< stage error that stopped the analysis

  AnalysisOptions options;

  double k_upper_best() const {
    double best = std::numeric_limits<double>::infinity();
    if (!std::isnan(k_upper_single)) best = std::min(best, k_upper_single);
    if (!std::isnan(k_upper_lp)) best = std::min(best, k_upper_lp);
    return best;
  }
};

/// The ordering k_lower <= k_upper <= k_nyquist. Unset (NaN) entries are skipped.
inline std::vector<std::string> chain_violations(const AnalysisReport& r) {
  std::vector<std::string> out;
  auto check = [&](double lo, double hi, const char* what) {
    if (std::isnan(lo) || std::isnan(hi)) return;
    if (lo > hi + kChainSlack) out.emplace_back(what);
  };
  check(r.k_lower, r.k_upper_single, "k_lower > k_upper_single");
  check(r.k_lower, r.k_upper_lp, "k_lower > k_upper_lp");
  const double best = r.k_upper_best();
  if (std::isfinite(best)) check(best, r.k_nyquist, "k_upper > k_nyquist");
  return out;
}

namespace detail {

class StageTimer {
 public:
  StageTimer(AnalysisReport& r, std::string name)
      : report_(r), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    report_.wall_times[name_] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  AnalysisReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Runs every stage. Throws NotStable for an unstable plant; other stage
/// errors are recorded in `failure` and the report keeps the stages that
/// completed.
inline AnalysisReport analyze(const Plant& plant, MultiplierClass cls, const AnalysisOptions& opt = {}) {
  AnalysisReport r;
  r.plant_name = plant.name;
  r.multiplier_class = cls;
  r.options = opt;
  const auto g = plant.transfer_function();
  if (!is_stable(g)) throw Error(ErrorCode::NotStable, "plant '" + plant.name + "' is not stable");

  try {
    {
      detail::StageTimer t(r, "nyquist");
      r.k_nyquist = nyquist_value(g);
    }
    {
      detail::StageTimer t(r, "single_frequency");
      const auto scan = scan_upper_bound(g, cls, opt.beta_max);
      r.k_upper_single = scan.k_upper;
      r.witness = scan.witness;
    }
    const double k_cap = std::min(r.k_upper_single, r.k_nyquist);
    if (!std::isfinite(k_cap)) {
      r.notes.emplace_back("no rational-frequency obstruction and no negative real-axis crossing: "
                           "the plant admits multipliers at every slope checked (passive-like)");
      r.k_upper_lp = std::numeric_limits<double>::infinity();
      r.chain_violations = chain_violations(r);
      return r;
    }

    {
      detail::StageTimer t(r, "lower_bound");
      SearchConfig cfg;
      cfg.n_z = opt.n_z;
      cfg.grid_size = opt.grid;
      const auto samples = sample_plant(g, cfg);
      const double k_hi = k_cap * (1.0 + 1e-3);
      double k_lo = 0.5 * k_cap;
      for (int i = 0; i < 60 && !find_multiplier(samples.shifted(1.0 / k_lo), cfg, cls); ++i) k_lo *= 0.5;
      const auto lower = bisect_lower_bound(g, cfg, cls, k_lo, k_hi, opt.tol_k);
      r.k_lower = lower.k;
      r.lower_multiplier = lower.multiplier;
    }

    if (r.witness) {
      detail::StageTimer t(r, "lp_upper_bound");
      r.lp_beta = opt.lp_beta > 0 ? opt.lp_beta : auto_lp_beta(*r.witness);
      const auto upper = bisect_upper_bound(g, r.lp_beta, cls, r.k_lower, r.k_upper_single, opt.tol_k);
      r.k_upper_lp = upper.k;
      r.non_monotone_gains = upper.non_monotone_gains;
      if (!upper.non_monotone_gains.empty()) {
        r.notes.emplace_back("certificate existence was not monotone in k above the LP bound");
      }
    } else {
      r.notes.emplace_back("no single-frequency witness; LP bound skipped");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotStable) throw;
    r.failure = e;
  }

  const double best = r.k_upper_best();
  if (std::isfinite(best) && std::isfinite(r.k_lower) && r.k_lower > 0.0) {
    r.dual_gap_percent = 100.0 * (best - r.k_lower) / r.k_lower;
  }
  r.chain_violations = chain_violations(r);
  return r;
}

inline nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["plant_name"] = r.plant_name;
  j["class"] = std::string(to_string(r.multiplier_class));
  j["k_nyquist"] = json_number(r.k_nyquist);

  nlohmann::json lower;
  lower["value"] = json_number(r.k_lower);
  lower["n_z"] = r.options.n_z;
  lower["grid"] = r.options.grid;
  lower["tol_k"] = r.options.tol_k;
  if (r.lower_multiplier) lower["taps"] = taps_json(*r.lower_multiplier);
  j["k_lower"] = lower;

  nlohmann::json single;
  single["value"] = json_number(r.k_upper_single);
  single["beta_max"] = r.options.beta_max;
  if (r.witness) single["witness"] = {{"alpha", r.witness->alpha()}, {"beta", r.witness->beta()}};
  j["k_upper_single"] = single;

  nlohmann::json lp;
  lp["value"] = json_number(r.k_upper_lp);
  lp["beta"] = r.lp_beta;
  lp["tol_k"] = r.options.tol_k;
  lp["non_monotone_gains"] = r.non_monotone_gains;
  j["k_upper_lp"] = lp;

  j["dual_gap_percent"] = json_number(r.dual_gap_percent);
  j["wall_times"] = r.wall_times;
  j["notes"] = r.notes;
  j["chain_violations"] = r.chain_violations;
  if (r.failure) {
    j["error"] = {{"code", std::string(to_string(r.failure->code()))}, {"message", r.failure->what()}};
  }
  return j;
}

}  // namespace zflim
