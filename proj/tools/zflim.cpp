// zflim: command-line front end.
//
// Exit codes: 0 success, 1 the requested certificate/multiplier does not
// exist, 2 unstable plant, 3 parse error, 4 invalid bracket, 5 bound chain
// violated, 6 any other failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "zflim/zflim.hpp"

namespace {

using nlohmann::json;
using namespace zflim;

enum Exit { kOk = 0, kNotFound = 1, kUnstable = 2, kParse = 3, kBracket = 4, kChain = 5, kOther = 6 };

struct PlantSource {
  std::string example;
  std::string file;

  void add(CLI::App* cmd) {
    auto* ex = cmd->add_option("--example", example, "built-in plant (ex1..ex6)");
    auto* pf = cmd->add_option("--plant", file, "plant JSON file {name, num, den}, descending powers");
    ex->excludes(pf);
    pf->excludes(ex);
  }

  Plant load() const {
    if (!example.empty()) return builtin_plant(example);
    if (!file.empty()) return load_plant(file);
    throw Error(ErrorCode::InvalidArgument, "one of --example or --plant is required");
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(path);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

void emit(const std::string& path, const json& j) { write_output(path, j.dump(2) + "\n"); }

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotStable: return kUnstable;
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::BracketInvalid: return kBracket;
    default: return kOther;
  }
}

TransferFunction stable_plant(const Plant& p) {
  auto g = p.transfer_function();
  if (!is_stable(g)) throw Error(ErrorCode::NotStable, "plant '" + p.name + "' is not stable");
  return g;
}

json certificate_json(const DualityCertificate& c, double k) {
  return {{"beta", c.beta},
          {"class", std::string(to_string(c.multiplier_class))},
          {"k", k},
          {"freqs", c.freqs},
          {"lambdas", c.lambdas},
          {"margin", c.margin},
          {"residual_max", c.residual_max}};
}

CtCertificateInput ct_input_from_json(const json& j) {
  try {
    CtCertificateInput in;
    in.freqs = j.at("freqs").get<std::vector<double>>();
    for (const auto& v : j.at("values")) in.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    in.lambdas = j.at("lambdas").get<std::vector<double>>();
    if (j.contains("value_at_infinity")) in.value_at_infinity = j.at("value_at_infinity").get<double>();
    in.lambda_infinity = j.value("lambda_infinity", 0.0);
    if (j.contains("t_horizon")) in.t_horizon = j.at("t_horizon").get<double>();
    if (j.contains("t_step")) in.t_step = j.at("t_step").get<double>();
    in.t_start = j.value("t_start", 0.0);
    in.lipschitz_pad = j.value("lipschitz_pad", true);
    return in;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("ct-check input: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slope bounds for Lur'e systems via Zames-Falb multipliers"};
  app.require_subcommand(1);

  std::string out_path;
  std::string class_name = "monotone";
  auto add_class = [&](CLI::App* cmd) {
    cmd->add_option("--class", class_name, "multiplier class")->check(CLI::IsMember({"monotone", "odd"}));
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "output file (default stdout)"); };

  PlantSource source;

  auto* nyq = app.add_subcommand("nyquist", "Nyquist value of a stable plant");
  source.add(nyq);
  add_out(nyq);

  std::int64_t beta_max = 50;
  auto* limits = app.add_subcommand("limits", "phase limits of both classes as CSV");
  limits->add_option("--beta-max", beta_max)->check(CLI::PositiveNumber);
  add_out(limits);

  auto* scan = app.add_subcommand("scan", "single-frequency slope upper bound");
  source.add(scan);
  add_class(scan);
  scan->add_option("--beta-max", beta_max)->check(CLI::Range(2, 100000));
  add_out(scan);

  double k = 0.0;
  std::int64_t beta = 60;
  double tol_lp = kLpTolerance;
  auto* certify = app.add_subcommand("certify", "LP certificate that no multiplier exists at slope k");
  source.add(certify);
  add_class(certify);
  certify->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  certify->add_option("--beta", beta)->check(CLI::Range(2, 4096));
  certify->add_option("--tol-lp", tol_lp)->check(CLI::PositiveNumber);
  add_out(certify);

  int n_z = 5;
  int grid = 2000;
  auto* search = app.add_subcommand("search", "search for a multiplier at slope k");
  source.add(search);
  add_class(search);
  search->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  search->add_option("--nz", n_z)->check(CLI::Range(1, 200));
  search->add_option("--grid", grid)->check(CLI::Range(2, 1000000));
  add_out(search);

  std::int64_t alpha = 0;
  std::string sign = "+";
  std::optional<double> gamma, epsilon;
  auto* construct = app.add_subcommand("construct", "one-tap multiplier attaining the phase limit");
  construct->add_option("--alpha", alpha);
  construct->add_option("--beta", beta);
  construct->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
  construct->add_option("--gamma", gamma, "irrational frequency gamma*pi (monotone class)");
  construct->add_option("--epsilon", epsilon, "phase deficit allowed with --gamma");
  add_class(construct);
  add_out(construct);

  double resolution = 1e-3;
  std::optional<double> k_lo, k_hi;
  double tol_k = 1e-4;
  auto* legacy = app.add_subcommand("legacy", "interval phase-limitation upper bound");
  source.add(legacy);
  add_class(legacy);
  legacy->add_option("--resolution", resolution)->check(CLI::PositiveNumber);
  legacy->add_option("--k-lo", k_lo);
  legacy->add_option("--k-hi", k_hi);
  legacy->add_option("--tol-k", tol_k)->check(CLI::PositiveNumber);
  add_out(legacy);

  std::string ct_path;
  auto* ct = app.add_subcommand("ct-check", "continuous-time non-existence check");
  ct->add_option("--input", ct_path, "JSON with freqs, values [[re, im], ...], lambdas, ...")->required();
  add_class(ct);
  add_out(ct);

  std::int64_t lp_beta = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "all bounds for one plant and class");
  source.add(analyze_cmd);
  add_class(analyze_cmd);
  analyze_cmd->add_option("--beta-max", beta_max)->check(CLI::Range(2, 100000));
  analyze_cmd->add_option("--lp-beta", lp_beta, "LP grid (0: automatic)")->check(CLI::Range(0, 4096));
  analyze_cmd->add_option("--nz", n_z)->check(CLI::Range(1, 200));
  analyze_cmd->add_option("--grid", grid)->check(CLI::Range(2, 1000000));
  analyze_cmd->add_option("--tol-k", tol_k)->check(CLI::PositiveNumber);
  add_out(analyze_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kOther;
  }

  try {
    const auto cls = parse_class(class_name);

    if (*nyq) {
      const auto plant = source.load();
      const auto g = stable_plant(plant);
      emit(out_path, {{"plant", plant.name}, {"k_nyquist", json_number(nyquist_value(g))}});
      return kOk;
    }

    if (*limits) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "alpha,beta,omega,bound_monotone,bound_odd\n";
      for (const auto& rf : coprime_frequencies(beta_max)) {
        csv << rf.alpha() << ',' << rf.beta() << ',' << rf.omega() << ','
            << phase_limit(rf, MultiplierClass::monotone) << ',' << phase_limit(rf, MultiplierClass::odd) << '\n';
      }
      write_output(out_path, csv.str());
      return kOk;
    }

    if (*scan) {
      const auto plant = source.load();
      const auto r = scan_upper_bound(stable_plant(plant), cls, beta_max);
      json j{{"plant", plant.name},
             {"class", class_name},
             {"beta_max", beta_max},
             {"k_upper", json_number(r.k_upper)}};
      if (r.witness) j["witness"] = {{"alpha", r.witness->alpha()}, {"beta", r.witness->beta()}};
      emit(out_path, j);
      return r.witness ? kOk : kNotFound;
    }

    if (*certify) {
      const auto plant = source.load();
      const auto g = stable_plant(plant);
      const auto cert = lp_certificate(shift_by_inverse_gain(g, k), beta, cls, tol_lp);
      if (!cert) {
        emit(out_path, {{"plant", plant.name}, {"class", class_name}, {"k", k}, {"beta", beta}, {"certificate", nullptr}});
        return kNotFound;
      }
      emit(out_path, certificate_json(*cert, k));
      return kOk;
    }

    if (*search) {
      const auto plant = source.load();
      const auto g = stable_plant(plant);
      SearchConfig cfg;
      cfg.n_z = n_z;
      cfg.grid_size = grid;
      const auto m = find_multiplier(shift_by_inverse_gain(g, k), cfg, cls);
      json j{{"plant", plant.name}, {"n_z", n_z}, {"class", class_name}, {"k", k}};
      j["taps"] = m ? taps_json(*m) : json(nullptr);
      emit(out_path, j);
      return m ? kOk : kNotFound;
    }

    if (*construct) {
      if (gamma) {
        const auto m = irrational_approx_multiplier(*gamma, epsilon.value_or(0.01));
        const double w = *gamma * std::numbers::pi;
        emit(out_path, {{"gamma", *gamma},
                        {"epsilon", epsilon.value_or(0.01)},
                        {"class", "monotone"},
                        {"taps", taps_json(m)},
                        {"phase", m.phase(w)}});
        return kOk;
      }
      const RationalFrequency rf(alpha, beta);
      const auto m = construct_tight_multiplier(rf, cls, sign == "+" ? PhaseSign::positive : PhaseSign::negative);
      emit(out_path, {{"alpha", alpha},
                      {"beta", beta},
                      {"class", class_name},
                      {"sign", sign},
                      {"taps", taps_json(m)},
                      {"phase", m.phase(rf.omega())},
                      {"phase_limit", phase_limit(rf, cls)}});
      return kOk;
    }

    if (*legacy) {
      const auto plant = source.load();
      const auto g = stable_plant(plant);
      double hi = k_hi.value_or(std::numeric_limits<double>::quiet_NaN());
      if (!k_hi) {
        hi = std::min(nyquist_value(g), 2.0 * scan_upper_bound(g, cls).k_upper);
        if (!std::isfinite(hi)) throw Error(ErrorCode::BracketInvalid, "no finite default k_hi; pass --k-hi");
      }
      const double lo = k_lo.value_or(0.01 * hi);
      const auto r = legacy_upper_bound(g, cls, resolution, lo, hi, tol_k);
      emit(out_path, {{"plant", plant.name},
                      {"class", class_name},
                      {"k_upper", r.k_upper},
                      {"obstruction_found", r.obstruction_found},
                      {"a", r.a},
                      {"b", r.b},
                      {"resolution", r.resolution},
                      {"wall_time", r.wall_time}});
      return kOk;
    }

    if (*ct) {
      json input;
      try {
        input = json::parse(read_file(ct_path));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("ct-check input: ") + e.what());
      }
      const auto in = ct_input_from_json(input);
      const auto r = cls == MultiplierClass::odd ? ct_check_odd(in) : ct_check_nonodd(in);
      emit(out_path, {{"class", class_name},
                      {"holds", r.holds},
                      {"lhs", r.lhs},
                      {"rhs", r.rhs},
                      {"lipschitz", r.extrema.lipschitz},
                      {"samples", r.extrema.samples}});
      return r.holds ? kOk : kNotFound;
    }

    if (*analyze_cmd) {
      const auto plant = source.load();
      AnalysisOptions opt;
      opt.beta_max = beta_max;
      opt.lp_beta = lp_beta;
      opt.n_z = n_z;
      opt.grid = grid;
      opt.tol_k = tol_k;
      const auto report = analyze(plant, cls, opt);
      emit(out_path, to_json(report));
      if (report.failure) {
        std::cerr << "zflim: " << report.failure->what() << '\n';
        return exit_code(*report.failure);
      }
      if (!report.chain_violations.empty()) {
        for (const auto& v : report.chain_violations) std::cerr << "zflim: chain violated: " << v << '\n';
        return kChain;
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "zflim: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "zflim: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
