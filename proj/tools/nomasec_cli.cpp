// nomasec: secrecy-optimal NOMA power allocation from the command line.
//
//   nomasec solve    --p-db 4 --q1 0.4 --epsilon 0.01
//   nomasec sweep    --preset fig1d --out fig1d.csv
//   nomasec sweep    --axis P --values 0:2:60 --epsilons 1,0.01
//   nomasec validate --r-e 0.5 --r-e 1 --samples 1000000 --seed 7
//   nomasec pmin     --q1 1 --epsilon 0.001
//
// Instance parameters may also come from a flat key=value file passed with
// --config; command-line flags override file values. Keys ending in -db are
// decibels, keys ending in -sq or without suffix are linear.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nomasec/experiment.hpp"

namespace {

namespace ex = nomasec::experiment;

struct InstanceOptions {
  std::optional<double> p, p_db;
  std::optional<double> sigma1_sq, sigma1_db;
  std::optional<double> sigma2_sq, sigma2_db;
  std::optional<double> sigmae_sq, sigmae_db;
  double h1_sq = 0.5;
  double h2_sq = 4.0;
  double delta_e_sq = 1.0;
  double q1 = 0.4;
  double epsilon = 0.01;

  void add_to(CLI::App& app) {
    auto* p_lin = app.add_option("--p", p, "Transmit power P, linear");
    auto* p_log = app.add_option("--p-db", p_db, "Transmit power P in dB (default 4)");
    p_lin->excludes(p_log);
    auto* s1 = app.add_option("--sigma1-sq", sigma1_sq, "Noise power at user 1, linear");
    s1->excludes(app.add_option("--sigma1-db", sigma1_db, "Noise power at user 1 in dB (default -5)"));
    auto* s2 = app.add_option("--sigma2-sq", sigma2_sq, "Noise power at user 2, linear");
    s2->excludes(app.add_option("--sigma2-db", sigma2_db, "Noise power at user 2 in dB (default -5)"));
    auto* se = app.add_option("--sigmae-sq", sigmae_sq, "Noise power at Eve, linear");
    se->excludes(app.add_option("--sigmae-db", sigmae_db, "Noise power at Eve in dB (default 2)"));
    app.add_option("--h1-sq", h1_sq, "Channel power gain of user 1")->capture_default_str();
    app.add_option("--h2-sq", h2_sq, "Channel power gain of user 2")->capture_default_str();
    app.add_option("--delta-e-sq", delta_e_sq, "Mean of Eve's fading power gain")->capture_default_str();
    app.add_option("--q1", q1, "Minimum rate of user 1, bits/channel use")->capture_default_str();
    app.add_option("--epsilon", epsilon, "Maximum secrecy outage probability")->capture_default_str();
  }

  nomasec::ProblemInstance resolve() const {
    const auto pick = [](const std::optional<double>& lin, const std::optional<double>& db,
                         double default_db) {
      if (lin) return *lin;
      return nomasec::db_to_linear(db.value_or(default_db));
    };
    nomasec::ProblemInstance inst;
    inst.scenario.p = pick(p, p_db, 4.0);
    inst.scenario.sigma1_sq = pick(sigma1_sq, sigma1_db, -5.0);
    inst.scenario.sigma2_sq = pick(sigma2_sq, sigma2_db, -5.0);
    inst.scenario.sigmae_sq = pick(sigmae_sq, sigmae_db, 2.0);
    inst.scenario.h1_sq = h1_sq;
    inst.scenario.h2_sq = h2_sq;
    inst.scenario.delta_e_sq = delta_e_sq;
    inst.q1 = q1;
    inst.epsilon = epsilon;
    inst.validate();
    return inst;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-optimal power allocation and redundancy rates for two-user NOMA"};
  app.set_config("--config", "", "Flat key=value file with instance parameters");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  InstanceOptions instance;
  instance.add_to(app);
  std::string out_path;
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  unsigned workers = 0;
  app.add_option("--workers", workers, "Worker threads (0: hardware concurrency)");

  auto* solve = app.add_subcommand("solve", "Solve one instance with the exact, asymptotic and TDMA solvers");
  bool json = false;
  solve->add_flag("--json", json, "Emit a JSON report");

  auto* sweep = app.add_subcommand("sweep", "Emit a CSV parameter sweep");
  std::string preset_name, axis_name, values_text, epsilons_text;
  auto* preset_opt = sweep->add_option("--preset", preset_name, "fig1a | fig1b | fig1c | fig1d");
  auto* axis_opt = sweep->add_option("--axis", axis_name, "P | MER | Q1 | epsilon");
  auto* values_opt = sweep->add_option("--values", values_text, "start:step:stop or comma list (P, MER in dB)");
  sweep->add_option("--epsilons", epsilons_text, "Comma list; one series per epsilon");
  preset_opt->excludes(axis_opt);
  axis_opt->needs(values_opt);

  auto* validate = app.add_subcommand("validate", "Compare closed-form SOP with Monte Carlo");
  std::optional<double> phi2;
  std::vector<double> r_e;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = nomasec::McConfig{}.seed;
  validate->add_option("--phi2", phi2, "Power fraction of user 2 (default: exact optimum)");
  validate->add_option("--r-e", r_e, "Redundancy rate(s) to test (repeatable)");
  validate->add_option("--samples", samples, "Monte Carlo trials per estimate");
  validate->add_option("--seed", seed, "64-bit RNG seed")->capture_default_str();

  auto* pmin = app.add_subcommand("pmin", "Report minimum transmit powers for feasibility");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ex::kExitInputError;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return ex::kExitInputError;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  try {
    const auto inst = instance.resolve();
    if (*solve) return ex::cmd_solve(inst, json, out);
    if (*pmin) return ex::cmd_pmin(inst, out);
    if (*sweep) {
      nomasec::experiment::SweepSpec spec;
      if (!preset_name.empty()) {
        spec = ex::preset(preset_name);
      } else {
        if (axis_name.empty()) throw std::invalid_argument("sweep needs --preset or --axis/--values");
        spec.name = "custom";
        const auto axis = ex::parse_axis(axis_name);
        const auto values = ex::parse_values(values_text);
        const auto epsilons =
            epsilons_text.empty() ? std::vector<double>{inst.epsilon} : ex::parse_values(epsilons_text);
        for (double eps : epsilons) {
          ex::SweepGrid grid{axis, values, inst};
          grid.fixed.epsilon = eps;
          spec.series.push_back(std::move(grid));
        }
      }
      return ex::cmd_sweep(spec, workers, out);
    }
    if (*validate) {
      ex::ValidationRequest req;
      req.instance = inst;
      req.phi2 = phi2;
      req.r_e = r_e;
      req.mc.samples = samples.value_or(ex::default_mc_samples());
      req.mc.seed = seed;
      req.mc.workers = workers;
      return ex::cmd_validate(req, out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return ex::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ex::kExitInputError;
  }
  return ex::kExitInputError;
}
