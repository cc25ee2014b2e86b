#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nomasec/experiment.hpp"

using namespace nomasec;
namespace ex = nomasec::experiment;

namespace {

std::size_t count_lines(const std::string& text, std::string_view prefix) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(ex::format_number(0.1) == "0.1");
  CHECK(ex::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(ex::format_number(1e-300) == "1e-300");
  CHECK(ex::format_number(std::nan("")) == "nan");
  CHECK(ex::format_number(2.5e6) == "2500000");
}

TEST_CASE("value lists") {
  CHECK(ex::parse_values("0:2:6") == std::vector<double>{0, 2, 4, 6});
  CHECK(ex::parse_values("0.1:0.05:0.3").size() == 5);
  CHECK(ex::parse_values("1, 0.01,0.001") == std::vector<double>{1, 0.01, 0.001});
  CHECK(ex::parse_values("7") == std::vector<double>{7});
  CHECK_THROWS_AS(ex::parse_values("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(ex::parse_values("0:0:5"), std::invalid_argument);
  CHECK_THROWS_AS(ex::parse_values("5:1:0"), std::invalid_argument);
  CHECK_THROWS_AS(ex::parse_values("1,x"), std::invalid_argument);
}

TEST_CASE("axes and grids") {
  CHECK(ex::parse_axis("P") == ex::SweepAxis::Power);
  CHECK(ex::parse_axis("MER") == ex::SweepAxis::Mer);
  CHECK(ex::parse_axis("q1") == ex::SweepAxis::Q1);
  CHECK_THROWS_AS(ex::parse_axis("snr"), std::invalid_argument);
  CHECK(ex::axis_column(ex::SweepAxis::Mer) == "mer_db");

  ex::SweepGrid grid{ex::SweepAxis::Mer, {10.0}, ex::reference_instance()};
  const auto inst = ex::instance_at(grid, 10.0);
  CHECK(inst.scenario.sigmae_sq == doctest::Approx(10.0 * inst.scenario.sigma1_sq));
  CHECK(inst.scenario.sigma1_sq == grid.fixed.scenario.sigma1_sq);

  grid.values = {1.0, 1.0};
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
  grid.values.clear();
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
  grid = {ex::SweepAxis::Epsilon, {0.1, 2.0}, ex::reference_instance()};
  CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
}

TEST_CASE("presets") {
  for (auto name : ex::preset_names()) {
    const auto spec = ex::preset(name);
    REQUIRE(spec.series.size() == 3);
    CHECK(spec.series[0].fixed.epsilon == 1.0);
    CHECK(spec.series[1].fixed.epsilon == 0.01);
    CHECK(spec.series[2].fixed.epsilon == 0.001);
  }
  CHECK(ex::preset("fig1d").series[0].values.size() == 29);
  CHECK(ex::preset("fig1a").series[0].values.back() == 50.0);
  CHECK_THROWS_AS(ex::preset("fig2"), std::invalid_argument);
}

TEST_CASE("sweep rows") {
  ex::SweepGrid one{ex::SweepAxis::Power, {10.0}, ex::reference_instance()};
  const auto rows = ex::run_sweep(one, 1);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].solver == "exact");
  CHECK(rows[1].solver == "asymptotic");
  CHECK(rows[2].solver == "oma");

  auto inst = ex::instance_at(one, 10.0);
  const auto direct = solve_exact(inst);
  REQUIRE(direct.feasible());
  CHECK(rows[0].phi2 == direct.design->split.phi2());
  CHECK(rows[0].r2_secrecy == direct.design->r2_secrecy);

  ex::SweepGrid infeasible{ex::SweepAxis::Q1, {3.0}, ex::reference_instance()};
  for (const auto& r : ex::run_sweep(infeasible, 1)) {
    CHECK(r.status == Feasibility::Q1Infeasible);
    CHECK(std::isnan(r.phi2));
    CHECK(r.r2_secrecy == 0.0);
  }
}

TEST_CASE("sweep output does not depend on the worker count") {
  const auto spec = ex::preset("fig1d");
  std::ostringstream a, b;
  ex::write_sweep_csv(a, spec, 1);
  ex::write_sweep_csv(b, spec, 4);
  CHECK(a.str() == b.str());
  CHECK(count_lines(a.str(), "exact,") == 3 * 29);
  CHECK(count_lines(a.str(), "solver,epsilon,q1,") == 1);
}

TEST_CASE("P sweep trends") {
  const auto spec = ex::preset("fig1c");
  for (const auto& grid : spec.series) {
    if (grid.fixed.epsilon == 1.0) continue;
    double prev = -1.0;
    double last = 0.0;
    for (const auto& r : ex::run_sweep(grid, 1)) {
      if (r.solver != "asymptotic" || r.status != Feasibility::Feasible) continue;
      REQUIRE(r.r_e >= prev - 1e-12);
      prev = last = r.r_e;
    }
    CHECK(last == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("MER sweep: exact and asymptotic agree at high MER") {
  const auto spec = ex::preset("fig1a");
  for (const auto& grid : spec.series) {
    const auto rows = ex::run_sweep(grid, 1);
    for (std::size_t i = 0; i < rows.size(); i += 3) {
      if (rows[i].axis_value < 30.0) continue;
      REQUIRE(rows[i].status == Feasibility::Feasible);
      REQUIRE(rows[i + 1].status == Feasibility::Feasible);
      const double gap = std::abs(rows[i].r2_secrecy - rows[i + 1].r2_secrecy) / rows[i].r2_secrecy;
      CHECK(gap < 0.01);
    }
  }
}

TEST_CASE("solve command") {
  SUBCASE("JSON report") {
    auto inst = ex::reference_instance();
    inst.scenario.p = db_to_linear(10.0);
    std::ostringstream out;
    CHECK(ex::cmd_solve(inst, true, out) == ex::kExitOk);
    const auto doc = nlohmann::json::parse(out.str());
    const auto direct = solve_exact(inst);
    CHECK(doc["exact"]["status"] == "FEASIBLE");
    CHECK(doc["exact"]["phi2"].get<double>() == direct.design->split.phi2());
    CHECK(doc["exact"]["r_e"].get<double>() == direct.design->r_e);
    CHECK(doc["asymptotic"]["method"] == "asymptotic");
    CHECK(doc["config"]["epsilon"].get<double>() == 0.01);
    CHECK(doc["floors"]["epsilon_feasible"].get<bool>());
  }

  SUBCASE("no security constraint") {
    auto inst = ex::reference_instance();
    inst.epsilon = 1.0;
    std::ostringstream out;
    CHECK(ex::cmd_solve(inst, true, out) == ex::kExitOk);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["exact"]["r_e"].get<double>() == 0.0);
    CHECK(doc["exact"]["binding"] == "q1-constraint");
  }

  SUBCASE("epsilon below the floor exits 2") {
    auto inst = ex::reference_instance();
    inst.epsilon = 1e-11;
    std::ostringstream out;
    CHECK(ex::cmd_solve(inst, false, out) == ex::kExitInfeasible);
    CHECK(out.str().find("SECRECY_INFEASIBLE") != std::string::npos);
    CHECK(out.str().find("epsilon >= epsilon_n: no") != std::string::npos);
  }
}

TEST_CASE("validation runs") {
  ex::ValidationRequest req;
  req.instance = ex::reference_instance();
  req.r_e = {0.0, 1.0};
  req.mc.samples = 200'000;
  req.mc.workers = 1;
  const auto rows = ex::run_validation(req);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].closed_form == 1.0);
  CHECK(rows[0].mixture.p_hat == 1.0);
  CHECK(rows[0].physical.p_hat == 1.0);
  CHECK(rows[0].mixture_pass);
  CHECK(rows[1].mixture_pass);

  std::ostringstream a, b;
  CHECK(ex::cmd_validate(req, a) == ex::kExitOk);
  req.mc.workers = 3;
  CHECK(ex::cmd_validate(req, b) == ex::kExitOk);
  CHECK(a.str() == b.str());

  ex::ValidationRequest defaults;
  defaults.instance = ex::reference_instance();
  defaults.mc.samples = 20'000;
  const auto d = ex::run_validation(defaults);
  REQUIRE(d.size() == 3);
  const auto solved = solve_exact(defaults.instance);
  CHECK(d[2].r_e == solved.design->r_e);
  CHECK(d[2].closed_form == doctest::Approx(0.01).epsilon(1e-8));
}

TEST_CASE("agreement rule") {
  McEstimate zero{0.0, 0.0, 1'000'000, 1};
  CHECK(ex::agrees_with(zero, 1e-7, 4.0));
  CHECK_FALSE(ex::agrees_with(zero, 1e-3, 4.0));
  McEstimate half{0.5, 0.0005, 1'000'000, 1};
  CHECK(ex::agrees_with(half, 0.5019, 4.0));
  CHECK_FALSE(ex::agrees_with(half, 0.5021, 4.0));
}

TEST_CASE("sample count environment override") {
  ::unsetenv(ex::kSamplesEnv);
  CHECK(ex::default_mc_samples() == McConfig{}.samples);
  ::setenv(ex::kSamplesEnv, "123456", 1);
  CHECK(ex::default_mc_samples() == 123456u);
  ::setenv(ex::kSamplesEnv, "lots", 1);
  CHECK_THROWS_AS(ex::default_mc_samples(), std::invalid_argument);
  ::unsetenv(ex::kSamplesEnv);
}
