#include "nomasec/experiment.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <stdexcept>
#include <thread>

namespace nomasec::experiment {

namespace {

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> linspace_step(double start, double step, double stop) {
  if (!(step > 0.0) || stop < start) {
    throw std::invalid_argument("range must be start:step:stop with step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = start + step * static_cast<double>(k);
  return values;
}

SweepGrid preset_grid(SweepAxis axis, std::vector<double> values, double epsilon) {
  SweepGrid grid{axis, std::move(values), reference_instance()};
  grid.fixed.epsilon = epsilon;
  return grid;
}

constexpr double kPresetEpsilons[] = {1.0, 0.01, 0.001};

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

SweepRow nan_row(std::string_view solver, double epsilon, double axis_value, Feasibility status) {
  const double nan = std::nan("");
  return {solver, epsilon, axis_value, nan, nan, nan, 0.0, status, to_string(Binding::None)};
}

SweepRow noma_row(const SolveReport& r, double epsilon, double axis_value) {
  const std::string_view solver = to_string(r.method);
  if (!r.feasible()) return nan_row(solver, epsilon, axis_value, r.status);
  const auto& d = *r.design;
  return {solver,      epsilon,       axis_value, d.split.phi1(),       d.split.phi2(),
          d.r_e,       d.r2_secrecy,  r.status,   to_string(r.binding)};
}

SweepRow oma_row(const OmaDesign& d, double epsilon, double axis_value) {
  if (!d.feasible()) return nan_row("oma", epsilon, axis_value, d.status);
  return {"oma", epsilon, axis_value, 0.5, 0.5, d.r_e_frame, d.r2_secrecy, d.status,
          to_string(Binding::None)};
}

std::string_view yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

std::vector<double> parse_values(std::string_view text) {
  if (text.find(':') != std::string_view::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos) {
      throw std::invalid_argument("range must be start:step:stop");
    }
    return linspace_step(parse_double(text.substr(0, first)),
                         parse_double(text.substr(first + 1, second - first - 1)),
                         parse_double(text.substr(second + 1)));
  }
  std::vector<double> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    values.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "P" || name == "p") return SweepAxis::Power;
  if (name == "MER" || name == "mer") return SweepAxis::Mer;
  if (name == "Q1" || name == "q1") return SweepAxis::Q1;
  if (name == "epsilon") return SweepAxis::Epsilon;
  throw std::invalid_argument("axis must be one of P, MER, Q1, epsilon");
}

std::string_view axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Power: return "p_db";
    case SweepAxis::Mer: return "mer_db";
    case SweepAxis::Q1: return "q1";
    case SweepAxis::Epsilon: return "epsilon";
  }
  return "value";
}

void SweepGrid::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep grid has no values");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly increasing");
    }
  }
  for (double v : values) instance_at(*this, v).validate();
}

ProblemInstance instance_at(const SweepGrid& grid, double value) {
  ProblemInstance inst = grid.fixed;
  switch (grid.axis) {
    case SweepAxis::Power: inst.scenario.p = db_to_linear(value); break;
    case SweepAxis::Mer: inst.scenario.sigmae_sq = inst.scenario.sigma1_sq * db_to_linear(value); break;
    case SweepAxis::Q1: inst.q1 = value; break;
    case SweepAxis::Epsilon: inst.epsilon = value; break;
  }
  return inst;
}

ProblemInstance reference_instance() {
  ProblemInstance inst;
  inst.scenario.h1_sq = 0.5;
  inst.scenario.h2_sq = 4.0;
  inst.scenario.sigma1_sq = db_to_linear(-5.0);
  inst.scenario.sigma2_sq = db_to_linear(-5.0);
  inst.scenario.sigmae_sq = db_to_linear(2.0);
  inst.scenario.p = db_to_linear(4.0);
  inst.scenario.delta_e_sq = 1.0;
  inst.q1 = 0.4;
  inst.epsilon = 0.01;
  return inst;
}

std::vector<std::string_view> preset_names() { return {"fig1a", "fig1b", "fig1c", "fig1d"}; }

SweepSpec preset(std::string_view name) {
  SweepSpec spec;
  spec.name = std::string(name);
  for (double eps : kPresetEpsilons) {
    if (name == "fig1a") {
      spec.series.push_back(preset_grid(SweepAxis::Mer, linspace_step(0.0, 2.0, 50.0), eps));
    } else if (name == "fig1b" || name == "fig1c") {
      spec.series.push_back(preset_grid(SweepAxis::Power, linspace_step(0.0, 2.0, 60.0), eps));
    } else if (name == "fig1d") {
      spec.series.push_back(preset_grid(SweepAxis::Q1, linspace_step(0.1, 0.05, 1.5), eps));
    } else {
      throw std::invalid_argument("unknown preset '" + std::string(name) +
                                  "' (expected fig1a, fig1b, fig1c or fig1d)");
    }
  }
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, unsigned workers) {
  grid.validate();
  std::vector<SweepRow> rows(grid.values.size() * 3);
  parallel_for(grid.values.size(), workers, [&](std::size_t i) {
    const double v = grid.values[i];
    const auto inst = instance_at(grid, v);
    rows[3 * i] = noma_row(solve_exact(inst), inst.epsilon, v);
    rows[3 * i + 1] = noma_row(solve_asymptotic(inst), inst.epsilon, v);
    rows[3 * i + 2] = oma_row(solve_oma(inst), inst.epsilon, v);
  });
  return rows;
}

void echo_instance(std::ostream& out, const ProblemInstance& inst) {
  const auto& s = inst.scenario;
  const auto line = [&](std::string_view key, double v) {
    fmt::print(out, "# {} = {}\n", key, format_number(v));
  };
  line("p", s.p);
  line("p_db", linear_to_db(s.p));
  line("h1_sq", s.h1_sq);
  line("h2_sq", s.h2_sq);
  line("sigma1_sq", s.sigma1_sq);
  line("sigma2_sq", s.sigma2_sq);
  line("sigmae_sq", s.sigmae_sq);
  line("delta_e_sq", s.delta_e_sq);
  line("q1", inst.q1);
  line("epsilon", inst.epsilon);
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, unsigned workers) {
  if (spec.series.empty()) throw std::invalid_argument("sweep has no series");
  const SweepAxis axis = spec.series.front().axis;
  for (const auto& g : spec.series) {
    if (g.axis != axis) throw std::invalid_argument("all sweep series must share one axis");
    g.validate();
  }

  fmt::print(out, "# nomasec sweep {}\n", spec.name);
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const auto& g = spec.series[k];
    fmt::print(out, "# series {}: axis = {}, points = {}, first = {}, last = {}\n", k + 1,
               axis_column(g.axis), g.values.size(), format_number(g.values.front()),
               format_number(g.values.back()));
    echo_instance(out, g.fixed);
  }
  fmt::print(out, "solver,epsilon,{},phi1,phi2,r_e,r2_secrecy,feasible,status,binding\n",
             axis_column(axis));
  for (const auto& g : spec.series) {
    for (const auto& r : run_sweep(g, workers)) {
      fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", r.solver, format_number(r.epsilon),
                 format_number(r.axis_value), format_number(r.phi1), format_number(r.phi2),
                 format_number(r.r_e), format_number(r.r2_secrecy),
                 r.status == Feasibility::Feasible ? 1 : 0, to_string(r.status), r.binding);
    }
  }
}

bool agrees_with(const McEstimate& est, double expected, double k_sigma) {
  const double n = static_cast<double>(est.samples);
  const double sigma = std::max(est.std_err, std::sqrt(expected * (1.0 - expected) / n));
  return std::abs(est.p_hat - expected) <= k_sigma * sigma;
}

std::uint64_t default_mc_samples() {
  if (const char* env = std::getenv(kSamplesEnv)) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw std::invalid_argument(std::string(kSamplesEnv) + " must be an unsigned integer");
    }
    return value;
  }
  return McConfig{}.samples;
}

std::vector<ValidationRow> run_validation(const ValidationRequest& req) {
  req.instance.validate();
  req.mc.validate();
  const auto& s = req.instance.scenario;

  double phi2 = 0.5;
  std::vector<double> r_e_values = req.r_e;
  const auto solved = solve_exact(req.instance);
  if (solved.feasible()) phi2 = solved.design->split.phi2();
  if (req.phi2) phi2 = *req.phi2;
  const auto split = PowerSplit::from_phi2(phi2);
  if (r_e_values.empty()) {
    if (solved.feasible() && !req.phi2) {
      const double r = solved.design->r_e;
      r_e_values = {0.0, 0.5 * r, r};
    } else {
      r_e_values = {0.0, 0.5, 1.0};
    }
  }

  std::vector<ValidationRow> rows;
  for (double r_e : r_e_values) {
    if (!(r_e >= 0.0)) throw std::invalid_argument("r_e must be non-negative");
    ValidationRow row;
    row.phi2 = phi2;
    row.r_e = r_e;
    row.closed_form = sop_model(s, split, r_e);
    auto cfg = req.mc;
    cfg.mode = McMode::Mixture;
    row.mixture = mc_sop(s, split, r_e, cfg);
    cfg.mode = McMode::Physical;
    row.physical = mc_sop(s, split, r_e, cfg);
    row.mixture_pass = agrees_with(row.mixture, row.closed_form, 4.0);
    rows.push_back(row);
  }
  return rows;
}

int cmd_solve(const ProblemInstance& inst, bool json, std::ostream& out) {
  const auto exact = solve_exact(inst);
  const auto asym = solve_asymptotic(inst);
  const auto oma = solve_oma(inst);
  const auto budget = make_sop_budget(inst.scenario, inst.epsilon);

  if (json) {
    using nlohmann::json;
    const auto report_json = [](const SolveReport& r) {
      json j{{"status", to_string(r.status)},
             {"method", to_string(r.method)},
             {"phi2_dagger", r.phi2_dagger},
             {"phi2_ddagger", r.phi2_ddagger},
             {"binding", to_string(r.binding)}};
      if (r.design) {
        j["phi1"] = r.design->split.phi1();
        j["phi2"] = r.design->split.phi2();
        j["r_e"] = r.design->r_e;
        j["r2_secrecy"] = r.design->r2_secrecy;
        j["achieved_sop"] = r.design->achieved_sop;
      }
      return j;
    };
    const auto& s = inst.scenario;
    json doc{
        {"config",
         {{"p", s.p}, {"h1_sq", s.h1_sq}, {"h2_sq", s.h2_sq}, {"sigma1_sq", s.sigma1_sq},
          {"sigma2_sq", s.sigma2_sq}, {"sigmae_sq", s.sigmae_sq}, {"delta_e_sq", s.delta_e_sq},
          {"q1", inst.q1}, {"epsilon", inst.epsilon}}},
        {"floors",
         {{"epsilon_n", budget.epsilon_n}, {"epsilon_o", budget.epsilon_o},
          {"epsilon_feasible", budget.feasible}}},
        {"exact", report_json(exact)},
        {"asymptotic", report_json(asym)},
        {"oma",
         {{"status", to_string(oma.status)}, {"r_e_slot", oma.r_e_slot},
          {"r_e_frame", oma.r_e_frame}, {"r2_secrecy", oma.r2_secrecy}}},
    };
    out << doc.dump(2) << '\n';
  } else {
    fmt::print(out, "# nomasec solve\n");
    echo_instance(out, inst);
    fmt::print(out, "epsilon_n = {}\nepsilon_o = {}\nepsilon >= epsilon_n: {}\n\n",
               format_number(budget.epsilon_n), format_number(budget.epsilon_o),
               yes_no(budget.feasible));
    fmt::print(out, "{:<11}{:<20}{:<16}{:<16}{:<16}{:<16}{:<19}{:<16}{:<16}\n", "solver",
               "status", "phi1", "phi2", "r_e", "r2_secrecy", "binding", "phi2_dagger",
               "phi2_ddagger");
    for (const auto* r : {&exact, &asym}) {
      const auto row = noma_row(*r, inst.epsilon, 0.0);
      fmt::print(out, "{:<11}{:<20}{:<16}{:<16}{:<16}{:<16}{:<19}{:<16}{:<16}\n", row.solver,
                 to_string(row.status), format_number(row.phi1), format_number(row.phi2),
                 format_number(row.r_e), format_number(row.r2_secrecy), row.binding,
                 format_number(r->phi2_dagger), format_number(r->phi2_ddagger));
    }
    const auto row = oma_row(oma, inst.epsilon, 0.0);
    fmt::print(out, "{:<11}{:<20}{:<16}{:<16}{:<16}{:<16}{:<19}{:<16}{:<16}\n", row.solver,
               to_string(row.status), format_number(row.phi1), format_number(row.phi2),
               format_number(row.r_e), format_number(row.r2_secrecy), row.binding, "-", "-");
  }
  return exact.feasible() ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const SweepSpec& spec, unsigned workers, std::ostream& out) {
  write_sweep_csv(out, spec, workers);
  return kExitOk;
}

int cmd_validate(const ValidationRequest& req, std::ostream& out) {
  const auto rows = run_validation(req);
  fmt::print(out, "# nomasec validate\n");
  echo_instance(out, req.instance);
  fmt::print(out, "# samples = {}\n# seed = {}\n# pass rule = |mixture - closed_form| <= 4 sigma\n",
             req.mc.samples, req.mc.seed);
  fmt::print(out, "{:<16}{:<16}{:<20}{:<20}{:<20}{:<20}{:<20}{:<20}{}\n", "phi2", "r_e",
             "closed_form", "mixture", "mixture_se", "physical", "physical_se", "model_gap",
             "mixture_check");
  bool all_pass = true;
  for (const auto& r : rows) {
    all_pass = all_pass && r.mixture_pass;
    fmt::print(out, "{:<16}{:<16}{:<20}{:<20}{:<20}{:<20}{:<20}{:<20}{}\n", format_number(r.phi2),
               format_number(r.r_e), format_number(r.closed_form), format_number(r.mixture.p_hat),
               format_number(r.mixture.std_err), format_number(r.physical.p_hat),
               format_number(r.physical.std_err),
               format_number(r.physical.p_hat - r.closed_form), r.mixture_pass ? "pass" : "FAIL");
  }
  return all_pass ? kExitOk : kExitInfeasible;
}

int cmd_pmin(const ProblemInstance& inst, std::ostream& out) {
  const auto t = minimum_power(inst);
  fmt::print(out, "# nomasec pmin\n");
  echo_instance(out, inst);
  const auto show = [&](std::string_view key, const std::optional<double>& v) {
    if (!v) {
      fmt::print(out, "{} = none\n", key);
    } else if (*v == 0.0) {
      fmt::print(out, "{} = 0 (feasible at every power searched)\n", key);
    } else {
      fmt::print(out, "{} = {} ({} dB)\n", key, format_number(*v), format_number(linear_to_db(*v)));
    }
  };
  show("q1_threshold", t.q1_threshold);
  show("secrecy_pmin", t.secrecy_pmin);
  show("overall_pmin", t.overall);
  return t.overall ? kExitOk : kExitInfeasible;
}

}  // namespace nomasec::experiment
