#ifndef NOMASEC_EXPERIMENT_HPP
#define NOMASEC_EXPERIMENT_HPP

// Sweeps, validation runs and report writers behind the nomasec CLI. The
// command functions write to a stream and return the process exit code so
// they can be driven from tests as well as from main().

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nomasec/allocator.hpp"
#include "nomasec/mc_oracle.hpp"
#include "nomasec/oma_baseline.hpp"

namespace nomasec::experiment {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

/// Environment variable overriding the default Monte Carlo sample count.
inline constexpr const char* kSamplesEnv = "NOMASEC_MC_SAMPLES";

/// 12 significant digits, '.' decimal point, independent of the C++ locale.
std::string format_number(double value);

/// Parses "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_values(std::string_view text);

// P and MER points are in dB, Q1 and epsilon are linear. MER moves
// sigmae_sq = sigma1_sq * 10^(MER/10) and leaves sigma1_sq fixed.
enum class SweepAxis { Power, Mer, Q1, Epsilon };

SweepAxis parse_axis(std::string_view name);
std::string_view axis_column(SweepAxis axis);

struct SweepGrid {
  SweepAxis axis = SweepAxis::Power;
  std::vector<double> values;
  ProblemInstance fixed;

  /// Throws std::invalid_argument unless values is non-empty and strictly
  /// increasing.
  void validate() const;
};

ProblemInstance instance_at(const SweepGrid& grid, double value);

/// One or more grids written to the same CSV, typically one per epsilon.
struct SweepSpec {
  std::string name;
  std::vector<SweepGrid> series;
};

/// Reference settings shared by the presets: P = 4 dB, sigma1^2 = sigma2^2 = -5 dB,
/// sigma_e^2 = 2 dB, |h1|^2 = 0.5, |h2|^2 = 4, Q1 = 0.4.
ProblemInstance reference_instance();

/// Preset grids "fig1a" (MER), "fig1b"/"fig1c" (P), "fig1d" (Q1), each with
/// epsilon in {1, 0.01, 0.001}.
SweepSpec preset(std::string_view name);
std::vector<std::string_view> preset_names();

struct SweepRow {
  std::string_view solver;  // exact | asymptotic | oma
  double epsilon = 0.0;
  double axis_value = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double r_e = 0.0;
  double r2_secrecy = 0.0;
  Feasibility status = Feasibility::Q1Infeasible;
  std::string_view binding;
};

/// Three rows (exact, asymptotic, oma) per grid point, in axis order.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, unsigned workers = 0);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, unsigned workers = 0);

/// Writes the fully resolved instance as "# key = value" lines.
void echo_instance(std::ostream& out, const ProblemInstance& instance);

struct ValidationRequest {
  ProblemInstance instance;
  std::optional<double> phi2;  // default: exact optimum, else 0.5
  std::vector<double> r_e;     // default: {0, R_E*/2, R_E*}, else {0, 0.5, 1}
  McConfig mc;
};

struct ValidationRow {
  double phi2 = 0.0;
  double r_e = 0.0;
  double closed_form = 0.0;
  McEstimate mixture;
  McEstimate physical;
  bool mixture_pass = false;
};

/// Agreement test used by validation runs: |p_hat - expected| within
/// k_sigma binomial standard errors, taking the larger of the error computed
/// from p_hat and from expected so that a zero-hit estimate of a tiny
/// probability is not flagged.
bool agrees_with(const McEstimate& estimate, double expected, double k_sigma);

std::vector<ValidationRow> run_validation(const ValidationRequest& request);

std::uint64_t default_mc_samples();

int cmd_solve(const ProblemInstance& instance, bool json, std::ostream& out);
int cmd_sweep(const SweepSpec& spec, unsigned workers, std::ostream& out);
int cmd_validate(const ValidationRequest& request, std::ostream& out);
int cmd_pmin(const ProblemInstance& instance, std::ostream& out);

}  // namespace nomasec::experiment

#endif  // NOMASEC_EXPERIMENT_HPP
