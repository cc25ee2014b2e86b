#include "nomasec/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nomasec/errors.hpp"
#include "nomasec/numeric.hpp"

namespace nomasec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr double kPhiLow = 1e-9;
constexpr double kPhiHigh = 1.0 - 1e-9;
constexpr std::size_t kScanPoints = 1024;
constexpr double kRefineTolerance = 1e-8;

// log10 P search range for minimum_power.
constexpr double kLogPowerLow = -12.0;
constexpr double kLogPowerHigh = 12.0;
constexpr double kLogPowerWidth = 1e-9;

struct ExactScan {
  std::vector<double> phi2;
  std::vector<double> value;
  std::size_t best = 0;
};

ExactScan scan_exact(const ChannelScenario& s, double epsilon) {
  ExactScan scan;
  scan.phi2.resize(kScanPoints);
  scan.value.resize(kScanPoints);
  const double step = (kPhiHigh - kPhiLow) / static_cast<double>(kScanPoints - 1);
  for (std::size_t i = 0; i < kScanPoints; ++i) {
    scan.phi2[i] = i + 1 == kScanPoints ? kPhiHigh : kPhiLow + step * static_cast<double>(i);
    scan.value[i] = secrecy_objective_exact(s, scan.phi2[i], epsilon);
    if (scan.value[i] > scan.value[scan.best]) scan.best = i;
  }
  return scan;
}

double refine_exact(const ChannelScenario& s, double epsilon, const ExactScan& scan) {
  const std::size_t i = scan.best;
  const double a = scan.phi2[i == 0 ? 0 : i - 1];
  const double b = scan.phi2[std::min(i + 1, kScanPoints - 1)];
  const auto refined = numeric::golden_section_maximize(
      [&](double phi2) { return secrecy_objective_exact(s, phi2, epsilon); }, a, b,
      kRefineTolerance);
  return refined.value >= scan.value[i] ? refined.x : scan.phi2[i];
}

bool secrecy_feasible_exact(const ChannelScenario& s, double epsilon) {
  if (epsilon >= 1.0) return true;
  const auto scan = scan_exact(s, epsilon);
  return scan.value[scan.best] > 0.0;
}

// Smallest P in [10^kLogPowerLow, 10^kLogPowerHigh] with feasible(P); 0 when
// the lower end is already feasible.
template <typename Pred>
std::optional<double> power_threshold(Pred&& feasible) {
  if (feasible(std::pow(10.0, kLogPowerLow))) return 0.0;
  if (!feasible(std::pow(10.0, kLogPowerHigh))) return std::nullopt;
  const double t = numeric::bisect_threshold(
      [&](double log_p) { return feasible(std::pow(10.0, log_p)); }, kLogPowerLow, kLogPowerHigh,
      kLogPowerWidth);
  return std::pow(10.0, t);
}

}  // namespace

void ProblemInstance::validate() const {
  scenario.validate();
  if (!std::isfinite(q1) || q1 <= 0.0) {
    throw std::invalid_argument("q1 must be finite and strictly positive");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
}

std::string_view to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "FEASIBLE";
    case Feasibility::Q1Infeasible: return "Q1_INFEASIBLE";
    case Feasibility::SecrecyInfeasible: return "SECRECY_INFEASIBLE";
  }
  return "UNKNOWN";
}

std::string_view to_string(Binding b) {
  switch (b) {
    case Binding::None: return "none";
    case Binding::Q1Constraint: return "q1-constraint";
    case Binding::SecrecyMaximizer: return "secrecy-maximizer";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  return m == Method::Exact ? "exact" : "asymptotic";
}

double q1_power_threshold(const ChannelScenario& s, double q1) {
  return std::expm1(q1 * std::numbers::ln2) * s.sigma1_sq / s.h1_sq;
}

double phi2_q1_boundary(const ChannelScenario& s, double q1) {
  if (!(s.p > q1_power_threshold(s, q1))) {
    throw SolveError(ErrorCode::Q1Infeasible, "transmit power cannot support the user-1 rate");
  }
  const double inv_gain = s.sigma1_sq / (s.p * s.h1_sq);
  const double inv_two_q1 = std::exp2(-q1);
  return inv_two_q1 + inv_gain * inv_two_q1 - inv_gain;
}

double secrecy_objective_exact(const ChannelScenario& s, double phi2, double epsilon) {
  const auto split = PowerSplit::from_phi2(phi2);
  return capacity_user2(s, split) - redundancy_for_sop(s, split, epsilon);
}

double phi2_secrecy_maximizer_exact(const ChannelScenario& s, double epsilon) {
  if (epsilon >= 1.0) return 1.0;
  const auto scan = scan_exact(s, epsilon);
  if (!(scan.value[scan.best] > 0.0)) {
    throw SolveError(ErrorCode::SecrecyInfeasible, "secrecy objective is nowhere positive");
  }
  return refine_exact(s, epsilon, scan);
}

SolveReport solve_exact(const ProblemInstance& instance) {
  instance.validate();
  const auto& s = instance.scenario;
  SolveReport report;
  report.method = Method::Exact;
  report.phi2_dagger = kNaN;
  report.phi2_ddagger = kNaN;

  if (!(s.p > q1_power_threshold(s, instance.q1))) {
    report.status = Feasibility::Q1Infeasible;
    return report;
  }
  report.phi2_dagger = phi2_q1_boundary(s, instance.q1);

  if (instance.epsilon >= 1.0) {
    report.phi2_ddagger = 1.0;
  } else {
    const auto scan = scan_exact(s, instance.epsilon);
    if (!(scan.value[scan.best] > 0.0)) {
      report.status = Feasibility::SecrecyInfeasible;
      return report;
    }
    report.phi2_ddagger = refine_exact(s, instance.epsilon, scan);

    // Positive objective somewhere in (0, phi2_dagger]?
    bool positive = secrecy_objective_exact(
                        s, std::min(report.phi2_dagger, report.phi2_ddagger), instance.epsilon) > 0.0;
    for (std::size_t i = 0; !positive && i < kScanPoints; ++i) {
      positive = scan.phi2[i] <= report.phi2_dagger && scan.value[i] > 0.0;
    }
    if (!positive) {
      report.status = Feasibility::SecrecyInfeasible;
      return report;
    }
  }

  const double phi2 = std::min(report.phi2_dagger, report.phi2_ddagger);
  report.binding = report.phi2_dagger <= report.phi2_ddagger ? Binding::Q1Constraint
                                                             : Binding::SecrecyMaximizer;
  const auto split = PowerSplit::from_phi2(phi2);
  report.design = make_design(s, split, redundancy_for_sop(s, split, instance.epsilon));
  report.status = Feasibility::Feasible;
  return report;
}

double phi2_secrecy_maximizer_asymptotic(const ChannelScenario& s, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const double eve = effective_rho_e(s) * std::log(1.0 / epsilon);
  const double user2 = s.p / s.sigma2_sq * s.h2_sq;
  return 0.5 + 1.0 / (2.0 * eve) - 1.0 / (2.0 * user2);
}

double secrecy_objective_asymptotic(const ProblemInstance& instance, double phi2) {
  const auto split = PowerSplit::from_phi2(phi2);
  return capacity_user2(instance.scenario, split) -
         redundancy_for_sop_asymptotic(instance.scenario, split, instance.epsilon);
}

SolveReport solve_asymptotic(const ProblemInstance& instance) {
  instance.validate();
  const auto& s = instance.scenario;
  SolveReport report;
  report.method = Method::Asymptotic;
  report.phi2_dagger = kNaN;
  report.phi2_ddagger = kNaN;

  if (!(s.p > q1_power_threshold(s, instance.q1))) {
    report.status = Feasibility::Q1Infeasible;
    return report;
  }
  report.phi2_dagger = phi2_q1_boundary(s, instance.q1);

  double r_e = 0.0;
  if (instance.epsilon >= 1.0) {
    // ln(1/eps) -> 0 sends the closed-form maximizer to +inf and R_E to 0.
    report.phi2_ddagger = 1.0;
  } else {
    report.phi2_ddagger = phi2_secrecy_maximizer_asymptotic(s, instance.epsilon);
    if (!(report.phi2_ddagger > 0.0)) {
      report.status = Feasibility::SecrecyInfeasible;
      return report;
    }
  }

  const double phi2 = std::min(report.phi2_dagger, report.phi2_ddagger);
  report.binding = report.phi2_dagger <= report.phi2_ddagger ? Binding::Q1Constraint
                                                             : Binding::SecrecyMaximizer;
  const auto split = PowerSplit::from_phi2(phi2);
  if (instance.epsilon < 1.0) r_e = redundancy_for_sop_asymptotic(s, split, instance.epsilon);
  report.design =
      SecrecyDesign{split, r_e, secrecy_rate(s, split, r_e), sop_asymptotic(s, split, r_e)};
  report.status = Feasibility::Feasible;
  return report;
}

ObjectiveDerivatives objective_derivatives_asymptotic(const ProblemInstance& instance,
                                                      double phi2) {
  if (!(instance.epsilon > 0.0 && instance.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const auto& s = instance.scenario;
  const double user2 = s.p / s.sigma2_sq * s.h2_sq;
  const double eve = effective_rho_e(s) * std::log(1.0 / instance.epsilon);
  const double signal = 1.0 + phi2 * user2;
  const double leak = 1.0 + (1.0 - phi2) * eve;
  return {
      (user2 / signal - eve / leak) / std::numbers::ln2,
      (-(user2 * user2) / (signal * signal) - (eve * eve) / (leak * leak)) / std::numbers::ln2,
  };
}

PowerThresholds minimum_power(const ProblemInstance& instance) {
  instance.validate();
  PowerThresholds out;
  out.q1_threshold = q1_power_threshold(instance.scenario, instance.q1);
  out.secrecy_pmin = power_threshold([&](double p) {
    auto s = instance.scenario;
    s.p = p;
    return secrecy_feasible_exact(s, instance.epsilon);
  });
  out.overall = power_threshold([&](double p) {
    auto inst = instance;
    inst.scenario.p = p;
    return solve_exact(inst).feasible();
  });
  return out;
}

}  // namespace nomasec
