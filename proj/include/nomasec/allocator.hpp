#ifndef NOMASEC_ALLOCATOR_HPP
#define NOMASEC_ALLOCATOR_HPP

#include <optional>
#include <string_view>

#include "nomasec/channel_model.hpp"
#include "nomasec/secrecy_outage.hpp"

namespace nomasec {

/// Maximize the strong user's secrecy rate over (phi1, phi2, R_E) subject to
/// C1 >= q1, SOP <= epsilon and phi1 + phi2 = 1.
struct ProblemInstance {
  ChannelScenario scenario;
  double q1 = 0.4;
  double epsilon = 0.01;

  void validate() const;
};

enum class Feasibility { Feasible, Q1Infeasible, SecrecyInfeasible };
enum class Binding { None, Q1Constraint, SecrecyMaximizer };
enum class Method { Exact, Asymptotic };

std::string_view to_string(Feasibility f);
std::string_view to_string(Binding b);
std::string_view to_string(Method m);

struct SolveReport {
  Feasibility status = Feasibility::Q1Infeasible;
  std::optional<SecrecyDesign> design;
  double phi2_dagger = 0.0;   // Q1 boundary split; NaN when Q1-infeasible
  double phi2_ddagger = 0.0;  // secrecy maximizer; NaN when not computed
  Binding binding = Binding::None;
  Method method = Method::Exact;

  bool feasible() const { return status == Feasibility::Feasible; }
};

/// Smallest power for which C1 >= q1 is attainable: (2^q1 - 1) sigma1^2 / |h1|^2.
double q1_power_threshold(const ChannelScenario& scenario, double q1);

/// The phi2 at which C1 = q1 exactly. Throws SolveError(Q1Infeasible) when P
/// does not exceed q1_power_threshold.
double phi2_q1_boundary(const ChannelScenario& scenario, double q1);

/// C2(phi2) - R_E(phi2) with R_E from redundancy_for_sop. Not clamped.
double secrecy_objective_exact(const ChannelScenario& scenario, double phi2, double epsilon);

/// argmax of secrecy_objective_exact over phi2 in [1e-9, 1 - 1e-9]: a
/// 1024-point scan brackets the best cell, golden-section search refines it
/// to 1e-8. epsilon = 1 returns 1. Throws SolveError(SecrecyInfeasible) when
/// the objective is nowhere positive.
double phi2_secrecy_maximizer_exact(const ChannelScenario& scenario, double epsilon);

SolveReport solve_exact(const ProblemInstance& instance);

// High-MER closed forms.

/// 1/2 + 1/(2 rho_e delta_e^2 ln(1/eps)) - 1/(2 rho2 |h2|^2); may fall
/// outside (0, 1). Requires 0 < epsilon < 1.
double phi2_secrecy_maximizer_asymptotic(const ChannelScenario& scenario, double epsilon);

/// Secrecy rate under the asymptotic SOP, before clamping at zero.
double secrecy_objective_asymptotic(const ProblemInstance& instance, double phi2);

SolveReport solve_asymptotic(const ProblemInstance& instance);

struct ObjectiveDerivatives {
  double first;
  double second;
};

/// First and second derivative of secrecy_objective_asymptotic in phi2.
ObjectiveDerivatives objective_derivatives_asymptotic(const ProblemInstance& instance,
                                                      double phi2);

/// Smallest transmit powers at which the exact problem becomes feasible,
/// found by bisection on log P. The scenario's own P is ignored.
struct PowerThresholds {
  double q1_threshold;
  std::optional<double> secrecy_pmin;  // nullopt: infeasible for every P tried
  std::optional<double> overall;       // smallest P with solve_exact feasible
};

PowerThresholds minimum_power(const ProblemInstance& instance);

}  // namespace nomasec

#endif  // NOMASEC_ALLOCATOR_HPP
