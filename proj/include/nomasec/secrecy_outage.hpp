#ifndef NOMASEC_SECRECY_OUTAGE_HPP
#define NOMASEC_SECRECY_OUTAGE_HPP

#include "nomasec/channel_model.hpp"

namespace nomasec {

/// Lowest secrecy outage probabilities compatible with a positive secrecy
/// rate, for NOMA (epsilon_n) and for TDMA (epsilon_o).
struct SopFloors {
  double epsilon_n;
  double epsilon_o;
};

/// A secrecy constraint together with the floors of its scenario.
struct SopBudget {
  double epsilon;
  double epsilon_n;
  double epsilon_o;
  bool feasible;  // epsilon >= epsilon_n
};

/// One complete transmit design for the strong user.
struct SecrecyDesign {
  PowerSplit split;
  double r_e;           // wiretap redundancy rate, bits/channel use
  double r2_secrecy;    // [C2 - r_e]^+
  double achieved_sop;  // model SOP at (split, r_e)
};

/// [C2 - r_e]^+.
double secrecy_rate(const ChannelScenario& scenario, const PowerSplit& split, double r_e);

/// Pr(gamma_e1 >= 2^r_e - 1): outage when Eve cannot cancel s1. Zero once
/// 2^r_e - 1 reaches phi2/phi1; a zero phi1 never reaches that branch.
double sop_branch_no_sic(const ChannelScenario& scenario, const PowerSplit& split, double r_e);

/// Pr(gamma_e2 >= 2^r_e - 1): outage when Eve decodes after SIC.
double sop_branch_sic(const ChannelScenario& scenario, const PowerSplit& split, double r_e);

/// Probability that Eve is able to cancel s1, exp(-rho1|h1|^2 / (rho_e delta_e^2)).
double sic_branch_weight(const ChannelScenario& scenario);

/// Mixture of the two branch outage probabilities weighted by the
/// probability of each decoding regime at Eve.
///
/// The branches are weighted by their marginal regime probabilities, not
/// conditioned on the shared |h_e|^2. mc_oracle's physical mode measures the
/// difference.
double sop_model(const ChannelScenario& scenario, const PowerSplit& split, double r_e);

/// High-MER limit of sop_model: the SIC weight vanishes and only the no-SIC
/// branch remains.
double sop_asymptotic(const ChannelScenario& scenario, const PowerSplit& split, double r_e);

SopFloors min_sop(const ChannelScenario& scenario);

SopBudget make_sop_budget(const ChannelScenario& scenario, double epsilon);

/// Smallest r_e >= 0 with sop_model <= epsilon, found by bisection on
/// [0, C2 + 64] to a bracket width of 1e-12 bits. epsilon >= 1 short-circuits
/// to 0.
///
/// Throws std::invalid_argument for epsilon outside (0, 1], SolveError with
/// NonFinite if the SOP evaluates to NaN, and InfeasibleEpsilon if epsilon is
/// below every reachable SOP.
double redundancy_for_sop(const ChannelScenario& scenario, const PowerSplit& split,
                          double epsilon);

/// Closed-form inverse of sop_asymptotic for 0 < epsilon < 1.
double redundancy_for_sop_asymptotic(const ChannelScenario& scenario, const PowerSplit& split,
                                     double epsilon);

/// Packages split and r_e with the secrecy rate and SOP they achieve under
/// sop_model.
SecrecyDesign make_design(const ChannelScenario& scenario, const PowerSplit& split, double r_e);

}  // namespace nomasec

#endif  // NOMASEC_SECRECY_OUTAGE_HPP
