#include "nomasec/oma_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nomasec {

double oma_capacity_user1(const ChannelScenario& s) {
  return 0.5 * std::log1p(s.p / s.sigma1_sq * s.h1_sq) / std::numbers::ln2;
}

double oma_capacity_user2(const ChannelScenario& s) {
  return 0.5 * std::log1p(s.p / s.sigma2_sq * s.h2_sq) / std::numbers::ln2;
}

double oma_sop(const ChannelScenario& s, double r_e_frame) {
  const double threshold = std::expm1(2.0 * r_e_frame * std::numbers::ln2);
  return std::exp(-threshold / effective_rho_e(s));
}

OmaDesign solve_oma(const ProblemInstance& instance) {
  instance.validate();
  const auto& s = instance.scenario;
  OmaDesign out;
  if (oma_capacity_user1(s) < instance.q1) {
    out.status = Feasibility::Q1Infeasible;
    return out;
  }
  if (instance.epsilon < min_sop(s).epsilon_o) {
    out.status = Feasibility::SecrecyInfeasible;
    return out;
  }
  // Inverting exp(-(2^r - 1) / rho_e) = eps within the slot.
  out.r_e_slot = std::log1p(effective_rho_e(s) * std::log(1.0 / instance.epsilon)) / std::numbers::ln2;
  out.r_e_frame = 0.5 * out.r_e_slot;
  out.r2_secrecy = std::max(oma_capacity_user2(s) - out.r_e_frame, 0.0);
  out.status = Feasibility::Feasible;
  return out;
}

}  // namespace nomasec
