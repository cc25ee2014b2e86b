#ifndef NOMASEC_OMA_BASELINE_HPP
#define NOMASEC_OMA_BASELINE_HPP

#include "nomasec/allocator.hpp"

namespace nomasec {

// TDMA reference: each user gets half of the frame at full power P. Rates
// are quoted per frame channel use (a factor 1/2 on each slot capacity).
struct OmaDesign {
  Feasibility status = Feasibility::Q1Infeasible;
  double r_e_slot = 0.0;    // redundancy rate within user 2's slot
  double r_e_frame = 0.0;   // r_e_slot / 2
  double r2_secrecy = 0.0;  // [C2_slot / 2 - r_e_frame]^+

  bool feasible() const { return status == Feasibility::Feasible; }
};

/// Frame-averaged capacity of each user's half slot.
double oma_capacity_user1(const ChannelScenario& scenario);
double oma_capacity_user2(const ChannelScenario& scenario);

/// Eve's outage probability on user 2's interference-free slot at a
/// frame-averaged redundancy rate.
double oma_sop(const ChannelScenario& scenario, double r_e_frame);

OmaDesign solve_oma(const ProblemInstance& instance);

}  // namespace nomasec

#endif  // NOMASEC_OMA_BASELINE_HPP
