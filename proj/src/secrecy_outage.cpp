#include "nomasec/secrecy_outage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nomasec/errors.hpp"
#include "nomasec/numeric.hpp"

namespace nomasec {

namespace {

constexpr double kUnderflowExponent = -745.0;
constexpr double kBracketHeadroomBits = 64.0;
// Bisect to double resolution: near r = 0 the SOP slope is of order rho_e, so
// a 1e-12-bit bracket alone can leave |SOP - epsilon| above 1e-9.
constexpr double kBracketWidthBits = 0.0;

// 2^r - 1, accurate for small r.
double rate_threshold(double r_e) { return std::expm1(r_e * std::numbers::ln2); }

double safe_exp(double exponent) {
  return exponent < kUnderflowExponent ? 0.0 : std::exp(exponent);
}

}  // namespace

double secrecy_rate(const ChannelScenario& s, const PowerSplit& split, double r_e) {
  return std::max(capacity_user2(s, split) - r_e, 0.0);
}

double sop_branch_no_sic(const ChannelScenario& s, const PowerSplit& split, double r_e) {
  const double x = rate_threshold(r_e);
  if (x <= 0.0) return 1.0;
  if (split.phi1() == 0.0) return safe_exp(-x / (effective_rho_e(s) * split.phi2()));
  const double margin = split.phi2() - split.phi1() * x;
  if (margin <= 0.0) return 0.0;
  return safe_exp(-x / (effective_rho_e(s) * margin));
}

double sop_branch_sic(const ChannelScenario& s, const PowerSplit& split, double r_e) {
  const double x = rate_threshold(r_e);
  if (x <= 0.0) return 1.0;
  return safe_exp(-x / (effective_rho_e(s) * split.phi2()));
}

double sic_branch_weight(const ChannelScenario& s) {
  const auto r = rho(s);
  return safe_exp(-r.rho1 * s.h1_sq / effective_rho_e(s));
}

double sop_model(const ChannelScenario& s, const PowerSplit& split, double r_e) {
  const double w = sic_branch_weight(s);
  const double value =
      (1.0 - w) * sop_branch_no_sic(s, split, r_e) + w * sop_branch_sic(s, split, r_e);
  return std::clamp(value, 0.0, 1.0);
}

double sop_asymptotic(const ChannelScenario& s, const PowerSplit& split, double r_e) {
  return sop_branch_no_sic(s, split, r_e);
}

SopFloors min_sop(const ChannelScenario& s) {
  const double scale = s.delta_e_sq;
  const double user1_term = s.sigmae_sq * s.h1_sq / (s.sigma1_sq * scale);
  const double user2_term = s.sigmae_sq * s.h2_sq / (s.sigma2_sq * scale);
  return {safe_exp(-user1_term) * safe_exp(-user2_term), safe_exp(-user2_term)};
}

SopBudget make_sop_budget(const ChannelScenario& s, double epsilon) {
  const auto floors = min_sop(s);
  return {epsilon, floors.epsilon_n, floors.epsilon_o, epsilon >= floors.epsilon_n};
}

double redundancy_for_sop(const ChannelScenario& s, const PowerSplit& split, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (epsilon >= 1.0) return 0.0;

  const auto sop = [&](double r_e) {
    const double value = sop_model(s, split, r_e);
    if (std::isnan(value)) throw SolveError(ErrorCode::NonFinite, "SOP evaluated to NaN");
    return value;
  };

  double hi = capacity_user2(s, split) + kBracketHeadroomBits;
  // Very large rho_e can leave the SIC branch above epsilon at the default
  // bracket; grow it until the constraint holds. 2^r overflows to +inf near
  // r = 1024, which drives both branches to exactly zero.
  while (sop(hi) > epsilon) {
    if (!std::isfinite(hi) || hi > 4096.0) {
      throw SolveError(ErrorCode::InfeasibleEpsilon, "no finite redundancy rate reaches epsilon");
    }
    hi *= 2.0;
  }
  return numeric::bisect_threshold([&](double r_e) { return sop(r_e) <= epsilon; }, 0.0, hi,
                                   kBracketWidthBits);
}

double redundancy_for_sop_asymptotic(const ChannelScenario& s, const PowerSplit& split,
                                     double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const double scaled = effective_rho_e(s) * std::log(1.0 / epsilon);
  return std::log2(1.0 + split.phi2() * scaled / (1.0 + split.phi1() * scaled));
}

SecrecyDesign make_design(const ChannelScenario& s, const PowerSplit& split, double r_e) {
  return {split, r_e, secrecy_rate(s, split, r_e), sop_model(s, split, r_e)};
}

}  // namespace nomasec
