#include "nomasec/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nomasec {

namespace {

void require_positive(double value, const char* field) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(std::string(field) + " must be finite and strictly positive");
  }
}

}  // namespace

void ChannelScenario::validate() const {
  require_positive(h1_sq, "h1_sq");
  require_positive(h2_sq, "h2_sq");
  require_positive(sigma1_sq, "sigma1_sq");
  require_positive(sigma2_sq, "sigma2_sq");
  require_positive(sigmae_sq, "sigmae_sq");
  require_positive(p, "p");
  require_positive(delta_e_sq, "delta_e_sq");
  if (h1_sq > h2_sq) {
    throw std::invalid_argument("h1_sq must not exceed h2_sq (user 1 is the weak user)");
  }
}

PowerSplit PowerSplit::from_phi2(double phi2) {
  if (!(phi2 > 0.0 && phi2 <= 1.0)) {
    throw std::invalid_argument("phi2 must lie in (0, 1]");
  }
  return PowerSplit(1.0 - phi2, phi2);
}

SnrTriple rho(const ChannelScenario& s) {
  return {s.p / s.sigma1_sq, s.p / s.sigma2_sq, s.p / s.sigmae_sq};
}

double effective_rho_e(const ChannelScenario& s) { return s.p / s.sigmae_sq * s.delta_e_sq; }

double sinr_user1(const ChannelScenario& s, const PowerSplit& split) {
  const double g = s.p / s.sigma1_sq * s.h1_sq;
  return split.phi1() * g / (split.phi2() * g + 1.0);
}

double snr_user2(const ChannelScenario& s, const PowerSplit& split) {
  return split.phi2() * (s.p / s.sigma2_sq) * s.h2_sq;
}

double capacity_user1(const ChannelScenario& s, const PowerSplit& split) {
  return std::log1p(sinr_user1(s, split)) / std::numbers::ln2;
}

double capacity_user2(const ChannelScenario& s, const PowerSplit& split) {
  return std::log1p(snr_user2(s, split)) / std::numbers::ln2;
}

double eve_sinr_no_sic(const ChannelScenario& s, const PowerSplit& split, double he_sq) {
  const double g = s.p / s.sigmae_sq * he_sq;
  return split.phi2() * g / (split.phi1() * g + 1.0);
}

double eve_snr_sic(const ChannelScenario& s, const PowerSplit& split, double he_sq) {
  return split.phi2() * (s.p / s.sigmae_sq) * he_sq;
}

bool eve_can_cancel(const ChannelScenario& s, double he_sq) {
  const auto r = rho(s);
  return r.rho_e * he_sq >= r.rho1 * s.h1_sq;
}

double eve_cdf_no_sic(const ChannelScenario& s, const PowerSplit& split, double gamma) {
  if (gamma <= 0.0) return 0.0;
  const double margin = split.phi2() - split.phi1() * gamma;
  if (margin <= 0.0) return 1.0;
  return -std::expm1(-gamma / (effective_rho_e(s) * margin));
}

double eve_cdf_sic(const ChannelScenario& s, const PowerSplit& split, double gamma) {
  if (gamma <= 0.0) return 0.0;
  return -std::expm1(-gamma / (effective_rho_e(s) * split.phi2()));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace nomasec
