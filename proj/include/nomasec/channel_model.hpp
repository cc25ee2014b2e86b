#ifndef NOMASEC_CHANNEL_MODEL_HPP
#define NOMASEC_CHANNEL_MODEL_HPP

// Two-user downlink NOMA with a passive single-antenna eavesdropper ("Eve").
// User 1 is the weak user, user 2 the strong user. All quantities are linear
// scale; dB conversion happens at the CLI boundary.

namespace nomasec {

/// Physical parameters of one problem instance.
///
/// The legitimate gains are known realizations. Eve's gain |h_e|^2 is
/// exponentially distributed with mean `delta_e_sq`; every closed form that
/// involves Eve uses the effective SNR rho_e * delta_e_sq.
struct ChannelScenario {
  double h1_sq = 0.5;
  double h2_sq = 4.0;
  double sigma1_sq = 1.0;
  double sigma2_sq = 1.0;
  double sigmae_sq = 1.0;
  double p = 1.0;
  double delta_e_sq = 1.0;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Transmit SNRs P/sigma^2 for user 1, user 2 and Eve.
struct SnrTriple {
  double rho1;
  double rho2;
  double rho_e;
};

/// Fractions of P given to user 1 and user 2. Holds phi1 + phi2 = 1 with
/// 0 < phi2 <= 1.
class PowerSplit {
 public:
  /// Throws std::invalid_argument unless 0 < phi2 <= 1.
  static PowerSplit from_phi2(double phi2);

  double phi1() const noexcept { return phi1_; }
  double phi2() const noexcept { return phi2_; }

 private:
  PowerSplit(double phi1, double phi2) : phi1_(phi1), phi2_(phi2) {}

  double phi1_;
  double phi2_;
};

SnrTriple rho(const ChannelScenario& scenario);

/// rho_e * delta_e_sq, the scale of Eve's exponential SNR.
double effective_rho_e(const ChannelScenario& scenario);

double sinr_user1(const ChannelScenario& scenario, const PowerSplit& split);
double snr_user2(const ChannelScenario& scenario, const PowerSplit& split);

// Shannon capacities in bits per channel use.
double capacity_user1(const ChannelScenario& scenario, const PowerSplit& split);
double capacity_user2(const ChannelScenario& scenario, const PowerSplit& split);

/// Eve decodes s2 treating s1 as interference (her channel is worse than
/// user 1's).
double eve_sinr_no_sic(const ChannelScenario& scenario, const PowerSplit& split, double he_sq);
/// Eve removes s1 by SIC first (her channel is at least as good as user 1's).
double eve_snr_sic(const ChannelScenario& scenario, const PowerSplit& split, double he_sq);

/// True when a realization |h_e|^2 lets Eve decode s1 and cancel it:
/// rho_e |h_e|^2 >= rho1 |h1|^2.
bool eve_can_cancel(const ChannelScenario& scenario, double he_sq);

// Closed-form CDFs of Eve's SINR/SNR under Rayleigh fading.
// The no-SIC CDF reaches 1 at gamma = phi2/phi1 and stays there.
double eve_cdf_no_sic(const ChannelScenario& scenario, const PowerSplit& split, double gamma);
double eve_cdf_sic(const ChannelScenario& scenario, const PowerSplit& split, double gamma);

/// 10^(x/10).
double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace nomasec

#endif  // NOMASEC_CHANNEL_MODEL_HPP
