#ifndef NOMASEC_MC_ORACLE_HPP
#define NOMASEC_MC_ORACLE_HPP

#include <cstdint>
#include <string_view>

#include "nomasec/channel_model.hpp"

namespace nomasec {

// Monte Carlo estimates of Eve's outage events under Rayleigh fading.
//
// Random numbers come from SplitMix64 used in counter mode: the k-th output
// of a stream is mix64(seed + (k + 1) * 0x9E3779B97F4A7C15), so trial i
// reads positions 2i and 2i + 1 directly. Any partition of the trials across
// threads therefore produces identical counts.

/// SplitMix64 (Steele, Lea & Flood, 2014), addressed by position.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t at(std::uint64_t position) const noexcept {
    std::uint64_t z = seed_ + (position + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1] with 53 bits of resolution; never returns 0.
  constexpr double uniform(std::uint64_t position) const noexcept {
    return static_cast<double>((at(position) >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

enum class McMode {
  // Branch drawn with the regime probabilities, then an independent |h_e|^2
  // for the outage test. Matches sop_model exactly.
  Mixture,
  // One |h_e|^2 decides both the decoding regime and the outage.
  Physical,
};

std::string_view to_string(McMode mode);

struct McConfig {
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0x5EC0'2E7A'0C0D'E001ULL;
  McMode mode = McMode::Mixture;
  unsigned workers = 0;  // 0: one per hardware thread

  void validate() const;
};

struct McEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Estimated secrecy outage probability of s2 at redundancy rate r_e.
McEstimate mc_sop(const ChannelScenario& scenario, const PowerSplit& split, double r_e,
                  const McConfig& config);

struct EveCdfEstimate {
  McEstimate no_sic;  // Pr(gamma_e1 <= gamma)
  McEstimate sic;     // Pr(gamma_e2 <= gamma)
};

EveCdfEstimate mc_eve_cdf(const ChannelScenario& scenario, const PowerSplit& split,
                          double gamma_threshold, const McConfig& config);

/// Kolmogorov-Smirnov distances between the empirical distributions of
/// gamma_e1, gamma_e2 and their closed-form CDFs.
struct KsDistance {
  double no_sic;
  double sic;
  std::uint64_t samples;
};

KsDistance eve_cdf_ks_distance(const ChannelScenario& scenario, const PowerSplit& split,
                               const McConfig& config);

}  // namespace nomasec

#endif  // NOMASEC_MC_ORACLE_HPP
