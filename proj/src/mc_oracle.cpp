#include "nomasec/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "nomasec/secrecy_outage.hpp"

namespace nomasec {

namespace {

constexpr std::uint64_t kMinSamples = 10'000;

unsigned resolve_workers(unsigned requested, std::uint64_t samples) {
  unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(workers, samples));
}

// Runs body(begin, end) over contiguous index ranges and sums the returned
// counts.
template <typename Body>
std::uint64_t partitioned_count(std::uint64_t samples, unsigned workers, Body body) {
  if (workers <= 1) return body(std::uint64_t{0}, samples);
  std::vector<std::uint64_t> counts(workers, 0);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = samples * w / workers;
      const std::uint64_t end = samples * (w + 1) / workers;
      threads.emplace_back([&counts, &body, w, begin, end] { counts[w] = body(begin, end); });
    }
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

McEstimate make_estimate(std::uint64_t hits, const McConfig& config) {
  McEstimate est;
  est.samples = config.samples;
  est.seed = config.seed;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(config.samples);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(config.samples));
  return est;
}

// Largest |F_empirical - F| over sorted samples.
template <typename Cdf>
double ks_statistic(std::vector<double>& values, Cdf cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace

std::string_view to_string(McMode mode) {
  return mode == McMode::Mixture ? "mixture" : "physical";
}

void McConfig::validate() const {
  if (samples < kMinSamples) {
    throw std::invalid_argument("samples must be at least 10000");
  }
}

McEstimate mc_sop(const ChannelScenario& s, const PowerSplit& split, double r_e,
                  const McConfig& config) {
  config.validate();
  if (!(r_e >= 0.0)) throw std::invalid_argument("r_e must be non-negative");

  const CounterRng rng(config.seed);
  const auto r = rho(s);
  const double threshold = std::expm1(r_e * std::numbers::ln2);
  const double cancel_level = r.rho1 * s.h1_sq;  // Eve cancels s1 when rho_e |h_e|^2 >= this
  const double w = sic_branch_weight(s);
  const double mean = s.delta_e_sq;
  const double phi1 = split.phi1();
  const double phi2 = split.phi2();
  const double rho_e = r.rho_e;
  const bool mixture = config.mode == McMode::Mixture;

  const auto body = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double g = rho_e * (-mean * std::log(rng.uniform(2 * i + 1)));
      const bool cancels = mixture ? rng.uniform(2 * i) <= w : g >= cancel_level;
      const double gamma = cancels ? phi2 * g : phi2 * g / (phi1 * g + 1.0);
      hits += gamma >= threshold ? 1u : 0u;
    }
    return hits;
  };
  return make_estimate(partitioned_count(config.samples, resolve_workers(config.workers, config.samples), body),
                       config);
}

EveCdfEstimate mc_eve_cdf(const ChannelScenario& s, const PowerSplit& split, double gamma_threshold,
                          const McConfig& config) {
  config.validate();
  if (!(gamma_threshold >= 0.0)) throw std::invalid_argument("gamma_threshold must be non-negative");

  const CounterRng rng(config.seed);
  const double mean = s.delta_e_sq;
  const unsigned workers = resolve_workers(config.workers, config.samples);

  const auto count = [&](bool sic) {
    return partitioned_count(config.samples, workers, [&](std::uint64_t begin, std::uint64_t end) {
      std::uint64_t hits = 0;
      for (std::uint64_t i = begin; i < end; ++i) {
        const double he_sq = -mean * std::log(rng.uniform(2 * i + 1));
        const double gamma = sic ? eve_snr_sic(s, split, he_sq) : eve_sinr_no_sic(s, split, he_sq);
        hits += gamma <= gamma_threshold ? 1u : 0u;
      }
      return hits;
    });
  };
  return {make_estimate(count(false), config), make_estimate(count(true), config)};
}

KsDistance eve_cdf_ks_distance(const ChannelScenario& s, const PowerSplit& split,
                               const McConfig& config) {
  config.validate();
  const CounterRng rng(config.seed);
  const double mean = s.delta_e_sq;
  std::vector<double> no_sic(config.samples);
  std::vector<double> sic(config.samples);
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    const double he_sq = -mean * std::log(rng.uniform(2 * i + 1));
    no_sic[i] = eve_sinr_no_sic(s, split, he_sq);
    sic[i] = eve_snr_sic(s, split, he_sq);
  }
  return {
      ks_statistic(no_sic, [&](double g) { return eve_cdf_no_sic(s, split, g); }),
      ks_statistic(sic, [&](double g) { return eve_cdf_sic(s, split, g); }),
      config.samples,
  };
}

}  // namespace nomasec
