#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nomasec/mc_oracle.hpp"
#include "nomasec/secrecy_outage.hpp"

using namespace nomasec;

namespace {

ChannelScenario unit_scenario() {
  ChannelScenario s;
  s.h1_sq = 1.0;
  s.h2_sq = 1.0;
  s.sigma1_sq = s.sigma2_sq = s.sigmae_sq = 1.0;
  s.p = 1.0;
  return s;
}

McConfig config(std::uint64_t samples, McMode mode = McMode::Mixture, unsigned workers = 1) {
  McConfig c;
  c.samples = samples;
  c.mode = mode;
  c.workers = workers;
  return c;
}

bool within(const McEstimate& est, double expected, double k) {
  const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(est.samples));
  return std::abs(est.p_hat - expected) <= k * se;
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  const CounterRng rng(0);
  CHECK(rng.at(0) == 0xE220A8397B1DCDAFULL);
  CHECK(rng.at(1) == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.at(2) == 0x06C45D188009454FULL);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = rng.uniform(k);
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("zero redundancy is always an outage") {
  auto s = unit_scenario();
  s.h1_sq = std::numbers::ln2;
  const auto half = PowerSplit::from_phi2(0.5);
  for (auto mode : {McMode::Mixture, McMode::Physical}) {
    const auto est = mc_sop(s, half, 0.0, config(20'000, mode));
    CHECK(est.p_hat == 1.0);
    CHECK(est.std_err == 0.0);
  }
}

TEST_CASE("mixture estimate of 0.5 e^-2") {
  auto s = unit_scenario();
  s.h1_sq = std::numbers::ln2;  // SIC weight 1/2
  const auto half = PowerSplit::from_phi2(0.5);
  const double expected = 0.5 * std::exp(-2.0);
  REQUIRE(sop_model(s, half, 1.0) == doctest::Approx(expected));
  const auto est = mc_sop(s, half, 1.0, config(10'000'000));
  CHECK(within(est, expected, 4.0));
  CHECK(est.std_err == doctest::Approx(std::sqrt(est.p_hat * (1.0 - est.p_hat) / 1e7)));
  CHECK(est.samples == 10'000'000u);
}

TEST_CASE("no-SIC branch estimate of exp(-2/3)") {
  auto s = unit_scenario();
  s.sigma1_sq = 1e-6;  // SIC weight underflows to 0
  const auto half = PowerSplit::from_phi2(0.5);
  const double r_e = std::log2(1.25);
  const double expected = std::exp(-2.0 / 3.0);
  for (auto mode : {McMode::Mixture, McMode::Physical}) {
    CHECK(within(mc_sop(s, half, r_e, config(1'000'000, mode)), expected, 4.0));
  }
}

TEST_CASE("physical mode tracks the regime-conditioned probability") {
  // Eve cancels s1 iff |h_e|^2 >= ln 2 here. With x = 2^r_e - 1 = 1e-3 every
  // cancelling draw is an outage, and below ln 2 the no-SIC SINR crosses x at
  // g0 = x / (phi2 - phi1 x), so the physical probability is exp(-g0).
  auto s = unit_scenario();
  s.h1_sq = std::numbers::ln2;
  const auto half = PowerSplit::from_phi2(0.5);
  const double r_e = std::log2(1.0 + 1e-3);
  const auto est = mc_sop(s, half, r_e, config(1'000'000, McMode::Physical));
  const double x = 1e-3;
  CHECK(within(est, std::exp(-x / (0.5 - 0.5 * x)), 4.0));
}

TEST_CASE("determinism across seeds and worker counts") {
  auto s = unit_scenario();
  s.h1_sq = 0.3;
  const auto split = PowerSplit::from_phi2(0.7);
  for (auto mode : {McMode::Mixture, McMode::Physical}) {
    const auto a = mc_sop(s, split, 0.4, config(200'001, mode, 1));
    const auto b = mc_sop(s, split, 0.4, config(200'001, mode, 3));
    const auto c = mc_sop(s, split, 0.4, config(200'001, mode, 7));
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.p_hat == c.p_hat);
  }
  auto other = config(200'001);
  other.seed = 42;
  CHECK(mc_sop(s, split, 0.4, other).p_hat != mc_sop(s, split, 0.4, config(200'001)).p_hat);
  CHECK(mc_sop(s, split, 0.4, other).seed == 42u);
}

TEST_CASE("Eve CDF estimates") {
  auto s = unit_scenario();
  s.delta_e_sq = 1.7;
  const auto split = PowerSplit::from_phi2(0.3);

  const auto at_zero = mc_eve_cdf(s, split, 0.0, config(50'000));
  CHECK(at_zero.no_sic.p_hat == 0.0);
  CHECK(at_zero.sic.p_hat == 0.0);

  const auto above = mc_eve_cdf(s, split, 0.3 / 0.7, config(50'000));
  CHECK(above.no_sic.p_hat == 1.0);

  const double median = 0.3 * 1.7 * std::numbers::ln2;
  const auto mid = mc_eve_cdf(s, split, median, config(1'000'000, McMode::Mixture, 2));
  CHECK(within(mid.sic, 0.5, 4.0));
  CHECK(within(mid.no_sic, eve_cdf_no_sic(s, split, median), 4.0));
}

TEST_CASE("Kolmogorov-Smirnov distance to the closed-form CDFs") {
  auto s = unit_scenario();
  s.p = 4.0;
  s.delta_e_sq = 0.8;
  const auto split = PowerSplit::from_phi2(0.6);
  const auto ks = eve_cdf_ks_distance(s, split, config(100'000));
  CHECK(ks.samples == 100'000u);
  CHECK(ks.no_sic < 1.63 / std::sqrt(1e5));
  CHECK(ks.sic < 1.63 / std::sqrt(1e5));

  // The same draws sit far from the median of a CDF with delta_e^2 doubled.
  std::uint64_t below = 0;
  const CounterRng rng(McConfig{}.seed);
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    const double he_sq = -s.delta_e_sq * std::log(rng.uniform(2 * i + 1));
    below += eve_snr_sic(s, split, he_sq) <= 0.6 * 1.6 * std::numbers::ln2 ? 1u : 0u;
  }
  CHECK(std::abs(static_cast<double>(below) / 1e5 - 0.5) > 1.63 / std::sqrt(1e5));
}

TEST_CASE("configuration checks") {
  const auto s = unit_scenario();
  const auto half = PowerSplit::from_phi2(0.5);
  CHECK_THROWS_AS(mc_sop(s, half, 1.0, config(9'999)), std::invalid_argument);
  CHECK_THROWS_AS(mc_sop(s, half, -1.0, config(10'000)), std::invalid_argument);
  CHECK_THROWS_AS(mc_eve_cdf(s, half, -1.0, config(10'000)), std::invalid_argument);
  CHECK(to_string(McMode::Mixture) == "mixture");
  CHECK(to_string(McMode::Physical) == "physical");
}
