#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <type_traits>

#include "acoh/error.hpp"
#include "acoh/gw.hpp"

using namespace acoh::gw;

static_assert(std::is_same_v<decltype(Mass{} * Length{}), Quantity<6, 6, 0>>);
static_assert(std::is_same_v<decltype(Length{} / Time{}), Velocity>);
static_assert(std::is_same_v<decltype(pow<5, 3>(Time{})), ChirpK>);
static_assert(std::is_same_v<decltype(pow<-11, 6>(Rate{})), Quantity<0, 0, 11>>);
static_assert(std::is_same_v<decltype(sqrt(Rate{} * Rate{})), Rate>);
static_assert(std::is_same_v<decltype(PhysicalConstants::G * Mass{} / (Velocity{} * Velocity{} * Velocity{})), Time>);
static_assert(std::is_same_v<decltype(weber_gamma0(BarDetector{})), Rate>);
static_assert(std::is_same_v<decltype(dt_max(ChirpScenario{})), Time>);

TEST(Gw, DtMaxMatchesHandEvaluation) {
  const double G = 6.67430e-11, c = 299792458.0, msun = 1.98847e30;
  for (const auto& [m, nu] : {std::pair{30.0, 200.0}, std::pair{1.19, 1000.0}}) {
    const double k = 48.0 / 5.0 * std::pow(G * m * msun / (2 * c * c * c), 5.0 / 3.0);
    const double w = 2 * std::numbers::pi * nu;
    const double expect = 2.0 * std::sqrt(2.0 / k) * std::pow(w, -11.0 / 6.0);
    const ChirpScenario s{PhysicalConstants::solar_mass * m, hertz(nu)};
    EXPECT_NEAR(dt_max(s).value / expect, 1.0, 1e-13);
    EXPECT_NEAR(bandwidth(s).value * dt_max(s).value, 8.0, 1e-12);
  }
}

TEST(Gw, CouplingRoutesAgree) {
  const BarDetector bar = reference_bar();
  const Rate g = bar_coupling(bar);
  EXPECT_NEAR(gamma0_from_coupling(g, bar.omega).value / weber_gamma0(bar).value, 1.0, 1e-13);
  EXPECT_GT(weber_gamma0(bar).value, 1e-35);
  EXPECT_LT(weber_gamma0(bar).value, 1e-31);
}

TEST(Gw, WeberRateScaling) {
  BarDetector a = reference_bar();
  BarDetector b = a;
  b.omega = b.omega * 2.0;
  EXPECT_NEAR(weber_gamma0(b).value / weber_gamma0(a).value, 16.0, 1e-12);
  b = a;
  b.length = b.length * 3.0;
  EXPECT_NEAR(weber_gamma0(b).value / weber_gamma0(a).value, 9.0, 1e-12);
}

TEST(Gw, SignalAndFlux) {
  EXPECT_NEAR(acoherence_signal(per_second(2.0), seconds(0.5), 3.0, 4.0), 12.0, 1e-15);
  const double w = 1000.0;
  EXPECT_NEAR(flux_from_occupation(1e36, per_second(w)).value,
              1e36 * 1.054571817e-34 * std::pow(w, 4) / std::pow(299792458.0, 2), 1e-3);
}

TEST(Gw, PresetsAndValidation) {
  EXPECT_EQ(preset("GW150914").size(), 1u);
  EXPECT_EQ(preset("GW170817").size(), 2u);
  EXPECT_THROW(preset("GW0"), acoh::DomainError);
  ScenarioInputs in = preset("GW150914").front();
  const ScenarioRow row = evaluate(in);
  EXPECT_NEAR(row.kappa * row.kappa, row.gamma0_per_s * row.dt_max_s, 1e-40);
  in.chirp.frequency = hertz(-1.0);
  EXPECT_THROW(evaluate(in), acoh::DomainError);
}
