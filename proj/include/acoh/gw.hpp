#pragma once

// Resonant-bar and chirp calculators, SI units throughout.

#include <string>
#include <vector>

#include "acoh/units.hpp"

namespace acoh::gw {

using namespace acoh::units;

/// CODATA 2018 values; solar mass from the IAU nominal GM and CODATA G.
struct PhysicalConstants {
  static constexpr GravConstant G{6.67430e-11};
  static constexpr Velocity c{299792458.0};
  static constexpr Action hbar{1.054571817e-34};
  static constexpr Mass solar_mass{1.98847e30};
};

struct BarDetector {
  Mass mass;
  Length length;
  Rate omega;  ///< angular frequency [rad/s]
};

/// Reference bar for order-of-magnitude checks: 1.4e3 kg, 1.5 m, 1.6 kHz.
BarDetector reference_bar();
/// The reference bar's mass and length tuned to angular frequency omega.
BarDetector reference_bar_at(Rate omega);

/// Throws DomainError unless every field is finite and positive.
void validate(const BarDetector& bar);

/// 8 G M L^2 omega^4 / (pi^4 c^5).
Rate weber_gamma0(const BarDetector& bar);
/// sqrt(8 G M L^2 omega^5 / (pi^3 c^5)).
Rate bar_coupling(const BarDetector& bar);
/// g^2 / (pi omega), from a density of states 1/(2 pi^2 omega).
Rate gamma0_from_coupling(Rate g, Rate omega);

struct ChirpScenario {
  Mass chirp_mass;
  Rate frequency;  ///< nu [Hz]

  Rate omega() const;
  /// 48/5 [G M_c / (2 c^3)]^{5/3}.
  ChirpK k() const;
};

void validate(const ChirpScenario& s);

/// 2 sqrt(2/k) omega^{-11/6}.
Time dt_max(const ChirpScenario& s);
/// Detector bandwidth 2 Delta omega = 8 / dt_max.
Rate bandwidth(const ChirpScenario& s);

/// (gamma0 dt)^2 Q <n>.
double acoherence_signal(Rate gamma0, Time dt, double q, double mean_n);

/// <n> hbar omega^4 / c^2.
EnergyFlux flux_from_occupation(double mean_n, Rate omega);

/// Default occupation of a LIGO-band mode; also the default Q.
inline constexpr double kDefaultOccupation = 1e36;

struct ScenarioRow {
  std::string name;
  double chirp_mass_kg = 0.0;
  double frequency_hz = 0.0;
  double dt_max_s = 0.0;
  double bandwidth_rad_s = 0.0;
  double gamma0_per_s = 0.0;
  double kappa = 0.0;
  double signal = 0.0;
  double flux_w_m2 = 0.0;
};

struct ScenarioInputs {
  std::string name;
  ChirpScenario chirp;
  Mass bar_mass = kilograms(1.4e3);
  Length bar_length = meters(1.5);
  double mean_n = kDefaultOccupation;
  double q = kDefaultOccupation;
};

/// One table row, with the bar tuned to the chirp frequency.
ScenarioRow evaluate(const ScenarioInputs& in);

/// Named presets: "GW150914" (30 M_sol, 200 Hz) and "GW170817"
/// (1.19 M_sol, 200 Hz and 1 kHz).
std::vector<ScenarioInputs> preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace acoh::gw
