#include "acoh/gw.hpp"

#include <cmath>
#include <numbers>

#include "acoh/error.hpp"

namespace acoh::gw {

namespace {

using C = PhysicalConstants;
constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) throw DomainError(std::string(what) + " must be finite and positive");
}

}  // namespace

BarDetector reference_bar() { return reference_bar_at(hertz(2.0 * pi * 1.6e3)); }

BarDetector reference_bar_at(Rate omega) { return {kilograms(1.4e3), meters(1.5), omega}; }

void validate(const BarDetector& bar) {
  require_positive(bar.mass.value, "bar mass");
  require_positive(bar.length.value, "bar length");
  require_positive(bar.omega.value, "bar angular frequency");
}

Rate weber_gamma0(const BarDetector& bar) {
  validate(bar);
  const auto w2 = bar.omega * bar.omega;
  return 8.0 * C::G * bar.mass * bar.length * bar.length * w2 * w2 /
         (pi * pi * pi * pi * pow<5, 1>(C::c));
}

Rate bar_coupling(const BarDetector& bar) {
  validate(bar);
  const auto w2 = bar.omega * bar.omega;
  return sqrt(8.0 * C::G * bar.mass * bar.length * bar.length * w2 * w2 * bar.omega / (pi * pi * pi * pow<5, 1>(C::c)));
}

Rate gamma0_from_coupling(Rate g, Rate omega) {
  require_positive(g.value, "coupling g");
  require_positive(omega.value, "angular frequency");
  return g * g / (pi * omega);
}

Rate ChirpScenario::omega() const { return 2.0 * pi * frequency; }

ChirpK ChirpScenario::k() const {
  return 48.0 / 5.0 * pow<5, 3>(C::G * chirp_mass / (2.0 * pow<3, 1>(C::c)));
}

void validate(const ChirpScenario& s) {
  require_positive(s.chirp_mass.value, "chirp mass");
  require_positive(s.frequency.value, "frequency");
}

Time dt_max(const ChirpScenario& s) {
  validate(s);
  return 2.0 * sqrt(2.0 / s.k()) * pow<-11, 6>(s.omega());
}

Rate bandwidth(const ChirpScenario& s) { return 8.0 / dt_max(s); }

double acoherence_signal(Rate gamma0, Time dt, double q, double mean_n) {
  if (!std::isfinite(gamma0.value) || !std::isfinite(dt.value) || !std::isfinite(q) || !std::isfinite(mean_n)) {
    throw DomainError("acoherence signal inputs must be finite");
  }
  const double x = (gamma0 * dt).value;
  return x * x * q * mean_n;
}

EnergyFlux flux_from_occupation(double mean_n, Rate omega) {
  if (!std::isfinite(mean_n) || mean_n < 0.0) throw DomainError("occupation must be finite and non-negative");
  require_positive(omega.value, "angular frequency");
  const auto w2 = omega * omega;
  return mean_n * C::hbar * w2 * w2 / (C::c * C::c);
}

ScenarioRow evaluate(const ScenarioInputs& in) {
  validate(in.chirp);
  const BarDetector bar{in.bar_mass, in.bar_length, in.chirp.omega()};
  ScenarioRow row;
  row.name = in.name;
  row.chirp_mass_kg = in.chirp.chirp_mass.value;
  row.frequency_hz = in.chirp.frequency.value;
  const Time dt = dt_max(in.chirp);
  const Rate g0 = weber_gamma0(bar);
  row.dt_max_s = dt.value;
  row.bandwidth_rad_s = bandwidth(in.chirp).value;
  row.gamma0_per_s = g0.value;
  row.kappa = std::sqrt((g0 * dt).value);
  row.signal = acoherence_signal(g0, dt, in.q, in.mean_n);
  row.flux_w_m2 = flux_from_occupation(in.mean_n, in.chirp.omega()).value;
  return row;
}

std::vector<ScenarioInputs> preset(const std::string& name) {
  const auto make = [](std::string n, double msun, double hz) {
    ScenarioInputs s;
    s.name = std::move(n);
    s.chirp = {C::solar_mass * msun, hertz(hz)};
    return s;
  };
  if (name == "GW150914") return {make("GW150914", 30.0, 200.0)};
  if (name == "GW170817") return {make("GW170817", 1.19, 200.0), make("GW170817", 1.19, 1000.0)};
  throw DomainError("unknown preset '" + name + "' (known: GW150914, GW170817)");
}

std::vector<std::string> preset_names() { return {"GW150914", "GW170817"}; }

}  // namespace acoh::gw
