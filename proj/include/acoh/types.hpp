#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acoh {

using cplx = std::complex<double>;

/// A scalar that may be undefined (division by zero, vacuum input, ...).
/// When absent, `reason` says why.
struct MaybeValue {
  std::optional<double> value;
  std::string reason;

  static MaybeValue of(double v) { return {v, {}}; }
  static MaybeValue absent(std::string why) { return {std::nullopt, std::move(why)}; }

  bool defined() const noexcept { return value.has_value(); }
  double operator*() const { return value.value(); }
};

/// Coupling of one field mode to a resonant detector over one window.
/// The effective rotation angle is kappa = sqrt(gamma0 * dt).
struct DetectorCoupling {
  double gamma0 = 0.0;  ///< spontaneous-emission rate [1/s]
  double dt = 0.0;      ///< window duration [s]
  double eta = 1.0;     ///< detection efficiency, 0..1

  /// Validated constructor from rate and duration.
  static DetectorCoupling from_rate(double gamma0, double dt, double eta = 1.0);
  /// Validated constructor from the dimensionless angle; stores gamma0 = kappa^2, dt = 1 s.
  static DetectorCoupling from_kappa(double kappa, double eta = 1.0);

  double lambda() const noexcept { return gamma0 * dt; }
  double kappa() const noexcept { return std::sqrt(lambda()); }
};

/// Throws DomainError unless gamma0 >= 0, dt >= 0, 0 <= eta <= 1, all finite.
void validate(const DetectorCoupling& coupling);

/// Which function of the coupling multiplies the field intensity.
enum class Kernel {
  Exact,       ///< eta * sin^2(kappa)
  SmallAngle,  ///< eta * gamma0 * dt
};

enum class Method {
  Perturbative,
  PRepresentation,
  GaussianOverlap,
  Oracle,
  Bch,
};

/// CLI spelling: perturbative, exact, gaussian, oracle, bch.
std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Detector excitation probabilities P_0..P_nmax from one route.
struct CountDistribution {
  std::vector<double> probs;
  Method method = Method::PRepresentation;
  /// Probability not listed in `probs` (levels above nmax plus Fock
  /// truncation). Absent for routes that are not normalized.
  std::optional<double> tail_mass;
  /// Part of the tail lost to the field-space truncation (oracle only).
  double truncation_mass = 0.0;
  std::size_t field_dim = 0;
  std::size_t detector_dim = 0;
  std::vector<std::string> warnings;

  std::size_t n_max() const noexcept { return probs.empty() ? 0 : probs.size() - 1; }
  double sum() const noexcept;
};

}  // namespace acoh
