#pragma once

#include <string>
#include <vector>

#include "acoh/detector.hpp"
#include "acoh/states.hpp"
#include "acoh/types.hpp"

namespace acoh {

enum class Dispersion { SubPoissonian, Poissonian, SuperPoissonian };
std::string_view to_string(Dispersion d);
/// Sign of Q with a dead band of +-tol.
Dispersion classify_q(double q, double tol = 1e-9);

struct StatSummary {
  double mean = 0.0;      ///< n-bar, expected counts per window
  double variance = 0.0;  ///< (Delta n)^2 of the counts
  MaybeValue q;           ///< Mandel Q of the field
  std::optional<Dispersion> dispersion;
};

enum class VarianceForm {
  Exact,        ///< n-bar + s^2 (<a^dagger2 a^2> - <a^dagger a>^2)
  Approximate,  ///< n-bar + (eta gamma0 dt)^2 Q <n>
};

/// s <a^dagger a> with s = transfer_probability(coupling, kernel).
double mean_counts(const FieldState& state, const DetectorCoupling& coupling, Kernel kernel = Kernel::Exact);
double variance_counts(const FieldState& state, const DetectorCoupling& coupling, Kernel kernel = Kernel::Exact,
                       VarianceForm form = VarianceForm::Exact);
/// (<(Delta N)^2> - <N>)/<N>; absent for the vacuum.
MaybeValue mandel_q(const FieldState& state);
StatSummary count_summary(const FieldState& state, const DetectorCoupling& coupling, Kernel kernel = Kernel::Exact);

struct RatioResult {
  MaybeValue r;        ///< 2 P2 P0 / P1^2
  MaybeValue r_prime;  ///< 3 P3 P1 / (2 P2^2)
  std::vector<double> components;  ///< P0..P3 as used (fewer when missing)
  Method method = Method::PRepresentation;
};

/// Ratios from P0..P3. Missing or vanishing denominators give absent values.
RatioResult ratio_R(const std::vector<double>& probs, Method method = Method::PRepresentation);
RatioResult ratio_R(const CountDistribution& dist);

/// Leading-order ratios from the moments: R = m2/m1^2, R' = m1 m3 / m2^2.
RatioResult leading_order_ratios(const FieldState& state);

/// Reference values: coherent 1, thermal 2, Fock 1 - 1/n, squeezed
/// vacuum 2 + coth^2 r; Gaussian states use ratio_R_gaussian.
MaybeValue reference_R(const FieldState& state);

/// Closed leading-order R of a displaced squeezed thermal state.
MaybeValue ratio_R_gaussian(double x0, double r, double phi, double n_th);

/// R from gaussian_p0 and gaussian_p1_p2 at the given coupling.
RatioResult ratio_R_gaussian_overlap(const GaussianPhaseSpace& g, const DetectorCoupling& coupling);

/// 1 + Q/<n>; absent for <n> <= 0.
MaybeValue r_from_q(double q, double mean_n);

/// "sub-Poissonian", "maximally classical", "super-Poissonian",
/// "thermal-like" or "squeezed-like", by nearest reference value.
std::string classify_ratio(double r, double tol = 0.05);

}  // namespace acoh
