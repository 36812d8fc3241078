#pragma once

// Analytic routes to the detector excitation probabilities.

#include <cstddef>
#include <utility>
#include <vector>

#include "acoh/fock.hpp"
#include "acoh/states.hpp"
#include "acoh/types.hpp"

namespace acoh {

/// Probability per quantum that a field excitation is transferred and seen:
/// eta sin^2(kappa) (Exact) or eta gamma0 dt (SmallAngle).
double transfer_probability(const DetectorCoupling& coupling, Kernel kernel = Kernel::Exact);

/// Angle kappa' with sin^2(kappa') = eta sin^2(kappa); kappa itself at eta = 1.
double effective_kappa(const DetectorCoupling& coupling);
/// kappa'^2, the coupling seen by the small-angle routes.
double effective_lambda(const DetectorCoupling& coupling);

/// Expectations entering the order-kappa^6 series, all reduced to normally
/// ordered moments with [a, a^dagger] = 1:
///   (a^dagger a)^2                = m1 + m2
///   (a^dagger a)^3                = m1 + 3 m2 + m3
///   a^dagger a a^dagger2 a^2      = 2 m2 + m3   (either order)
///   a^dagger2 a a^dagger a^2      = m2 + m3
struct PerturbativeTerms {
  double m1 = 0, m2 = 0, m3 = 0;
  double n_sq = 0;     ///< (a^dagger a)^2
  double n_cube = 0;   ///< (a^dagger a)^3
  double n_a2 = 0;     ///< a^dagger a a^dagger2 a^2
  double a2_n = 0;     ///< a^dagger2 a^2 a^dagger a
  double w = 0;        ///< a^dagger2 a a^dagger a^2

  static PerturbativeTerms from_moments(double m1, double m2, double m3);
};

PerturbativeTerms perturbative_terms(const FieldState& state);

enum class SeriesOrder {
  Full,     ///< every term through kappa^6
  Leading,  ///< only the lowest power of kappa in each P_n
};

/// The kappa^6 series for P_n, n = 0..3, exactly as written (no clamping).
double pn_perturbative(const PerturbativeTerms& terms, double kappa, int n, SeriesOrder order = SeriesOrder::Full);
double pn_perturbative(const FieldState& state, const DetectorCoupling& coupling, int n,
                       SeriesOrder order = SeriesOrder::Full);

/// P-representation route. Coherent: Poisson with mean s |alpha|^2;
/// thermal: (s n_th)^n / (1 + s n_th)^{n+1}; s = transfer_probability.
/// Throws UnsupportedError for states without a closed-form P function.
double pn_exact(const FieldState& state, const DetectorCoupling& coupling, int n, Kernel kernel = Kernel::Exact);

/// lambda^n/n! <e^{-lambda N/2} a^dagger^n a^n e^{-lambda N/2}> with
/// lambda = effective_lambda. Closed form for coherent states, number
/// distribution otherwise.
double pn_bch(const FieldState& state, const DetectorCoupling& coupling, int n, const TruncationPolicy& policy = {});

/// <exp(-lambda N)> of a Gaussian state from the two-Gaussian Wigner overlap
/// with a thermal reference of occupation 1/(e^lambda - 1).
double gaussian_p0(const GaussianPhaseSpace& g, const DetectorCoupling& coupling);
double gaussian_p0(const GaussianPhaseSpace& g, double lambda);

/// P1 = -lambda dP0/dlambda, P2 = lambda^2/2 (d^2/dlambda^2 + d/dlambda) P0,
/// from analytic derivatives of the closed form.
std::pair<double, double> gaussian_p1_p2(const GaussianPhaseSpace& g, const DetectorCoupling& coupling);
std::pair<double, double> gaussian_p1_p2(const GaussianPhaseSpace& g, double lambda);

/// General P_n on the Gaussian route from the Taylor series of the
/// generating function.
double pn_gaussian(const GaussianPhaseSpace& g, double lambda, int n);

struct RouteOptions {
  Kernel kernel = Kernel::Exact;
  SeriesOrder order = SeriesOrder::Full;
  TruncationPolicy truncation{};
  double validity_threshold = 0.1;  ///< warn when kappa^2 <n> exceeds it
};

/// P_0..P_nmax on one route. Validates the method against the state class
/// (UnsupportedError) and the coupling (DomainError). Perturbative results
/// stop at n = 3.
CountDistribution probabilities(const FieldState& state, const DetectorCoupling& coupling, std::size_t n_max,
                                Method method, const RouteOptions& options = {});

}  // namespace acoh
