#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "acoh/fock.hpp"
#include "acoh/types.hpp"

namespace acoh {

struct Coherent {
  cplx alpha;
};
struct Fock {
  std::size_t n = 0;
};
struct Thermal {
  double n_th = 0.0;
};
struct SqueezedVacuum {
  double r = 0.0;
};
/// D(x0/sqrt2) S(r e^{i phi}) rho_th(n_th) S^dagger D^dagger, with
/// S(z) = exp((z* a^2 - z a^dagger^2)/2). phi is measured from the
/// displacement direction (the x axis).
struct Gaussian {
  double x0 = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double n_th = 0.0;
};
struct Custom {
  FockVector vector;
};

using StateSpec = std::variant<Coherent, Fock, Thermal, SqueezedVacuum, Gaussian, Custom>;

/// A validated field state. Construct through make_state.
class FieldState {
 public:
  const StateSpec& spec() const noexcept { return spec_; }
  std::string kind() const;
  /// Short human-readable form, e.g. "thermal(n_th=0.5)".
  std::string describe() const;

  template <class T>
  bool is() const noexcept { return std::holds_alternative<T>(spec_); }
  template <class T>
  const T& as() const { return std::get<T>(spec_); }

  /// True for coherent, thermal, squeezed-vacuum and Gaussian states.
  bool is_gaussian() const noexcept;
  /// <a^dagger a>.
  double mean_number() const;

 private:
  explicit FieldState(StateSpec s) : spec_(std::move(s)) {}
  friend FieldState make_state(StateSpec spec);
  StateSpec spec_;
};

/// Validates parameters and returns the canonical state. Throws DomainError
/// for negative occupations or squeezing, non-finite values and empty or
/// zero custom vectors. Custom vectors are normalized. Gaussian parameters
/// that describe a simpler class are folded into it (thermal, coherent).
FieldState make_state(StateSpec spec);

/// Quadrature mean and covariance, x = (a + a^dagger)/sqrt2, vacuum V = I/2.
struct GaussianPhaseSpace {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = 0.5 * Eigen::Matrix2d::Identity();

  /// Throws DomainError unless cov is symmetric, positive definite and
  /// det cov >= 1/4 - tol.
  void check(double tol = 1e-12) const;
};

/// Covariance of a Gaussian{x0, r, phi, n_th}.
GaussianPhaseSpace gaussian_phase_space(double x0, double r, double phi, double n_th);

/// Throws UnsupportedError for Fock and Custom states. A complex coherent
/// amplitude is rotated onto the x axis.
GaussianPhaseSpace to_gaussian(const FieldState& state);

/// Closed-form P function, when there is one.
struct PDelta {
  cplx alpha;
};
struct PGaussian {
  double n_th = 0.0;
};
struct PUnavailable {};
using PFunctionDescriptor = std::variant<PDelta, PGaussian, PUnavailable>;

PFunctionDescriptor p_function(const FieldState& state);
bool has_p_function(const FieldState& state);

/// Photon-number distribution with adaptive truncation. Starts at
/// ceil(<n> + 8 sqrt(<n> + 1) + 12) levels and doubles until the tail is
/// below policy.tail_bound. Throws TruncationError past policy.max_dim.
NumberDistribution number_distribution(const FieldState& state, const TruncationPolicy& policy = {});

/// Number distribution truncated at exactly `dim` levels (tail recorded).
NumberDistribution number_distribution(const FieldState& state, std::size_t dim);

/// Pure-state amplitudes at `dim` levels. Throws UnsupportedError for mixed
/// states (thermal, Gaussian with n_th > 0).
FockVector to_fock_vector(const FieldState& state, std::size_t dim);

/// Density matrix at `dim` levels, for every state class.
FockDensity to_fock_density(const FieldState& state, std::size_t dim);

/// Smallest dimension the adaptive policy accepts for this state.
std::size_t adequate_dim(const FieldState& state, const TruncationPolicy& policy = {});

/// <a^dagger^j a^j> in closed form for j >= 1. Gaussian states use the
/// generating function <(1-u)^N>; Custom states sum their distribution.
double analytic_moment(const FieldState& state, int j);

/// <(1 - u)^N> for a Gaussian state, 0 <= u <= 1.
double gaussian_generating_function(const GaussianPhaseSpace& g, double u);

/// Taylor coefficients of u -> <(1 - u)^N> about u0, through `order`.
std::vector<double> gaussian_generating_series(const GaussianPhaseSpace& g, double u0, std::size_t order);

}  // namespace acoh
