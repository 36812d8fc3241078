#pragma once

// Truncated Fock-space machinery for the field mode (a) and the detector
// mode (b). Joint vectors and matrices are indexed field-major:
// index = n_field * detector_dim + n_detector.

#include <Eigen/Dense>
#include <cstddef>
#include <string_view>
#include <vector>

#include "acoh/types.hpp"

namespace acoh {

/// Adaptive truncation: grow the field dimension until the discarded
/// probability is below `tail_bound`, never beyond `max_dim`.
struct TruncationPolicy {
  double tail_bound = 1e-10;
  std::size_t max_dim = 4096;
};

/// Pure field state. tail_mass is the norm discarded by truncation.
struct FockVector {
  Eigen::VectorXcd amplitudes;
  double tail_mass = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes.size()); }
  double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Field density matrix; trace is 1 - tail_mass.
struct FockDensity {
  Eigen::MatrixXcd matrix;
  double tail_mass = 0.0;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

/// Density matrix of field (x) detector.
struct JointState {
  Eigen::MatrixXcd matrix;
  std::size_t field_dim = 0;
  std::size_t detector_dim = 0;
};

/// Photon-number distribution p_0..p_{dim-1} of a field state.
struct NumberDistribution {
  std::vector<double> probs;
  double tail_mass = 0.0;

  std::size_t dim() const noexcept { return probs.size(); }
};

struct LadderOps {
  Eigen::MatrixXd lowering;  ///< a[n-1, n] = sqrt(n)
  Eigen::MatrixXd raising;   ///< transpose of lowering
};

/// Truncated ladder operators; dim >= 2.
LadderOps ladder_ops(std::size_t dim);

/// a^dagger (x) b + a (x) b^dagger on the truncated joint space.
Eigen::MatrixXd beamsplitter_generator(std::size_t field_dim, std::size_t detector_dim);

/// exp(-i kappa (a^dagger b + a b^dagger)) on the truncated joint space,
/// via the eigendecomposition of the real symmetric generator.
Eigen::MatrixXcd beamsplitter_unitary(double kappa, std::size_t field_dim, std::size_t detector_dim);

/// max |U^dagger U - I|.
double unitarity_residual(const Eigen::MatrixXcd& u);
/// max |M - M^dagger|.
double hermiticity_residual(const Eigen::MatrixXcd& m);

/// Amplitudes <m-k, k| U |m, 0> for k = 0..min(m, detector_dim - 1).
/// The generator conserves a^dagger a + b^dagger b, so the evolution of
/// |m, 0> stays in the (m+1)-dimensional sector spanned by |m-k, k>.
Eigen::VectorXcd sector_amplitudes(std::size_t m, double kappa, std::size_t detector_dim);

/// Joint pure state U (psi (x) |0>), evolved sector by sector.
Eigen::VectorXcd evolve_pure(const FockVector& field, double kappa, std::size_t detector_dim);

/// U (rho (x) |0><0|) U^dagger with the dense joint propagator.
/// Cost grows as (field_dim * detector_dim)^3; meant for small spaces.
JointState evolve_joint(const FockDensity& field, double kappa, std::size_t detector_dim);

/// Joint density of a pure joint vector.
JointState joint_from_pure(const Eigen::VectorXcd& psi, std::size_t field_dim, std::size_t detector_dim);

FockDensity field_marginal(const JointState& joint);
FockDensity detector_marginal(const JointState& joint);

/// Detector level probabilities P_0..P_{detector_dim-1} for a field with
/// number distribution `field`, the detector starting in its ground state.
std::vector<double> detector_distribution(const NumberDistribution& field, double kappa,
                                          std::size_t detector_dim);

/// Expectation of an operator word, read left to right, with 'A' = a^dagger
/// and 'a' = a (e.g. "AaAAaa" is a^dagger a a^dagger^2 a^2). Evaluated with
/// padded matrices so the truncation edge never enters.
cplx word_expectation(const FockDensity& rho, std::string_view word);

/// Density matrix of a pure vector.
FockDensity to_density(const FockVector& psi);

/// Diagonal of a density (or |amplitude|^2 of a vector) with its tail.
NumberDistribution number_distribution(const FockDensity& rho);
NumberDistribution number_distribution(const FockVector& psi);

/// Throws DomainError unless rho is Hermitian, has trace 1 - tail_mass and
/// no eigenvalue below -tol.
void check_density(const FockDensity& rho, double tol = 1e-9);

}  // namespace acoh
