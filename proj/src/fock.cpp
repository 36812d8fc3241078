#include "acoh/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "acoh/error.hpp"

namespace acoh {

namespace {

void require_kappa(double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  if (kappa < 0.0) throw DomainError("kappa must be non-negative");
}

void require_dims(std::size_t field_dim, std::size_t detector_dim) {
  if (field_dim < 1 || detector_dim < 1) throw DomainError("Fock dimensions must be positive");
}

// exp(-i kappa H) for real symmetric H.
Eigen::MatrixXcd unitary_from_generator(const Eigen::MatrixXd& h, double kappa) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    phases[j] = std::polar(1.0, -kappa * eig.eigenvalues()[j]);
  }
  Eigen::MatrixXcd vc = v.cast<cplx>();
  return vc * phases.asDiagonal() * vc.transpose();
}

}  // namespace

LadderOps ladder_ops(std::size_t dim) {
  if (dim < 2) throw DomainError("ladder_ops needs dim >= 2");
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {a, a.transpose()};
}

Eigen::MatrixXd beamsplitter_generator(std::size_t field_dim, std::size_t detector_dim) {
  require_dims(field_dim, detector_dim);
  const auto df = static_cast<Eigen::Index>(field_dim);
  const auto dd = static_cast<Eigen::Index>(detector_dim);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(df * dd, df * dd);
  // a b^dagger |nf, nd> = sqrt(nf) sqrt(nd + 1) |nf - 1, nd + 1>, plus its transpose.
  for (Eigen::Index nf = 1; nf < df; ++nf) {
    for (Eigen::Index nd = 0; nd + 1 < dd; ++nd) {
      const double w = std::sqrt(static_cast<double>(nf) * static_cast<double>(nd + 1));
      const Eigen::Index from = nf * dd + nd;
      const Eigen::Index to = (nf - 1) * dd + nd + 1;
      g(to, from) = w;
      g(from, to) = w;
    }
  }
  return g;
}

Eigen::MatrixXcd beamsplitter_unitary(double kappa, std::size_t field_dim, std::size_t detector_dim) {
  require_kappa(kappa);
  return unitary_from_generator(beamsplitter_generator(field_dim, detector_dim), kappa);
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd r = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return r.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd sector_amplitudes(std::size_t m, double kappa, std::size_t detector_dim) {
  require_kappa(kappa);
  if (detector_dim < 1) throw DomainError("detector_dim must be positive");
  const std::size_t k_count = std::min(m + 1, detector_dim);
  const auto K = static_cast<Eigen::Index>(k_count);
  if (K == 1) {
    Eigen::VectorXcd c(1);
    c[0] = 1.0;
    return c;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(K);
  Eigen::VectorXd sub(K - 1);
  for (Eigen::Index k = 0; k + 1 < K; ++k) {
    sub[k] = std::sqrt(static_cast<double>(m - static_cast<std::size_t>(k)) * static_cast<double>(k + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::VectorXcd weights(K);
  for (Eigen::Index j = 0; j < K; ++j) {
    weights[j] = v(0, j) * std::polar(1.0, -kappa * eig.eigenvalues()[j]);
  }
  return v.cast<cplx>() * weights;
}

Eigen::VectorXcd evolve_pure(const FockVector& field, double kappa, std::size_t detector_dim) {
  require_kappa(kappa);
  const std::size_t df = field.dim();
  require_dims(df, detector_dim);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(df * detector_dim));
  for (std::size_t m = 0; m < df; ++m) {
    const cplx psi_m = field.amplitudes[static_cast<Eigen::Index>(m)];
    if (psi_m == cplx{}) continue;
    const Eigen::VectorXcd c = sector_amplitudes(m, kappa, detector_dim);
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      out[static_cast<Eigen::Index>((m - static_cast<std::size_t>(k)) * detector_dim) + k] += psi_m * c[k];
    }
  }
  return out;
}

JointState evolve_joint(const FockDensity& field, double kappa, std::size_t detector_dim) {
  const std::size_t df = field.dim();
  const Eigen::MatrixXcd u = beamsplitter_unitary(kappa, df, detector_dim);
  const auto dd = static_cast<Eigen::Index>(detector_dim);
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(u.rows(), u.cols());
  for (Eigen::Index i = 0; i < field.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < field.matrix.cols(); ++j) rho0(i * dd, j * dd) = field.matrix(i, j);
  }
  return {u * rho0 * u.adjoint(), df, detector_dim};
}

JointState joint_from_pure(const Eigen::VectorXcd& psi, std::size_t field_dim, std::size_t detector_dim) {
  if (static_cast<std::size_t>(psi.size()) != field_dim * detector_dim) {
    throw DomainError("joint vector size does not match field_dim * detector_dim");
  }
  return {psi * psi.adjoint(), field_dim, detector_dim};
}

FockDensity field_marginal(const JointState& joint) {
  const auto df = static_cast<Eigen::Index>(joint.field_dim);
  const auto dd = static_cast<Eigen::Index>(joint.detector_dim);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(df, df);
  for (Eigen::Index i = 0; i < df; ++i) {
    for (Eigen::Index j = 0; j < df; ++j) {
      cplx s{};
      for (Eigen::Index k = 0; k < dd; ++k) s += joint.matrix(i * dd + k, j * dd + k);
      rho(i, j) = s;
    }
  }
  return {rho, std::max(0.0, 1.0 - rho.trace().real())};
}

FockDensity detector_marginal(const JointState& joint) {
  const auto df = static_cast<Eigen::Index>(joint.field_dim);
  const auto dd = static_cast<Eigen::Index>(joint.detector_dim);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dd, dd);
  for (Eigen::Index i = 0; i < dd; ++i) {
    for (Eigen::Index j = 0; j < dd; ++j) {
      cplx s{};
      for (Eigen::Index f = 0; f < df; ++f) s += joint.matrix(f * dd + i, f * dd + j);
      rho(i, j) = s;
    }
  }
  return {rho, std::max(0.0, 1.0 - rho.trace().real())};
}

std::vector<double> detector_distribution(const NumberDistribution& field, double kappa,
                                          std::size_t detector_dim) {
  require_kappa(kappa);
  if (detector_dim < 1) throw DomainError("detector_dim must be positive");
  std::vector<double> out(detector_dim, 0.0);
  for (std::size_t m = 0; m < field.dim(); ++m) {
    const double pm = field.probs[m];
    if (pm == 0.0) continue;
    const Eigen::VectorXcd c = sector_amplitudes(m, kappa, detector_dim);
    for (Eigen::Index k = 0; k < c.size(); ++k) out[static_cast<std::size_t>(k)] += pm * std::norm(c[k]);
  }
  return out;
}

cplx word_expectation(const FockDensity& rho, std::string_view word) {
  for (char ch : word) {
    if (ch != 'a' && ch != 'A') throw DomainError("operator word may only contain 'a' and 'A'");
  }
  // Padding by the word length keeps every intermediate ket inside the space.
  const std::size_t dim = rho.dim() + word.size() + 1;
  const LadderOps ops = ladder_ops(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  const auto r = static_cast<Eigen::Index>(rho.dim());
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  x.topLeftCorner(r, r) = rho.matrix;
  // tr(rho W) with W applied right to left onto rho's columns: tr(W rho).
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    x = ((*it == 'a') ? ops.lowering : ops.raising).cast<cplx>() * x;
  }
  return x.trace();
}

FockDensity to_density(const FockVector& psi) {
  return {psi.amplitudes * psi.amplitudes.adjoint(), psi.tail_mass};
}

NumberDistribution number_distribution(const FockDensity& rho) {
  NumberDistribution nd;
  nd.probs.resize(rho.dim());
  for (std::size_t n = 0; n < rho.dim(); ++n) {
    nd.probs[n] = std::max(0.0, rho.matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)).real());
  }
  nd.tail_mass = rho.tail_mass;
  return nd;
}

NumberDistribution number_distribution(const FockVector& psi) {
  NumberDistribution nd;
  nd.probs.resize(psi.dim());
  for (std::size_t n = 0; n < psi.dim(); ++n) nd.probs[n] = std::norm(psi.amplitudes[static_cast<Eigen::Index>(n)]);
  nd.tail_mass = psi.tail_mass;
  return nd;
}

void check_density(const FockDensity& rho, double tol) {
  if (rho.dim() < 1) throw DomainError("density matrix is empty");
  if (rho.matrix.rows() != rho.matrix.cols()) throw DomainError("density matrix is not square");
  if (hermiticity_residual(rho.matrix) > tol) throw DomainError("density matrix is not Hermitian");
  const cplx tr = rho.matrix.trace();
  if (std::abs(tr.real() + rho.tail_mass - 1.0) > tol || std::abs(tr.imag()) > tol) {
    throw DomainError("density trace plus tail mass differs from one");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.matrix, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -tol) throw DomainError("density matrix has a negative eigenvalue");
}

}  // namespace acoh
