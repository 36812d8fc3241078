#include "acoh/states.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "acoh/error.hpp"
#include "series.hpp"

namespace acoh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_nonneg(double v, const char* what) {
  require_finite(v, what);
  if (v < 0.0) throw DomainError(std::string(what) + " must be non-negative");
}

// Tail of a distribution whose terms beyond `start` are produced by next().
// Summation runs until the terms stop mattering.
template <class Next>
double forward_tail(double first, Next next) {
  double tail = 0.0;
  double term = first;
  for (std::size_t i = 0; i < 1000000; ++i) {
    tail += term;
    const double nt = next();
    if (nt <= tail * 1e-18 || nt == 0.0) {
      if (i > 4) break;
    }
    term = nt;
  }
  return tail;
}

std::vector<double> poisson_pmf(double mu, std::size_t dim) {
  std::vector<double> p(dim, 0.0);
  if (mu == 0.0) {
    if (dim > 0) p[0] = 1.0;
    return p;
  }
  const double lmu = std::log(mu);
  for (std::size_t m = 0; m < dim; ++m) {
    const double dm = static_cast<double>(m);
    p[m] = std::exp(dm * lmu - mu - std::lgamma(dm + 1.0));
  }
  return p;
}

double poisson_tail(double mu, std::size_t dim, double head_sum) {
  if (mu == 0.0) return 0.0;
  if (static_cast<double>(dim) < mu + 1.0) return std::max(0.0, 1.0 - head_sum);
  const double lmu = std::log(mu);
  double m = static_cast<double>(dim);
  const double first = std::exp(m * lmu - mu - std::lgamma(m + 1.0));
  double term = first;
  return forward_tail(first, [&] {
    m += 1.0;
    term *= mu / m;
    return term;
  });
}

std::vector<double> thermal_pmf(double n, std::size_t dim) {
  std::vector<double> p(dim, 0.0);
  const double q = n / (1.0 + n);
  double v = 1.0 / (1.0 + n);
  for (std::size_t m = 0; m < dim; ++m) {
    p[m] = v;
    v *= q;
  }
  return p;
}

// Squeezed-vacuum amplitudes c_{2m} = (-tanh r)^m sqrt((2m)!)/(2^m m!) / sqrt(cosh r).
Eigen::VectorXcd squeezed_amplitudes(double r, std::size_t dim) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  if (dim == 0) return c;
  const double t = -std::tanh(r);
  double v = 1.0 / std::sqrt(std::cosh(r));
  for (std::size_t m = 0; 2 * m < dim; ++m) {
    c[static_cast<Eigen::Index>(2 * m)] = v;
    const double dm = static_cast<double>(m);
    v *= t * std::sqrt((2.0 * dm + 1.0) * (2.0 * dm + 2.0)) / (2.0 * (dm + 1.0));
  }
  return c;
}

double squeezed_tail(double r, std::size_t dim) {
  const double t2 = std::tanh(r) * std::tanh(r);
  if (t2 == 0.0) return 0.0;
  // p_{2m} = t2^m (2m)!/(4^m m!^2) / cosh r, ratio t2 (2m+1)/(2m+2).
  std::size_t m = (dim + 1) / 2;
  const double dm0 = static_cast<double>(m);
  const double lp = dm0 * std::log(t2) + std::lgamma(2.0 * dm0 + 1.0) - 2.0 * std::lgamma(dm0 + 1.0) -
                    dm0 * std::log(4.0) - std::log(std::cosh(r));
  double term = std::exp(lp);
  return forward_tail(term, [&] {
    const double dm = static_cast<double>(m);
    term *= t2 * (2.0 * dm + 1.0) / (2.0 * dm + 2.0);
    ++m;
    return term;
  });
}

Eigen::VectorXcd coherent_amplitudes(cplx alpha, std::size_t dim) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(dim));
  const double a2 = std::norm(alpha);
  if (dim == 0) return c;
  if (alpha == cplx{}) {
    c.setZero();
    c[0] = 1.0;
    return c;
  }
  const double labs = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);
  for (std::size_t m = 0; m < dim; ++m) {
    const double dm = static_cast<double>(m);
    const double mag = std::exp(-0.5 * a2 + dm * labs - 0.5 * std::lgamma(dm + 1.0));
    c[static_cast<Eigen::Index>(m)] = std::polar(mag, dm * phase);
  }
  return c;
}

// Fock-space realization of a Gaussian{x0, r, phi, n_th}: T = D(alpha) R(phi/2) S(r)
// acts on the thermal diagonal. The working dimension is padded well above
// `dim`; the rows between `dim` and the padding give the discarded mass.
struct GaussianFock {
  Eigen::MatrixXcd t;         // dim x K
  std::vector<double> p_th;   // K thermal weights
  double tail = 0.0;
};

GaussianFock gaussian_fock(const Gaussian& g, std::size_t dim) {
  std::size_t k_needed = 1;
  if (g.n_th > 0.0) {
    const double q = g.n_th / (1.0 + g.n_th);
    k_needed = static_cast<std::size_t>(std::ceil(std::log(1e-18) / std::log(q))) + 1;
  }
  const double nbar = 0.5 * g.x0 * g.x0 + (g.n_th + 0.5) * std::cosh(2.0 * g.r) - 0.5;
  const auto spread = static_cast<std::size_t>(std::ceil(nbar + 10.0 * std::sqrt(nbar + 1.0)));
  const std::size_t w = std::max(dim, 2 * (k_needed + spread)) + 40;
  const auto W = static_cast<Eigen::Index>(w);
  const LadderOps ops = ladder_ops(w);

  const double alpha = g.x0 / std::sqrt(2.0);
  Eigen::MatrixXd disp_gen = alpha * (ops.raising - ops.lowering);
  Eigen::MatrixXd sq_gen = 0.5 * g.r * (ops.lowering * ops.lowering - ops.raising * ops.raising);
  const Eigen::MatrixXd d = disp_gen.exp();
  const Eigen::MatrixXd s = sq_gen.exp();

  Eigen::VectorXcd rot(W);
  for (Eigen::Index m = 0; m < W; ++m) rot[m] = std::polar(1.0, 0.5 * g.phi * static_cast<double>(m));

  const auto K = static_cast<Eigen::Index>(std::min(k_needed, w));
  const auto D = static_cast<Eigen::Index>(dim);
  const Eigen::MatrixXcd full = d.cast<cplx>() * (rot.asDiagonal() * s.leftCols(K).cast<cplx>());
  GaussianFock out;
  out.t = full.topRows(D);
  out.p_th = thermal_pmf(g.n_th, static_cast<std::size_t>(K));
  for (Eigen::Index k = 0; k < K; ++k) {
    out.tail += out.p_th[static_cast<std::size_t>(k)] * full.col(k).tail(W - D).squaredNorm();
  }
  out.tail += std::pow(g.n_th / (1.0 + g.n_th), static_cast<double>(K));
  return out;
}

}  // namespace

std::string FieldState::kind() const {
  return std::visit(overloaded{
                        [](const Coherent&) { return std::string("coherent"); },
                        [](const Fock&) { return std::string("fock"); },
                        [](const Thermal&) { return std::string("thermal"); },
                        [](const SqueezedVacuum&) { return std::string("squeezed"); },
                        [](const Gaussian&) { return std::string("gaussian"); },
                        [](const Custom&) { return std::string("custom"); },
                    },
                    spec_);
}

std::string FieldState::describe() const {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const Coherent& s) { os << "coherent(alpha=" << s.alpha.real() << (s.alpha.imag() < 0 ? "" : "+") << s.alpha.imag() << "i)"; },
                 [&](const Fock& s) { os << "fock(n=" << s.n << ")"; },
                 [&](const Thermal& s) { os << "thermal(n_th=" << s.n_th << ")"; },
                 [&](const SqueezedVacuum& s) { os << "squeezed(r=" << s.r << ")"; },
                 [&](const Gaussian& s) {
                   os << "gaussian(x0=" << s.x0 << ", r=" << s.r << ", phi=" << s.phi << ", n_th=" << s.n_th << ")";
                 },
                 [&](const Custom& s) { os << "custom(dim=" << s.vector.dim() << ")"; },
             },
             spec_);
  return os.str();
}

bool FieldState::is_gaussian() const noexcept { return !is<Fock>() && !is<Custom>(); }

double FieldState::mean_number() const {
  return std::visit(overloaded{
                        [](const Coherent& s) { return std::norm(s.alpha); },
                        [](const Fock& s) { return static_cast<double>(s.n); },
                        [](const Thermal& s) { return s.n_th; },
                        [](const SqueezedVacuum& s) { return std::sinh(s.r) * std::sinh(s.r); },
                        [](const Gaussian& s) {
                          return 0.5 * s.x0 * s.x0 + (s.n_th + 0.5) * std::cosh(2.0 * s.r) - 0.5;
                        },
                        [](const Custom& s) {
                          double m = 0.0;
                          for (Eigen::Index k = 0; k < s.vector.amplitudes.size(); ++k) {
                            m += static_cast<double>(k) * std::norm(s.vector.amplitudes[k]);
                          }
                          return m;
                        },
                    },
                    spec_);
}

FieldState make_state(StateSpec spec) {
  return std::visit(
      overloaded{
          [](Coherent s) {
            require_finite(s.alpha.real(), "alpha");
            require_finite(s.alpha.imag(), "alpha");
            return FieldState(s);
          },
          [](Fock s) { return FieldState(s); },
          [](Thermal s) {
            require_nonneg(s.n_th, "n_th");
            return FieldState(s);
          },
          [](SqueezedVacuum s) {
            require_nonneg(s.r, "r");
            if (s.r == 0.0) return FieldState(Coherent{0.0});
            return FieldState(s);
          },
          [](Gaussian s) {
            require_finite(s.x0, "x0");
            require_nonneg(s.r, "r");
            require_finite(s.phi, "phi");
            require_nonneg(s.n_th, "n_th");
            if (s.r == 0.0 && s.x0 == 0.0) return FieldState(Thermal{s.n_th});
            if (s.r == 0.0 && s.n_th == 0.0) return FieldState(Coherent{s.x0 / std::sqrt(2.0)});
            if (s.x0 == 0.0 && s.n_th == 0.0 && s.phi == 0.0) return FieldState(SqueezedVacuum{s.r});
            return FieldState(s);
          },
          [](Custom s) {
            if (s.vector.dim() == 0) throw DomainError("custom state needs at least one amplitude");
            for (Eigen::Index k = 0; k < s.vector.amplitudes.size(); ++k) {
              require_finite(s.vector.amplitudes[k].real(), "custom amplitude");
              require_finite(s.vector.amplitudes[k].imag(), "custom amplitude");
            }
            const double nrm = s.vector.amplitudes.norm();
            if (nrm == 0.0) throw DomainError("custom state has zero norm");
            s.vector.amplitudes /= nrm;
            s.vector.tail_mass = 0.0;
            return FieldState(s);
          },
      },
      std::move(spec));
}

void GaussianPhaseSpace::check(double tol) const {
  if (!mean.allFinite() || !cov.allFinite()) throw DomainError("phase-space moments must be finite");
  if (std::abs(cov(0, 1) - cov(1, 0)) > tol) throw DomainError("covariance matrix is not symmetric");
  if (cov(0, 0) <= 0.0 || cov.determinant() <= 0.0) throw DomainError("covariance matrix is not positive definite");
  if (cov.determinant() < 0.25 - tol) throw DomainError("covariance matrix violates the uncertainty bound");
}

GaussianPhaseSpace gaussian_phase_space(double x0, double r, double phi, double n_th) {
  const double f = (2.0 * n_th + 1.0) / 2.0;
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  GaussianPhaseSpace g;
  g.mean = {x0, 0.0};
  g.cov << f * (c - std::cos(phi) * s), -f * std::sin(phi) * s, -f * std::sin(phi) * s, f * (c + std::cos(phi) * s);
  return g;
}

GaussianPhaseSpace to_gaussian(const FieldState& state) {
  return std::visit(overloaded{
                        [](const Coherent& s) { return gaussian_phase_space(std::sqrt(2.0) * std::abs(s.alpha), 0, 0, 0); },
                        [](const Thermal& s) { return gaussian_phase_space(0, 0, 0, s.n_th); },
                        [](const SqueezedVacuum& s) { return gaussian_phase_space(0, s.r, 0, 0); },
                        [](const Gaussian& s) { return gaussian_phase_space(s.x0, s.r, s.phi, s.n_th); },
                        [](const Fock&) -> GaussianPhaseSpace { throw UnsupportedError("a Fock state is not Gaussian"); },
                        [](const Custom&) -> GaussianPhaseSpace {
                          throw UnsupportedError("a custom Fock vector is not treated as Gaussian");
                        },
                    },
                    state.spec());
}

PFunctionDescriptor p_function(const FieldState& state) {
  if (state.is<Coherent>()) return PDelta{state.as<Coherent>().alpha};
  if (state.is<Thermal>()) return PGaussian{state.as<Thermal>().n_th};
  if (state.is<Fock>() && state.as<Fock>().n == 0) return PDelta{0.0};
  return PUnavailable{};
}

bool has_p_function(const FieldState& state) {
  return !std::holds_alternative<PUnavailable>(p_function(state));
}

NumberDistribution number_distribution(const FieldState& state, std::size_t dim) {
  if (dim < 1) throw DomainError("truncation dimension must be positive");
  NumberDistribution nd;
  std::visit(overloaded{
                 [&](const Coherent& s) {
                   const double mu = std::norm(s.alpha);
                   nd.probs = poisson_pmf(mu, dim);
                   nd.tail_mass = poisson_tail(mu, dim, std::accumulate(nd.probs.begin(), nd.probs.end(), 0.0));
                 },
                 [&](const Fock& s) {
                   nd.probs.assign(dim, 0.0);
                   if (s.n < dim) {
                     nd.probs[s.n] = 1.0;
                   } else {
                     nd.tail_mass = 1.0;
                   }
                 },
                 [&](const Thermal& s) {
                   nd.probs = thermal_pmf(s.n_th, dim);
                   nd.tail_mass = std::pow(s.n_th / (1.0 + s.n_th), static_cast<double>(dim));
                 },
                 [&](const SqueezedVacuum& s) {
                   const Eigen::VectorXcd c = squeezed_amplitudes(s.r, dim);
                   nd.probs.resize(dim);
                   for (std::size_t m = 0; m < dim; ++m) nd.probs[m] = std::norm(c[static_cast<Eigen::Index>(m)]);
                   nd.tail_mass = squeezed_tail(s.r, dim);
                 },
                 [&](const Gaussian& s) {
                   const GaussianFock gf = gaussian_fock(s, dim);
                   nd.probs.assign(dim, 0.0);
                   for (std::size_t m = 0; m < dim; ++m) {
                     double v = 0.0;
                     for (std::size_t k = 0; k < gf.p_th.size(); ++k) {
                       v += gf.p_th[k] * std::norm(gf.t(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)));
                     }
                     nd.probs[m] = v;
                   }
                   nd.tail_mass = gf.tail;
                 },
                 [&](const Custom& s) {
                   nd.probs.assign(dim, 0.0);
                   double tail = 0.0;
                   for (Eigen::Index k = 0; k < s.vector.amplitudes.size(); ++k) {
                     const double p = std::norm(s.vector.amplitudes[k]);
                     if (static_cast<std::size_t>(k) < dim) {
                       nd.probs[static_cast<std::size_t>(k)] = p;
                     } else {
                       tail += p;
                     }
                   }
                   nd.tail_mass = tail;
                 },
             },
             state.spec());
  return nd;
}

std::size_t adequate_dim(const FieldState& state, const TruncationPolicy& policy) {
  const double mean = state.mean_number();
  if (!std::isfinite(mean) || mean > static_cast<double>(policy.max_dim)) {
    throw TruncationError("mean occupation exceeds the maximum Fock dimension", policy.max_dim * 2, 1.0);
  }
  std::size_t dim = static_cast<std::size_t>(std::ceil(mean + 8.0 * std::sqrt(mean + 1.0) + 12.0));
  if (state.is<Custom>()) dim = std::max(dim, state.as<Custom>().vector.dim());
  for (;;) {
    const std::size_t d = std::min(dim, policy.max_dim);
    const NumberDistribution nd = number_distribution(state, d);
    if (nd.tail_mass <= policy.tail_bound) return d;
    if (d >= policy.max_dim) {
      throw TruncationError("Fock truncation tail " + std::to_string(nd.tail_mass) + " exceeds bound at dim " +
                                std::to_string(d),
                            2 * d, nd.tail_mass);
    }
    dim *= 2;
  }
}

NumberDistribution number_distribution(const FieldState& state, const TruncationPolicy& policy) {
  return number_distribution(state, adequate_dim(state, policy));
}

FockVector to_fock_vector(const FieldState& state, std::size_t dim) {
  if (dim < 1) throw DomainError("truncation dimension must be positive");
  const auto D = static_cast<Eigen::Index>(dim);
  FockVector v;
  std::visit(overloaded{
                 [&](const Coherent& s) {
                   v.amplitudes = coherent_amplitudes(s.alpha, dim);
                   double head = v.amplitudes.squaredNorm();
                   v.tail_mass = poisson_tail(std::norm(s.alpha), dim, head);
                 },
                 [&](const Fock& s) {
                   v.amplitudes = Eigen::VectorXcd::Zero(D);
                   if (s.n < dim) {
                     v.amplitudes[static_cast<Eigen::Index>(s.n)] = 1.0;
                   } else {
                     v.tail_mass = 1.0;
                   }
                 },
                 [&](const Thermal& s) {
                   if (s.n_th > 0.0) throw UnsupportedError("a thermal state is mixed; use a density matrix");
                   v.amplitudes = Eigen::VectorXcd::Zero(D);
                   v.amplitudes[0] = 1.0;
                 },
                 [&](const SqueezedVacuum& s) {
                   v.amplitudes = squeezed_amplitudes(s.r, dim);
                   v.tail_mass = squeezed_tail(s.r, dim);
                 },
                 [&](const Gaussian& s) {
                   if (s.n_th > 0.0) throw UnsupportedError("a Gaussian state with n_th > 0 is mixed");
                   const GaussianFock gf = gaussian_fock(s, dim);
                   v.amplitudes = gf.t.col(0);
                   v.tail_mass = gf.tail;
                 },
                 [&](const Custom& s) {
                   v.amplitudes = Eigen::VectorXcd::Zero(D);
                   const Eigen::Index k = std::min(D, s.vector.amplitudes.size());
                   v.amplitudes.head(k) = s.vector.amplitudes.head(k);
                   v.tail_mass = std::max(0.0, 1.0 - v.amplitudes.squaredNorm());
                 },
             },
             state.spec());
  return v;
}

FockDensity to_fock_density(const FieldState& state, std::size_t dim) {
  if (state.is<Thermal>()) {
    const NumberDistribution nd = number_distribution(state, dim);
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(nd.probs.data(), static_cast<Eigen::Index>(dim));
    return {p.cast<cplx>().asDiagonal(), nd.tail_mass};
  }
  if (state.is<Gaussian>() && state.as<Gaussian>().n_th > 0.0) {
    const GaussianFock gf = gaussian_fock(state.as<Gaussian>(), dim);
    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(gf.p_th.data(), static_cast<Eigen::Index>(gf.p_th.size()));
    Eigen::MatrixXcd rho = gf.t * p.cast<cplx>().asDiagonal() * gf.t.adjoint();
    return {rho, gf.tail};
  }
  return to_density(to_fock_vector(state, dim));
}

double gaussian_generating_function(const GaussianPhaseSpace& g, double u) {
  return gaussian_generating_series(g, u, 0)[0];
}

std::vector<double> gaussian_generating_series(const GaussianPhaseSpace& g, double u0, std::size_t order) {
  // V_P = V - I/2 is the covariance of the P function (possibly indefinite).
  const Eigen::Matrix2d vp = g.cov - 0.5 * Eigen::Matrix2d::Identity();
  const double t = vp.trace();
  const double det = vp.determinant();
  const double x2 = g.mean.squaredNorm();
  const double xvx = g.mean.dot(vp * g.mean);
  // d(u) = 1 + t u + det u^2, num(u) = x2 u + (t x2 - xvx) u^2; G = d^{-1/2} exp(-num/(2d)).
  const series::Series d = series::shift_quadratic(1.0, t, det, u0);
  const series::Series num = series::shift_quadratic(0.0, x2, t * x2 - xvx, u0);
  if (d[0] <= 0.0) throw DomainError("Gaussian generating function is singular at this point");
  series::Series q = series::mul(num, series::reciprocal(d, order), order);
  for (double& c : q) c *= -0.5;
  return series::mul(series::pow(d, -0.5, order), series::exp(q, order), order);
}

double analytic_moment(const FieldState& state, int j) {
  if (j < 1) throw DomainError("moment order must be at least 1");
  const auto falling = [](double n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= (n - i);
    return v;
  };
  const auto factorial = [](int k) { return std::tgamma(static_cast<double>(k) + 1.0); };
  if (state.is<Coherent>()) return std::pow(std::norm(state.as<Coherent>().alpha), j);
  if (state.is<Fock>()) {
    const auto n = static_cast<double>(state.as<Fock>().n);
    return n < j ? 0.0 : falling(n, j);
  }
  if (state.is<Thermal>()) return factorial(j) * std::pow(state.as<Thermal>().n_th, j);
  if (state.is<Custom>()) {
    const NumberDistribution nd = number_distribution(state, state.as<Custom>().vector.dim());
    double m = 0.0;
    for (std::size_t k = 0; k < nd.dim(); ++k) m += nd.probs[k] * falling(static_cast<double>(k), j);
    return m;
  }
  const std::vector<double> s = gaussian_generating_series(to_gaussian(state), 0.0, static_cast<std::size_t>(j));
  return ((j % 2 == 0) ? 1.0 : -1.0) * factorial(j) * s[static_cast<std::size_t>(j)];
}

}  // namespace acoh
