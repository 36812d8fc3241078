#include "acoh/detector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acoh/error.hpp"
#include "acoh/oracle.hpp"

namespace acoh {

namespace {

void require_level(int n) {
  if (n < 0) throw DomainError("excitation level must be non-negative");
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

struct GaussianInvariants {
  double t, det, x2, c2;
};

GaussianInvariants invariants(const GaussianPhaseSpace& g) {
  const Eigen::Matrix2d vp = g.cov - 0.5 * Eigen::Matrix2d::Identity();
  const double t = vp.trace();
  const double x2 = g.mean.squaredNorm();
  return {t, vp.determinant(), x2, t * x2 - g.mean.dot(vp * g.mean)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double transfer_probability(const DetectorCoupling& coupling, Kernel kernel) {
  validate(coupling);
  if (kernel == Kernel::SmallAngle) return coupling.eta * coupling.lambda();
  const double s = std::sin(coupling.kappa());
  return coupling.eta * s * s;
}

double effective_kappa(const DetectorCoupling& coupling) {
  validate(coupling);
  if (coupling.eta == 1.0) return coupling.kappa();
  return std::asin(std::sqrt(transfer_probability(coupling, Kernel::Exact)));
}

double effective_lambda(const DetectorCoupling& coupling) {
  if (coupling.eta == 1.0) {
    validate(coupling);
    return coupling.lambda();
  }
  const double k = effective_kappa(coupling);
  return k * k;
}

PerturbativeTerms PerturbativeTerms::from_moments(double m1, double m2, double m3) {
  PerturbativeTerms t;
  t.m1 = m1;
  t.m2 = m2;
  t.m3 = m3;
  t.n_sq = m1 + m2;
  t.n_cube = m1 + 3.0 * m2 + m3;
  t.n_a2 = 2.0 * m2 + m3;
  t.a2_n = 2.0 * m2 + m3;
  t.w = m2 + m3;
  return t;
}

PerturbativeTerms perturbative_terms(const FieldState& state) {
  return PerturbativeTerms::from_moments(analytic_moment(state, 1), analytic_moment(state, 2),
                                         analytic_moment(state, 3));
}

double pn_perturbative(const PerturbativeTerms& t, double kappa, int n, SeriesOrder order) {
  require_level(n);
  if (n > 3) throw UnsupportedError("the perturbative series stops at P_3");
  if (!std::isfinite(kappa) || kappa < 0.0) throw DomainError("kappa must be finite and non-negative");
  const double k2 = kappa * kappa;
  const double k4 = k2 * k2;
  const double k6 = k4 * k2;
  const bool full = order == SeriesOrder::Full;
  switch (n) {
    case 0: {
      if (!full) return 1.0;
      return 1.0 - k2 * t.m1 + k4 * (t.m2 / 6.0 + t.n_sq / 3.0) -
             k6 * (17.0 / 360.0 * t.n_a2 + 17.0 / 360.0 * t.a2_n + 2.0 / 45.0 * t.n_cube + t.m3 / 60.0 + t.w / 90.0);
    }
    case 1: {
      if (!full) return k2 * t.m1;
      return k2 * t.m1 - k4 * (t.n_sq / 3.0 + 2.0 * t.m2 / 3.0) +
             k6 * (8.0 / 45.0 * t.w + 4.0 / 45.0 * t.a2_n + 4.0 / 45.0 * t.n_a2 + 2.0 / 45.0 * t.n_cube + t.m3 / 10.0);
    }
    case 2: {
      if (!full) return 0.5 * k4 * t.m2;
      return 0.5 * k4 * t.m2 - k6 * (t.m3 / 4.0 + t.w / 6.0 + t.a2_n / 24.0 + t.n_a2 / 24.0);
    }
    default:
      return k6 * t.m3 / 6.0;
  }
}

double pn_perturbative(const FieldState& state, const DetectorCoupling& coupling, int n, SeriesOrder order) {
  return pn_perturbative(perturbative_terms(state), effective_kappa(coupling), n, order);
}

double pn_exact(const FieldState& state, const DetectorCoupling& coupling, int n, Kernel kernel) {
  require_level(n);
  const double s = transfer_probability(coupling, kernel);
  const PFunctionDescriptor p = p_function(state);
  const double dn = static_cast<double>(n);
  if (const auto* d = std::get_if<PDelta>(&p)) {
    const double mu = s * std::norm(d->alpha);
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(dn * std::log(mu) - mu - log_factorial(dn));
  }
  if (const auto* g = std::get_if<PGaussian>(&p)) {
    const double x = s * g->n_th;
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(dn * std::log(x / (1.0 + x))) / (1.0 + x);
  }
  throw UnsupportedError("no closed-form P function for " + state.kind() +
                         " states; use the oracle or gaussian method");
}

double pn_bch(const FieldState& state, const DetectorCoupling& coupling, int n, const TruncationPolicy& policy) {
  require_level(n);
  const double lam = effective_lambda(coupling);
  const double dn = static_cast<double>(n);
  if (lam == 0.0) return n == 0 ? 1.0 : 0.0;
  if (state.is<Coherent>()) {
    const double a2 = std::norm(state.as<Coherent>().alpha);
    const double base = a2 * -std::expm1(-lam);
    if (a2 == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(dn * (std::log(lam) - lam + std::log(a2)) - log_factorial(dn) - base);
  }
  const NumberDistribution nd = number_distribution(state, policy);
  double sum = 0.0;
  for (std::size_t m = static_cast<std::size_t>(n); m < nd.dim(); ++m) {
    if (nd.probs[m] == 0.0) continue;
    const double dm = static_cast<double>(m);
    sum += nd.probs[m] *
           std::exp(dn * std::log(lam) - lam * dm + log_factorial(dm) - log_factorial(dm - dn) - log_factorial(dn));
  }
  return sum;
}

double gaussian_p0(const GaussianPhaseSpace& g, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw DomainError("lambda must be finite and non-negative");
  g.check(1e-9);
  if (lambda == 0.0) return 1.0;
  const double n_ref = 1.0 / std::expm1(lambda);
  const Eigen::Matrix2d v_ref = (2.0 * n_ref + 1.0) / 2.0 * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d v_inv = g.cov.inverse();
  const Eigen::Matrix2d v_ref_inv = v_ref.inverse();
  const Eigen::Matrix2d sum = v_ref_inv + v_inv;
  const double quad = g.mean.dot(v_inv * sum.inverse() * v_ref_inv * g.mean);
  const double prefactor = 1.0 / -std::expm1(-lambda);  // e^l / (e^l - 1)
  return prefactor * std::exp(-0.5 * quad) / std::sqrt(v_ref.determinant() * g.cov.determinant() * sum.determinant());
}

double gaussian_p0(const GaussianPhaseSpace& g, const DetectorCoupling& coupling) {
  return gaussian_p0(g, effective_lambda(coupling));
}

std::pair<double, double> gaussian_p1_p2(const GaussianPhaseSpace& g, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw DomainError("lambda must be finite and non-negative");
  g.check(1e-9);
  if (lambda == 0.0) return {0.0, 0.0};
  // P0 = G(u) with u = 1 - e^{-lambda} and G = d^{-1/2} exp(-num/(2d)).
  const auto [t, det, x2, c2] = invariants(g);
  const double u = -std::expm1(-lambda);
  const double d = 1.0 + t * u + det * u * u;
  const double d1 = t + 2.0 * det * u;
  const double d2 = 2.0 * det;
  const double num = x2 * u + c2 * u * u;
  const double num1 = x2 + 2.0 * c2 * u;
  const double num2 = 2.0 * c2;

  const double cross = num1 * d - num * d1;
  const double q1 = cross / (d * d);
  const double q2 = (num2 * d - num * d2) / (d * d) - 2.0 * d1 * cross / (d * d * d);
  const double l1 = d1 / d;
  const double l2 = d2 / d - l1 * l1;
  const double h1 = -0.5 * q1 - 0.5 * l1;
  const double h2 = -0.5 * q2 - 0.5 * l2;

  const double gval = std::exp(-0.5 * num / d) / std::sqrt(d);
  const double g1 = gval * h1;
  const double g2 = gval * (h2 + h1 * h1);
  const double le = lambda * std::exp(-lambda);
  return {-le * g1, 0.5 * le * le * g2};
}

std::pair<double, double> gaussian_p1_p2(const GaussianPhaseSpace& g, const DetectorCoupling& coupling) {
  return gaussian_p1_p2(g, effective_lambda(coupling));
}

double pn_gaussian(const GaussianPhaseSpace& g, double lambda, int n) {
  require_level(n);
  if (!std::isfinite(lambda) || lambda < 0.0) throw DomainError("lambda must be finite and non-negative");
  g.check(1e-9);
  if (lambda == 0.0) return n == 0 ? 1.0 : 0.0;
  const double u = -std::expm1(-lambda);
  const std::vector<double> c = gaussian_generating_series(g, u, static_cast<std::size_t>(n));
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(lambda * std::exp(-lambda), n) * c[static_cast<std::size_t>(n)];
}

CountDistribution probabilities(const FieldState& state, const DetectorCoupling& coupling, std::size_t n_max,
                                Method method, const RouteOptions& options) {
  validate(coupling);
  CountDistribution out;
  out.method = method;
  const double strength = effective_lambda(coupling) * state.mean_number();
  const auto warn_validity = [&] {
    if (strength > options.validity_threshold) {
      out.warnings.push_back("kappa^2 <n> = " + fmt(strength) + " exceeds " + fmt(options.validity_threshold) +
                             "; the small-coupling expansion may be inaccurate");
    }
  };

  switch (method) {
    case Method::Oracle: {
      OracleOptions o;
      o.truncation = options.truncation;
      return detector_pn_oracle(state, coupling, n_max, o);
    }
    case Method::Perturbative: {
      const PerturbativeTerms terms = perturbative_terms(state);
      const double kappa = effective_kappa(coupling);
      const std::size_t top = std::min<std::size_t>(n_max, 3);
      for (std::size_t n = 0; n <= top; ++n) {
        out.probs.push_back(pn_perturbative(terms, kappa, static_cast<int>(n), options.order));
      }
      if (n_max > 3) out.warnings.push_back("perturbative series provides P_0..P_3 only");
      warn_validity();
      for (std::size_t n = 0; n < out.probs.size(); ++n) {
        if (out.probs[n] < 0.0) out.warnings.push_back("P_" + std::to_string(n) + " is negative; series breakdown");
      }
      return out;
    }
    case Method::PRepresentation: {
      if (!has_p_function(state)) {
        throw UnsupportedError("no closed-form P function for " + state.kind() +
                               " states; use the oracle or gaussian method");
      }
      for (std::size_t n = 0; n <= n_max; ++n) out.probs.push_back(pn_exact(state, coupling, static_cast<int>(n), options.kernel));
      out.tail_mass = std::max(0.0, 1.0 - out.sum());
      return out;
    }
    case Method::GaussianOverlap: {
      if (!state.is_gaussian()) {
        throw UnsupportedError(state.kind() + " states are not Gaussian; use the oracle or perturbative method");
      }
      const GaussianPhaseSpace g = to_gaussian(state);
      const double lam = effective_lambda(coupling);
      out.probs.push_back(gaussian_p0(g, lam));
      if (n_max >= 1) {
        const auto [p1, p2] = gaussian_p1_p2(g, lam);
        out.probs.push_back(p1);
        if (n_max >= 2) out.probs.push_back(p2);
      }
      for (std::size_t n = 3; n <= n_max; ++n) out.probs.push_back(pn_gaussian(g, lam, static_cast<int>(n)));
      out.tail_mass = std::max(0.0, 1.0 - out.sum());
      return out;
    }
    case Method::Bch: {
      for (std::size_t n = 0; n <= n_max; ++n) {
        out.probs.push_back(pn_bch(state, coupling, static_cast<int>(n), options.truncation));
      }
      warn_validity();
      return out;
    }
  }
  throw UnsupportedError("unknown method");
}

}  // namespace acoh
