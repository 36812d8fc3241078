#include "acoh/statistics.hpp"

#include <cmath>

#include "acoh/error.hpp"

namespace acoh {

std::string_view to_string(Dispersion d) {
  switch (d) {
    case Dispersion::SubPoissonian:
      return "sub-Poissonian";
    case Dispersion::Poissonian:
      return "Poissonian";
    case Dispersion::SuperPoissonian:
      return "super-Poissonian";
  }
  return "unknown";
}

Dispersion classify_q(double q, double tol) {
  if (q < -tol) return Dispersion::SubPoissonian;
  if (q > tol) return Dispersion::SuperPoissonian;
  return Dispersion::Poissonian;
}

double mean_counts(const FieldState& state, const DetectorCoupling& coupling, Kernel kernel) {
  return transfer_probability(coupling, kernel) * analytic_moment(state, 1);
}

double variance_counts(const FieldState& state, const DetectorCoupling& coupling, Kernel kernel, VarianceForm form) {
  const double m1 = analytic_moment(state, 1);
  const double m2 = analytic_moment(state, 2);
  const double nbar = transfer_probability(coupling, kernel) * m1;
  if (form == VarianceForm::Approximate) {
    const double l = coupling.eta * coupling.lambda();
    return nbar + l * l * (m2 - m1 * m1);
  }
  const double s = transfer_probability(coupling, kernel);
  return nbar + s * s * (m2 - m1 * m1);
}

MaybeValue mandel_q(const FieldState& state) {
  const double m1 = analytic_moment(state, 1);
  if (m1 <= 0.0) return MaybeValue::absent("Q is undefined for the vacuum (<n> = 0)");
  return MaybeValue::of((analytic_moment(state, 2) - m1 * m1) / m1);
}

StatSummary count_summary(const FieldState& state, const DetectorCoupling& coupling, Kernel kernel) {
  StatSummary s;
  s.mean = mean_counts(state, coupling, kernel);
  s.variance = variance_counts(state, coupling, kernel);
  s.q = mandel_q(state);
  if (s.q.defined()) s.dispersion = classify_q(*s.q);
  return s;
}

RatioResult ratio_R(const std::vector<double>& probs, Method method) {
  RatioResult out;
  out.method = method;
  out.components.assign(probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(probs.size(), 4)));
  const auto& p = out.components;
  if (p.size() < 3) {
    out.r = MaybeValue::absent("P0, P1 and P2 are required");
  } else if (p[1] == 0.0) {
    out.r = MaybeValue::absent("P1 = 0 (division by zero)");
  } else {
    out.r = MaybeValue::of(2.0 * p[2] * p[0] / (p[1] * p[1]));
  }
  if (p.size() < 4) {
    out.r_prime = MaybeValue::absent("P1, P2 and P3 are required");
  } else if (p[2] == 0.0) {
    out.r_prime = MaybeValue::absent("P2 = 0 (division by zero)");
  } else {
    out.r_prime = MaybeValue::of(3.0 * p[3] * p[1] / (2.0 * p[2] * p[2]));
  }
  return out;
}

RatioResult ratio_R(const CountDistribution& dist) { return ratio_R(dist.probs, dist.method); }

RatioResult leading_order_ratios(const FieldState& state) {
  const double m1 = analytic_moment(state, 1);
  const double m2 = analytic_moment(state, 2);
  const double m3 = analytic_moment(state, 3);
  RatioResult out;
  out.method = Method::Perturbative;
  out.components = {1.0, m1, m2 / 2.0, m3 / 6.0};  // P_n / kappa^{2n}
  out.r = m1 > 0.0 ? MaybeValue::of(m2 / (m1 * m1)) : MaybeValue::absent("<n> = 0 (division by zero)");
  out.r_prime = m2 > 0.0 ? MaybeValue::of(m1 * m3 / (m2 * m2))
                         : MaybeValue::absent("<a^dagger2 a^2> = 0 (division by zero)");
  return out;
}

MaybeValue reference_R(const FieldState& state) {
  if (state.is<Coherent>()) {
    if (std::norm(state.as<Coherent>().alpha) == 0.0) return MaybeValue::absent("vacuum: P1 = 0");
    return MaybeValue::of(1.0);
  }
  if (state.is<Thermal>()) {
    if (state.as<Thermal>().n_th == 0.0) return MaybeValue::absent("vacuum: P1 = 0");
    return MaybeValue::of(2.0);
  }
  if (state.is<Fock>()) {
    const auto n = state.as<Fock>().n;
    if (n == 0) return MaybeValue::absent("vacuum: P1 = 0");
    return MaybeValue::of(1.0 - 1.0 / static_cast<double>(n));
  }
  if (state.is<SqueezedVacuum>()) {
    const double c = 1.0 / std::tanh(state.as<SqueezedVacuum>().r);
    return MaybeValue::of(2.0 + c * c);
  }
  if (state.is<Gaussian>()) {
    const auto& g = state.as<Gaussian>();
    return ratio_R_gaussian(g.x0, g.r, g.phi, g.n_th);
  }
  return leading_order_ratios(state).r;
}

MaybeValue ratio_R_gaussian(double x0, double r, double phi, double n_th) {
  if (!std::isfinite(x0) || !std::isfinite(r) || !std::isfinite(phi) || !std::isfinite(n_th)) {
    throw DomainError("Gaussian parameters must be finite");
  }
  if (r < 0.0 || n_th < 0.0) throw DomainError("r and n_th must be non-negative");
  const double x2 = x0 * x0;
  const double f = 2.0 * n_th + 1.0;
  const double c2 = std::cosh(2.0 * r);
  const double base = f * c2 + x2 - 1.0;
  const double den = 2.0 * base * base;
  if (den == 0.0) return MaybeValue::absent("vacuum: denominator vanishes");
  const double first = 4.0 * n_th * n_th - 8.0 * n_th * x2 * std::cos(phi) * std::sinh(2.0 * r) + 8.0 * f * (x2 - 1.0) * c2;
  const double second = 3.0 * f * f * std::cosh(4.0 * r) + 4.0 * n_th -
                        8.0 * x2 * std::cos(phi) * std::sinh(r) * std::cosh(r) + 2.0 * x2 * x2 - 8.0 * x2 + 5.0;
  return MaybeValue::of(first / den + second / den);
}

RatioResult ratio_R_gaussian_overlap(const GaussianPhaseSpace& g, const DetectorCoupling& coupling) {
  const double lam = effective_lambda(coupling);
  const double p0 = gaussian_p0(g, lam);
  const auto [p1, p2] = gaussian_p1_p2(g, lam);
  const double p3 = pn_gaussian(g, lam, 3);
  return ratio_R(std::vector<double>{p0, p1, p2, p3}, Method::GaussianOverlap);
}

MaybeValue r_from_q(double q, double mean_n) {
  if (!std::isfinite(q) || !std::isfinite(mean_n)) throw DomainError("Q and <n> must be finite");
  if (mean_n <= 0.0) return MaybeValue::absent("<n> must be positive");
  return MaybeValue::of(1.0 + q / mean_n);
}

std::string classify_ratio(double r, double tol) {
  if (std::abs(r - 1.0) <= tol) return "maximally classical";
  if (std::abs(r - 2.0) <= tol) return "thermal-like";
  if (r < 1.0) return "sub-Poissonian";
  if (r > 2.0 + tol) return "squeezed-like";
  return "super-Poissonian";
}

}  // namespace acoh
