#include "acoh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acoh/error.hpp"

namespace acoh {

namespace {

std::vector<double> thin(const std::vector<double>& p, double eta) {
  if (eta == 1.0) return p;
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    const double dk = static_cast<double>(k);
    for (std::size_t n = 0; n <= k; ++n) {
      const double dn = static_cast<double>(n);
      const double logc = std::lgamma(dk + 1.0) - std::lgamma(dn + 1.0) - std::lgamma(dk - dn + 1.0);
      const double w = (eta == 0.0) ? (n == 0 ? 1.0 : 0.0)
                                    : std::exp(logc + dn * std::log(eta) + (dk - dn) * std::log1p(-eta));
      out[n] += p[k] * w;
    }
  }
  return out;
}

}  // namespace

CountDistribution detector_pn_oracle(const FieldState& state, const DetectorCoupling& coupling, std::size_t n_max,
                                     const OracleOptions& options) {
  validate(coupling);
  const double kappa = coupling.kappa();
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  const NumberDistribution field = number_distribution(state, options.truncation);
  const std::size_t full = field.dim();

  std::vector<double> det;
  std::size_t dd = 0;
  if (coupling.eta < 1.0) {
    // Thinning mixes every level into the low ones, so keep all of them.
    dd = full;
    det = thin(detector_distribution(field, kappa, dd), coupling.eta);
  } else {
    dd = std::min(n_max + 2, full);
    det = detector_distribution(field, kappa, dd);
    while (dd < full) {
      const std::size_t next = std::min(2 * dd, full);
      std::vector<double> again = detector_distribution(field, kappa, next);
      double change = 0.0;
      for (std::size_t n = 0; n <= n_max && n < dd; ++n) change = std::max(change, std::abs(again[n] - det[n]));
      det = std::move(again);
      dd = next;
      if (change < options.detector_tol) break;
    }
  }

  CountDistribution out;
  out.method = Method::Oracle;
  out.probs.assign(n_max + 1, 0.0);
  for (std::size_t n = 0; n <= n_max && n < det.size(); ++n) out.probs[n] = std::clamp(det[n], 0.0, 1.0);
  out.tail_mass = std::max(0.0, 1.0 - out.sum());
  out.truncation_mass = field.tail_mass;
  out.field_dim = full;
  out.detector_dim = dd;
  return out;
}

double normal_ordered_moment(const FieldState& state, int j, const TruncationPolicy& policy) {
  if (j < 0) throw DomainError("moment order must be non-negative");
  const NumberDistribution nd = number_distribution(state, policy);
  double m = 0.0;
  for (std::size_t k = 0; k < nd.dim(); ++k) {
    double f = 1.0;
    for (int i = 0; i < j; ++i) f *= static_cast<double>(k) - i;
    m += nd.probs[k] * f;
  }
  return m;
}

double exp_number_expectation(const FieldState& state, double lambda, const TruncationPolicy& policy) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw DomainError("lambda must be finite and non-negative");
  const NumberDistribution nd = number_distribution(state, policy);
  double s = 0.0;
  for (std::size_t k = 0; k < nd.dim(); ++k) s += nd.probs[k] * std::exp(-lambda * static_cast<double>(k));
  return s;
}

cplx word_expectation(const FieldState& state, std::string_view word, const TruncationPolicy& policy) {
  const std::size_t dim = adequate_dim(state, policy);
  return word_expectation(to_fock_density(state, dim), word);
}

}  // namespace acoh
