#include "acoh/types.hpp"

#include <array>
#include <numeric>
#include <utility>

#include "acoh/error.hpp"

namespace acoh {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodNames{{
    {Method::Perturbative, "perturbative"},
    {Method::PRepresentation, "exact"},
    {Method::GaussianOverlap, "gaussian"},
    {Method::Oracle, "oracle"},
    {Method::Bch, "bch"},
}};

}  // namespace

void validate(const DetectorCoupling& c) {
  if (!std::isfinite(c.gamma0) || !std::isfinite(c.dt) || !std::isfinite(c.eta)) {
    throw DomainError("detector coupling parameters must be finite");
  }
  if (c.gamma0 < 0.0) throw DomainError("gamma0 must be non-negative");
  if (c.dt < 0.0) throw DomainError("dt must be non-negative");
  if (c.eta < 0.0 || c.eta > 1.0) throw DomainError("efficiency eta must lie in [0, 1]");
}

DetectorCoupling DetectorCoupling::from_rate(double gamma0, double dt, double eta) {
  DetectorCoupling c{gamma0, dt, eta};
  validate(c);
  return c;
}

DetectorCoupling DetectorCoupling::from_kappa(double kappa, double eta) {
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw DomainError("kappa must be finite and non-negative");
  }
  return from_rate(kappa * kappa, 1.0, eta);
}

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  if (name == "p-representation") return Method::PRepresentation;
  if (name == "gaussian-overlap") return Method::GaussianOverlap;
  return std::nullopt;
}

double CountDistribution::sum() const noexcept {
  return std::accumulate(probs.begin(), probs.end(), 0.0);
}

}  // namespace acoh
