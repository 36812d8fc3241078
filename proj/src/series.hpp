#pragma once

// Truncated power series in one variable. Coefficient k multiplies v^k.

#include <cmath>
#include <cstddef>
#include <vector>

namespace acoh::series {

using Series = std::vector<double>;

inline Series truncate(Series s, std::size_t order) {
  s.resize(order + 1, 0.0);
  return s;
}

inline Series mul(const Series& a, const Series& b, std::size_t order) {
  Series c(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// 1/a, requires a[0] != 0.
inline Series reciprocal(const Series& a, std::size_t order) {
  Series r(order + 1, 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k <= order; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
    r[k] = -s / a[0];
  }
  return r;
}

// exp(a), standard recurrence k e_k = sum_j j a_j e_{k-j}.
inline Series exp(const Series& a, std::size_t order) {
  Series e(order + 1, 0.0);
  e[0] = std::exp(a.empty() ? 0.0 : a[0]);
  for (std::size_t k = 1; k <= order; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return e;
}

// a^p for a[0] > 0, via k a0 w_k = sum_j (p j - (k - j)) a_j w_{k-j}.
inline Series pow(const Series& a, double p, std::size_t order) {
  Series w(order + 1, 0.0);
  w[0] = std::pow(a[0], p);
  for (std::size_t k = 1; k <= order; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
      s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * w[k - j];
    }
    w[k] = s / (static_cast<double>(k) * a[0]);
  }
  return w;
}

// Polynomial c0 + c1 v + c2 v^2 re-centred at v = u0.
inline Series shift_quadratic(double c0, double c1, double c2, double u0) {
  return {c0 + c1 * u0 + c2 * u0 * u0, c1 + 2.0 * c2 * u0, c2};
}

}  // namespace acoh::series
