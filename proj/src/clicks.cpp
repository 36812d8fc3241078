#include "acoh/clicks.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "acoh/error.hpp"

namespace acoh {

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_pmf(double p, std::size_t j, std::size_t n) {
  if (j > n) return 0.0;
  if (p == 0.0) return j == 0 ? 1.0 : 0.0;
  if (p == 1.0) return j == n ? 1.0 : 0.0;
  const double dj = static_cast<double>(j);
  const double dn = static_cast<double>(n);
  return std::exp(log_choose(dn, dj) + dj * std::log(p) + (dn - dj) * std::log1p(-p));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Leave-one-out over a histogram: each window with value j gives the same
// deleted estimate, so only distinct values are evaluated.
template <class F>
Estimate jackknife(const std::vector<std::uint64_t>& hist, F stat) {
  Estimate e;
  std::uint64_t m = std::accumulate(hist.begin(), hist.end(), std::uint64_t{0});
  e.value = stat(hist, m);
  if (m < 2) {
    e.stderr_ = MaybeValue::absent("jackknife needs at least two windows");
    return e;
  }
  std::vector<std::uint64_t> h = hist;
  std::vector<std::pair<double, double>> loo;  // (weight, value)
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h[j] == 0) continue;
    --h[j];
    const MaybeValue v = stat(h, m - 1);
    ++h[j];
    if (!v.defined()) {
      e.stderr_ = MaybeValue::absent("a leave-one-out estimate is undefined");
      return e;
    }
    loo.emplace_back(static_cast<double>(hist[j]), *v);
  }
  const double dm = static_cast<double>(m);
  double mean = 0.0;
  for (const auto& [w, v] : loo) mean += w * v;
  mean /= dm;
  double ss = 0.0;
  for (const auto& [w, v] : loo) ss += w * (v - mean) * (v - mean);
  e.stderr_ = MaybeValue::of(std::sqrt((dm - 1.0) / dm * ss));
  return e;
}

struct Moments {
  double mean, var;
};

std::optional<Moments> moments(const std::vector<std::uint64_t>& h, std::uint64_t m) {
  if (m < 2) return std::nullopt;
  double s1 = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) s1 += static_cast<double>(j) * static_cast<double>(h[j]);
  const double dm = static_cast<double>(m);
  const double mean = s1 / dm;
  double ss = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double d = static_cast<double>(j) - mean;
    ss += d * d * static_cast<double>(h[j]);
  }
  return Moments{mean, ss / (dm - 1.0)};
}

double prob_at(const std::vector<std::uint64_t>& h, std::uint64_t m, std::size_t j) {
  return j < h.size() ? static_cast<double>(h[j]) / static_cast<double>(m) : 0.0;
}

}  // namespace

double poisson_pmf(double lambda, std::size_t j) {
  if (!std::isfinite(lambda) || lambda < 0.0) throw DomainError("Poisson mean must be finite and non-negative");
  if (lambda == 0.0) return j == 0 ? 1.0 : 0.0;
  const double dj = static_cast<double>(j);
  return std::exp(dj * std::log(lambda) - lambda - std::lgamma(dj + 1.0));
}

double pjN_binomial(double alpha2, double eps, std::size_t j, std::size_t N) {
  const double p = eps * alpha2;
  if (!std::isfinite(p) || alpha2 < 0.0 || eps < 0.0) throw DomainError("eps and |alpha|^2 must be finite and non-negative");
  if (p > 1.0) throw DomainError("eps |alpha|^2 exceeds 1; the qubit-chain model breaks down");
  return binomial_pmf(p, j, N);
}

double binomial_poisson_tv(double lambda, std::size_t N) {
  if (N == 0) throw DomainError("N must be positive");
  const double p = lambda / static_cast<double>(N);
  double tv = 0.0;
  double bsum = 0.0;
  double psum = 0.0;
  const std::size_t top = std::max<std::size_t>(N, static_cast<std::size_t>(lambda * 10 + 50));
  for (std::size_t j = 0; j <= top; ++j) {
    const double b = j <= N ? pjN_binomial(p, 1.0, j, N) : 0.0;
    const double q = poisson_pmf(lambda, j);
    tv += std::abs(b - q);
    bsum += b;
    psum += q;
    if (j > lambda && b < 1e-300 && q < 1e-300) break;
  }
  tv += std::max(0.0, 1.0 - bsum) + std::max(0.0, 1.0 - psum);
  return 0.5 * tv;
}

double pjT_poisson_mixture(const FieldState& state, double gamma0, double T, std::size_t j,
                           const TruncationPolicy& policy) {
  if (!std::isfinite(gamma0) || !std::isfinite(T) || gamma0 < 0.0 || T < 0.0) {
    throw DomainError("gamma0 and T must be finite and non-negative");
  }
  const double x = gamma0 * T;
  const PFunctionDescriptor p = p_function(state);
  if (const auto* d = std::get_if<PDelta>(&p)) return poisson_pmf(x * std::norm(d->alpha), j);
  if (const auto* g = std::get_if<PGaussian>(&p)) {
    const double a = x * g->n_th;
    return std::pow(a / (1.0 + a), static_cast<double>(j)) / (1.0 + a);
  }
  if (x > 1.0) {
    throw DomainError("gamma0 T exceeds 1 for a state without a closed-form P function");
  }
  const NumberDistribution nd = number_distribution(state, policy);
  double s = 0.0;
  for (std::size_t m = j; m < nd.dim(); ++m) s += nd.probs[m] * binomial_pmf(x, j, m);
  return s;
}

void validate(const ClickExperiment& e) {
  if (e.steps < 1) throw DomainError("the number of steps N must be at least 1");
  if (e.windows < 1) throw DomainError("the number of windows M must be at least 1");
  if (!std::isfinite(e.gamma0) || !std::isfinite(e.dt) || e.gamma0 < 0.0 || e.dt < 0.0) {
    throw DomainError("gamma0 and dt must be finite and non-negative");
  }
  if (e.eps() > 1.0) throw DomainError("eps = gamma0 dt must not exceed 1");
}

std::vector<std::uint64_t> histogram_of(const std::vector<std::uint32_t>& counts) {
  std::vector<std::uint64_t> h;
  for (std::uint32_t c : counts) {
    if (c >= h.size()) h.resize(c + 1, 0);
    ++h[c];
  }
  return h;
}

CountRecord make_record(std::vector<std::uint32_t> counts) {
  CountRecord r;
  r.histogram = histogram_of(counts);
  r.counts = std::move(counts);
  return r;
}

std::vector<double> CountRecord::empirical_probs() const {
  std::vector<double> p(histogram.size(), 0.0);
  const double m = static_cast<double>(windows());
  for (std::size_t j = 0; j < histogram.size(); ++j) p[j] = static_cast<double>(histogram[j]) / m;
  return p;
}

Estimate CountRecord::mean() const {
  return jackknife(histogram, [](const auto& h, std::uint64_t m) {
    if (m == 0) return MaybeValue::absent("no windows");
    double s = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) s += static_cast<double>(j) * static_cast<double>(h[j]);
    return MaybeValue::of(s / static_cast<double>(m));
  });
}

Estimate CountRecord::variance() const {
  return jackknife(histogram, [](const auto& h, std::uint64_t m) {
    const auto mo = moments(h, m);
    return mo ? MaybeValue::of(mo->var) : MaybeValue::absent("variance needs two windows");
  });
}

Estimate CountRecord::excess() const {
  return jackknife(histogram, [](const auto& h, std::uint64_t m) {
    const auto mo = moments(h, m);
    return mo ? MaybeValue::of(mo->var - mo->mean) : MaybeValue::absent("variance needs two windows");
  });
}

Estimate CountRecord::q() const {
  return jackknife(histogram, [](const auto& h, std::uint64_t m) {
    const auto mo = moments(h, m);
    if (!mo) return MaybeValue::absent("variance needs two windows");
    if (mo->mean == 0.0) return MaybeValue::absent("mean count is zero");
    return MaybeValue::of((mo->var - mo->mean) / mo->mean);
  });
}

Estimate CountRecord::r() const {
  return jackknife(histogram, [](const auto& h, std::uint64_t m) {
    if (m == 0) return MaybeValue::absent("no windows");
    const double p1 = prob_at(h, m, 1);
    if (p1 == 0.0) return MaybeValue::absent("no window with one click");
    return MaybeValue::of(2.0 * prob_at(h, m, 0) * prob_at(h, m, 2) / (p1 * p1));
  });
}

Estimate CountRecord::r_prime() const {
  return jackknife(histogram, [](const auto& h, std::uint64_t m) {
    if (m == 0) return MaybeValue::absent("no windows");
    const double p2 = prob_at(h, m, 2);
    if (p2 == 0.0) return MaybeValue::absent("no window with two clicks");
    return MaybeValue::of(3.0 * prob_at(h, m, 1) * prob_at(h, m, 3) / (2.0 * p2 * p2));
  });
}

CountRecord sample_clicks(const ClickExperiment& e) {
  validate(e);
  const FieldState& st = e.state;
  const PFunctionDescriptor pf = p_function(st);
  const bool p_rep = !std::holds_alternative<PUnavailable>(pf);
  const double x = e.gamma0 * e.T();

  std::vector<double> cdf;
  if (!p_rep) {
    if (x > 1.0) throw DomainError("gamma0 T exceeds 1 for a state without a closed-form P function");
    const NumberDistribution nd = number_distribution(st);
    cdf.resize(nd.dim());
    std::partial_sum(nd.probs.begin(), nd.probs.end(), cdf.begin());
  }

  std::vector<std::uint32_t> counts(e.windows, 0);
  std::vector<std::uint8_t> clamped(e.windows, 0);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      std::mt19937_64 rng(splitmix64(e.seed ^ splitmix64(static_cast<std::uint64_t>(w))));
      std::uint64_t j = 0;
      if (p_rep) {
        double intensity = 0.0;
        if (const auto* d = std::get_if<PDelta>(&pf)) {
          intensity = std::norm(d->alpha);
        } else if (const auto* g = std::get_if<PGaussian>(&pf); g && g->n_th > 0.0) {
          intensity = std::exponential_distribution<double>(1.0 / g->n_th)(rng);
        }
        if (e.law == ChainLaw::Poisson) {
          const double mu = x * intensity;
          if (mu > 0.0) j = std::poisson_distribution<std::uint64_t>(mu)(rng);
        } else {
          double p = e.eps() * intensity;
          if (p > 1.0) {
            p = 1.0;
            clamped[w] = 1;
          }
          if (p > 0.0) j = std::binomial_distribution<std::uint64_t>(e.steps, p)(rng);
        }
      } else {
        const double u = std::uniform_real_distribution<double>(0.0, cdf.back())(rng);
        const auto m = static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        const std::uint64_t mm = std::min<std::uint64_t>(m, cdf.size() - 1);
        if (mm > 0 && x > 0.0) j = std::binomial_distribution<std::uint64_t>(mm, x)(rng);
      }
      counts[w] = static_cast<std::uint32_t>(j);
    }
  };

  const unsigned nt = std::max(1u, std::min<unsigned>(e.threads, static_cast<unsigned>(e.windows)));
  if (nt == 1) {
    run(0, e.windows);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (e.windows + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t en = std::min(e.windows, b + chunk);
      if (b < en) pool.emplace_back(run, b, en);
    }
    for (auto& th : pool) th.join();
  }

  CountRecord r = make_record(std::move(counts));
  r.clamped = static_cast<std::size_t>(std::count(clamped.begin(), clamped.end(), 1));
  return r;
}

void write_counts_csv(std::ostream& os, const CountRecord& record) {
  os << "window_index,j\n";
  for (std::size_t w = 0; w < record.counts.size(); ++w) os << w << ',' << record.counts[w] << '\n';
}

CountRecord read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("empty counts file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "window_index,j") throw DomainError("counts CSV must start with the header window_index,j");
  std::vector<std::uint32_t> counts;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    long long w = -1;
    long long j = -1;
    char comma = 0;
    if (!(row >> w >> comma >> j) || comma != ',' || w < 0 || j < 0 || j > 0xffffffffLL) {
      throw DomainError("malformed counts CSV at line " + std::to_string(lineno));
    }
    if (static_cast<std::size_t>(w) != counts.size()) {
      throw DomainError("window_index must count up from 0 (line " + std::to_string(lineno) + ")");
    }
    counts.push_back(static_cast<std::uint32_t>(j));
  }
  return make_record(std::move(counts));
}

}  // namespace acoh
