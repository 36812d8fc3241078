#pragma once

// Click statistics of a detector chain: count laws, Monte Carlo windows and
// the coherent-null hypothesis test.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acoh/fock.hpp"
#include "acoh/states.hpp"
#include "acoh/types.hpp"

namespace acoh {

/// C(N, j) p^j (1 - p)^{N - j} with p = eps |alpha|^2. Throws DomainError
/// when p lies outside [0, 1].
double pjN_binomial(double alpha2, double eps, std::size_t j, std::size_t N);

/// lambda^j e^{-lambda} / j!.
double poisson_pmf(double lambda, std::size_t j);

/// Total-variation distance between pjN_binomial(lambda/N, 1, ., N) and
/// Poisson(lambda).
double binomial_poisson_tv(double lambda, std::size_t N);

/// Counts in a window of length T: the P-function mixture of Poisson laws
/// with mean gamma0 T |beta|^2. Coherent and thermal states use closed
/// forms; other states use the number-basis form sum_m p_m C(m, j) x^j
/// (1 - x)^{m - j}, x = gamma0 T, which needs x <= 1.
double pjT_poisson_mixture(const FieldState& state, double gamma0, double T, std::size_t j,
                           const TruncationPolicy& policy = {});

enum class ChainLaw {
  Poisson,   ///< N -> infinity limit at fixed T = N dt
  Binomial,  ///< N independent qubit steps of success eps |beta|^2
};

struct ClickExperiment {
  FieldState state = make_state(Coherent{0.0});
  double gamma0 = 0.0;
  double dt = 0.0;          ///< per step
  std::size_t steps = 1;    ///< N
  std::size_t windows = 1;  ///< M
  std::uint64_t seed = 0;
  ChainLaw law = ChainLaw::Poisson;
  unsigned threads = 1;

  double T() const noexcept { return static_cast<double>(steps) * dt; }
  double eps() const noexcept { return gamma0 * dt; }
};

/// Throws DomainError unless N, M >= 1, gamma0, dt finite and non-negative
/// and eps in [0, 1].
void validate(const ClickExperiment& e);

struct Estimate {
  MaybeValue value;
  MaybeValue stderr_;  ///< jackknife
};

struct CountRecord {
  std::vector<std::uint32_t> counts;      ///< j per window
  std::vector<std::uint64_t> histogram;   ///< occurrences of j = 0..max
  std::size_t clamped = 0;                ///< binomial steps with eps|beta|^2 > 1

  std::size_t windows() const noexcept { return counts.size(); }
  std::vector<double> empirical_probs() const;
  Estimate mean() const;
  Estimate variance() const;  ///< unbiased
  Estimate excess() const;    ///< variance - mean
  Estimate q() const;         ///< (variance - mean)/mean
  Estimate r() const;         ///< 2 P0 P2 / P1^2
  Estimate r_prime() const;   ///< 3 P1 P3 / (2 P2^2)
};

/// Histogram of a count vector.
std::vector<std::uint64_t> histogram_of(const std::vector<std::uint32_t>& counts);
/// Record with histogram from bare counts.
CountRecord make_record(std::vector<std::uint32_t> counts);

/// One independent window per index; window w draws from its own generator
/// seeded from (seed, w), so the result does not depend on `threads`.
CountRecord sample_clicks(const ClickExperiment& experiment);

/// CSV with header "window_index,j".
void write_counts_csv(std::ostream& os, const CountRecord& record);
CountRecord read_counts_csv(std::istream& is);

enum class Alternative { ThermalMixture, Squeezed };
std::string_view to_string(Alternative a);
std::optional<Alternative> parse_alternative(std::string_view name);

struct NullTestOptions {
  std::vector<Alternative> alternatives{Alternative::ThermalMixture, Alternative::Squeezed};
  std::size_t bootstrap = 999;
  double level = 0.05;
  std::uint64_t seed = 0x5eed;
};

enum class Verdict { Retain, Reject, Inconclusive };
std::string_view to_string(Verdict v);

struct AlternativeFit {
  Alternative family;
  std::vector<double> params;  ///< thermal-mixture: (c, t); squeezed: (e1, e2)
  double log_likelihood = 0.0;
  double lrt = 0.0;            ///< 2 (logL_alt - logL_null), floored at 0
};

struct NullTestReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::size_t windows = 0;
  double mean = 0.0;                ///< Poisson MLE
  double null_log_likelihood = 0.0;
  std::vector<AlternativeFit> fits;
  double statistic = 0.0;           ///< max LRT over alternatives
  MaybeValue p_value;               ///< parametric bootstrap
  MaybeValue dispersion_index;      ///< sum (j - mean)^2 / mean
  MaybeValue dispersion_p_value;    ///< two-sided chi^2_{M-1}
  std::size_t bootstrap = 0;
  double level = 0.05;
};

/// Poisson null with mean fitted by maximum likelihood against the listed
/// families, p value from a parametric bootstrap of the max-LRT statistic.
NullTestReport test_coherent_null(const CountRecord& record, const NullTestOptions& options = {});

/// Count law of the thermal-mixture family: Poisson noise on a displaced
/// thermal intensity with coherent part c and thermal part t.
std::vector<double> thermal_mixture_pmf(double c, double t, std::size_t j_max);
/// Count law of a zero-mean Gaussian field whose scaled P covariance has
/// eigenvalues e1, e2 (> -1/2). Entries may be negative for unphysical
/// parameters.
std::vector<double> squeezed_count_pmf(double e1, double e2, std::size_t j_max);

}  // namespace acoh
