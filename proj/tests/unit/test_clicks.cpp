#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "acoh/clicks.hpp"
#include "acoh/error.hpp"

using namespace acoh;

TEST(Clicks, BinomialLawIsNormalized) {
  double s = 0.0;
  for (std::size_t j = 0; j <= 20; ++j) s += pjN_binomial(2.0, 0.01, j, 20);
  EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_NEAR(pjN_binomial(1.0, 0.3, 1, 1), 0.3, 1e-15);
  EXPECT_THROW(pjN_binomial(4.0, 0.5, 1, 3), DomainError);
}

TEST(Clicks, TotalVariationShrinksWithSteps) {
  EXPECT_GT(binomial_poisson_tv(1.0, 10), binomial_poisson_tv(1.0, 100));
  EXPECT_GT(binomial_poisson_tv(1.0, 100), binomial_poisson_tv(1.0, 1000));
  EXPECT_NEAR(binomial_poisson_tv(0.0, 10), 0.0, 1e-15);
}

TEST(Clicks, MixtureLawClosedFormsMatchNumberBasis) {
  const TruncationPolicy tight{1e-18, 4096};
  const double g = 0.4, T = 1.5;
  // Number-basis route via an equivalent custom coherent vector.
  FockVector v;
  v.amplitudes.resize(50);
  cplx c = std::exp(-0.5 * 0.64);
  for (int n = 0; n < 50; ++n) {
    v.amplitudes[n] = c;
    c *= 0.8 / std::sqrt(n + 1.0);
  }
  const FieldState coh = make_state(Coherent{0.8});
  const FieldState custom = make_state(Custom{v});
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_NEAR(pjT_poisson_mixture(coh, g, T, j), poisson_pmf(g * T * 0.64, j), 1e-15);
    // The number-basis law is binomial thinning, which differs from Poisson at finite x.
    double expect = 0.0;
    const double x = g * T;
    for (int m = static_cast<int>(j); m < 50; ++m) {
      const double pm = std::norm(v.amplitudes[m]) / v.amplitudes.squaredNorm();
      const double cm = std::exp(std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0));
      expect += pm * cm * std::pow(x, j) * std::pow(1 - x, m - static_cast<int>(j));
    }
    EXPECT_NEAR(pjT_poisson_mixture(custom, g, T, j, tight), expect, 1e-14);
  }
  const FieldState th = make_state(Thermal{1.5});
  const double m = g * T * 1.5;
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_NEAR(pjT_poisson_mixture(th, g, T, j), std::pow(m, j) / std::pow(1 + m, j + 1), 1e-15);
  }
}

TEST(Clicks, SamplerIsDeterministicAndThreadInvariant) {
  ClickExperiment e;
  e.state = make_state(Thermal{1.0});
  e.gamma0 = 0.2;
  e.dt = 0.1;
  e.steps = 20;
  e.windows = 3000;
  e.seed = 42;
  const CountRecord a = sample_clicks(e);
  e.threads = 4;
  const CountRecord b = sample_clicks(e);
  EXPECT_EQ(a.counts, b.counts);
  e.seed = 43;
  EXPECT_NE(a.counts, sample_clicks(e).counts);
}

TEST(Clicks, SampledMeanMatchesLaw) {
  ClickExperiment e;
  e.state = make_state(Coherent{2.0});
  e.gamma0 = 0.05;
  e.dt = 1.0;
  e.steps = 10;
  e.windows = 40000;
  e.seed = 7;
  const CountRecord r = sample_clicks(e);
  const Estimate m = r.mean();
  EXPECT_LT(std::abs(*m.value - 2.0), 4.0 * *m.stderr_);
  e.law = ChainLaw::Binomial;
  const Estimate mb = sample_clicks(e).mean();
  EXPECT_LT(std::abs(*mb.value - 2.0), 4.0 * *mb.stderr_);
}

TEST(Clicks, NonPStateUsesNumberBasis) {
  ClickExperiment e;
  e.state = make_state(Fock{3});
  e.gamma0 = 0.5;
  e.dt = 1.0;
  e.windows = 1000;
  const CountRecord r = sample_clicks(e);
  for (auto c : r.counts) EXPECT_LE(c, 3u);
}

TEST(Clicks, ValidationRejectsBadExperiments) {
  ClickExperiment e;
  e.gamma0 = 1.0;
  e.dt = 1.0;
  e.windows = 0;
  EXPECT_THROW(validate(e), DomainError);
  e.windows = 1;
  e.gamma0 = 2.0;
  EXPECT_THROW(validate(e), DomainError);
}

TEST(Clicks, CsvRoundTrip) {
  const CountRecord r = make_record({0, 3, 1, 1, 0});
  std::stringstream ss;
  write_counts_csv(ss, r);
  EXPECT_EQ(ss.str().substr(0, 15), "window_index,j\n");
  const CountRecord back = read_counts_csv(ss);
  EXPECT_EQ(back.counts, r.counts);
  EXPECT_EQ(back.histogram, (std::vector<std::uint64_t>{2, 2, 0, 1}));
  std::stringstream bad("window_index,j\n0,-1\n");
  EXPECT_THROW(read_counts_csv(bad), DomainError);
}

TEST(Clicks, JackknifeOfKnownSample) {
  const CountRecord r = make_record({1, 2, 3, 4});
  EXPECT_NEAR(*r.mean().value, 2.5, 1e-15);
  EXPECT_NEAR(*r.mean().stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-14);
  EXPECT_NEAR(*r.variance().value, 5.0 / 3.0, 1e-14);
}

TEST(Clicks, FamilyLawsReduceToKnownCases) {
  const auto tm = thermal_mixture_pmf(1.3, 0.0, 8);
  for (std::size_t j = 0; j <= 8; ++j) EXPECT_NEAR(tm[j], poisson_pmf(1.3, j), 1e-15);
  const auto th = thermal_mixture_pmf(0.0, 0.9, 8);
  const auto sq = squeezed_count_pmf(0.9, 0.9, 8);
  for (std::size_t j = 0; j <= 8; ++j) {
    const double geo = std::pow(0.9, j) / std::pow(1.9, j + 1);
    EXPECT_NEAR(th[j], geo, 1e-15);
    EXPECT_NEAR(sq[j], geo, 1e-15);
  }
  // Displaced thermal: mean c + t, variance c + t + t^2 + 2 c t.
  const auto p = thermal_mixture_pmf(0.7, 0.4, 80);
  double m1 = 0, m2 = 0;
  for (std::size_t j = 0; j <= 80; ++j) {
    m1 += j * p[j];
    m2 += double(j) * j * p[j];
  }
  EXPECT_NEAR(m1, 1.1, 1e-12);
  EXPECT_NEAR(m2 - m1 * m1, 1.1 + 0.16 + 0.56, 1e-11);
}

TEST(Clicks, NullTestEdgeCases) {
  const NullTestReport one = test_coherent_null(make_record({2}));
  EXPECT_EQ(one.verdict, Verdict::Inconclusive);
  const NullTestReport zeros = test_coherent_null(make_record(std::vector<std::uint32_t>(50, 0)));
  EXPECT_EQ(zeros.verdict, Verdict::Inconclusive);
}

TEST(Clicks, NullTestSeparatesCoherentFromThermal) {
  ClickExperiment e;
  e.gamma0 = 1.0;
  e.dt = 1.0;
  e.windows = 5000;
  e.seed = 11;
  NullTestOptions o;
  o.bootstrap = 199;
  e.state = make_state(Thermal{1.0});
  EXPECT_EQ(test_coherent_null(sample_clicks(e), o).verdict, Verdict::Reject);
  e.state = make_state(Coherent{1.0});
  const NullTestReport r = test_coherent_null(sample_clicks(e), o);
  EXPECT_GE(*r.p_value, 1.0 / 200.0);
  EXPECT_LE(*r.p_value, 1.0);
}
