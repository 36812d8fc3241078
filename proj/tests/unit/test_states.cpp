#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "acoh/error.hpp"
#include "acoh/oracle.hpp"
#include "acoh/states.hpp"

using namespace acoh;

TEST(States, CanonicalForms) {
  EXPECT_TRUE(make_state(SqueezedVacuum{0.0}).is<Coherent>());
  EXPECT_TRUE(make_state(Gaussian{0.0, 0.0, 0.3, 1.5}).is<Thermal>());
  const FieldState c = make_state(Gaussian{2.0, 0.0, 0.0, 0.0});
  ASSERT_TRUE(c.is<Coherent>());
  EXPECT_NEAR(c.as<Coherent>().alpha.real(), std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(make_state(Gaussian{0.0, 0.8, 0.0, 0.0}).is<SqueezedVacuum>());
  EXPECT_TRUE(make_state(Gaussian{1.0, 0.8, 0.0, 0.2}).is<Gaussian>());
}

TEST(States, ValidationRejectsBadParameters) {
  EXPECT_THROW(make_state(Thermal{-0.1}), DomainError);
  EXPECT_THROW(make_state(SqueezedVacuum{-1.0}), DomainError);
  EXPECT_THROW(make_state(Coherent{cplx(NAN, 0)}), DomainError);
  EXPECT_THROW(make_state(Custom{FockVector{Eigen::VectorXcd::Zero(3), 0.0}}), DomainError);
}

TEST(States, CustomIsNormalized) {
  FockVector v;
  v.amplitudes = Eigen::VectorXcd::Ones(4);
  const FieldState s = make_state(Custom{v});
  EXPECT_NEAR(s.as<Custom>().vector.norm_squared(), 1.0, 1e-15);
  EXPECT_NEAR(s.mean_number(), 1.5, 1e-14);
}

TEST(States, ThermalDistributionIsGeometric) {
  const double n = 1.7;
  const NumberDistribution d = number_distribution(make_state(Thermal{n}), 40);
  for (std::size_t k = 0; k < 40; ++k) EXPECT_NEAR(d.probs[k], std::pow(n, k) / std::pow(1 + n, k + 1), 1e-15);
  EXPECT_NEAR(d.tail_mass, std::pow(n / (1 + n), 40), 1e-15);
}

TEST(States, CoherentDistributionIsPoisson) {
  const double mu = 3.2;
  const NumberDistribution d = number_distribution(make_state(Coherent{std::sqrt(mu)}), 60);
  double pk = std::exp(-mu);
  for (std::size_t k = 0; k < 60; ++k) {
    EXPECT_NEAR(d.probs[k], pk, 1e-15);
    pk *= mu / static_cast<double>(k + 1);
  }
}

TEST(States, SqueezedVacuumHasEvenSupport) {
  const double r = 0.9;
  const FockVector v = to_fock_vector(make_state(SqueezedVacuum{r}), 60);
  for (Eigen::Index k = 1; k < 60; k += 2) EXPECT_EQ(std::abs(v.amplitudes[k]), 0.0);
  // |c_2k|^2 = (2k)!/(2^k k!)^2 tanh^2k r / cosh r.
  const double t = std::tanh(r);
  for (int k = 0; k < 10; ++k) {
    const double w = std::exp(std::lgamma(2.0 * k + 1) - 2.0 * (k * std::log(2.0) + std::lgamma(k + 1.0)));
    EXPECT_NEAR(std::norm(v.amplitudes[2 * k]), w * std::pow(t, 2 * k) / std::cosh(r), 1e-14);
  }
}

TEST(States, PhaseSpaceMatchesFockMoments) {
  const double x0 = 1.2, r = 0.4, phi = 0.7, nth = 0.3;
  const FieldState s = make_state(Gaussian{x0, r, phi, nth});
  const GaussianPhaseSpace g = to_gaussian(s);
  EXPECT_NO_THROW(g.check());
  EXPECT_NEAR(g.cov.determinant(), std::pow(nth + 0.5, 2), 1e-13);
  const TruncationPolicy tight{1e-16, 4096};
  // <x> = sqrt2 Re<a>, <x^2> from the number moment.
  const cplx a = word_expectation(s, "a", tight);
  EXPECT_NEAR(std::sqrt(2.0) * a.real(), g.mean[0], 1e-10);
  EXPECT_NEAR(std::sqrt(2.0) * a.imag(), g.mean[1], 1e-10);
  const double n = word_expectation(s, "Aa", tight).real();
  const double n_ps = 0.5 * (g.cov.trace() + g.mean.squaredNorm()) - 0.5;
  EXPECT_NEAR(n, n_ps, 1e-10);
  EXPECT_NEAR(s.mean_number(), n, 1e-10);
}

TEST(States, AnalyticMomentsMatchNumberDistribution) {
  const TruncationPolicy tight{1e-18, 4096};
  for (const FieldState& s :
       {make_state(Thermal{0.8}), make_state(SqueezedVacuum{0.6}), make_state(Gaussian{1.0, 0.3, 1.1, 0.4}),
        make_state(Coherent{cplx(0.5, 0.7)}), make_state(Fock{4})}) {
    const NumberDistribution d = number_distribution(s, tight);
    for (int j = 1; j <= 3; ++j) {
      double m = 0.0;
      for (std::size_t k = 0; k < d.dim(); ++k) {
        double f = 1.0;
        for (int i = 0; i < j; ++i) f *= static_cast<double>(k) - i;
        m += d.probs[k] * f;
      }
      EXPECT_NEAR(analytic_moment(s, j), m, 1e-9 * std::max(1.0, m)) << s.describe() << " j=" << j;
    }
  }
}

TEST(States, AdaptiveTruncationRespectsBound) {
  const TruncationPolicy p{1e-12, 4096};
  const NumberDistribution d = number_distribution(make_state(Thermal{5.0}), p);
  EXPECT_LE(d.tail_mass, 1e-12);
  EXPECT_THROW(number_distribution(make_state(Thermal{50.0}), TruncationPolicy{1e-12, 64}), TruncationError);
}

TEST(States, PFunctionAvailability) {
  EXPECT_TRUE(has_p_function(make_state(Coherent{1.0})));
  EXPECT_TRUE(has_p_function(make_state(Thermal{1.0})));
  EXPECT_FALSE(has_p_function(make_state(Fock{2})));
  EXPECT_FALSE(has_p_function(make_state(SqueezedVacuum{0.5})));
  EXPECT_THROW(to_gaussian(make_state(Fock{2})), UnsupportedError);
}
