#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "acoh/oracle.hpp"
#include "acoh/statistics.hpp"

using namespace acoh;

TEST(Statistics, MandelQPerClass) {
  EXPECT_NEAR(*mandel_q(make_state(Coherent{1.3})), 0.0, 1e-14);
  EXPECT_NEAR(*mandel_q(make_state(Thermal{0.7})), 0.7, 1e-14);
  EXPECT_NEAR(*mandel_q(make_state(Fock{4})), -1.0, 1e-15);
  const double r = 0.8;
  EXPECT_NEAR(*mandel_q(make_state(SqueezedVacuum{r})), std::cosh(2 * r), 1e-12);
  EXPECT_FALSE(mandel_q(make_state(Fock{0})).defined());
}

TEST(Statistics, MandelQMatchesNumberDistribution) {
  const FieldState s = make_state(Gaussian{1.5, 0.6, 0.4, 0.3});
  const NumberDistribution d = number_distribution(s, TruncationPolicy{1e-18, 4096});
  double m1 = 0, m2 = 0;
  for (std::size_t k = 0; k < d.dim(); ++k) {
    m1 += k * d.probs[k];
    m2 += double(k) * k * d.probs[k];
  }
  EXPECT_NEAR(*mandel_q(s), (m2 - m1 * m1 - m1) / m1, 1e-9);
}

TEST(Statistics, CountVarianceLaw) {
  const DetectorCoupling k = DetectorCoupling::from_rate(0.05, 1.0);
  const FieldState s = make_state(Thermal{2.0});
  const double nbar = mean_counts(s, k, Kernel::SmallAngle);
  EXPECT_NEAR(nbar, 0.1, 1e-15);
  EXPECT_NEAR(variance_counts(s, k, Kernel::SmallAngle) - nbar, 0.05 * 0.05 * 4.0, 1e-15);
  EXPECT_NEAR(variance_counts(s, k, Kernel::SmallAngle, VarianceForm::Approximate) - nbar, 0.05 * 0.05 * 4.0,
              1e-15);
}

TEST(Statistics, RatioEdgeCases) {
  const RatioResult r = ratio_R(std::vector<double>{0.9, 0.1, 0.0, 0.0});
  ASSERT_TRUE(r.r.defined());
  EXPECT_EQ(*r.r, 0.0);
  EXPECT_FALSE(r.r_prime.defined());
  EXPECT_FALSE(ratio_R(std::vector<double>{1.0, 0.0, 0.0, 0.0}).r.defined());
  EXPECT_FALSE(ratio_R(std::vector<double>{0.5, 0.3}).r.defined());
  const RatioResult lo = leading_order_ratios(make_state(Fock{1}));
  EXPECT_EQ(*lo.r, 0.0);
  EXPECT_FALSE(lo.r_prime.defined());
}

TEST(Statistics, ReferenceRatios) {
  EXPECT_DOUBLE_EQ(*reference_R(make_state(Coherent{1.0})), 1.0);
  EXPECT_DOUBLE_EQ(*reference_R(make_state(Thermal{3.0})), 2.0);
  EXPECT_NEAR(*reference_R(make_state(Fock{4})), 0.75, 1e-15);
  const double r = 0.5;
  EXPECT_NEAR(*reference_R(make_state(SqueezedVacuum{r})), 2.0 + std::pow(1.0 / std::tanh(r), 2), 1e-13);
}

TEST(Statistics, GaussianRatioMatchesLeadingMoments) {
  // Leading-order R is m2/m1^2, independent of the closed form.
  for (const auto& p : {std::array<double, 4>{1.0, 0.3, 0.4, 0.2}, std::array<double, 4>{0.5, 0.9, 2.0, 1.1}}) {
    const FieldState s = make_state(Gaussian{p[0], p[1], p[2], p[3]});
    const double m1 = analytic_moment(s, 1), m2 = analytic_moment(s, 2);
    EXPECT_NEAR(*ratio_R_gaussian(p[0], p[1], p[2], p[3]), m2 / (m1 * m1), 1e-10);
  }
}

TEST(Statistics, Classification) {
  EXPECT_EQ(classify_ratio(1.0), "maximally classical");
  EXPECT_EQ(classify_ratio(2.01), "thermal-like");
  EXPECT_EQ(classify_ratio(0.5), "sub-Poissonian");
  EXPECT_EQ(classify_ratio(3.5), "squeezed-like");
  EXPECT_EQ(classify_ratio(1.5), "super-Poissonian");
  EXPECT_EQ(classify_q(-0.3), Dispersion::SubPoissonian);
  EXPECT_EQ(classify_q(0.0), Dispersion::Poissonian);
}

TEST(Statistics, RatioFromQ) {
  EXPECT_NEAR(*r_from_q(1.0, 1.0), 2.0, 1e-15);
  EXPECT_FALSE(r_from_q(0.0, 0.0).defined());
}

TEST(Statistics, RatioFromQApproachesFullRatioAsKappaShrinks) {
  const FieldState s = make_state(SqueezedVacuum{0.8});
  const double target = *r_from_q(*mandel_q(s), s.mean_number());
  EXPECT_NEAR(target, 2.0 + std::pow(1.0 / std::tanh(0.8), 2), 1e-12);
  const auto gap = [&](double kappa) {
    OracleOptions o;
    o.truncation = {1e-18, 4096};
    return std::abs(*ratio_R(detector_pn_oracle(s, DetectorCoupling::from_kappa(kappa), 3, o)).r - target);
  };
  const double g1 = gap(0.1), g2 = gap(0.05);
  EXPECT_NEAR(g1 / g2, 4.0, 0.2);
}
