#include <gtest/gtest.h>

#include <cmath>

#include "acoh/detector.hpp"
#include "acoh/error.hpp"
#include "acoh/oracle.hpp"

using namespace acoh;

namespace {

const TruncationPolicy kTight{1e-18, 4096};

FieldState coherent_as_custom(cplx alpha, std::size_t dim) {
  FockVector v;
  v.amplitudes.resize(static_cast<Eigen::Index>(dim));
  cplx c = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n < dim; ++n) {
    v.amplitudes[static_cast<Eigen::Index>(n)] = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return make_state(Custom{v});
}

}  // namespace

TEST(Detector, TermReductionsMatchOperatorWords) {
  const FieldState s = make_state(Gaussian{0.8, 0.3, 0.5, 0.2});
  const PerturbativeTerms t = perturbative_terms(s);
  EXPECT_NEAR(t.n_sq, word_expectation(s, "AaAa", kTight).real(), 1e-10);
  EXPECT_NEAR(t.n_cube, word_expectation(s, "AaAaAa", kTight).real(), 1e-10);
  EXPECT_NEAR(t.n_a2, word_expectation(s, "AaAAaa", kTight).real(), 1e-10);
  EXPECT_NEAR(t.a2_n, word_expectation(s, "AAaaAa", kTight).real(), 1e-10);
  EXPECT_NEAR(t.w, word_expectation(s, "AAaAaa", kTight).real(), 1e-10);
}

TEST(Detector, ExactRouteMatchesOracle) {
  const DetectorCoupling k = DetectorCoupling::from_kappa(0.35);
  for (const FieldState& s : {make_state(Coherent{cplx(0.9, -0.6)}), make_state(Thermal{1.4})}) {
    const CountDistribution o = detector_pn_oracle(s, k, 5);
    for (int n = 0; n <= 5; ++n) EXPECT_NEAR(pn_exact(s, k, n), o.probs[n], 1e-12) << s.describe();
  }
  EXPECT_THROW(pn_exact(make_state(Fock{2}), k, 1), UnsupportedError);
}

TEST(Detector, SmallAngleKernelUsesGammaDt) {
  const DetectorCoupling k = DetectorCoupling::from_rate(2.0, 0.01, 0.5);
  const FieldState s = make_state(Coherent{2.0});
  const double mu = 4.0 * 0.5 * 0.02;
  EXPECT_NEAR(pn_exact(s, k, 1, Kernel::SmallAngle), mu * std::exp(-mu), 1e-15);
}

TEST(Detector, PerturbativeApproachesOracle) {
  const FieldState s = make_state(Thermal{0.5});
  const double kappa = 0.05;
  const CountDistribution o = detector_pn_oracle(s, DetectorCoupling::from_kappa(kappa), 3, {kTight, 1e-16});
  for (int n = 0; n <= 3; ++n) {
    EXPECT_NEAR(pn_perturbative(s, DetectorCoupling::from_kappa(kappa), n), o.probs[n], 1e-10);
  }
  EXPECT_THROW(pn_perturbative(s, DetectorCoupling::from_kappa(kappa), 4), UnsupportedError);
}

TEST(Detector, LeadingOrderTerms) {
  const PerturbativeTerms t = PerturbativeTerms::from_moments(2.0, 3.0, 5.0);
  const double k = 0.1;
  EXPECT_DOUBLE_EQ(pn_perturbative(t, k, 0, SeriesOrder::Leading), 1.0);
  EXPECT_NEAR(pn_perturbative(t, k, 1, SeriesOrder::Leading), k * k * 2.0, 1e-16);
  EXPECT_NEAR(pn_perturbative(t, k, 2, SeriesOrder::Leading), std::pow(k, 4) * 1.5, 1e-18);
  EXPECT_NEAR(pn_perturbative(t, k, 3, SeriesOrder::Leading), std::pow(k, 6) * 5.0 / 6.0, 1e-20);
}

TEST(Detector, BchClosedFormMatchesNumberBasis) {
  const cplx alpha(1.2, 0.3);
  const DetectorCoupling k = DetectorCoupling::from_kappa(0.2);
  const FieldState closed = make_state(Coherent{alpha});
  const FieldState numeric = coherent_as_custom(alpha, 60);
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(pn_bch(closed, k, n), pn_bch(numeric, k, n), 1e-13);
}

TEST(Detector, GaussianP0MatchesOracleExpectation) {
  for (const FieldState& s : {make_state(Gaussian{1.0, 0.5, 0.8, 0.6}), make_state(SqueezedVacuum{0.7}),
                              make_state(Thermal{2.0}), make_state(Coherent{cplx(1.0, 1.0)})}) {
    const GaussianPhaseSpace g = to_gaussian(s);
    for (double lam : {0.01, 0.3, 2.0}) {
      const double ref = exp_number_expectation(s, lam, kTight);
      EXPECT_NEAR(gaussian_p0(g, lam) / ref, 1.0, 1e-10) << s.describe() << " lambda=" << lam;
    }
  }
}

TEST(Detector, GaussianHigherOrdersMatchBch) {
  const FieldState s = make_state(Gaussian{0.7, 0.4, 1.9, 0.25});
  const GaussianPhaseSpace g = to_gaussian(s);
  const double kappa = 0.4;
  const DetectorCoupling k = DetectorCoupling::from_kappa(kappa);
  const auto [p1, p2] = gaussian_p1_p2(g, kappa * kappa);
  EXPECT_NEAR(p1, pn_bch(s, k, 1, kTight), 1e-12);
  EXPECT_NEAR(p2, pn_bch(s, k, 2, kTight), 1e-12);
  for (int n = 0; n <= 5; ++n) EXPECT_NEAR(pn_gaussian(g, kappa * kappa, n), pn_bch(s, k, n, kTight), 1e-12);
}

TEST(Detector, EffectiveCoupling) {
  const DetectorCoupling k = DetectorCoupling::from_kappa(0.7, 0.3);
  EXPECT_NEAR(std::pow(std::sin(effective_kappa(k)), 2), 0.3 * std::pow(std::sin(0.7), 2), 1e-15);
  EXPECT_NEAR(effective_lambda(k), std::pow(effective_kappa(k), 2), 1e-15);
  EXPECT_NEAR(effective_kappa(DetectorCoupling::from_kappa(0.7)), 0.7, 1e-15);
}

TEST(Detector, DispatcherValidatesAndWarns) {
  const DetectorCoupling k = DetectorCoupling::from_kappa(0.5);
  EXPECT_THROW(probabilities(make_state(Fock{3}), k, 3, Method::PRepresentation), UnsupportedError);
  EXPECT_THROW(probabilities(make_state(Fock{3}), k, 3, Method::GaussianOverlap), UnsupportedError);
  const CountDistribution d = probabilities(make_state(Thermal{2.0}), k, 5, Method::Perturbative);
  EXPECT_EQ(d.probs.size(), 4u);
  EXPECT_FALSE(d.warnings.empty());
  const CountDistribution z = probabilities(make_state(Coherent{1.0}), DetectorCoupling::from_kappa(0.0), 3,
                                            Method::PRepresentation);
  EXPECT_DOUBLE_EQ(z.probs[0], 1.0);
  EXPECT_THROW(DetectorCoupling::from_kappa(0.1, 1.5), DomainError);
  EXPECT_THROW(DetectorCoupling::from_rate(-1.0, 1.0), DomainError);
}

TEST(Detector, EfficiencyMatchesAttenuatedCoherentOracle) {
  const double kappa = std::asin(0.1);
  const DetectorCoupling k = DetectorCoupling::from_kappa(kappa, 0.5);
  const FieldState s = make_state(Coherent{2.0});
  // Losing half the light before the detector leaves a coherent state of
  // amplitude alpha sqrt(eta).
  const CountDistribution o =
      detector_pn_oracle(make_state(Coherent{2.0 * std::sqrt(0.5)}), DetectorCoupling::from_kappa(kappa), 3);
  for (int n = 0; n <= 3; ++n) {
    const double poisson = std::exp(n * std::log(0.02) - 0.02 - std::lgamma(n + 1.0));
    EXPECT_NEAR(pn_exact(s, k, n), poisson, 1e-15);
    EXPECT_NEAR(o.probs[n], poisson, 1e-13);
  }
}

TEST(Detector, GaussianP0AtSpecPoint) {
  const FieldState s = make_state(Gaussian{2.0, 0.5, 0.0, 1.0});
  const double ref = exp_number_expectation(s, 0.02, kTight);
  EXPECT_NEAR(gaussian_p0(to_gaussian(s), DetectorCoupling::from_rate(0.02, 1.0)) / ref, 1.0, 1e-6);
}
