#include <gtest/gtest.h>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pathkit/errors.hpp"
#include "pathkit/pathway.hpp"

using namespace pathkit;
using namespace pathkit::pathway;

namespace {

PathwayParams make(double alpha, double a, double delta, double gamma, double eta,
                   bool symmetric = false) {
  return PathwayParams{alpha, a, delta, gamma, eta, symmetric};
}

// Mass on [0, support) by Boost quadrature, independent of the library's
// own integration layer.
double mass(const PathwayParams& p) {
  const auto f = [&](double x) { return pdf(p, x); };
  const Interval s = support(p);
  double total = 0;
  if (std::isfinite(s.hi)) {
    boost::math::quadrature::tanh_sinh<double> ts;
    total = ts.integrate(f, 0.0, s.hi, 1e-13);
  } else {
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    total = ts.integrate(f, 0.0, 1.0, 1e-13) + es.integrate([&](double x) { return f(x + 1); }, 0.0,
                                                             std::numeric_limits<double>::infinity(),
                                                             1e-13);
  }
  return p.symmetric ? 2 * total : total;
}

double ks_statistic(std::vector<double> xs, const PathwayParams& p) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = cdf(p, xs[i]);
    d = std::max({d, c - i / n, (i + 1) / n - c});
  }
  return d;
}

}  // namespace

TEST(Regime, Classification) {
  EXPECT_EQ(regime(make(0.5, 1, 1, 1, 1)), Regime::Type1);
  EXPECT_EQ(regime(make(1.0, 1, 1, 1, 1)), Regime::Gamma);
  EXPECT_EQ(regime(make(1 + 1e-7, 1, 1, 1, 1)), Regime::Gamma);
  EXPECT_EQ(regime(make(1.5, 1, 1, 1, 1)), Regime::Type2);
  EXPECT_EQ(regime_name(Regime::Type2), "type2");
}

TEST(Validate, RejectsOutOfDomain) {
  EXPECT_THROW(validate(make(0.5, 0, 1, 1, 1)), DomainError);
  EXPECT_THROW(validate(make(0.5, 1, -1, 1, 1)), DomainError);
  EXPECT_THROW(validate(make(0.5, 1, 1, 0, 1)), DomainError);
  EXPECT_THROW(validate(make(0.5, 1, 1, 1, 0)), DomainError);
  // type-2 tail x^{γ-1-δη/(α-1)} must be integrable
  EXPECT_THROW(validate(make(3.0, 1, 1, 1, 1)), DomainError);
  EXPECT_NO_THROW(validate(make(1.5, 1, 1, 1, 1)));
}

TEST(Support, Type1IsBounded) {
  const auto s = support(make(0.5, 2, 2, 1, 1));
  EXPECT_DOUBLE_EQ(s.lo, 0.0);
  EXPECT_NEAR(s.hi, 1.0, 1e-15);
  EXPECT_TRUE(std::isinf(support(make(1.5, 1, 1, 1, 1)).hi));
  EXPECT_LT(support(make(0.5, 1, 1, 1, 1, true)).lo, 0.0);
}

TEST(Density, Type1WithUnitPowerIsBeta) {
  // x (1-x)^3 on (0, 1) is Beta(2, 4)
  const auto p = make(0.0, 1, 1, 2, 3);
  const boost::math::beta_distribution<double> beta(2, 4);
  for (double x : {0.05, 0.3, 0.7, 0.99}) {
    EXPECT_NEAR(pdf(p, x), boost::math::pdf(beta, x), 1e-12);
    EXPECT_NEAR(cdf(p, x), boost::math::cdf(beta, x), 1e-10);
  }
  EXPECT_EQ(pdf(p, 1.2), 0.0);
}

TEST(Density, Type2WithUnitPowerIsBetaPrime) {
  // 2x (1+x)^{-3}
  const auto p = make(2.0, 1, 1, 2, 3);
  for (double x : {0.1, 1.0, 7.5}) {
    EXPECT_NEAR(pdf(p, x), 2 * x / std::pow(1 + x, 3), 1e-13);
  }
}

TEST(Density, GammaLimitIsGeneralizedGamma) {
  // δ a^{γ/δ} x^{γ-1} e^{-a x^δ} / Γ(γ/δ) with a η folded into a
  const auto p = make(1.0, 0.5, 2, 3, 2);
  for (double x : {0.2, 1.0, 2.3}) {
    const double want = 2 * std::pow(1.0, 1.5) * x * x * std::exp(-x * x) / boost::math::tgamma(1.5);
    EXPECT_NEAR(pdf(p, x), want, 1e-13);
  }
}

TEST(Density, NormalizesAcrossRegimes) {
  for (const auto& p :
       {make(-1, 1, 1, 1, 1), make(0.3, 2, 2, 1.5, 0.7), make(0.9, 1, 0.5, 2, 3),
        make(1, 1, 2, 1, 1), make(1, 3, 0.7, 0.4, 1), make(1.3, 1, 2, 1, 1),
        make(1.8, 0.5, 1.5, 2, 2), make(0.5, 1, 2, 1, 1, true), make(1.5, 1, 2, 1, 1, true)}) {
    EXPECT_NEAR(mass(p), 1.0, 1e-9) << "alpha " << p.alpha << " delta " << p.delta;
  }
}

TEST(Cdf, MonotoneAndInvertedByQuantile) {
  for (const auto& p : {make(0.5, 1, 2, 1, 1), make(1, 1, 1, 2, 1), make(1.5, 1, 1, 1, 1),
                        make(1.2, 1, 2, 1, 1, true)}) {
    double prev = -HUGE_VAL;
    for (double u : {0.01, 0.1, 0.4, 0.5, 0.9, 0.999}) {
      const double x = quantile(p, u);
      EXPECT_GT(x, prev);
      EXPECT_NEAR(cdf(p, x), u, 1e-10);
      prev = x;
    }
  }
}

TEST(Moment, MatchesQuadrature) {
  for (const auto& p : {make(0.5, 1, 2, 1, 1), make(1, 2, 1, 1.5, 1), make(1.4, 1, 2, 1, 2)}) {
    for (double h : {0.5, 1.0, 2.0}) {
      boost::math::quadrature::exp_sinh<double> es;
      const auto s = support(p);
      double want = 0;
      if (std::isfinite(s.hi)) {
        boost::math::quadrature::tanh_sinh<double> ts;
        want = ts.integrate([&](double x) { return std::pow(x, h) * pdf(p, x); }, 0.0, s.hi, 1e-12);
      } else {
        want = es.integrate([&](double x) { return std::pow(x, h) * pdf(p, x); }, 0.0,
                            std::numeric_limits<double>::infinity(), 1e-12);
      }
      EXPECT_NEAR(moment(p, h), want, 1e-8 * want);
    }
  }
}

TEST(Moment, DivergentTypeTwoMomentIsDomainError) {
  EXPECT_THROW(moment(make(1.5, 1, 1, 1, 1), 1.0), DomainError);
  EXPECT_NO_THROW(moment(make(1.5, 1, 1, 1, 1), 0.5));
}

TEST(Sample, PassesKolmogorovSmirnov) {
  std::mt19937_64 rng(7);
  const std::size_t n = 5000;
  const double crit = 1.628 / std::sqrt(static_cast<double>(n));  // 1% level
  for (const auto& p : {make(0.5, 1, 2, 1, 1), make(1, 1, 1, 2, 1), make(1.5, 1, 2, 1, 1),
                        make(0.2, 1, 1, 1, 1, true)}) {
    EXPECT_LT(ks_statistic(sample(p, rng, n), p), crit);
  }
}

TEST(Sample, DeterministicForSeed) {
  std::mt19937_64 a(3), b(3);
  const auto p = make(1.3, 1, 1, 1, 1);
  EXPECT_EQ(sample(p, a, 50), sample(p, b, 50));
}

TEST(Cutoff, AlphaPutsSupportEndAtCutoff) {
  const double alpha = alpha_from_cutoff(2.0, 1.5, 3.0);
  EXPECT_NEAR(support(make(alpha, 2.0, 1.5, 1, 1)).hi, 3.0, 1e-12);
}

TEST(Fit, RecoversAlphaOnEachBranch) {
  for (double alpha : {0.5, 1.25}) {
    std::mt19937_64 rng(11);
    const auto p = make(alpha, 1, 1, 1, 1);
    const auto xs = sample(p, rng, 200000);
    const auto fit = fit_alpha_moments(xs, 1, 1, 1, 1);
    EXPECT_NEAR(fit.alpha, alpha, 0.03);
  }
}

TEST(Fit, TooFewSamplesIsFitError) {
  std::vector<double> xs(10, 1.0);
  EXPECT_THROW(fit_alpha_moments(xs, 1, 1, 1, 1), FitError);
}

TEST(PowerLaw, ResidualVanishesInEveryRegime) {
  for (double alpha : {0.3, 1.0, 1.7}) {
    const auto p = make(alpha, 1.3, 1, 1, 1);
    for (double x : {0.1, 0.4, 0.7}) EXPECT_LT(std::abs(power_law_residual(p, x)), 1e-6);
  }
  EXPECT_THROW(power_law_residual(make(0.5, 1, 2, 1, 1), 0.5), DomainError);
}

TEST(SpecialCases, CuratedReductions) {
  EXPECT_EQ(reduce_special_case(make(1, 1, 1, 1, 1)), SpecialCase::exponential);
  EXPECT_EQ(reduce_special_case(make(2, 1, 2, 1, 1, true)), SpecialCase::cauchy);
  EXPECT_EQ(reduce_special_case(make(2, 0.2, 2, 1, 3, true)), SpecialCase::student_t);
  EXPECT_EQ(reduce_special_case(make(0.5, 2, 1, 3, 2)), SpecialCase::type1_beta);
  EXPECT_EQ(reduce_special_case(make(1, 1, 2, 1, 1, true)), std::nullopt);
}

TEST(SpecialCases, VerbatimRegistry) {
  const auto g = reduce_special_case(make(1, 1, 1, 1, 1, true), Registry::Verbatim);
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(special_case_name(*g), "gaussian");
  EXPECT_EQ(reduce_special_case(make(1, 1, 1, 1.75, 1), Registry::Verbatim),
            SpecialCase::maxwell_boltzmann);
}

TEST(SpecialCases, EveryRowHasAName) {
  for (auto reg : {Registry::Curated, Registry::Verbatim}) {
    const auto& rows = special_case_rows(reg);
    EXPECT_FALSE(rows.empty());
    for (const auto& r : rows) EXPECT_FALSE(special_case_name(r.tag).empty());
  }
}
