#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

#include "pathkit/errors.hpp"
#include "pathkit/pathway.hpp"
#include "pathkit/superstat.hpp"

using namespace pathkit;
using namespace pathkit::superstat;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
double half_line(F f) {
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  return ts.integrate(f, 0.0, 1.0, 1e-12) +
         es.integrate([&](double x) { return f(x + 1); }, 0.0, kInf, 1e-12);
}

SuperstatModel model(double gamma, double delta, double lam) {
  SuperstatModel m;
  m.gamma = gamma;
  m.delta = delta;
  m.lam = lam;
  return m;
}

SuperstatModel ext(double gamma, double delta, double lam, double alpha) {
  auto m = model(gamma, delta, lam);
  m.alpha = alpha;
  return m;
}

}  // namespace

TEST(Plain, ConditionalValues) {
  EXPECT_NEAR(conditional_pdf(model(0, 1, 1), 1.0, 1.0), std::exp(-1.0), 1e-15);
  // k1 = δ θ^{(γ+1)/δ} / Γ((γ+1)/δ) = 2 at γ = 1, δ = 2, θ = 1
  EXPECT_NEAR(conditional_pdf(model(1, 2, 1), 1.0, 1.0), 2 * std::exp(-1.0), 1e-14);
  EXPECT_NEAR(half_line([](double x) { return conditional_pdf(model(0.5, 1.5, 1), x, 2.0); }), 1.0,
              1e-10);
}

TEST(Plain, MarginalIsPathwayMember) {
  for (const auto& m : {model(0, 1, 1), model(1.5, 2, 0.7), model(-0.5, 0.8, 3)}) {
    const auto p = marginal_as_pathway(m);
    EXPECT_EQ(pathway::regime(p), pathway::Regime::Type2);
    for (double x : {0.1, 1.0, 3.7}) {
      EXPECT_NEAR(marginal_pdf(m, x), pathway::pdf(p, x), 1e-12 * marginal_pdf(m, x));
    }
  }
}

TEST(Plain, MarginalMixesConditionalOverPrior) {
  const auto m = model(0.5, 1.5, 2.0);
  for (double x : {0.3, 1.2}) {
    const double mix = half_line([&](double th) { return prior_pdf(m, th) * conditional_pdf(m, x, th); });
    EXPECT_NEAR(marginal_pdf(m, x), mix, 1e-10 * mix);
  }
}

TEST(Plain, PosteriorObeysBayesRule) {
  const auto m = model(1, 2, 1.5);
  for (double x : {0.4, 1.7}) {
    for (double th : {0.2, 1.0, 3.0}) {
      const double bayes = prior_pdf(m, th) * conditional_pdf(m, x, th) / marginal_pdf(m, x);
      EXPECT_NEAR(posterior_pdf(m, th, x), bayes, 1e-12 * bayes);
    }
    EXPECT_NEAR(half_line([&](double th) { return posterior_pdf(m, th, x); }), 1.0, 1e-10);
  }
}

TEST(Plain, BayesEstimate) {
  EXPECT_NEAR(bayes_estimate(model(0, 1, 1), 1.0), 1.0, 1e-15);
  const auto m = model(0.5, 1.5, 0.8);
  for (double x : {0.5, 2.0}) {
    const double mean = half_line([&](double th) { return th * posterior_pdf(m, th, x); });
    EXPECT_NEAR(bayes_estimate(m, x), mean, 1e-9 * mean);
  }
}

TEST(Extended, ValidationNeedsRoomForTheShape) {
  EXPECT_THROW(validate(ext(0, 1, 1, 2.5)), DomainError);  // 1/(α-1) <= (γ+1)/δ
  EXPECT_THROW(validate(model(-1, 1, 1)), DomainError);
  EXPECT_NO_THROW(validate(ext(0, 1, 1, 1.5)));
}

TEST(Extended, GFormMatchesQuadrature) {
  for (const auto& m : {ext(0, 1, 1, 1.5), ext(1, 2, 0.5, 1.2), ext(0.5, 1.5, 2, 1.05)}) {
    for (double x : {0.2, 1.0, 4.0}) {
      const double q = ext_marginal_pdf_quad(m, x);
      EXPECT_NEAR(ext_marginal_pdf(m, x), q, 1e-8 * q);
      const double bq = ext_bayes_estimate_quad(m, x);
      EXPECT_NEAR(ext_bayes_estimate(m, x), bq, 1e-8 * bq);
    }
  }
  EXPECT_NEAR(ext_marginal_pdf(ext(0, 1, 1, 1.5), 1.0), 0.167971701329, 1e-11);
}

TEST(Extended, ConditionalNormalizes) {
  const auto m = ext(0.5, 1.5, 1, 1.3);
  EXPECT_NEAR(half_line([&](double x) { return ext_conditional_pdf(m, x, 1.7); }), 1.0, 1e-10);
}

TEST(Extended, PosteriorObeysBayesRule) {
  const auto m = ext(1, 2, 1.5, 1.25);
  for (double x : {0.4, 1.7}) {
    for (double th : {0.2, 1.0, 3.0}) {
      const double bayes =
          prior_pdf(m, th) * ext_conditional_pdf(m, x, th) / ext_marginal_pdf(m, x);
      EXPECT_NEAR(ext_posterior_pdf(m, th, x), bayes, 1e-9 * bayes);
    }
    EXPECT_NEAR(half_line([&](double th) { return ext_posterior_pdf(m, th, x); }), 1.0, 1e-9);
  }
}

TEST(Extended, CollapsesToPlainModel) {
  const auto plain = model(0, 1, 1);
  double prev_m = kInf, prev_b = kInf;
  for (int k = 1; k <= 4; ++k) {
    const auto m = ext(0, 1, 1, 1 + std::pow(10.0, -k));
    double gm = 0, gb = 0;
    for (double x : {0.3, 1.0, 2.5}) {
      gm = std::max(gm, std::abs(ext_marginal_pdf(m, x) - marginal_pdf(plain, x)));
      gb = std::max(gb, std::abs(ext_bayes_estimate(m, x) - bayes_estimate(plain, x)));
    }
    EXPECT_LT(gm, prev_m);
    EXPECT_LT(gb, prev_b);
    prev_m = gm;
    prev_b = gb;
  }
  EXPECT_LT(prev_m, 1e-3);
  EXPECT_LT(prev_b, 1e-3);
  // within the regime tolerance the plain formulas are used directly
  EXPECT_EQ(ext_marginal_pdf(ext(0, 1, 1, 1 + 1e-9), 1.3), marginal_pdf(plain, 1.3));
}

TEST(Bessel, GammaModelNormalizes) {
  for (double db : {-0.5, 0.0, 0.5, 2.0}) {
    EXPECT_NEAR(half_line([&](double x) { return bessel_gamma_pdf(2, 1.2, 1, db, x); }), 1.0, 1e-9)
        << "delta_b " << db;
  }
}

TEST(Bessel, ZeroCouplingIsGeneralizedGamma) {
  const double x = 1.3;
  const double want = 1.2 * x * std::exp(-std::pow(x, 1.2)) / boost::math::tgamma(2 / 1.2);
  EXPECT_NEAR(bessel_gamma_pdf(2, 1.2, 1, 0.0, x), want, 1e-13);
}

TEST(Bessel, PathwayModelNormalizes) {
  for (double db : {-0.5, 0.5}) {
    for (double alpha : {-1.0, 0.0, 0.5, 0.9}) {
      const double hi = std::pow(1 - alpha, -1 / 1.2);
      boost::math::quadrature::tanh_sinh<double> ts;
      const double mass =
          ts.integrate([&](double x) { return bessel_pathway_pdf(2, 1.2, 1, db, alpha, x); }, 0.0, hi, 1e-12);
      EXPECT_NEAR(mass, 1.0, 1e-9) << "delta_b " << db << " alpha " << alpha;
    }
  }
  for (double alpha : {1.1, 1.3}) {
    EXPECT_NEAR(half_line([&](double x) { return bessel_pathway_pdf(2, 1.2, 1, 0.0, alpha, x); }), 1.0,
                1e-8);
  }
}

TEST(Bessel, PathwayLimitIsBesselGamma) {
  for (double x : {0.5, 1.5}) {
    const double want = bessel_gamma_pdf(2, 1.2, 1, -0.5, x);
    EXPECT_NEAR(bessel_pathway_pdf(2, 1.2, 1, -0.5, 1 - 1e-4, x), want, 1e-3);
    EXPECT_NEAR(bessel_pathway_pdf(2, 1.2, 1, -0.5, 1 + 1e-4, x), want, 1e-3);
  }
}

TEST(Bessel, PositiveCouplingAboveOneIsNotNormalizable) {
  EXPECT_THROW(bessel_pathway_pdf(2, 1.2, 1, 0.5, 1.5, 1.0), DomainError);
  EXPECT_THROW(bessel_pathway_log_norm(2, 1.2, 1, 0.0, 3.0), DomainError);
}
