#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>

#include "pathkit/errors.hpp"
#include "pathkit/fracint.hpp"

using namespace pathkit;
using namespace pathkit::fracint;

namespace {

const Function one = [](double) { return 1.0; };

}  // namespace

TEST(PathwayFrac, PolynomialValues) {
  EXPECT_NEAR(pathway_frac_integral(one, 2.0, 1.0, 0.0, 1.0), 2.0, 1e-12);
  // ∫_0^1 (1 - t) t dt
  EXPECT_NEAR(pathway_frac_integral([](double t) { return t; }, 1.0, 2.0, 0.0, 1.0), 1.0 / 6,
              1e-13);
  // constant input: x^η / (aη) for every α < 1
  for (double alpha : {-2.0, 0.0, 0.9}) {
    EXPECT_NEAR(pathway_frac_integral(one, 1.5, 0.7, alpha, 2.0), std::pow(1.5, 0.7) / 1.4, 1e-12);
  }
}

TEST(PathwayFrac, IsGammaTimesRiemannLiouville) {
  const Function f = [](double t) { return std::cos(t) + t * t; };
  for (double eta : {0.3, 1.0, 2.5}) {
    for (double x : {0.5, 2.0}) {
      const double rl = rl_integral(f, x, eta);
      EXPECT_NEAR(pathway_frac_integral(f, x, eta, 0.0, 1.0), boost::math::tgamma(eta) * rl,
                  1e-11 * std::abs(rl) * boost::math::tgamma(eta));
    }
  }
}

TEST(PathwayFrac, DomainChecks) {
  EXPECT_THROW(pathway_frac_integral(one, 1.0, 1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(pathway_frac_integral(one, -1.0, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(pathway_frac_integral(one, 1.0, 0.0, 0.0, 1.0), DomainError);
}

TEST(RiemannLiouville, PowerRule) {
  for (double mu : {0.0, 0.5, 2.0}) {
    for (double eta : {0.25, 1.0, 1.7}) {
      const double x = 1.3;
      const double got = rl_integral([mu](double t) { return std::pow(t, mu); }, x, eta);
      const double want =
          boost::math::tgamma(mu + 1) / boost::math::tgamma(mu + eta + 1) * std::pow(x, mu + eta);
      EXPECT_NEAR(got, want, 1e-11 * want) << "mu " << mu << " eta " << eta;
    }
  }
}

TEST(RiemannLiouville, Semigroup) {
  const Function f = [](double t) { return std::exp(-t); };
  const double x = 1.2;
  const Function inner = [&](double t) { return t > 0 ? rl_integral(f, t, 0.6) : 0.0; };
  const double nested = rl_integral(inner, x, 0.9);
  EXPECT_NEAR(nested, rl_integral(f, x, 1.5), 1e-9);
}

TEST(Saigo, ReducesToRiemannLiouville) {
  const Function f = [](double t) { return 1 + std::sin(t); };
  for (double eta : {0.5, 1.5}) {
    const double rl = rl_integral(f, 1.7, eta);
    // γ = 0 makes the hypergeometric weight identically 1
    EXPECT_NEAR(saigo_integral(f, 1.7, eta, 0.8, 0.0), rl, 1e-11 * rl);
    // so does β = -η
    EXPECT_NEAR(saigo_integral(f, 1.7, eta, -eta, 1.3), rl, 1e-11 * rl);
  }
}

TEST(Saigo, GenericWeight) {
  // 2F1(1, -1; 1/2; z) = 1 - 2z, ∫_0^1 u^{-1/2} (1 - 2u) du = 2/3
  EXPECT_NEAR(saigo_integral(one, 1.0, 0.5, 0.5, 1.0), 2.0 / 3 / std::sqrt(M_PI), 1e-12);
}

TEST(LaplaceLimit, ApproachedMonotonically) {
  const Function f = [](double t) { return t / (1 + t); };
  const double x = 1.5, eta = 1.2, a = 0.8;
  const double limit = pathway_frac_laplace_limit(f, x, eta, a);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 5; ++k) {
    const double gap = std::abs(pathway_frac_integral(f, x, eta, 1 - std::pow(10.0, -k), a) - limit);
    EXPECT_LT(gap, prev) << k;
    prev = gap;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(LaplaceLimit, ConstantInput) {
  EXPECT_NEAR(pathway_frac_laplace_limit(one, 2.0, 1.5, 0.5), std::pow(2.0, 1.5) / 0.75, 1e-12);
}

TEST(Kinetic, Values) {
  EXPECT_NEAR(fractional_kinetic_density(1, 1, 1, 2, 1, 1), 0.5, 1e-15);
  EXPECT_EQ(fractional_kinetic_density(2, 1, 1, 2, 0, 1), 0.0);
  EXPECT_EQ(fractional_kinetic_density(1, 1, 1, 2, 0, 3), 3.0);
  EXPECT_TRUE(std::isinf(fractional_kinetic_density(0.5, 1, 1, 2, 0, 1)));
  // α -> 1 approaches N0 t^{μ-1} e^{-b t^ν} / Γ(μ)
  const double want = 2 * std::pow(0.7, 0.5) * std::exp(-1.5 * std::pow(0.7, 1.3)) /
                      boost::math::tgamma(1.5);
  EXPECT_NEAR(fractional_kinetic_density(1.5, 1.3, 1.5, 1 + 1e-7, 0.7, 2), want, 1e-6);
  EXPECT_THROW(fractional_kinetic_density(1, 1, 1, 1, 1, 1), DomainError);
  EXPECT_THROW(fractional_kinetic_density(1, 1, 1, 2, -1, 1), DomainError);
}
