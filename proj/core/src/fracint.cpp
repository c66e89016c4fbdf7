#include "pathkit/fracint.hpp"

#include <cmath>
#include <limits>

#include "pathkit/errors.hpp"
#include "pathkit/quadrature.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::fracint {
namespace {

quad::Options options() {
  quad::Options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-300;
  return opt;
}

// ∫_0^T (1 - t/T)^{e-1} g(t) dt. With 1 - t/T = exp(-v/e) the kernel turns
// into e^{-v}/e, which removes the endpoint singularity for e < 1 and the
// boundary layer for large e alike.
double kernel_integral(const Function& g, double T, double e) {
  return T / e *
         quad::semi_infinite([&](double v) { return std::exp(-v) * g(-T * std::expm1(-v / e)); },
                             0.0, 1.0, options())
             .value;
}

}  // namespace

double pathway_frac_integral(const Function& f, double x, double eta, double alpha,
                             double a) {
  detail::require(x > 0, "pathway_frac_integral: x must be positive");
  detail::require(eta > 0, "pathway_frac_integral: eta must be positive");
  detail::require(alpha < 1, "pathway_frac_integral: alpha must be below 1");
  detail::require(a > 0, "pathway_frac_integral: a must be positive");
  const double T = x / (a * (1 - alpha));
  return std::pow(x, eta - 1) * kernel_integral(f, T, eta / (1 - alpha));
}

double rl_integral(const Function& f, double x, double eta) {
  detail::require(x > 0, "rl_integral: x must be positive");
  detail::require(eta > 0, "rl_integral: eta must be positive");
  // (x-t)^{η-1} = x^{η-1} (1 - t/x)^{η-1}
  return std::pow(x, eta - 1) * kernel_integral(f, x, eta) *
         std::exp(-specfun::log_gamma(eta));
}

double saigo_integral(const Function& f, double x, double eta, double beta_s,
                      double gamma_s) {
  detail::require(x > 0, "saigo_integral: x must be positive");
  detail::require(eta > 0, "saigo_integral: eta must be positive");
  const double a = eta + beta_s;
  const double b = -gamma_s;
  const Function weighted = [&](double t) {
    const double ft = f(t);
    if (ft == 0) return 0.0;
    return specfun::hyp2f1(a, b, eta, 1 - t / x) * ft;
  };
  return pathway_frac_integral(weighted, x, eta, 0.0, 1.0) *
         std::exp(-specfun::log_gamma(eta));
}

double pathway_frac_laplace_limit(const Function& f, double x, double eta, double a) {
  detail::require(x > 0 && eta > 0 && a > 0,
                  "pathway_frac_laplace_limit: x, eta and a must be positive");
  const double rate = a * eta / x;
  return std::pow(x, eta - 1) *
         quad::semi_infinite([&](double t) { return std::exp(-rate * t) * f(t); }, 0.0,
                             1 / rate, options())
             .value;
}

double fractional_kinetic_density(double mu, double nu, double b, double alpha, double t,
                                  double n0) {
  detail::require(mu > 0 && nu > 0 && b > 0 && n0 > 0,
                  "fractional_kinetic_density: mu, nu, b and N0 must be positive");
  detail::require(alpha > 1, "fractional_kinetic_density: alpha must exceed 1");
  detail::require(t >= 0, "fractional_kinetic_density: t must be nonnegative");
  if (t == 0) {
    if (mu > 1) return 0.0;
    if (mu == 1) return n0;
    return std::numeric_limits<double>::infinity();
  }
  return n0 * std::exp((mu - 1) * std::log(t) -
                       std::log1p(b * (alpha - 1) * std::pow(t, nu)) / (alpha - 1) -
                       specfun::log_gamma(mu));
}

}  // namespace pathkit::fracint
