#include "pathkit/superstat.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "pathkit/errors.hpp"
#include "pathkit/hfunction.hpp"
#include "pathkit/quadrature.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::superstat {
namespace {

using specfun::log_gamma;

double shape(const SuperstatModel& m) { return (m.gamma + 1) / m.delta; }

bool extended(const SuperstatModel& m) {
  return m.alpha && std::abs(*m.alpha - 1) > pathway::kRegimeEps;
}

void require_extended(const SuperstatModel& m) {
  validate(m);
  detail::require(m.alpha.has_value(), "extended superstatistics needs alpha");
}

// log G^{2,1}_{1,2}(λ / (x^δ (α-1)) | -g-k ; 0, r-g-1-k), the marginal (k = 0)
// and posterior-mean (k = 1) kernels.
double ext_g(const SuperstatModel& m, double x, int k) {
  const double g = shape(m);
  const double r = 1 / (*m.alpha - 1);
  const double log_z = std::log(m.lam / (*m.alpha - 1)) - m.delta * std::log(x);
  // leading residue at s = 1 + g + k; the rest is O(1/z)
  if (log_z > 700) return (-g - k - 1) * log_z + log_gamma(g + k + 1) + log_gamma(r);
  const double z = std::exp(log_z);
  int sign = 0;
  const double v =
      specfun::mellin_barnes_log(specfun::g_spec(2, 1, {-g - k}, {0.0, r - g - 1 - k}), z, &sign);
  if (sign <= 0) throw AccuracyError("superstat: G-function kernel is not positive");
  return v;
}

}  // namespace

void validate(const SuperstatModel& m) {
  detail::require(m.gamma > -1, "superstat: gamma must exceed -1");
  detail::require(m.delta > 0, "superstat: delta must be positive");
  detail::require(m.lam > 0, "superstat: lambda must be positive");
  if (m.alpha) {
    detail::require(*m.alpha > 1 - pathway::kRegimeEps,
                    "superstat: extended model needs alpha > 1");
    if (extended(m)) {
      detail::require(1 / (*m.alpha - 1) - shape(m) > 0,
                      "superstat: extended model needs 1/(alpha-1) > (gamma+1)/delta");
    }
  }
}

double prior_pdf(const SuperstatModel& m, double theta) {
  validate(m);
  return theta > 0 ? m.lam * std::exp(-m.lam * theta) : 0.0;
}

double conditional_pdf(const SuperstatModel& m, double x, double theta) {
  validate(m);
  detail::require(theta > 0, "superstat: theta must be positive");
  if (x <= 0) return 0.0;
  const double g = shape(m);
  return std::exp(std::log(m.delta) + g * std::log(theta) - log_gamma(g) +
                  m.gamma * std::log(x) - theta * std::pow(x, m.delta));
}

double marginal_pdf(const SuperstatModel& m, double x) {
  validate(m);
  if (x <= 0) return 0.0;
  const double g = shape(m);
  return std::exp(std::log(m.delta) + log_gamma(g + 1) - log_gamma(g) - g * std::log(m.lam) +
                  m.gamma * std::log(x) - (g + 1) * std::log1p(std::pow(x, m.delta) / m.lam));
}

pathway::PathwayParams marginal_as_pathway(const SuperstatModel& m) {
  validate(m);
  const double g = shape(m);
  pathway::PathwayParams p;
  p.alpha = 1 + 1 / (g + 1);
  p.a = (g + 1) / m.lam;
  p.delta = m.delta;
  p.gamma_shape = m.gamma + 1;
  p.eta = 1;
  return p;
}

double posterior_pdf(const SuperstatModel& m, double theta, double x) {
  validate(m);
  detail::require(x > 0, "superstat: x must be positive");
  if (theta <= 0) return 0.0;
  const double g = shape(m);
  const double rate = m.lam + std::pow(x, m.delta);
  return std::exp((g + 1) * std::log(rate) + g * std::log(theta) - theta * rate -
                  log_gamma(g + 1));
}

double bayes_estimate(const SuperstatModel& m, double x) {
  validate(m);
  detail::require(x > 0, "superstat: x must be positive");
  return (shape(m) + 1) / (m.lam + std::pow(x, m.delta));
}

double ext_conditional_pdf(const SuperstatModel& m, double x, double theta) {
  require_extended(m);
  if (!extended(m)) return conditional_pdf(m, x, theta);
  detail::require(theta > 0, "superstat: theta must be positive");
  if (x <= 0) return 0.0;
  const double g = shape(m);
  const double am1 = *m.alpha - 1;
  const double r = 1 / am1;
  const double log_k = std::log(m.delta) + g * std::log(theta * am1) + log_gamma(r) -
                       log_gamma(g) - log_gamma(r - g);
  return std::exp(log_k + m.gamma * std::log(x) -
                  r * std::log1p(theta * am1 * std::pow(x, m.delta)));
}

double ext_marginal_pdf(const SuperstatModel& m, double x) {
  require_extended(m);
  if (!extended(m)) return marginal_pdf(m, x);
  if (x <= 0) return 0.0;
  const double g = shape(m);
  const double am1 = *m.alpha - 1;
  const double r = 1 / am1;
  const double log_pref = std::log(m.lam * m.delta) - (m.delta + 1) * std::log(x) -
                          std::log(am1) - log_gamma(g) - log_gamma(r - g);
  // As z -> 0 the kernel tends to Γ(g) Γ(r-g) up to a factor of order
  // |ln z|; past this bound the density is below double range.
  const double log_z = std::log(m.lam / am1) - m.delta * std::log(x);
  if (log_pref + log_gamma(g) + log_gamma(r - g) + std::log1p(std::abs(log_z)) < -760) {
    return 0.0;
  }
  return std::exp(log_pref + ext_g(m, x, 0));
}

double ext_marginal_pdf_quad(const SuperstatModel& m, double x) {
  require_extended(m);
  if (x <= 0) return 0.0;
  quad::Options opt;
  opt.rel_tol = 1e-11;
  return quad::semi_infinite(
             [&](double th) { return prior_pdf(m, th) * ext_conditional_pdf(m, x, th); },
             0.0, 1 / m.lam, opt)
      .value;
}

double ext_posterior_pdf(const SuperstatModel& m, double theta, double x) {
  require_extended(m);
  if (!extended(m)) return posterior_pdf(m, theta, x);
  detail::require(x > 0, "superstat: x must be positive");
  if (theta <= 0) return 0.0;
  const double g = shape(m);
  const double am1 = *m.alpha - 1;
  const double r = 1 / am1;
  const double xd = std::pow(x, m.delta);
  const double log_num = (g + 1) * std::log(am1) + (m.gamma + m.delta + 1) * std::log(x) +
                         log_gamma(r) + g * std::log(theta) - m.lam * theta -
                         r * std::log1p(theta * am1 * xd);
  return std::exp(log_num - ext_g(m, x, 0));
}

double ext_bayes_estimate(const SuperstatModel& m, double x) {
  require_extended(m);
  if (!extended(m)) return bayes_estimate(m, x);
  detail::require(x > 0, "superstat: x must be positive");
  return std::exp(ext_g(m, x, 1) - ext_g(m, x, 0)) / ((*m.alpha - 1) * std::pow(x, m.delta));
}

double ext_bayes_estimate_quad(const SuperstatModel& m, double x) {
  require_extended(m);
  detail::require(x > 0, "superstat: x must be positive");
  quad::Options opt;
  opt.rel_tol = 1e-11;
  // Unnormalized posterior prior(θ) f(x|θ); the ratio removes the marginal.
  const auto w = [&](double th) { return prior_pdf(m, th) * ext_conditional_pdf(m, x, th); };
  const double num =
      quad::semi_infinite([&](double th) { return th * w(th); }, 0.0, 1 / m.lam, opt).value;
  const double den = quad::semi_infinite(w, 0.0, 1 / m.lam, opt).value;
  return num / den;
}

double bessel_gamma_pdf(double gamma, double rho, double a, double delta_b, double x) {
  detail::require(gamma > 0 && rho > 0 && a > 0,
                  "bessel_gamma_pdf: gamma, rho and a must be positive");
  if (x <= 0) return 0.0;
  const double g = gamma / rho;
  const double xr = std::pow(x, rho);
  if (std::isinf(xr)) return 0.0;
  const double log_part = std::log(rho) + g * std::log(a) - delta_b / a - log_gamma(g) +
                          (gamma - 1) * std::log(x) - a * xr;
  const double z = delta_b * xr;
  if (z > 0) return std::exp(log_part + specfun::log_hyp0f1(g, z));
  return std::exp(log_part) * specfun::hyp0f1(g, z);
}

namespace {

using NormKey = std::tuple<double, double, double, double, double>;

struct NormCache {
  std::shared_mutex mutex;
  std::map<NormKey, double> values;
};

NormCache& norm_cache() {
  static NormCache cache;
  return cache;
}

void check_bessel_pathway(double gamma, double rho, double a, double delta_b, double alpha) {
  detail::require(gamma > 0 && rho > 0 && a > 0,
                  "bessel_pathway: gamma, rho and a must be positive");
  detail::require(std::isfinite(delta_b) && std::isfinite(alpha),
                  "bessel_pathway: parameters must be finite");
  if (alpha > 1 + pathway::kRegimeEps) {
    if (delta_b > 0) {
      throw DomainError(
          "bessel_pathway: alpha > 1 with delta_b > 0 is not normalizable "
          "(0F1 grows like exp(2 sqrt(delta_b x^rho)) against a power-law tail)");
    }
    const double g = gamma / rho;
    const double r = 1 / (alpha - 1);
    // Tail exponent of x^{γ-1} x^{-ρ r} times the 0F1 envelope.
    const double envelope = delta_b < 0 ? rho * (0.5 * (1 - g) - 0.25) : 0.0;
    if (!(gamma - 1 - rho * r + envelope < -1)) {
      throw DomainError("bessel_pathway: integral diverges at infinity for this alpha");
    }
  }
}

double quad_log_norm(double gamma, double rho, double a, double delta_b, double alpha) {
  const double am1 = alpha - 1;
  const double r = 1 / am1;
  const double g = gamma / rho;
  const auto f = [&](double x) {
    if (x <= 0) return 0.0;
    const double xr = std::pow(x, rho);
    return std::exp((gamma - 1) * std::log(x) - r * std::log1p(a * am1 * xr)) *
           specfun::hyp0f1(g, delta_b * xr);
  };
  quad::Options opt;
  opt.rel_tol = 1e-11;
  opt.throw_on_failure = false;
  const double scale = std::pow(a * am1, -1 / rho);
  double value = 0.0, err = 0.0, l1 = 0.0;
  const auto add = [&](const quad::Result& q) {
    value += q.value;
    err += q.error;
    l1 += q.l1;
  };
  if (delta_b == 0) {
    add(quad::finite(f, 0.0, scale, opt));
    add(quad::semi_infinite(f, scale, scale, opt));
  } else {
    // The 0F1 factor oscillates like cos(w) in w = 2 sqrt(|δ_b| x^ρ). Cut the
    // tail into half-periods in w and sum the alternating pieces with
    // repeated averaging of the partial sums.
    const double kb = 2 * std::sqrt(-delta_b);
    const auto x_of_w = [&](double w) { return std::pow(w / kb, 2 / rho); };
    const double w_scale = kb * std::pow(4 * scale, rho / 2);
    const double w0 = std::numbers::pi * std::ceil(std::max(w_scale, 4 * std::numbers::pi) /
                                                   std::numbers::pi);
    add(quad::finite(f, 0.0, x_of_w(w0), opt));
    constexpr int kPieces = 64;
    std::vector<double> partial;
    double run = 0.0;
    for (int k = 0; k < kPieces; ++k) {
      const quad::Result q = quad::finite(f, x_of_w(w0 + k * std::numbers::pi),
                                          x_of_w(w0 + (k + 1) * std::numbers::pi), opt);
      err += q.error;
      l1 += q.l1;
      run += q.value;
      partial.push_back(run);
    }
    double prev = partial.back();
    while (partial.size() > 1) {
      prev = partial.back();
      for (std::size_t i = 0; i + 1 < partial.size(); ++i) {
        partial[i] = 0.5 * (partial[i] + partial[i + 1]);
      }
      partial.pop_back();
    }
    value += partial.front();
    err += std::abs(partial.front() - prev);
  }
  if (!(value > 0) || err > 1e-9 * l1) {
    throw AccuracyError("bessel_pathway: normalizer quadrature did not converge");
  }
  return std::log(value);
}

}  // namespace

double bessel_pathway_log_norm(double gamma, double rho, double a, double delta_b,
                               double alpha) {
  check_bessel_pathway(gamma, rho, a, delta_b, alpha);
  const double g = gamma / rho;
  if (std::abs(alpha - 1) <= pathway::kRegimeEps) {
    return std::log(rho) + g * std::log(a) - delta_b / a - log_gamma(g);
  }
  if (alpha < 1) {
    // Termwise beta integrals resum into a single 0F1.
    const double c = a * (1 - alpha);
    const double s = 1 / (1 - alpha);
    const double inv = -g * std::log(c) + log_gamma(g) + log_gamma(s + 1) -
                       log_gamma(g + s + 1) - std::log(rho) +
                       (delta_b >= 0 ? specfun::log_hyp0f1(g + s + 1, delta_b / c)
                                     : std::log(specfun::hyp0f1(g + s + 1, delta_b / c)));
    return -inv;
  }
  const NormKey key{gamma, rho, a, delta_b, alpha};
  NormCache& cache = norm_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.values.find(key); it != cache.values.end()) return it->second;
  }
  const double v = -quad_log_norm(gamma, rho, a, delta_b, alpha);
  std::unique_lock lock(cache.mutex);
  cache.values.emplace(key, v);
  return v;
}

double bessel_pathway_pdf(double gamma, double rho, double a, double delta_b, double alpha,
                          double x) {
  const double log_k = bessel_pathway_log_norm(gamma, rho, a, delta_b, alpha);
  if (x <= 0) return 0.0;
  const double xr = std::pow(x, rho);
  if (std::isinf(xr)) return 0.0;
  const double z = delta_b * xr;
  const double log_f = z > 0 ? specfun::log_hyp0f1(gamma / rho, z) : 0.0;
  const double f = z > 0 ? 1.0 : specfun::hyp0f1(gamma / rho, z);
  if (std::abs(alpha - 1) <= pathway::kRegimeEps) {
    return std::exp(log_k + log_f + (gamma - 1) * std::log(x) - a * xr) * f;
  }
  const double inner = 1 - a * (1 - alpha) * xr;
  if (inner <= 0) return 0.0;
  return std::exp(log_k + log_f + (gamma - 1) * std::log(x) + std::log(inner) / (1 - alpha)) * f;
}

}  // namespace pathkit::superstat
