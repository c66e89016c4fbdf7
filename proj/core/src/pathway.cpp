#include "pathkit/pathway.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pathkit/errors.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::pathway {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exponent η/|1-α| of the bracket.
double bracket_power(const PathwayParams& p) {
  return p.eta / std::abs(1 - p.alpha);
}

// Log of the one-sided constant (before halving for the symmetric form).
double log_half_const(const PathwayParams& p) {
  using specfun::log_gamma;
  using specfun::log_gamma_ratio;
  const double g = p.gamma_shape / p.delta;
  switch (regime(p)) {
    case Regime::Type1: {
      const double r1 = bracket_power(p);
      return std::log(p.delta) + g * std::log(p.a * (1 - p.alpha)) +
             log_gamma_ratio(r1 + 1, g) - log_gamma(g);
    }
    case Regime::Type2: {
      const double r2 = bracket_power(p);
      return std::log(p.delta) + g * std::log(p.a * (p.alpha - 1)) +
             log_gamma_ratio(r2 - g, g) - log_gamma(g);
    }
    case Regime::Gamma:
      break;
  }
  return std::log(p.delta) + g * std::log(p.a * p.eta) - log_gamma(g);
}

// CDF of the one-sided density at x >= 0.
double half_cdf(const PathwayParams& p, double x) {
  if (x <= 0) return 0.0;
  const double g = p.gamma_shape / p.delta;
  const double xd = std::pow(x, p.delta);
  switch (regime(p)) {
    case Regime::Type1: {
      const double u = p.a * (1 - p.alpha) * xd;
      if (u >= 1) return 1.0;
      return boost::math::ibeta(g, bracket_power(p) + 1, u);
    }
    case Regime::Type2: {
      const double w = p.a * (p.alpha - 1) * xd;
      if (!std::isfinite(w)) return 1.0;
      return boost::math::ibeta(g, bracket_power(p) - g, w / (1 + w));
    }
    case Regime::Gamma:
      break;
  }
  return boost::math::gamma_p(g, p.a * p.eta * xd);
}

}  // namespace

Regime regime(const PathwayParams& p) {
  if (p.alpha < 1 - kRegimeEps) return Regime::Type1;
  if (p.alpha > 1 + kRegimeEps) return Regime::Type2;
  return Regime::Gamma;
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Type1:
      return "type1";
    case Regime::Type2:
      return "type2";
    case Regime::Gamma:
      break;
  }
  return "gamma";
}

void validate(const PathwayParams& p) {
  detail::require(std::isfinite(p.alpha), "pathway: alpha must be finite");
  detail::require(p.a > 0 && std::isfinite(p.a), "pathway: a must be positive");
  detail::require(p.delta > 0 && std::isfinite(p.delta),
                  "pathway: delta must be positive");
  detail::require(p.gamma_shape > 0 && std::isfinite(p.gamma_shape),
                  "pathway: gamma must be positive");
  detail::require(p.eta > 0 && std::isfinite(p.eta), "pathway: eta must be positive");
  if (regime(p) == Regime::Type2) {
    detail::require(p.eta / (p.alpha - 1) - p.gamma_shape / p.delta > 0,
                    "pathway: eta/(alpha-1) must exceed gamma/delta for alpha > 1");
  }
}

Interval support(const PathwayParams& p) {
  double hi = kInf;
  if (regime(p) == Regime::Type1) {
    hi = std::pow(p.a * (1 - p.alpha), -1 / p.delta);
  }
  return {p.symmetric ? -hi : 0.0, hi};
}

double log_norm_const(const PathwayParams& p) {
  validate(p);
  return log_half_const(p) - (p.symmetric ? std::log(2.0) : 0.0);
}

double log_pdf(const PathwayParams& p, double x) {
  const double lc = log_norm_const(p);
  if (std::isnan(x)) return x;
  if (p.symmetric) x = std::abs(x);
  if (x < 0) return -kInf;
  double power = 0.0;
  if (p.gamma_shape != 1) {
    if (x == 0) return p.gamma_shape > 1 ? -kInf : kInf;
    power = (p.gamma_shape - 1) * std::log(x);
  }
  if (std::isinf(x)) return -kInf;
  const double xd = std::pow(x, p.delta);
  double bracket = 0.0;
  switch (regime(p)) {
    case Regime::Type1: {
      const double u = p.a * (1 - p.alpha) * xd;
      if (u >= 1) return -kInf;
      bracket = bracket_power(p) * std::log1p(-u);
      break;
    }
    case Regime::Type2:
      bracket = -bracket_power(p) * std::log1p(p.a * (p.alpha - 1) * xd);
      break;
    case Regime::Gamma:
      bracket = -p.a * p.eta * xd;
      break;
  }
  return lc + power + bracket;
}

double pdf(const PathwayParams& p, double x) { return std::exp(log_pdf(p, x)); }

double cdf(const PathwayParams& p, double x) {
  validate(p);
  if (std::isnan(x)) return x;
  if (!p.symmetric) return half_cdf(p, x);
  const double h = half_cdf(p, std::abs(x));
  return x >= 0 ? 0.5 + 0.5 * h : 0.5 - 0.5 * h;
}

double quantile(const PathwayParams& p, double prob) {
  validate(p);
  detail::require(prob >= 0 && prob <= 1, "quantile: probability must lie in [0, 1]");
  const Interval s = support(p);
  double lo = s.lo, hi = s.hi;
  if (std::isinf(hi)) {
    // symmetric: the bracket [-hi, hi] must hold both tails
    const double target = p.symmetric ? std::max(prob, 1 - prob) : prob;
    hi = 1.0;
    while (cdf(p, hi) < target && hi < 1e300) hi *= 2;
    if (p.symmetric) lo = -hi;
  }
  if (prob == 0) return lo;
  if (prob == 1) return hi;
  for (int it = 0; it < 300 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(p, mid) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double moment(const PathwayParams& p, double h) {
  validate(p);
  PathwayParams shifted = p;
  shifted.gamma_shape = p.gamma_shape + h;
  if (!(shifted.gamma_shape > 0)) {
    throw DomainError("moment: gamma + h must be positive");
  }
  if (regime(p) == Regime::Type2 &&
      !(bracket_power(p) - shifted.gamma_shape / p.delta > 0)) {
    throw DomainError("moment: E[x^h] diverges for this type-2 tail");
  }
  return std::exp(log_half_const(p) - log_half_const(shifted));
}

std::vector<double> sample(const PathwayParams& p, std::mt19937_64& rng,
                           std::size_t n) {
  validate(p);
  std::vector<double> out;
  out.reserve(n);
  const double g = p.gamma_shape / p.delta;
  const double inv_delta = 1 / p.delta;
  std::gamma_distribution<double> g1(g, 1.0);
  switch (regime(p)) {
    case Regime::Type1: {
      std::gamma_distribution<double> g2(bracket_power(p) + 1, 1.0);
      const double s = p.a * (1 - p.alpha);
      for (std::size_t i = 0; i < n; ++i) {
        const double x1 = g1(rng), x2 = g2(rng);
        out.push_back(std::pow(x1 / (x1 + x2) / s, inv_delta));
      }
      break;
    }
    case Regime::Type2: {
      std::gamma_distribution<double> g2(bracket_power(p) - g, 1.0);
      const double s = p.a * (p.alpha - 1);
      for (std::size_t i = 0; i < n; ++i) {
        const double x1 = g1(rng), x2 = g2(rng);
        out.push_back(std::pow(x1 / x2 / s, inv_delta));
      }
      break;
    }
    case Regime::Gamma: {
      const double s = p.a * p.eta;
      for (std::size_t i = 0; i < n; ++i) out.push_back(std::pow(g1(rng) / s, inv_delta));
      break;
    }
  }
  if (p.symmetric) {
    for (double& x : out) {
      if (rng() & 1u) x = -x;
    }
  }
  return out;
}

double alpha_from_cutoff(double a, double delta, double d) {
  detail::require(a > 0 && delta > 0 && d > 0,
                  "alpha_from_cutoff: a, delta and d must be positive");
  return 1 - 1 / (a * std::pow(d, delta));
}

PathwayParams fit_alpha_moments(std::span<const double> samples, double a,
                                double delta, double gamma_shape, double eta) {
  if (samples.size() < 100) {
    throw FitError("fit_alpha_moments: at least 100 samples are required");
  }
  for (double x : samples) {
    if (!(x >= 0)) throw FitError("fit_alpha_moments: samples must be nonnegative");
  }
  PathwayParams base{1.0, a, delta, gamma_shape, eta, false};
  try {
    validate(base);
  } catch (const DomainError& e) {
    throw FitError(e.what());
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (n - 1) / n);

  const auto mean_at = [&](double alpha) {
    PathwayParams q = base;
    q.alpha = alpha;
    return moment(q, 1.0);
  };
  const double m1 = mean_at(1.0);
  // The gamma limit is kept when it is statistically indistinguishable.
  if (std::abs(mean - m1) <= 3 * se) return base;

  // The mean increases with α on both branches.
  const auto solve = [&](double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (mean_at(mid) < mean ? lo : hi) = mid;
    }
    PathwayParams q = base;
    q.alpha = 0.5 * (lo + hi);
    return q;
  };
  if (mean < m1) {
    const double lo = -50, hi = 1 - 2 * kRegimeEps;
    if (mean_at(lo) <= mean && mean <= mean_at(hi)) return solve(lo, hi);
  } else {
    const double alpha_max = 1 + eta * delta / (gamma_shape + 1);
    const double lo = 1 + 2 * kRegimeEps;
    const double hi = 1 + (alpha_max - 1) * (1 - 1e-9);
    if (mean_at(lo) <= mean && mean <= mean_at(hi)) return solve(lo, hi);
  }
  throw FitError("fit_alpha_moments: no alpha reproduces the sample mean");
}

double power_law_residual(const PathwayParams& p, double x) {
  validate(p);
  const auto unit = [](double v) { return std::abs(v - 1) <= 1e-12; };
  detail::require(unit(p.gamma_shape) && unit(p.delta) && unit(p.eta),
                  "power_law_residual: requires gamma = delta = eta = 1");
  const Interval s = support(p);
  const double h = 1e-6 * std::max(1.0, x);
  if (!(x - h > 0) || !(x + h < s.hi)) {
    throw DomainError("power_law_residual: x must lie inside the support");
  }
  const Regime r = regime(p);
  const auto g = [&](double t) {
    switch (r) {
      case Regime::Type1:
        return std::pow(1 - p.a * (1 - p.alpha) * t, 1 / (1 - p.alpha));
      case Regime::Type2:
        return std::pow(1 + p.a * (p.alpha - 1) * t, -1 / (p.alpha - 1));
      case Regime::Gamma:
        break;
    }
    return std::exp(-p.a * t);
  };
  const double deriv = (g(x + h) - g(x - h)) / (2 * h);
  const double gx = g(x);
  return deriv + p.a * (r == Regime::Gamma ? gx : std::pow(gx, p.alpha));
}

}  // namespace pathkit::pathway
