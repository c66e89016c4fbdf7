#include "pathkit/reactions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "pathkit/errors.hpp"
#include "pathkit/quadrature.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::reactions {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_common(const ReactionIntegralSpec& s) {
  detail::require(s.a > 0, "reaction integral: a must be positive");
  detail::require(s.b >= 0, "reaction integral: b must be nonnegative");
  detail::require(s.delta > 0, "reaction integral: delta must be positive");
  detail::require(s.rho > 0, "reaction integral: rho must be positive");
  detail::require(std::isfinite(s.gamma), "reaction integral: gamma must be finite");
}

// ∫_lo^hi exp(log_f(x)) dx for 0 <= lo < hi <= inf. When lo = 0 the piece
// below 1 is integrated in u = ln x, where the x^{-ρ} factor is tame.
double integrate_log(const std::function<double(double)>& log_f, double lo, double hi,
                     double scale) {
  quad::Options opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 0.0;
  opt.throw_on_failure = false;
  const auto f = [&](double x) { return std::exp(log_f(x)); };
  quad::Result total;
  double tail_start = lo;
  if (lo == 0) {
    const double c = std::min(1.0, hi);
    const auto g = [&](double v) {  // x = c e^{-v}, v in [0, inf)
      const double x = c * std::exp(-v);
      return x > 0 ? std::exp(log_f(x)) * x : 0.0;
    };
    total = quad::semi_infinite(g, 0.0, 1.0, opt);
    tail_start = c;
  }
  if (tail_start < hi) {
    const quad::Result r = std::isfinite(hi)
                               ? quad::finite(f, tail_start, hi, opt)
                               : quad::semi_infinite(f, tail_start, scale, opt);
    total.value += r.value;
    total.error += r.error;
    total.l1 += r.l1;
  }
  if (!std::isfinite(total.value) || total.error > 1e-8 * total.l1 + 1e-300) {
    throw AccuracyError("reaction integral: quadrature did not reach 1e-8 relative accuracy");
  }
  return total.value;
}

// Location of the Gamow-type peak of x^{γ-1} exp(-a x^δ - b x^{-ρ}).
double peak_scale(const ReactionIntegralSpec& s) {
  const double x0 =
      s.b > 0 ? std::pow(s.b * s.rho / (s.a * s.delta), 1 / (s.delta + s.rho)) : 0.0;
  return std::max({1.0, x0, std::pow(s.a, -1 / s.delta)});
}

double classical(const ReactionIntegralSpec& s, double hi) {
  check_common(s);
  if (s.b == 0 && !(s.gamma > 0)) {
    throw DomainError("reaction integral diverges at 0: b = 0 needs gamma > 0");
  }
  const auto log_f = [&](double x) {
    return (s.gamma - 1) * std::log(x) - s.a * std::pow(x, s.delta) -
           (s.b > 0 ? s.b * std::pow(x, -s.rho) : 0.0);
  };
  return integrate_log(log_f, 0.0, hi, peak_scale(s));
}

}  // namespace

double i1(const ReactionIntegralSpec& s) { return classical(s, kInf); }

double i2(const ReactionIntegralSpec& s) {
  detail::require(s.d.has_value() && *s.d >= 0, "i2: a nonnegative cut-off d is required");
  if (*s.d == 0) return 0.0;
  return classical(s, *s.d);
}

double i1_alpha(const ReactionIntegralSpec& s) {
  check_common(s);
  detail::require(s.alpha.has_value() && *s.alpha > 1, "i1_alpha: alpha must exceed 1");
  const double am1 = *s.alpha - 1;
  const double c = s.b * am1;
  const double r = 1 / am1;
  if (s.b == 0) {
    detail::require(s.gamma > 0, "i1_alpha diverges at 0: b = 0 needs gamma > 0");
  } else if (!(s.gamma + s.rho * r > 0)) {
    throw DomainError("i1_alpha diverges at 0: needs gamma + rho/(alpha-1) > 0");
  }
  const auto log_f = [&](double x) {
    const double lx = std::log(x);
    double bracket = 0.0;
    if (c > 0) {
      // log(1 + c x^{-ρ}) without overflow for small x.
      const double lw = std::log(c) - s.rho * lx;
      bracket = lw > 30 ? lw + std::log1p(std::exp(-lw)) : std::log1p(std::exp(lw));
    }
    return (s.gamma - 1) * lx - s.a * std::pow(x, s.delta) - r * bracket;
  };
  return integrate_log(log_f, 0.0, kInf, peak_scale(s));
}

double i2_alpha(const ReactionIntegralSpec& s) {
  check_common(s);
  detail::require(s.alpha.has_value() && *s.alpha < 1, "i2_alpha: alpha must be below 1");
  const double hi = s.d.value_or(kInf);
  detail::require(hi >= 0, "i2_alpha: cut-off must be nonnegative");
  const double c = s.b * (1 - *s.alpha);
  const double r = 1 / (1 - *s.alpha);
  // The bracket is positive only above x_c = c^{1/ρ}.
  const double xc = c > 0 ? std::pow(c, 1 / s.rho) : 0.0;
  if (xc >= hi) return 0.0;
  if (xc == 0 && !(s.gamma > 0)) {
    throw DomainError("i2_alpha diverges at 0: b = 0 needs gamma > 0");
  }
  const auto log_f = [&](double x) {
    const double lx = std::log(x);
    const double u = c > 0 ? c * std::pow(x, -s.rho) : 0.0;
    if (u >= 1) return -kInf;
    return (s.gamma - 1) * lx - s.a * std::pow(x, s.delta) + r * std::log1p(-u);
  };
  return integrate_log(log_f, xc, hi, peak_scale(s));
}

ReactionHForm i1_alpha_h_form(const ReactionIntegralSpec& s) {
  check_common(s);
  detail::require(s.alpha.has_value() && *s.alpha > 1, "i1_alpha: alpha must exceed 1");
  detail::require(s.b > 0, "i1_alpha H-form needs b > 0");
  const double r = 1 / (*s.alpha - 1);
  const double g = s.gamma / s.delta;
  specfun::HFunctionSpec spec(2, 1, {{1 - r, 1 / s.rho}},
                              {{0.0, 1 / s.rho}, {g, 1 / s.delta}});
  const double log_pref = -std::log(s.delta * s.rho) - g * std::log(s.a) -
                          specfun::log_gamma(r);
  const double arg =
      std::pow(s.a, 1 / s.delta) * std::pow(s.b * (*s.alpha - 1), 1 / s.rho);
  return {std::move(spec), log_pref, arg};
}

double i1_alpha_hfun(const ReactionIntegralSpec& s) {
  check_common(s);
  detail::require(s.alpha.has_value() && *s.alpha > 1, "i1_alpha: alpha must exceed 1");
  if (s.b == 0) {
    detail::require(s.gamma > 0, "i1_alpha diverges at 0: b = 0 needs gamma > 0");
    const double g = s.gamma / s.delta;
    return std::exp(specfun::log_gamma(g) - std::log(s.delta) - g * std::log(s.a));
  }
  const ReactionHForm form = i1_alpha_h_form(s);
  const auto r = specfun::mellin_barnes(form.spec, form.argument);
  return r.scaled * std::exp(form.log_prefactor + r.log_scale);
}

double inverse_gaussian_moment(double mu, double lam, double h) {
  detail::require(mu != 0 && std::isfinite(mu), "inverse Gaussian: mu must be nonzero");
  detail::require(lam > 0, "inverse Gaussian: lambda must be positive");
  // x^{-3/2} exp(-λx/(2μ²) - λ/(2x)) is the unnormalized density.
  ReactionIntegralSpec s;
  s.a = lam / (2 * mu * mu);
  s.b = lam / 2;
  s.delta = 1;
  s.rho = 1;
  s.gamma = -0.5;
  const double norm = i1(s);
  s.gamma = -0.5 + h;
  return i1(s) / norm;
}

}  // namespace pathkit::reactions
