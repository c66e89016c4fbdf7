#include "pathkit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathkit/errors.hpp"
#include "pathkit/quadrature.hpp"

namespace pathkit::transforms {
namespace {

using pathway::PathwayParams;
using pathway::Regime;
using specfun::HFunctionSpec;

}  // namespace

double laplace_pathway_quad(const PathwayParams& p, double t) {
  pathway::validate(p);
  detail::require(!p.symmetric, "Laplace transform needs the one-sided density");
  detail::require(t >= 0, "Laplace transform needs t >= 0");
  const auto g = [&](double x) { return std::exp(pathway::log_pdf(p, x) - t * x); };
  quad::Options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-11;
  const pathway::Interval s = pathway::support(p);
  if (std::isfinite(s.hi)) return quad::finite(g, 0.0, s.hi, opt).value;
  const double rate = pathway::regime(p) == Regime::Gamma
                          ? p.a * p.eta
                          : p.a * std::abs(p.alpha - 1);
  double scale = std::pow(rate, -1 / p.delta);
  if (t > 0) scale = std::min(scale, 1 / t);
  return quad::semi_infinite(g, 0.0, scale, opt).value;
}

LaplaceHForm laplace_h_form(const PathwayParams& p) {
  pathway::validate(p);
  detail::require(!p.symmetric, "Laplace transform needs the one-sided density");
  using specfun::log_gamma;
  const double g = p.gamma_shape / p.delta;
  const double inv_d = 1 / p.delta;
  switch (pathway::regime(p)) {
    case Regime::Type1: {
      const double r1 = p.eta / (1 - p.alpha);
      return {HFunctionSpec(1, 1, {{1 - g, inv_d}}, {{0.0, 1.0}, {-r1 - g, inv_d}}),
              specfun::log_gamma_ratio(g, 1 + r1), std::pow(p.a * (1 - p.alpha), -inv_d)};
    }
    case Regime::Type2: {
      const double r2 = p.eta / (p.alpha - 1);
      return {HFunctionSpec(2, 1, {{1 - g, inv_d}}, {{0.0, 1.0}, {r2 - g, inv_d}}),
              -log_gamma(g) - log_gamma(r2 - g), std::pow(p.a * (p.alpha - 1), -inv_d)};
    }
    case Regime::Gamma:
      break;
  }
  return {HFunctionSpec(1, 1, {{1 - g, inv_d}}, {{0.0, 1.0}}), -log_gamma(g),
          std::pow(p.a * p.eta, -inv_d)};
}

double laplace_pathway_hfun(const PathwayParams& p, double t) {
  detail::require(t > 0, "H-function Laplace transform needs t > 0");
  const LaplaceHForm form = laplace_h_form(p);
  // Near α = 1 the prefactor and the H-value sit at opposite ends of the
  // double range; combine them in log space.
  const auto r = specfun::mellin_barnes(form.spec, t * form.scale);
  return r.scaled * std::exp(form.log_prefactor + r.log_scale);
}

double ml_laplace(const specfun::MittagLefflerParams& p, double t) {
  specfun::validate(p);
  detail::require(t >= 0, "ml_laplace: t must be nonnegative");
  return std::pow(1 + p.delta * std::pow(t, p.ml_index), -p.beta);
}

double levy_pathway_laplace(double ml_index, double beta0, double delta0, double q,
                            double t) {
  detail::require(q > 1, "levy_pathway_laplace: q must exceed 1");
  detail::require(t >= 0, "levy_pathway_laplace: t must be nonnegative");
  const double u = delta0 * (q - 1) * std::pow(t, ml_index);
  return std::exp(-beta0 / (q - 1) * std::log1p(u));
}

LevyReport levy_limit_check(double ml_index, double beta0, double delta0,
                            std::span<const double> q_sequence,
                            std::span<const double> t_grid) {
  std::vector<double> grid(t_grid.begin(), t_grid.end());
  if (grid.empty()) {
    for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i);
  }
  LevyReport rep;
  for (double q : q_sequence) {
    double gap = 0.0;
    for (double t : grid) {
      const double limit = std::exp(-delta0 * beta0 * std::pow(t, ml_index));
      gap = std::max(gap, std::abs(levy_pathway_laplace(ml_index, beta0, delta0, q, t) - limit));
    }
    if (!rep.max_gap.empty() && !(gap < rep.max_gap.back())) rep.monotone = false;
    rep.q.push_back(q);
    rep.max_gap.push_back(gap);
  }
  return rep;
}

double kratzel_kernel(const KratzelSpec& k, double x, double rel_tol) {
  detail::require(k.rho > 0 && k.beta > 0 && k.a > 0,
                  "kratzel_kernel: rho, beta and a must be positive");
  detail::require(x >= 0, "kratzel_kernel: x must be nonnegative");
  const bool limit = std::abs(k.alpha - 1) <= pathway::kRegimeEps;
  detail::require(limit || k.alpha > 1, "kratzel_kernel: alpha must be >= 1");
  if (!limit && !(k.nu * (k.alpha - 1) < k.rho)) {
    throw DomainError("kratzel_kernel: integral diverges at infinity (nu >= rho/(alpha-1))");
  }
  if (x == 0 && !(k.nu > 0)) {
    throw DomainError("kratzel_kernel: integral diverges at zero (x = 0, nu <= 0)");
  }
  // In u = ln y the log-integrand is concave with a single peak.
  const auto log_g = [&](double u) {
    const double bracket = limit ? -k.a * std::exp(k.rho * u)
                                 : -std::log1p(k.a * (k.alpha - 1) * std::exp(k.rho * u)) /
                                       (k.alpha - 1);
    const double damp = x > 0 ? x * std::exp(-k.beta * u) : 0.0;
    return k.nu * u + bracket - damp;
  };
  double lo = -60, hi = 60;
  const double phi = 0.5 * (std::sqrt(5.0) - 1);
  double u1 = hi - phi * (hi - lo), u2 = lo + phi * (hi - lo);
  double f1 = log_g(u1), f2 = log_g(u2);
  for (int it = 0; it < 120; ++it) {
    if (f1 > f2) {
      hi = u2;
      u2 = u1;
      f2 = f1;
      u1 = hi - phi * (hi - lo);
      f1 = log_g(u1);
    } else {
      lo = u1;
      u1 = u2;
      f1 = f2;
      u2 = lo + phi * (hi - lo);
      f2 = log_g(u2);
    }
  }
  const double peak = 0.5 * (lo + hi);
  const double top = log_g(peak);
  const double h = 1e-3;
  const double curv = -(log_g(peak + h) - 2 * top + log_g(peak - h)) / (h * h);
  const double width = curv > 0 ? std::clamp(1 / std::sqrt(curv), 1e-3, 10.0) : 1.0;
  quad::Options opt;
  opt.rel_tol = rel_tol;
  const double v =
      quad::whole_line([&](double u) { return std::exp(log_g(u) - top); }, peak, width, opt)
          .value;
  return std::exp(top) * v;
}

double p_transform(const std::function<double(double)>& f, const KratzelSpec& k,
                   double x) {
  detail::require(x > 0, "p_transform: x must be positive");
  quad::Options opt;
  opt.rel_tol = 1e-8;
  opt.abs_tol = 1e-14;
  return quad::semi_infinite(
             [&](double t) {
               const double ft = f(t);
               return ft == 0 ? 0.0 : kratzel_kernel(k, x * t, 1e-10) * ft;
             },
             0.0, 1 / x, opt)
      .value;
}

}  // namespace pathkit::transforms
