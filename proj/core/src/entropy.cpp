#include "pathkit/entropy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pathkit/errors.hpp"
#include "pathkit/quadrature.hpp"

namespace pathkit::entropy {
namespace {

using pathway::PathwayParams;
using pathway::Regime;

constexpr double kInf = std::numeric_limits<double>::infinity();

bool shannon_limit(double alpha_e) { return std::abs(alpha_e - 1) < 1e-4; }

double characteristic_scale(const PathwayParams& p) {
  const double rate = pathway::regime(p) == Regime::Gamma
                          ? p.a * p.eta
                          : p.a * std::abs(1 - p.alpha);
  return std::pow(rate, -1 / p.delta);
}

// ∫ g over the one-sided support of p.
double integrate_support(const PathwayParams& p, const quad::Integrand& g,
                         double rel_tol = 1e-12, double abs_tol = 1e-11) {
  const pathway::Interval s = pathway::support(p);
  quad::Options opt;
  opt.rel_tol = rel_tol;
  // Integrands here are O(1) in scale; the projection residuals are
  // cancellations near zero that a purely relative test never certifies.
  opt.abs_tol = abs_tol;
  if (std::isfinite(s.hi)) return quad::finite(g, 0.0, s.hi, opt).value;
  return quad::semi_infinite(g, 0.0, characteristic_scale(p), opt).value;
}

}  // namespace

double mathai_entropy(const PathwayParams& p, double alpha_e) {
  pathway::validate(p);
  detail::require(alpha_e < 2, "mathai_entropy: alpha must be below 2");
  PathwayParams half = p;
  half.symmetric = false;
  const double mass_factor = p.symmetric ? 2.0 : 1.0;
  const double shift = p.symmetric ? std::log(2.0) : 0.0;  // log f = log f_half - ln 2
  if (shannon_limit(alpha_e)) {
    const double h = integrate_support(half, [&](double x) {
      const double lp = pathway::log_pdf(half, x) - shift;
      return std::isfinite(lp) ? -std::exp(lp) * lp : 0.0;
    });
    return mass_factor * h;
  }
  const double power = 2 - alpha_e;
  const double integral = mass_factor * integrate_support(half, [&](double x) {
    return std::exp(power * (pathway::log_pdf(half, x) - shift));
  });
  return (integral - 1) / (alpha_e - 1);
}

double mathai_entropy(const std::function<double(double)>& density, double lo,
                      double hi, double alpha_e) {
  detail::require(alpha_e < 2, "mathai_entropy: alpha must be below 2");
  detail::require(lo < hi, "mathai_entropy: empty interval");
  quad::Integrand g;
  if (shannon_limit(alpha_e)) {
    g = [&](double x) {
      const double f = density(x);
      return f > 0 ? -f * std::log(f) : 0.0;
    };
  } else {
    g = [&, power = 2 - alpha_e](double x) {
      const double f = density(x);
      return f > 0 ? std::pow(f, power) : 0.0;
    };
  }
  double integral = 0.0;
  if (std::isinf(hi)) {
    integral = quad::semi_infinite(g, lo, 1.0).value;
  } else {
    integral = quad::finite(g, lo, hi).value;
  }
  if (shannon_limit(alpha_e)) return integral;
  return (integral - 1) / (alpha_e - 1);
}

namespace {

struct ConstraintBasis {
  std::vector<std::function<double(double)>> phi;
};

ConstraintBasis constraint_basis(const PathwayParams& p) {
  const double e1 = (p.gamma_shape - 1) * (1 - p.alpha);
  const double e2 = e1 + p.delta;
  ConstraintBasis b;
  b.phi.push_back([](double) { return 1.0; });
  if (std::abs(e1) > 1e-12) b.phi.push_back([e1](double x) { return std::pow(x, e1); });
  b.phi.push_back([e2](double x) { return std::pow(x, e2); });
  return b;
}

void check_optimality_params(const PathwayParams& p) {
  pathway::validate(p);
  detail::require(std::abs(p.eta - 1) <= 1e-12,
                  "entropy optimality: the optimizer has eta = 1");
  detail::require(!p.symmetric, "entropy optimality: one-sided density required");
  detail::require(pathway::regime(p) != Regime::Gamma && p.alpha < 2,
                  "entropy optimality: alpha must differ from 1 and lie below 2");
  // The projection needs second moments of the constraint functions.
  const double e1 = (p.gamma_shape - 1) * (1 - p.alpha);
  const double e2 = e1 + p.delta;
  detail::require(p.gamma_shape + 2 * std::min(e1, 0.0) > 0,
                  "entropy optimality: constraint moments diverge at the origin");
  if (p.alpha > 1) {
    detail::require(p.eta / (p.alpha - 1) - (p.gamma_shape + 2 * e2) / p.delta > 0,
                    "entropy optimality: constraint moments diverge in the type-2 tail");
  }
}

}  // namespace

PerturbationOutcome evaluate_perturbation(const PathwayParams& p,
                                          const std::function<double(double)>& shape,
                                          double step_fraction) {
  check_optimality_params(p);
  const auto f = [&](double x) { return pathway::pdf(p, x); };
  const ConstraintBasis basis = constraint_basis(p);
  const int k = static_cast<int>(basis.phi.size());

  // Corrections along φ_i w, with w a decaying window on an unbounded
  // support, keep the perturbation bounded so f + εh stays nonnegative.
  const pathway::Interval sup = pathway::support(p);
  const double window = std::isfinite(sup.hi) ? 0.0 : 1 / (5 * characteristic_scale(p));
  const auto psi = [&](int j, double x) { return basis.phi[j](x) * std::exp(-window * x); };

  Eigen::MatrixXd cross(k, k);
  Eigen::VectorXd diag(k), rhs(k);
  for (int i = 0; i < k; ++i) {
    diag(i) = integrate_support(p, [&](double x) { return f(x) * basis.phi[i](x) * basis.phi[i](x); });
    for (int j = 0; j < k; ++j) {
      cross(i, j) =
          integrate_support(p, [&](double x) { return f(x) * basis.phi[i](x) * psi(j, x); });
    }
    rhs(i) = integrate_support(p, [&](double x) { return f(x) * shape(x) * basis.phi[i](x); });
  }
  const double shape_norm =
      std::sqrt(integrate_support(p, [&](double x) { return f(x) * shape(x) * shape(x); }));

  PerturbationOutcome out;
  for (int i = 0; i < k; ++i) {
    out.raw_violation =
        std::max(out.raw_violation, std::abs(rhs(i)) / std::sqrt(diag(i)) /
                                        std::max(shape_norm, 1e-300));
  }
  const auto lu = cross.fullPivLu();
  if (!lu.isInvertible()) {
    throw AccuracyError("entropy optimality: constraint system is singular");
  }
  const Eigen::VectorXd coef = lu.solve(rhs);
  const auto projected = [&](double x) {
    double v = shape(x);
    for (int i = 0; i < k; ++i) v -= coef(i) * psi(i, x);
    return v;
  };
  const double norm =
      std::sqrt(integrate_support(p, [&](double x) { return f(x) * projected(x) * projected(x); }));
  if (!(norm > 1e-10 * std::max(shape_norm, 1e-300))) {
    out.degenerate = true;
    return out;
  }
  for (int i = 0; i < k; ++i) {
    const double r =
        integrate_support(p, [&](double x) { return f(x) * projected(x) * basis.phi[i](x); });
    out.residual = std::max(out.residual, std::abs(r) / std::sqrt(diag(i)) / norm);
  }

  // Keep f (1 + ε s) nonnegative: bound |s| on a fine grid of the support.
  const double hi = std::isfinite(sup.hi) ? sup.hi : 50 * characteristic_scale(p);
  double smax = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double v = std::abs(projected(hi * i / 4000.0));
    if (std::isfinite(v)) smax = std::max(smax, v);
  }
  const double eps = step_fraction / smax;
  const double power = 2 - p.alpha;
  // M(f + εh) - M(f) as one integral to avoid differencing two quadratures.
  out.gap = integrate_support(p, [&](double x) {
              const double fx = f(x);
              if (fx <= 0) return 0.0;
              const double ratio = std::max(0.0, 1 + eps * projected(x));
              return std::pow(fx, power) * (std::pow(ratio, power) - 1);
            }, 1e-12, 1e-10 * std::abs(p.alpha - 1)) /
            (p.alpha - 1);
  return out;
}

OptimalityReport entropy_optimality_check(const PathwayParams& p, std::uint64_t seed,
                                          int perturbations) {
  check_optimality_params(p);
  OptimalityReport rep;
  rep.optimal_entropy = mathai_entropy(p, p.alpha);
  rep.max_gap = -kInf;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> coef(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> step(0.1, 0.9);
  const pathway::Interval s = pathway::support(p);
  const double length = std::isfinite(s.hi) ? s.hi : 5 * characteristic_scale(p);
  for (int t = 0; t < perturbations; ++t) {
    std::array<double, 4> c{}, ph{};
    for (int j = 0; j < 4; ++j) {
      c[j] = coef(rng);
      ph[j] = phase(rng);
    }
    // On an unbounded support the window keeps the tail integrals from
    // oscillating indefinitely.
    const bool window = !std::isfinite(s.hi);
    const auto shape = [&](double x) {
      double v = 0.0;
      for (int j = 0; j < 4; ++j) {
        v += c[j] * std::cos((j + 1) * std::numbers::pi * x / length + ph[j]);
      }
      return window ? v * std::exp(-x / length) : v;
    };
    try {
      const PerturbationOutcome o = evaluate_perturbation(p, shape, step(rng));
      if (o.degenerate) {
        ++rep.rejected;
        continue;
      }
      rep.gaps.push_back(o.gap);
      rep.max_gap = std::max(rep.max_gap, o.gap);
      rep.max_raw_violation = std::max(rep.max_raw_violation, o.raw_violation);
      rep.max_residual = std::max(rep.max_residual, o.residual);
    } catch (const Error&) {
      rep.inconclusive = true;
    }
  }
  if (rep.gaps.empty() || rep.max_residual > 1e-8) rep.inconclusive = true;
  return rep;
}

}  // namespace pathkit::entropy
