#include "pathkit/hfunction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "pathkit/errors.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::specfun {
namespace {

using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kNodes = 32;

struct GaussRule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
};

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
GaussRule make_rule() {
  GaussRule r;
  const int n = kNodes;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule() {
  static const GaussRule r = make_rule();
  return r;
}

cplx log_phi(const HFunctionSpec& h, cplx s) {
  cplx acc = 0.0;
  const auto& a = h.upper();
  const auto& b = h.lower();
  for (int j = 0; j < h.q(); ++j) {
    const cplx arg = b[j].value + b[j].slope * s;
    if (j < h.m()) {
      acc += log_gamma(arg);
    } else {
      acc -= log_gamma(1.0 - arg);
    }
  }
  for (int j = 0; j < h.p(); ++j) {
    const cplx arg = a[j].value + a[j].slope * s;
    if (j < h.n()) {
      acc += log_gamma(1.0 - arg);
    } else {
      acc -= log_gamma(arg);
    }
  }
  return acc;
}

double log_abs_integrand_real(const HFunctionSpec& h, double c, double log_z) {
  return log_phi(h, cplx(c, 0.0)).real() - c * log_z;
}

// Minimizes the integrand magnitude at τ = 0 over [lo, hi].
double golden_section(const HFunctionSpec& h, double log_z, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = log_abs_integrand_real(h, x1, log_z);
  double f2 = log_abs_integrand_real(h, x2, log_z);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = log_abs_integrand_real(h, x1, log_z);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = log_abs_integrand_real(h, x2, log_z);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

HFunctionSpec::HFunctionSpec(int m, int n, std::vector<ParamPair> upper,
                             std::vector<ParamPair> lower)
    : m_(m), n_(n), upper_(std::move(upper)), lower_(std::move(lower)) {
  const int p = static_cast<int>(upper_.size());
  const int q = static_cast<int>(lower_.size());
  if (m < 0 || m > q || n < 0 || n > p) {
    throw SpecError("H-function orders must satisfy 0 <= m <= q, 0 <= n <= p");
  }
  for (const auto& pr : upper_) {
    if (!(pr.slope > 0) || !std::isfinite(pr.value)) {
      throw SpecError("H-function upper slopes must be positive");
    }
  }
  for (const auto& pr : lower_) {
    if (!(pr.slope > 0) || !std::isfinite(pr.value)) {
      throw SpecError("H-function lower slopes must be positive");
    }
  }
  gap_lo_ = -kInf;
  for (int j = 0; j < m; ++j) {
    gap_lo_ = std::max(gap_lo_, -lower_[j].value / lower_[j].slope);
  }
  gap_hi_ = kInf;
  for (int j = 0; j < n; ++j) {
    gap_hi_ = std::min(gap_hi_, (1 - upper_[j].value) / upper_[j].slope);
  }
  if (!(gap_lo_ < gap_hi_)) {
    std::ostringstream msg;
    msg << "no contour separates the pole families: left poles reach " << gap_lo_
        << ", right poles start at " << gap_hi_;
    throw SpecError(msg.str());
  }
  if (std::isfinite(gap_lo_) && std::isfinite(gap_hi_)) {
    c_ = 0.5 * (gap_lo_ + gap_hi_);
  } else if (std::isfinite(gap_lo_)) {
    c_ = gap_lo_ + 1;
  } else if (std::isfinite(gap_hi_)) {
    c_ = gap_hi_ - 1;
  } else {
    c_ = 0.0;
  }
}

double HFunctionSpec::aperture() const {
  double a = 0.0;
  for (int j = 0; j < p(); ++j) a += (j < n_ ? 1 : -1) * upper_[j].slope;
  for (int j = 0; j < q(); ++j) a += (j < m_ ? 1 : -1) * lower_[j].slope;
  return a;
}

double HFunctionSpec::mu() const {
  double r = 0.0;
  for (const auto& pr : lower_) r += pr.slope;
  for (const auto& pr : upper_) r -= pr.slope;
  return r;
}

MellinBarnesResult mellin_barnes(const HFunctionSpec& spec, double z,
                                 const MellinBarnesOptions& opt) {
  if (!(z > 0) || !std::isfinite(z)) {
    throw DomainError("Mellin-Barnes evaluation requires z > 0");
  }
  const double log_z = std::log(z);
  MellinBarnesResult res;

  const bool bounded_lo = std::isfinite(spec.gap_lo());
  const bool bounded_hi = std::isfinite(spec.gap_hi());
  double c = spec.abscissa();
  if (opt.abscissa) {
    c = *opt.abscissa;
    if (!(c > spec.gap_lo() && c < spec.gap_hi())) {
      throw SpecError("requested abscissa lies outside the pole gap");
    }
  } else if (bounded_lo != bounded_hi) {
    // Half-infinite gap: pick the abscissa that minimizes the integrand
    // at τ = 0, which limits cancellation along the line.
    // The search window widens while the minimum sits on its far edge.
    for (double span = 60; span <= 1e5; span *= 8) {
      c = bounded_lo ? golden_section(spec, log_z, spec.gap_lo() + 0.25, spec.gap_lo() + span)
                     : golden_section(spec, log_z, spec.gap_hi() - span, spec.gap_hi() - 0.25);
      if (std::abs(c - (bounded_lo ? spec.gap_lo() : spec.gap_hi())) < 0.9 * span) break;
    }
  } else if (bounded_lo && bounded_hi && std::abs(log_z) > 5) {
    // Far from z = 1 the midpoint can sit many orders of magnitude above the
    // value; slide towards the pole side that z^{-s} favours.
    double margin = std::min(0.25, 0.1 * (spec.gap_hi() - spec.gap_lo()));
    double c_opt = golden_section(spec, log_z, spec.gap_lo() + margin, spec.gap_hi() - margin);
    // A minimum pinned to the edge moves closer to the pole, as far as the
    // 1/|ln z| width of the pole's own peak.
    const double closer = 0.5 / std::abs(log_z);
    if (closer < margin && (c_opt - spec.gap_lo() < 1.01 * margin ||
                            spec.gap_hi() - c_opt < 1.01 * margin)) {
      margin = closer;
      c_opt = golden_section(spec, log_z, spec.gap_lo() + margin, spec.gap_hi() - margin);
    }
    if (log_abs_integrand_real(spec, c_opt, log_z) <
        log_abs_integrand_real(spec, c, log_z) - std::log(10.0)) {
      c = c_opt;
    }
  }
  res.abscissa = c;

  // Straight lines need exponential decay. Otherwise bend the contour
  // towards the side where z^{-s} and the gamma ratio decay.
  double kappa = 0.0;
  if (spec.aperture() <= 1e-12) {
    const double mu = spec.mu();
    const bool left = mu > 0 || (mu == 0 && log_z <= 0);
    res.contour = left ? ContourKind::BentLeft : ContourKind::BentRight;
    kappa = (left ? -1.0 : 1.0) * 0.011 / std::max(std::abs(log_z), 0.05);
  }

  // Integrate relative to the size at τ = 0 so large parameters do not
  // overflow.
  double log_scale = (log_phi(spec, cplx(c, 0.0)) - c * log_z).real();
  if (!std::isfinite(log_scale)) log_scale = 0.0;
  const auto integrand = [&](double tau) -> cplx {
    const cplx s(c + kappa * tau * tau, tau);
    const cplx ds(2 * kappa * tau, 1.0);
    const cplx lg = log_phi(spec, s) - s * log_z - log_scale;
    if (std::isnan(lg.real()) || lg.real() == -kInf) return 0.0;
    const cplx v = std::exp(lg) * ds / cplx(0.0, 2 * std::numbers::pi);
    return std::isfinite(v.real()) && std::isfinite(v.imag()) ? v : cplx(0.0);
  };

  double dist = std::min(c - spec.gap_lo(), spec.gap_hi() - c);
  if (!std::isfinite(dist)) dist = 1.0;
  const double h_max = std::min(1.0, 20.0 / std::max(std::abs(log_z), 1e-300));
  double width = std::min(h_max, std::max(0.5 * dist, 1e-4));

  const auto& gr = rule();
  cplx total = 0.0;
  double l1 = 0.0;
  double t0 = 0.0;
  int quiet = 0;
  bool done = false;
  while (t0 < opt.t_max) {
    const double t1 = std::min(t0 + width, opt.t_max);
    const double half = 0.5 * (t1 - t0), mid = 0.5 * (t1 + t0);
    cplx panel = 0.0;
    double panel_l1 = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      const double tau = mid + half * gr.x[i];
      const cplx up = integrand(tau);
      const cplx down = integrand(-tau);
      panel += gr.w[i] * (up + down);
      panel_l1 += gr.w[i] * (std::abs(up) + std::abs(down));
    }
    panel *= half;
    panel_l1 *= half;
    total += panel;
    l1 += panel_l1;
    ++res.panels;
    t0 = t1;
    width = std::min(h_max, 2 * width);
    if (panel_l1 < 1e-16 * std::max(std::abs(total.real()), l1)) {
      if (++quiet == 2) {
        done = true;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  res.truncation = t0;
  res.log_scale = log_scale;
  res.scaled = total.real();
  res.condition = l1 / std::abs(total.real());
  res.value = total.real() * std::exp(log_scale);
  res.imag = total.imag() * std::exp(log_scale);
  if (!done) {
    std::ostringstream msg;
    msg << "Mellin-Barnes integrand not negligible at |Im s| = " << opt.t_max
        << " (z = " << z << ")";
    throw AccuracyError(msg.str());
  }
  if (!(std::abs(total.imag()) <= 1e-8 * std::abs(total.real()) + 1e-15 * l1) ||
      !std::isfinite(total.real())) {
    std::ostringstream msg;
    msg << "Mellin-Barnes imaginary part " << total.imag() << " inconsistent with value "
        << total.real() << " (common scale e^" << log_scale << ")";
    throw AccuracyError(msg.str());
  }
  return res;
}

double mellin_barnes_eval(const HFunctionSpec& spec, double z) {
  return mellin_barnes(spec, z).value;
}

double mellin_barnes_log(const HFunctionSpec& spec, double z, int* sign) {
  const MellinBarnesResult r = mellin_barnes(spec, z);
  if (sign) *sign = r.scaled > 0 ? 1 : (r.scaled < 0 ? -1 : 0);
  return std::log(std::abs(r.scaled)) + r.log_scale;
}

HFunctionSpec g_spec(int m, int n, const std::vector<double>& a,
                     const std::vector<double>& b) {
  std::vector<ParamPair> up, lo;
  for (double v : a) up.push_back({v, 1.0});
  for (double v : b) lo.push_back({v, 1.0});
  return HFunctionSpec(m, n, std::move(up), std::move(lo));
}

double g_function_eval(int m, int n, const std::vector<double>& a,
                       const std::vector<double>& b, double z) {
  return mellin_barnes_eval(g_spec(m, n, a, b), z);
}

}  // namespace pathkit::specfun
