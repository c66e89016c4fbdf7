#include "pathkit/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "pathkit/errors.hpp"

namespace pathkit::quad {
namespace {

boost::math::quadrature::tanh_sinh<double>& integrator() {
  static boost::math::quadrature::tanh_sinh<double> ts(18);
  return ts;
}

// Slack between the requested tolerance and the point where the error
// estimate is treated as a failure; tanh-sinh estimates are pessimistic.
constexpr double kAcceptFactor = 1e3;

Result finish(Result r, const Options& opt, double a, double b) {
  const double allowed =
      std::max(opt.abs_tol, kAcceptFactor * opt.rel_tol * r.l1) +
      64 * std::numeric_limits<double>::epsilon() * r.l1;
  r.converged = std::isfinite(r.value) && r.error <= allowed;
  if (!r.converged && opt.throw_on_failure) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: value "
        << r.value << ", error estimate " << r.error;
    throw AccuracyError(msg.str());
  }
  return r;
}

// Guards against non-finite samples at abscissas that underflow onto a
// singular endpoint; such points carry no weight at double precision.
double safe(const Integrand& f, double x) {
  const double v = f(x);
  return std::isfinite(v) ? v : 0.0;
}

}  // namespace

Result finite(const Integrand& f, double a, double b, const Options& opt) {
  if (a == b) return {};
  if (a > b) {
    Result r = finite(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  Result r;
  std::size_t levels = 0;
  r.value = integrator().integrate([&](double x) { return safe(f, x); }, a, b,
                                   opt.rel_tol, &r.error, &r.l1, &levels);
  return finish(r, opt, a, b);
}

Result finite_split(const Integrand& f, std::span<const double> points,
                    const Options& opt) {
  Result total;
  Options inner = opt;
  inner.throw_on_failure = false;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Result r = finite(f, points[i], points[i + 1], inner);
    total.value += r.value;
    total.error += r.error;
    total.l1 += r.l1;
  }
  return finish(total, opt, points.front(), points.back());
}

Result semi_infinite(const Integrand& f, double a, double scale,
                     const Options& opt) {
  const auto mapped = [&](double u) {
    const double w = 1.0 - u;
    const double x = a + scale * u / w;
    if (!std::isfinite(x)) return 0.0;
    return f(x) * scale / (w * w);
  };
  Result r = finite(mapped, 0.0, 1.0, Options{opt.rel_tol, opt.abs_tol, false});
  return finish(r, opt, a, std::numeric_limits<double>::infinity());
}

Result whole_line(const Integrand& f, double center, double scale,
                  const Options& opt) {
  Options inner = opt;
  inner.throw_on_failure = false;
  const Result right = semi_infinite(f, center, scale, inner);
  const Result left = semi_infinite([&](double x) { return f(2 * center - x); },
                                    center, scale, inner);
  Result r{right.value + left.value, right.error + left.error,
           right.l1 + left.l1, true};
  return finish(r, opt, -std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity());
}

}  // namespace pathkit::quad
