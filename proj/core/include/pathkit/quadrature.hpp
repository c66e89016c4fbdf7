#pragma once

#include <functional>
#include <span>

namespace pathkit::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  // When false, a failed accuracy certificate is reported through
  // Result::converged instead of an AccuracyError.
  bool throw_on_failure = true;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  double l1 = 0.0;     // integral of |f|, used for relative tolerances
  bool converged = true;
};

// Double-exponential quadrature on [a, b]. Integrable endpoint
// singularities are fine; the integrand is never evaluated at a or b.
Result finite(const Integrand& f, double a, double b, const Options& opt = {});

// Same, split at the given interior breakpoints (kinks, peaks).
Result finite_split(const Integrand& f, std::span<const double> points,
                    const Options& opt = {});

// Integral over [a, inf) through x = a + scale * u / (1 - u), u in (0, 1).
// `scale` should be of the order of the integrand's characteristic length.
Result semi_infinite(const Integrand& f, double a, double scale = 1.0,
                     const Options& opt = {});

// Integral over (-inf, inf), split at `center`.
Result whole_line(const Integrand& f, double center = 0.0, double scale = 1.0,
                  const Options& opt = {});

}  // namespace pathkit::quad
