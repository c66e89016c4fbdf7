#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace pathkit::specfun {

// ln Γ(x) for x > 0.
double log_gamma(double x);

// ln Γ(x + d) - ln Γ(x) for x > 0, x + d > 0, accurate for large x.
double log_gamma_ratio(double x, double d);

// ln |Γ(x)| for any real x that is not a pole; *sign receives the sign of Γ(x).
double log_abs_gamma(double x, int* sign);

// 1/Γ(x), zero at the poles.
double recip_gamma(double x);

// A logarithm of Γ(z) for complex z away from the poles. The imaginary part
// is only defined modulo 2π; callers exponentiate.
std::complex<double> log_gamma(std::complex<double> z);

// (b)_k = b (b+1) ... (b+k-1).
double pochhammer(double b, unsigned k);

// 0F1(; b; z). Relative error below 1e-12 for |z| <= 100.
double hyp0f1(double b, double z);

// ln 0F1(; b; z) for z >= 0 and b > 0, usable where 0F1 itself overflows.
double log_hyp0f1(double b, double z);

// The first n partial sums S_0..S_{n-1} of the 0F1 series.
std::vector<double> hyp0f1_partial_sums(double b, double z, std::size_t n);

// Gauss 2F1(a, b; c; z) for real z in (-1, 1], z = 1 only where the series
// converges there.
double hyp2f1(double a, double b, double c, double z);

struct MittagLefflerParams {
  double ml_index = 1.0;  // in (0, 1]
  double beta = 1.0;
  double delta = 1.0;
};

void validate(const MittagLefflerParams& p);

// Density x^{αβ-1}/δ^β Σ_k (β)_k (-x^α)^k / (k! δ^k Γ(αk+αβ)) on x >= 0.
double mittag_leffler_3p(const MittagLefflerParams& p, double x);

// ln Γ_p(β) = p(p-1)/4 ln π + Σ_{j<p} ln Γ(β - j/2).
double matrix_gamma_p(int p, double beta);

}  // namespace pathkit::specfun
