#include "pathkit/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pathkit/errors.hpp"

namespace pathkit::specfun {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) {
  return x <= 0 && x == std::nearbyint(x);
}

// Stirling series, |z| >= 15 and Re z > 0.
cplx log_gamma_stirling(cplx z) {
  static constexpr double kCoef[] = {
      1.0 / 12,          -1.0 / 360,  1.0 / 1260, -1.0 / 1680,
      1.0 / 1188,        -691.0 / 360360, 1.0 / 156,
      -3617.0 / 122400};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (double c : kCoef) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * kPi) + series;
}

// log sin(πz) without overflowing for large |Im z|.
cplx log_sin_pi(cplx z) {
  const double y = z.imag();
  if (std::abs(y) < 5) return std::log(std::sin(kPi * z));
  if (y < 0) return std::conj(log_sin_pi(std::conj(z)));
  const cplx i(0.0, 1.0);
  const cplx w = std::exp(2.0 * i * kPi * z);
  return -i * kPi * z + std::log(1.0 - w) + std::log(0.5 * i);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
  return boost::math::lgamma(x);
}

double log_gamma_ratio(double x, double d) {
  if (!(x > 0) || !(x + d > 0)) {
    throw DomainError("log_gamma_ratio: arguments must be positive");
  }
  if (d == 0) return 0.0;
  if (x > 50 && std::abs(d) < 0.5 * x && std::abs(d) * std::log(x) < 600) {
    return -std::log(boost::math::tgamma_delta_ratio(x, d));
  }
  return boost::math::lgamma(x + d) - boost::math::lgamma(x);
}

double log_abs_gamma(double x, int* sign) {
  if (is_nonpositive_integer(x)) throw DomainError("log_abs_gamma: pole");
  int s = 1;
  const double v = boost::math::lgamma(x, &s);
  if (sign) *sign = s;
  return v;
}

double recip_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  int s = 1;
  const double v = boost::math::lgamma(x, &s);
  return s * std::exp(-v);
}

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  const double x = z.real();
  const double y = z.imag();
  int shift = 0;
  if (std::abs(y) < 15) {
    shift = std::max(0, static_cast<int>(std::ceil(std::sqrt(225 - y * y) - x)));
  }
  cplx prod = 1.0;
  for (int k = 0; k < shift; ++k) prod *= z + static_cast<double>(k);
  return log_gamma_stirling(z + static_cast<double>(shift)) - std::log(prod);
}

double pochhammer(double b, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= b + i;
  return r;
}

double hyp0f1(double b, double z) {
  if (is_nonpositive_integer(b)) {
    throw DomainError("hyp0f1: b must not be a nonpositive integer");
  }
  if (z < -20 && -z > 0.25 * b * b) {
    // 0F1(;b;-x) = Γ(b) x^{(1-b)/2} J_{b-1}(2√x); the series cancels badly.
    const double x = -z;
    const double j = boost::math::cyl_bessel_j(b - 1, 2 * std::sqrt(x));
    int s = 1;
    const double lg = boost::math::lgamma(b, &s);
    return s * std::exp(lg + 0.5 * (1 - b) * std::log(x)) * j;
  }
  long double sum = 1.0L;
  long double term = 1.0L;
  for (int k = 0; k < 10000; ++k) {
    term *= static_cast<long double>(z) / ((b + k) * (k + 1.0L));
    sum += term;
    if (std::fabs(term) <= 1e-17L * std::fabs(sum) && std::fabs(z) < std::fabs(b + k + 1) * (k + 2.0)) {
      return static_cast<double>(sum);
    }
  }
  throw AccuracyError("hyp0f1: series did not converge within 10^4 terms");
}

double log_hyp0f1(double b, double z) {
  if (!(b > 0) || !(z >= 0)) throw DomainError("log_hyp0f1: needs b > 0 and z >= 0");
  const double nu = b - 1;
  const double y = 2 * std::sqrt(z);
  if (y <= 50 || y <= 4 * nu * nu + 50) {
    long double sum = 1.0L;
    long double term = 1.0L;
    for (int k = 0; k < 1000000; ++k) {
      term *= static_cast<long double>(z) / ((b + k) * (k + 1.0L));
      sum += term;
      if (term <= 1e-18L * sum && z < (b + k + 1) * (k + 2.0)) {
        if (std::isfinite(static_cast<double>(std::log(sum)))) {
          return static_cast<double>(std::log(sum));
        }
        break;
      }
    }
    if (y <= 50) throw AccuracyError("log_hyp0f1: series did not converge");
  }
  // Γ(b) (z)^{(1-b)/2} I_{b-1}(2√z) with the large-argument expansion of I.
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = -term * (4 * nu * nu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * y);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return log_gamma(b) + 0.5 * (1 - b) * std::log(z) + y - 0.5 * std::log(2 * kPi * y) +
         std::log(sum);
}

std::vector<double> hyp0f1_partial_sums(double b, double z, std::size_t n) {
  if (is_nonpositive_integer(b)) {
    throw DomainError("hyp0f1: b must not be a nonpositive integer");
  }
  std::vector<double> out;
  out.reserve(n);
  long double sum = 0.0L;
  long double term = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    sum += term;
    out.push_back(static_cast<double>(sum));
    term *= static_cast<long double>(z) / ((b + k) * (k + 1.0L));
  }
  return out;
}

namespace {

double gauss_series(double a, double b, double c, double z) {
  double sum = 1.0;
  double term = 1.0;
  int small = 0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small == 2) return sum;
    } else {
      small = 0;
    }
  }
  throw AccuracyError("hyp2f1: series did not converge");
}

// c = a + b + m with m a nonnegative integer, w = 1 - z in (0, 1).
double hyp2f1_log_case(double a, double b, int m, double w) {
  using boost::math::digamma;
  const double c = a + b + m;
  int sc = 1;
  const double lgc = boost::math::lgamma(c, &sc);
  const double gc = sc * std::exp(lgc);

  double finite = 0.0;
  if (m > 0) {
    double t = 1.0;  // (a)_k (b)_k (m-k-1)! / k! (z-1)^k, built up in k
    double fact = std::tgamma(static_cast<double>(m));  // (m-1)!
    for (int k = 0; k < m; ++k) {
      finite += t * fact;
      t *= (a + k) * (b + k) / (k + 1.0) * (-w);
      if (k + 1 < m) fact /= (m - k - 1);
    }
    finite *= recip_gamma(a + m) * recip_gamma(b + m);
  }

  const double lw = std::log(w);
  double tail = 0.0;
  double t = 1.0 / std::tgamma(m + 1.0);  // (a+m)_k (b+m)_k / (k! (k+m)!) w^k
  int small = 0;
  for (int k = 0; k < 100000; ++k) {
    const double bracket = lw - digamma(k + 1.0) - digamma(k + m + 1.0) +
                           digamma(a + k + m) + digamma(b + k + m);
    const double add = t * bracket;
    tail += add;
    if (std::abs(add) <= 1e-17 * std::abs(tail) && k > 2) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
    t *= (a + m + k) * (b + m + k) / ((k + 1.0) * (k + m + 1.0)) * w;
  }
  const double zm1_pow = std::pow(-w, m);
  tail *= zm1_pow * recip_gamma(a) * recip_gamma(b);
  return gc * (finite - tail);
}

}  // namespace

double hyp2f1(double a, double b, double c, double z) {
  if (is_nonpositive_integer(c)) {
    throw DomainError("hyp2f1: c must not be a nonpositive integer");
  }
  if (z == 1) {
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return gauss_series(a, b, c, z);
    if (c - a - b > 0) {
      // Gauss: Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)).
      int s1 = 1, s2 = 1;
      const double l = boost::math::lgamma(c, &s1) + boost::math::lgamma(c - a - b, &s2);
      return s1 * s2 * std::exp(l) * recip_gamma(c - a) * recip_gamma(c - b);
    }
    throw DomainError("hyp2f1: diverges at z = 1 unless c - a - b > 0");
  }
  if (!(std::abs(z) < 1)) throw DomainError("hyp2f1: requires |z| < 1 (or z = 1)");
  if (a == 0 || b == 0 || z == 0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return gauss_series(a, b, c, z);  // terminates
  }
  if (z < -0.5) {
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)).
    return std::pow(1 - z, -a) * hyp2f1(a, c - b, c, z / (z - 1));
  }
  if (z <= 0.5) return gauss_series(a, b, c, z);

  // With a, b, c > 0 every term of the direct series is positive, so it is
  // accurate whenever it converges in reasonable time.
  const bool positive_series = a > 0 && b > 0 && c > 0;
  if (positive_series && z <= 0.9) return gauss_series(a, b, c, z);
  const double w = 1 - z;
  const double m = c - a - b;
  const double mr = std::nearbyint(m);
  if (std::abs(m - mr) < 1e-12) {
    const int mi = static_cast<int>(mr);
    if (mi >= 0) return hyp2f1_log_case(a, b, mi, w);
    // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z).
    return std::pow(w, m) * hyp2f1_log_case(c - a, c - b, -mi, w);
  }
  // Connection formula around z = 1. Near-integer m loses about
  // log10(1/|m - round(m)|) digits to cancellation between the two terms.
  int s1 = 1, s2 = 1, s3 = 1;
  const double lgc = boost::math::lgamma(c, &s1);
  const double l_m = boost::math::lgamma(m, &s2);
  const double l_mm = boost::math::lgamma(-m, &s3);
  const double t1 = s1 * s2 * std::exp(lgc + l_m) * recip_gamma(c - a) *
                    recip_gamma(c - b) * gauss_series(a, b, 1 - m, w);
  const double t2 = s1 * s3 * std::exp(lgc + l_mm + m * std::log(w)) *
                    recip_gamma(a) * recip_gamma(b) *
                    gauss_series(c - a, c - b, m + 1, w);
  if (positive_series && std::abs(t1 + t2) < 1e-6 * (std::abs(t1) + std::abs(t2))) {
    return gauss_series(a, b, c, z);  // the two terms cancel; sum directly
  }
  return t1 + t2;
}

void validate(const MittagLefflerParams& p) {
  detail::require(p.ml_index > 0 && p.ml_index <= 1,
                  "Mittag-Leffler index must lie in (0, 1]");
  detail::require(p.beta > 0, "Mittag-Leffler beta must be positive");
  detail::require(p.delta > 0, "Mittag-Leffler delta must be positive");
}

namespace {

struct MpfrVar {
  mpfr_t v;
  explicit MpfrVar(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrVar() { mpfr_clear(v); }
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;
};

// Log-magnitude of the k-th series term; the sign is (-1)^k.
double ml_log_term(const MittagLefflerParams& p, double log_y, int k) {
  using boost::math::lgamma;
  return lgamma(p.beta + k) - lgamma(p.beta) - lgamma(k + 1.0) + k * log_y -
         lgamma(p.ml_index * (k + p.beta));
}

// Series sum at `prec` bits; returns the sum as a double and stores
// ln|sum| (computed in high precision) in *log_abs.
double ml_series_mpfr(const MittagLefflerParams& p, double x, mpfr_prec_t prec,
                      double* log_abs) {
  MpfrVar sum(prec), term(prec), lt(prec), tmp(prec), logy(prec), lgb(prec);
  mpfr_set_zero(sum.v, 1);
  mpfr_set_d(tmp.v, x, MPFR_RNDN);
  mpfr_log(logy.v, tmp.v, MPFR_RNDN);
  mpfr_mul_d(logy.v, logy.v, p.ml_index, MPFR_RNDN);
  mpfr_set_d(tmp.v, p.delta, MPFR_RNDN);
  mpfr_log(tmp.v, tmp.v, MPFR_RNDN);
  mpfr_sub(logy.v, logy.v, tmp.v, MPFR_RNDN);
  mpfr_set_d(tmp.v, p.beta, MPFR_RNDN);
  int sg = 0;
  mpfr_lgamma(lgb.v, &sg, tmp.v, MPFR_RNDN);

  const double log_y = std::log(x) * p.ml_index - std::log(p.delta);
  const double eps_log = -static_cast<double>(prec) * std::numbers::ln2 - 5;
  for (int k = 0; k < 20000; ++k) {
    // lt = lgamma(beta+k) - lgamma(beta) - lgamma(k+1) + k log y - lgamma(α(k+β))
    mpfr_set_d(tmp.v, p.beta, MPFR_RNDN);
    mpfr_add_si(tmp.v, tmp.v, k, MPFR_RNDN);
    mpfr_lgamma(lt.v, &sg, tmp.v, MPFR_RNDN);
    mpfr_sub(lt.v, lt.v, lgb.v, MPFR_RNDN);
    mpfr_set_si(tmp.v, k + 1, MPFR_RNDN);
    mpfr_lngamma(tmp.v, tmp.v, MPFR_RNDN);
    mpfr_sub(lt.v, lt.v, tmp.v, MPFR_RNDN);
    mpfr_mul_si(tmp.v, logy.v, k, MPFR_RNDN);
    mpfr_add(lt.v, lt.v, tmp.v, MPFR_RNDN);
    mpfr_set_d(tmp.v, p.beta, MPFR_RNDN);
    mpfr_add_si(tmp.v, tmp.v, k, MPFR_RNDN);
    mpfr_mul_d(tmp.v, tmp.v, p.ml_index, MPFR_RNDN);
    mpfr_lgamma(tmp.v, &sg, tmp.v, MPFR_RNDN);
    mpfr_sub(lt.v, lt.v, tmp.v, MPFR_RNDN);
    mpfr_exp(term.v, lt.v, MPFR_RNDN);
    if (k % 2 == 1) mpfr_neg(term.v, term.v, MPFR_RNDN);
    mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);

    const double lt_d = mpfr_get_d(lt.v, MPFR_RNDN);
    const double ls = std::log(std::abs(mpfr_get_d(sum.v, MPFR_RNDN)));
    // Past the peak the terms decrease monotonically, so the first
    // negligible term bounds the alternating tail.
    if (k > 2 && lt_d < ls + eps_log && ml_log_term(p, log_y, k + 1) < lt_d) {
      mpfr_abs(tmp.v, sum.v, MPFR_RNDN);
      mpfr_log(tmp.v, tmp.v, MPFR_RNDN);
      *log_abs = mpfr_get_d(tmp.v, MPFR_RNDN);
      return mpfr_get_d(sum.v, MPFR_RNDN);
    }
  }
  throw AccuracyError("mittag_leffler_3p: series did not converge");
}

}  // namespace

double mittag_leffler_3p(const MittagLefflerParams& p, double x) {
  validate(p);
  if (x < 0) throw DomainError("mittag_leffler_3p: x must be nonnegative");
  const double ab = p.ml_index * p.beta;
  if (x == 0) {
    if (ab > 1) return 0.0;
    if (ab < 1) return std::numeric_limits<double>::infinity();
    return std::pow(p.delta, -p.beta) / std::tgamma(ab);
  }
  const double log_y = std::log(x) * p.ml_index - std::log(p.delta);
  const double log_pref = (ab - 1) * std::log(x) - p.beta * std::log(p.delta);

  // Double-precision pass, tracking the largest term.
  double sum = 0.0;
  double max_log = -std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 0; k < 20000; ++k) {
    const double lt = ml_log_term(p, log_y, k);
    max_log = std::max(max_log, lt);
    const double t = (k % 2 ? -1.0 : 1.0) * std::exp(lt);
    sum += t;
    if (k > 2 && std::abs(t) <= 1e-17 * std::abs(sum) &&
        ml_log_term(p, log_y, k + 1) < lt) {
      converged = true;
      break;
    }
  }
  const double loss = converged && sum != 0.0
                          ? max_log - std::log(std::abs(sum))
                          : std::numeric_limits<double>::infinity();
  if (loss < std::log(1e3)) return std::exp(log_pref) * sum;

  // Cancellation: redo at a precision covering the lost digits plus a
  // 30-digit guard, verified against the loss measured at that precision.
  mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::max(0.0, max_log) / std::numbers::ln2) + 160;
  constexpr mpfr_prec_t kMaxPrec = 4096;
  while (prec <= kMaxPrec) {
    double log_abs = 0.0;
    const double s = ml_series_mpfr(p, x, prec, &log_abs);
    const double lost_bits = (max_log - log_abs) / std::numbers::ln2;
    if (static_cast<double>(prec) - lost_bits >= 100) {
      return (s < 0 ? -1.0 : 1.0) * std::exp(log_pref + log_abs);
    }
    prec = static_cast<mpfr_prec_t>(lost_bits) + 200;
  }
  throw AccuracyError("mittag_leffler_3p: cancellation exceeds precision cap at x = " +
                      std::to_string(x));
}

double matrix_gamma_p(int p, double beta) {
  if (p < 1) throw DomainError("matrix_gamma_p: p must be positive");
  if (!(beta > 0.5 * (p - 1))) {
    throw DomainError("matrix_gamma_p: beta must exceed (p-1)/2");
  }
  double r = 0.25 * p * (p - 1) * std::log(kPi);
  for (int j = 0; j < p; ++j) r += boost::math::lgamma(beta - 0.5 * j);
  return r;
}

}  // namespace pathkit::specfun
