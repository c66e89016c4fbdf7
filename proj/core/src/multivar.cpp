#include "pathkit/multivar.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "pathkit/errors.hpp"
#include "pathkit/hfunction.hpp"
#include "pathkit/pathway.hpp"
#include "pathkit/quadrature.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::multivar {
namespace {

using pathway::Regime;
using specfun::log_gamma;

constexpr double kInf = std::numeric_limits<double>::infinity();

Regime regime_of(double alpha) {
  if (std::abs(alpha - 1) <= pathway::kRegimeEps) return Regime::Gamma;
  return alpha < 1 ? Regime::Type1 : Regime::Type2;
}

}  // namespace

void validate(const MultivarPathwayParams& p) {
  const std::size_t n = p.gammas.size();
  detail::require(n > 0, "multivariate pathway: at least one coordinate");
  detail::require(p.a_list.size() == n && p.deltas.size() == n,
                  "multivariate pathway: parameter lists differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(p.gammas[i] > 0 && p.a_list[i] > 0 && p.deltas[i] > 0,
                    "multivariate pathway: gammas, a and deltas must be positive");
  }
  detail::require(p.eta > 0, "multivariate pathway: eta must be positive");
  detail::require(std::isfinite(p.alpha), "multivariate pathway: alpha must be finite");
  if (regime_of(p.alpha) == Regime::Type2) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += p.gammas[i] / p.deltas[i];
    detail::require(p.eta / (p.alpha - 1) > total,
                    "multivariate pathway: needs eta/(alpha-1) > sum gamma_i/delta_i");
  }
}

double mv_log_norm_const(const MultivarPathwayParams& p) {
  validate(p);
  const Regime r = regime_of(p.alpha);
  // Scale of each coordinate after y_i = c a_i x_i^{δ_i}.
  const double c = r == Regime::Type1 ? 1 - p.alpha : (r == Regime::Type2 ? p.alpha - 1 : p.eta);
  double log_k = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < p.gammas.size(); ++i) {
    const double g = p.gammas[i] / p.deltas[i];
    total += g;
    log_k += std::log(p.deltas[i]) + g * std::log(c * p.a_list[i]) - log_gamma(g);
  }
  switch (r) {
    case Regime::Type1: {
      const double s = p.eta / (1 - p.alpha);
      return log_k + log_gamma(total + s + 1) - log_gamma(s + 1);
    }
    case Regime::Type2: {
      const double s = p.eta / (p.alpha - 1);
      return log_k + log_gamma(s) - log_gamma(s - total);
    }
    case Regime::Gamma:
      break;
  }
  return log_k;
}

double mv_logpdf(const MultivarPathwayParams& p, std::span<const double> x) {
  const double log_k = mv_log_norm_const(p);
  detail::require(x.size() == p.gammas.size(), "mv_logpdf: dimension mismatch");
  double base = log_k;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) return -kInf;
    base += (p.gammas[i] - 1) * std::log(x[i]);
    sum += p.a_list[i] * std::pow(x[i], p.deltas[i]);
  }
  switch (regime_of(p.alpha)) {
    case Regime::Type1: {
      const double inner = 1 - (1 - p.alpha) * sum;
      if (inner <= 0) return -kInf;
      return base + p.eta / (1 - p.alpha) * std::log(inner);
    }
    case Regime::Type2:
      return base - p.eta / (p.alpha - 1) * std::log1p((p.alpha - 1) * sum);
    case Regime::Gamma:
      break;
  }
  return base - p.eta * sum;
}

namespace {

Eigen::MatrixXd or_identity(const Eigen::MatrixXd& m, int n) {
  return m.size() == 0 ? Eigen::MatrixXd::Identity(n, n) : m;
}

double log_det_spd(const Eigen::MatrixXd& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DomainError(std::string("matrix pathway: ") + what + " is not positive definite");
  }
  return 2 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

void check_spd(const Eigen::MatrixXd& m, int n, const char* what) {
  detail::require(m.rows() == n && m.cols() == n,
                  std::string("matrix pathway: ") + what + " has the wrong shape");
  detail::require(m.isApprox(m.transpose(), 1e-12),
                  std::string("matrix pathway: ") + what + " must be symmetric");
  log_det_spd(m, what);
}

double shape_a(const MatrixPathwaySpec& s) { return s.gamma + 0.5 * s.q; }

}  // namespace

void validate(const MatrixPathwaySpec& s) {
  detail::require(s.p >= 1 && s.q >= s.p, "matrix pathway: needs 1 <= p <= q");
  detail::require(s.eta > 0 && s.a > 0, "matrix pathway: eta and a must be positive");
  detail::require(std::isfinite(s.alpha) && std::isfinite(s.gamma),
                  "matrix pathway: alpha and gamma must be finite");
  if (s.A.size()) check_spd(s.A, s.p, "A");
  if (s.B.size()) check_spd(s.B, s.q, "B");
  if (s.M.size()) {
    detail::require(s.M.rows() == s.p && s.M.cols() == s.q,
                    "matrix pathway: M must be p x q");
  }
  const double half = 0.5 * (s.p - 1);
  detail::require(shape_a(s) > half, "matrix pathway: needs gamma + q/2 > (p-1)/2");
  if (regime_of(s.alpha) == Regime::Type2) {
    detail::require(s.eta / (s.alpha - 1) - shape_a(s) > half,
                    "matrix pathway: needs eta/(alpha-1) - gamma - q/2 > (p-1)/2");
  }
}

double matrix_log_norm_const(const MatrixPathwaySpec& s) {
  validate(s);
  const int p = s.p, q = s.q;
  const double A = shape_a(s);
  const double log_dets = 0.5 * q * log_det_spd(or_identity(s.A, p), "A") +
                          0.5 * p * log_det_spd(or_identity(s.B, q), "B");
  const double common = log_dets + specfun::matrix_gamma_p(p, 0.5 * q) -
                        0.5 * p * q * std::log(std::numbers::pi) -
                        specfun::matrix_gamma_p(p, A);
  switch (regime_of(s.alpha)) {
    case Regime::Type1: {
      const double b = s.eta / (1 - s.alpha) + 0.5 * (p + 1);
      return common + p * A * std::log(s.a * (1 - s.alpha)) +
             specfun::matrix_gamma_p(p, A + b) - specfun::matrix_gamma_p(p, b);
    }
    case Regime::Type2: {
      const double r = s.eta / (s.alpha - 1);
      return common + p * A * std::log(s.a * (s.alpha - 1)) + specfun::matrix_gamma_p(p, r) -
             specfun::matrix_gamma_p(p, r - A);
    }
    case Regime::Gamma:
      break;
  }
  return common + p * A * std::log(s.a * s.eta);
}

double matrix_log_density(const MatrixPathwaySpec& s, const Eigen::MatrixXd& X) {
  const double log_c = matrix_log_norm_const(s);
  detail::require(X.rows() == s.p && X.cols() == s.q, "matrix pathway: X must be p x q");
  const Eigen::MatrixXd A = or_identity(s.A, s.p);
  const Eigen::MatrixXd B = or_identity(s.B, s.q);
  const Eigen::MatrixXd D = s.M.size() ? Eigen::MatrixXd(X - s.M) : X;
  const Eigen::MatrixXd root = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).operatorSqrt();
  const Eigen::MatrixXd S = root * D * B * D.transpose() * root;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues();
  if (!(ev.minCoeff() > 0)) return -kInf;  // rank deficient
  const double log_det = ev.array().log().sum();
  double out = log_c + s.gamma * log_det;
  switch (regime_of(s.alpha)) {
    case Regime::Type1: {
      const double c = s.a * (1 - s.alpha);
      if (!(1 - c * ev.maxCoeff() > 0)) return -kInf;
      out += s.eta / (1 - s.alpha) * (1 - c * ev.array()).log().sum();
      break;
    }
    case Regime::Type2:
      out -= s.eta / (s.alpha - 1) * (1 + s.a * (s.alpha - 1) * ev.array()).log().sum();
      break;
    case Regime::Gamma:
      out -= s.a * s.eta * ev.sum();
      break;
  }
  return out;
}

double volume_moment(const MatrixPathwaySpec& s, double h) {
  validate(s);
  const int p = s.p;
  const double A = shape_a(s);
  const double half = 0.5 * (p - 1);
  if (!(A + h > half)) {
    throw DomainError("volume_moment: needs gamma + q/2 + h > (p-1)/2");
  }
  const auto gp = [p](double b) { return specfun::matrix_gamma_p(p, b); };
  switch (regime_of(s.alpha)) {
    case Regime::Type1: {
      const double b = s.eta / (1 - s.alpha) + 0.5 * (p + 1);
      return std::exp(-p * h * std::log(s.a * (1 - s.alpha)) + gp(A + h) - gp(A) + gp(A + b) -
                      gp(A + b + h));
    }
    case Regime::Type2: {
      const double r = s.eta / (s.alpha - 1);
      if (!(r - A - h > half)) {
        throw DomainError("volume_moment: needs eta/(alpha-1) - gamma - q/2 - h > (p-1)/2");
      }
      return std::exp(-p * h * std::log(s.a * (s.alpha - 1)) + gp(A + h) - gp(A) +
                      gp(r - A - h) - gp(r - A));
    }
    case Regime::Gamma:
      break;
  }
  return std::exp(-p * h * std::log(s.a * s.eta) + gp(A + h) - gp(A));
}

double lambda_criterion_moment(const MatrixPathwaySpec& s, double h) {
  return volume_moment(s, h);
}

std::vector<BetaFactor> u1_beta_factors(const MatrixPathwaySpec& s) {
  validate(s);
  detail::require(regime_of(s.alpha) == Regime::Type1, "u1: needs alpha < 1");
  const double A = shape_a(s);
  const double B = s.eta / (1 - s.alpha) + 0.5 * (s.p + 1);
  std::vector<BetaFactor> out;
  for (int j = 0; j < s.p; ++j) out.push_back({A - 0.5 * j, B});
  return out;
}

std::vector<double> sample_u1(const MatrixPathwaySpec& s, std::mt19937_64& rng,
                              std::size_t n) {
  const std::vector<BetaFactor> f = u1_beta_factors(s);
  std::vector<std::gamma_distribution<double>> ga, gb;
  for (const auto& b : f) {
    ga.emplace_back(b.a, 1.0);
    gb.emplace_back(b.b, 1.0);
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = 1.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double x = ga[j](rng);
      const double y = gb[j](rng);
      u *= x / (x + y);
    }
    out.push_back(u);
  }
  return out;
}

namespace {

double beta_pdf(const BetaFactor& f, double v) {
  if (!(v > 0 && v < 1)) return 0.0;
  return std::exp((f.a - 1) * std::log(v) + (f.b - 1) * std::log1p(-v) + log_gamma(f.a + f.b) -
                  log_gamma(f.a) - log_gamma(f.b));
}

double product_density(std::span<const BetaFactor> f, double u, bool g_form) {
  if (!(u > 0 && u < 1)) return 0.0;
  if (g_form) {
    std::vector<double> upper, lower;
    double log_pref = -std::log(u);
    for (const auto& b : f) {
      upper.push_back(b.a + b.b);
      lower.push_back(b.a);
      log_pref += log_gamma(b.a + b.b) - log_gamma(b.a);
    }
    const int p = static_cast<int>(f.size());
    try {
      const specfun::MellinBarnesResult r =
          specfun::mellin_barnes(specfun::g_spec(p, 0, upper, lower), u);
      // Keep the G-form unless cancellation along the contour ate the digits.
      if (r.condition < 1e6) {
        return std::exp(log_pref + std::log(std::abs(r.scaled)) + r.log_scale) *
               (r.scaled < 0 ? -1.0 : 1.0);
      }
    } catch (const AccuracyError&) {
    }
  }
  if (f.size() == 1) return beta_pdf(f[0], u);
  // Fallback near u = 1, where the density is tiny: peel off the last factor,
  // g_p(u) = ∫_u^1 g_{p-1}(u/v) f_p(v) dv / v.
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.throw_on_failure = false;
  const auto head = f.first(f.size() - 1);
  return quad::finite(
             [&](double v) {
               const double fv = beta_pdf(f.back(), v);
               return fv == 0 ? 0.0 : product_density(head, u / v, false) * fv / v;
             },
             u, 1.0, opt)
      .value;
}

}  // namespace

double u1_density(const MatrixPathwaySpec& s, double u) {
  const std::vector<BetaFactor> f = u1_beta_factors(s);
  if (!(u > 0 && u < 1)) return 0.0;
  return product_density(f, u, true);
}

}  // namespace pathkit::multivar
