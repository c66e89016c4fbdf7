#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace pathkit::pathway {

// |α - 1| at or below this is treated as the gamma limit.
inline constexpr double kRegimeEps = 1e-6;

enum class Regime { Type1, Gamma, Type2 };

// f(x) = c x^{γ-1} [1 - a(1-α) x^δ]^{η/(1-α)}, x > 0, with the α > 1 and
// α -> 1 forms following by continuity. `symmetric` uses |x| on the real
// line with half the constant.
struct PathwayParams {
  double alpha = 1.0;
  double a = 1.0;
  double delta = 1.0;
  double gamma_shape = 1.0;
  double eta = 1.0;
  bool symmetric = false;
};

Regime regime(const PathwayParams& p);
std::string_view regime_name(Regime r);

// Throws DomainError unless the density exists.
void validate(const PathwayParams& p);

struct Interval {
  double lo;
  double hi;
};

Interval support(const PathwayParams& p);

double log_norm_const(const PathwayParams& p);
double log_pdf(const PathwayParams& p, double x);
double pdf(const PathwayParams& p, double x);
double cdf(const PathwayParams& p, double x);
// Inverse of cdf by bisection.
double quantile(const PathwayParams& p, double prob);

// E[x^h], or E|x|^h for the symmetric variant.
double moment(const PathwayParams& p, double h);

std::vector<double> sample(const PathwayParams& p, std::mt19937_64& rng,
                           std::size_t n);

// α that puts the right end of the support at d.
double alpha_from_cutoff(double a, double delta, double d);

// Moment matching on α with the other parameters fixed.
PathwayParams fit_alpha_moments(std::span<const double> samples, double a,
                                double delta, double gamma_shape, double eta);

// Unnormalized g = f/c with γ = δ = η = 1 satisfies g' = -a g^α
// (g' = -a g in the gamma limit). Returns g'(x) + a g(x)^α with a central
// difference derivative.
double power_law_residual(const PathwayParams& p, double x);

enum class SpecialCase {
  gaussian,
  maxwell_boltzmann,
  rayleigh,
  student_t,
  cauchy,
  type1_beta,
  type2_beta,
  tsallis,
  triangular,
  f_density,
  gamma,
  chisquare,
  exponential,
  generalized_gamma,
  weibull,
  logistic,
  fermi_dirac,
  u_shaped,
  hermert,
  helley,
  pareto_class,
};

std::string_view special_case_name(SpecialCase tag);

// Verbatim: the classical table rows with their constraints as printed.
// Curated: rows whose reductions have been checked analytically.
enum class Registry { Curated, Verbatim };

struct SpecialCaseRow {
  SpecialCase tag;
  std::string_view constraints;
  std::function<bool(const PathwayParams&)> matches;
};

const std::vector<SpecialCaseRow>& special_case_rows(Registry reg);

// First matching row; rows are ordered most specific first.
std::optional<SpecialCase> reduce_special_case(const PathwayParams& p,
                                               Registry reg = Registry::Curated);

}  // namespace pathkit::pathway
