#include <cmath>

#include "pathkit/pathway.hpp"

namespace pathkit::pathway {
namespace {

bool eq(double v, double target) {
  return std::abs(v - target) <= 1e-12 * std::max(1.0, std::abs(target));
}

bool positive_integer(double v) {
  const double r = std::nearbyint(v);
  return r >= 1 && eq(v, r);
}

bool alpha_one(const PathwayParams& p) { return regime(p) == Regime::Gamma; }

using P = const PathwayParams&;

std::vector<SpecialCaseRow> curated_rows() {
  return {
      {SpecialCase::cauchy, "symmetric, alpha=2, gamma=1, delta=2, eta=1, a=1",
       [](P p) {
         return p.symmetric && eq(p.alpha, 2) && eq(p.gamma_shape, 1) &&
                eq(p.delta, 2) && eq(p.eta, 1) && eq(p.a, 1);
       }},
      {SpecialCase::student_t,
       "symmetric, alpha=2, gamma=1, delta=2, a=1/nu, eta=(nu+1)/2",
       [](P p) {
         return p.symmetric && eq(p.alpha, 2) && eq(p.gamma_shape, 1) &&
                eq(p.delta, 2) && eq(p.eta, 0.5 * (1 / p.a + 1));
       }},
      {SpecialCase::exponential, "alpha=1, a=1, gamma=1, delta=1",
       [](P p) {
         return alpha_one(p) && eq(p.a, 1) && eq(p.gamma_shape, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::triangular, "alpha=0, gamma=1, eta=1, delta=1",
       [](P p) {
         return !p.symmetric && eq(p.alpha, 0) && eq(p.gamma_shape, 1) &&
                eq(p.eta, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::tsallis, "alpha>1, gamma=1, delta=1, a=1, eta=1",
       [](P p) {
         return !p.symmetric && regime(p) == Regime::Type2 && eq(p.gamma_shape, 1) &&
                eq(p.delta, 1) && eq(p.a, 1) && eq(p.eta, 1);
       }},
      {SpecialCase::pareto_class, "alpha<1, gamma=1, delta=1, a=1, eta=1",
       [](P p) {
         return !p.symmetric && regime(p) == Regime::Type1 && eq(p.gamma_shape, 1) &&
                eq(p.delta, 1) && eq(p.a, 1) && eq(p.eta, 1);
       }},
      {SpecialCase::type1_beta, "alpha<1, a(1-alpha)=1, delta=1",
       [](P p) {
         return !p.symmetric && regime(p) == Regime::Type1 &&
                eq(p.a * (1 - p.alpha), 1) && eq(p.delta, 1);
       }},
      {SpecialCase::type2_beta, "alpha>1, a(alpha-1)=1, delta=1",
       [](P p) {
         return !p.symmetric && regime(p) == Regime::Type2 &&
                eq(p.a * (p.alpha - 1), 1) && eq(p.delta, 1);
       }},
      {SpecialCase::gamma, "alpha=1, a=1, delta=1",
       [](P p) { return !p.symmetric && alpha_one(p) && eq(p.a, 1) && eq(p.delta, 1); }},
  };
}

// Rows exactly as they appear in the classical table, free symbols (n, nu,
// m, ...) allowed to take any admissible value; ordered by the number of
// listed constraints.
std::vector<SpecialCaseRow> verbatim_rows() {
  return {
      {SpecialCase::student_t, "alpha=2, gamma=1, eta=(nu+1)/2, a=1/nu, delta=1",
       [](P p) {
         return p.symmetric && eq(p.alpha, 2) && eq(p.gamma_shape, 1) &&
                eq(p.eta, 0.5 * (1 / p.a + 1)) && eq(p.delta, 1);
       }},
      {SpecialCase::f_density, "alpha=2, gamma-1/2=m/2, a=m/n, eta=(m+1)/2, delta=1",
       [](P p) {
         const double m = 2 * p.gamma_shape - 1;
         return eq(p.alpha, 2) && positive_integer(m) && positive_integer(m / p.a) &&
                eq(p.eta, 0.5 * (m + 1)) && eq(p.delta, 1);
       }},
      {SpecialCase::helley, "alpha=1, gamma-1=1/2, a=1, eta=mg/KT, delta=1",
       [](P p) {
         return alpha_one(p) && eq(p.gamma_shape, 1.5) && eq(p.a, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::chisquare, "alpha=1, a=1, gamma-1/2=nu/2, eta=1/2, delta=1",
       [](P p) {
         return alpha_one(p) && eq(p.a, 1) && positive_integer(2 * p.gamma_shape - 1) &&
                eq(p.eta, 0.5) && eq(p.delta, 1);
       }},
      {SpecialCase::logistic, "alpha=2, a=1, gamma-1=1/2, eta=2, delta=1, x=e^y",
       [](P p) {
         return eq(p.alpha, 2) && eq(p.a, 1) && eq(p.gamma_shape, 1.5) &&
                eq(p.eta, 2) && eq(p.delta, 1);
       }},
      {SpecialCase::fermi_dirac, "alpha=2, a=1, gamma=1, eta=1, delta=1, x=e^{eps+mu y}",
       [](P p) {
         return eq(p.alpha, 2) && eq(p.a, 1) && eq(p.gamma_shape, 1) && eq(p.eta, 1) &&
                eq(p.delta, 1);
       }},
      {SpecialCase::gaussian, "alpha=1, gamma=1, a=1, delta=1",
       [](P p) {
         return p.symmetric && alpha_one(p) && eq(p.gamma_shape, 1) && eq(p.a, 1) &&
                eq(p.delta, 1);
       }},
      {SpecialCase::maxwell_boltzmann, "alpha=1, gamma-1=3/4, a=1, delta=1",
       [](P p) {
         return alpha_one(p) && eq(p.gamma_shape, 1.75) && eq(p.a, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::rayleigh, "alpha=1, gamma-1=1/2, a=1, delta=1",
       [](P p) {
         return alpha_one(p) && eq(p.gamma_shape, 1.5) && eq(p.a, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::hermert, "alpha=1, gamma=n/2, a=1, delta=1",
       [](P p) {
         return alpha_one(p) && positive_integer(2 * p.gamma_shape) && eq(p.a, 1) &&
                eq(p.delta, 1);
       }},
      {SpecialCase::u_shaped, "alpha=0, gamma=1, eta=1, delta=1",
       [](P p) {
         return eq(p.alpha, 0) && eq(p.gamma_shape, 1) && eq(p.eta, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::cauchy, "alpha=2, eta=1, a=1, delta=1",
       [](P p) {
         return p.symmetric && eq(p.alpha, 2) && eq(p.eta, 1) && eq(p.a, 1) &&
                eq(p.delta, 1);
       }},
      {SpecialCase::tsallis, "gamma-1=1/2, eta=1, a=1, delta=1",
       [](P p) {
         return eq(p.gamma_shape, 1.5) && eq(p.eta, 1) && eq(p.a, 1) && eq(p.delta, 1);
       }},
      {SpecialCase::triangular, "alpha=0, gamma-1=1/2, eta=1, delta=1",
       [](P p) {
         return eq(p.alpha, 0) && eq(p.gamma_shape, 1.5) && eq(p.eta, 1) &&
                eq(p.delta, 1);
       }},
      {SpecialCase::exponential, "alpha=1, a=1, gamma-1=1/2, delta=1",
       [](P p) {
         return alpha_one(p) && eq(p.a, 1) && eq(p.gamma_shape, 1.5) && eq(p.delta, 1);
       }},
      {SpecialCase::type1_beta, "alpha<1, a(1-alpha)=1, delta=1",
       [](P p) {
         return p.alpha < 1 && eq(p.a * (1 - p.alpha), 1) && eq(p.delta, 1);
       }},
      // As printed this row can never hold: a > 0 and α > 1 make a(1-α) < 0.
      {SpecialCase::type2_beta, "alpha>1, a(1-alpha)=1, delta=1",
       [](P p) {
         return p.alpha > 1 && eq(p.a * (1 - p.alpha), 1) && eq(p.delta, 1);
       }},
      {SpecialCase::gamma, "alpha=1, a=1, delta=1",
       [](P p) { return alpha_one(p) && eq(p.a, 1) && eq(p.delta, 1); }},
      {SpecialCase::weibull, "alpha=1, a=1, gamma-1=1/2",
       [](P p) { return alpha_one(p) && eq(p.a, 1) && eq(p.gamma_shape, 1.5); }},
      {SpecialCase::generalized_gamma, "alpha=1, a=1",
       [](P p) { return alpha_one(p) && eq(p.a, 1); }},
  };
}

}  // namespace

std::string_view special_case_name(SpecialCase tag) {
  switch (tag) {
    case SpecialCase::gaussian: return "gaussian";
    case SpecialCase::maxwell_boltzmann: return "maxwell_boltzmann";
    case SpecialCase::rayleigh: return "rayleigh";
    case SpecialCase::student_t: return "student_t";
    case SpecialCase::cauchy: return "cauchy";
    case SpecialCase::type1_beta: return "type1_beta";
    case SpecialCase::type2_beta: return "type2_beta";
    case SpecialCase::tsallis: return "tsallis";
    case SpecialCase::triangular: return "triangular";
    case SpecialCase::f_density: return "f_density";
    case SpecialCase::gamma: return "gamma";
    case SpecialCase::chisquare: return "chisquare";
    case SpecialCase::exponential: return "exponential";
    case SpecialCase::generalized_gamma: return "generalized_gamma";
    case SpecialCase::weibull: return "weibull";
    case SpecialCase::logistic: return "logistic";
    case SpecialCase::fermi_dirac: return "fermi_dirac";
    case SpecialCase::u_shaped: return "u_shaped";
    case SpecialCase::hermert: return "hermert";
    case SpecialCase::helley: return "helley";
    case SpecialCase::pareto_class: return "pareto_class";
  }
  return "unknown";
}

const std::vector<SpecialCaseRow>& special_case_rows(Registry reg) {
  static const std::vector<SpecialCaseRow> curated = curated_rows();
  static const std::vector<SpecialCaseRow> verbatim = verbatim_rows();
  return reg == Registry::Curated ? curated : verbatim;
}

std::optional<SpecialCase> reduce_special_case(const PathwayParams& p, Registry reg) {
  validate(p);
  for (const auto& row : special_case_rows(reg)) {
    if (row.matches(p)) return row.tag;
  }
  return std::nullopt;
}

}  // namespace pathkit::pathway
