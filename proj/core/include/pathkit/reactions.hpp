#pragma once

#include <optional>

#include "pathkit/hfunction.hpp"

namespace pathkit::reactions {

// Integrand x^{γ-1} exp(-a x^δ) times a depletion factor in x^{-ρ}:
// exp(-b x^{-ρ}) for the classical integrals, and the pathway brackets
// [1 + b(α-1) x^{-ρ}]^{-1/(α-1)} (α > 1) or [1 - b(1-α) x^{-ρ}]^{1/(1-α)}
// (α < 1) for the extended ones. `d` is an upper cut-off.
struct ReactionIntegralSpec {
  double gamma = 1.0;
  double a = 1.0;
  double b = 0.0;
  double delta = 1.0;
  double rho = 1.0;
  std::optional<double> d;
  std::optional<double> alpha;
};

double i1(const ReactionIntegralSpec& s);
double i2(const ReactionIntegralSpec& s);
double i1_alpha(const ReactionIntegralSpec& s);
double i2_alpha(const ReactionIntegralSpec& s);

// Closed form of i1_alpha:
// 1/(δ ρ a^{γ/δ} Γ(r)) H^{2,1}_{1,2}[a^{1/δ} (b(α-1))^{1/ρ} | (1-r, 1/ρ) ;
// (0, 1/ρ), (γ/δ, 1/δ)], r = 1/(α-1).
struct ReactionHForm {
  specfun::HFunctionSpec spec;
  double log_prefactor;
  double argument;
};

ReactionHForm i1_alpha_h_form(const ReactionIntegralSpec& s);
double i1_alpha_hfun(const ReactionIntegralSpec& s);

// E[x^h] of the inverse Gaussian law with mean μ and shape λ.
double inverse_gaussian_moment(double mu, double lam, double h);

}  // namespace pathkit::reactions
