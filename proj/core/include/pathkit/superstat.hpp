#pragma once

#include <optional>

#include "pathkit/pathway.hpp"

namespace pathkit::superstat {

// Conditional x | θ ~ k x^γ e^{-θ x^δ} (or its type-2 pathway extension when
// alpha is set) mixed over an exponential prior λ e^{-λθ}.
struct SuperstatModel {
  double gamma = 0.0;
  double delta = 1.0;
  double lam = 1.0;
  std::optional<double> alpha;
};

void validate(const SuperstatModel& m);

double prior_pdf(const SuperstatModel& m, double theta);

double conditional_pdf(const SuperstatModel& m, double x, double theta);
double marginal_pdf(const SuperstatModel& m, double x);
// The pathway member that coincides with the marginal.
pathway::PathwayParams marginal_as_pathway(const SuperstatModel& m);
// Gamma((γ+1)/δ + 1, λ + x^δ) in θ.
double posterior_pdf(const SuperstatModel& m, double theta, double x);
double bayes_estimate(const SuperstatModel& m, double x);

// Extended model, alpha > 1 with 1/(α-1) > (γ+1)/δ. Within kRegimeEps of 1
// these fall back to the plain model.
double ext_conditional_pdf(const SuperstatModel& m, double x, double theta);
double ext_marginal_pdf(const SuperstatModel& m, double x);  // G-function form
double ext_marginal_pdf_quad(const SuperstatModel& m, double x);
double ext_posterior_pdf(const SuperstatModel& m, double theta, double x);
double ext_bayes_estimate(const SuperstatModel& m, double x);  // ratio of G-functions
double ext_bayes_estimate_quad(const SuperstatModel& m, double x);

// ρ a^{γ/ρ} e^{-δ_b/a} x^{γ-1} e^{-a x^ρ} 0F1(;γ/ρ;δ_b x^ρ) / Γ(γ/ρ).
double bessel_gamma_pdf(double gamma, double rho, double a, double delta_b, double x);

// x^{γ-1} [1 - a(1-α) x^ρ]^{1/(1-α)} 0F1(;γ/ρ;δ_b x^ρ), normalized. The
// α > 1 constant comes from quadrature and is cached per parameter set.
double bessel_pathway_pdf(double gamma, double rho, double a, double delta_b,
                          double alpha, double x);
double bessel_pathway_log_norm(double gamma, double rho, double a, double delta_b,
                               double alpha);

}  // namespace pathkit::superstat
