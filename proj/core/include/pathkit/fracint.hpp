#pragma once

#include <functional>

namespace pathkit::fracint {

using Function = std::function<double(double)>;

// x^{η-1} ∫_0^{x/(a(1-α))} [1 - a(1-α)t/x]^{η/(1-α)-1} f(t) dt, α < 1.
double pathway_frac_integral(const Function& f, double x, double eta, double alpha,
                             double a);

// (1/Γ(η)) ∫_0^x (x-t)^{η-1} f(t) dt.
double rl_integral(const Function& f, double x, double eta);

// (1/Γ(η)) ∫_0^x (x-t)^{η-1} 2F1(η+β, -γ; η; 1 - t/x) f(t) dt, the pathway
// operator at α = 0, a = 1 with the hypergeometric weight; the x^{-η-β}
// factor of the classical definition is left to the caller.
double saigo_integral(const Function& f, double x, double eta, double beta_s,
                      double gamma_s);

// The α -> 1- limit x^{η-1} ∫_0^∞ e^{-aηt/x} f(t) dt.
double pathway_frac_laplace_limit(const Function& f, double x, double eta, double a);

// N0 t^{μ-1} [1 + b(α-1) t^ν]^{-1/(α-1)} / Γ(μ).
double fractional_kinetic_density(double mu, double nu, double b, double alpha, double t,
                                  double n0);

}  // namespace pathkit::fracint
