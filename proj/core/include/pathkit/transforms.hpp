#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pathkit/hfunction.hpp"
#include "pathkit/pathway.hpp"
#include "pathkit/specfun.hpp"

namespace pathkit::transforms {

// E[e^{-tX}] by direct quadrature against the density.
double laplace_pathway_quad(const pathway::PathwayParams& p, double t);

// L(t) = exp(log_prefactor) * H(t * scale).
struct LaplaceHForm {
  specfun::HFunctionSpec spec;
  double log_prefactor;
  double scale;
};

LaplaceHForm laplace_h_form(const pathway::PathwayParams& p);

// E[e^{-tX}] through the H-function representation.
double laplace_pathway_hfun(const pathway::PathwayParams& p, double t);

// (1 + δ t^α)^{-β}.
double ml_laplace(const specfun::MittagLefflerParams& p, double t);

// [1 + δ(q-1) t^α]^{-β/(q-1)}, which tends to exp(-δβ t^α) as q -> 1+.
double levy_pathway_laplace(double ml_index, double beta0, double delta0, double q,
                            double t);

struct LevyReport {
  std::vector<double> q;
  std::vector<double> max_gap;  // sup over the t-grid, per q
  bool monotone = true;         // gaps strictly decrease along the sequence
};

LevyReport levy_limit_check(double ml_index, double beta0, double delta0,
                            std::span<const double> q_sequence,
                            std::span<const double> t_grid = {});

// D(x) = ∫_0^∞ y^{ν-1} [1 + a(α-1) y^ρ]^{-1/(α-1)} exp(-x y^{-β}) dy, with the
// bracket replaced by exp(-a y^ρ) when |α - 1| <= 1e-6.
struct KratzelSpec {
  double nu = 1.0;
  double rho = 1.0;
  double beta = 1.0;
  double alpha = 1.0;
  double a = 1.0;
};

double kratzel_kernel(const KratzelSpec& k, double x, double rel_tol = 1e-10);

// ∫_0^∞ D(x t) f(t) dt. f must be safe to call concurrently.
double p_transform(const std::function<double(double)>& f, const KratzelSpec& k,
                   double x);

}  // namespace pathkit::transforms
