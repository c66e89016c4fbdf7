#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pathkit/pathway.hpp"

namespace pathkit::entropy {

// M_α(f) = (∫ f^{2-α} - 1) / (α - 1) for α < 2; Shannon entropy when
// |α - 1| < 1e-4.
double mathai_entropy(const pathway::PathwayParams& p, double alpha_e);

// Same for a density given on [lo, hi]; hi may be +inf.
double mathai_entropy(const std::function<double(double)>& density, double lo,
                      double hi, double alpha_e);

// The optimizer of M_α under fixed mass and fixed moments of orders
// ρ(1-α) and ρ(1-α)+δ is the pathway density with η = 1, ρ = γ - 1.
// A perturbation f·s(x) is projected onto the constraint set and the
// entropy gap M(f + εh) - M(f) is measured.
struct PerturbationOutcome {
  double gap = 0.0;
  double raw_violation = 0.0;  // largest constraint integral before projection
  double residual = 0.0;       // same after projection
  bool degenerate = false;     // nothing left after projection
};

PerturbationOutcome evaluate_perturbation(const pathway::PathwayParams& p,
                                          const std::function<double(double)>& shape,
                                          double step_fraction = 0.5);

struct OptimalityReport {
  double optimal_entropy = 0.0;
  double max_gap = 0.0;
  std::vector<double> gaps;
  double max_raw_violation = 0.0;
  double max_residual = 0.0;
  int rejected = 0;
  bool inconclusive = false;
};

OptimalityReport entropy_optimality_check(const pathway::PathwayParams& p,
                                          std::uint64_t seed = 0,
                                          int perturbations = 20);

}  // namespace pathkit::entropy
