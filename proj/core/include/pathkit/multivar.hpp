#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace pathkit::multivar {

// f(x) = K Π x_i^{γ_i-1} [1 - (1-α) Σ a_i x_i^{δ_i}]^{η/(1-α)}, x_i > 0.
struct MultivarPathwayParams {
  std::vector<double> gammas;
  std::vector<double> a_list;
  std::vector<double> deltas;
  double eta = 1.0;
  double alpha = 1.0;
};

void validate(const MultivarPathwayParams& p);
double mv_log_norm_const(const MultivarPathwayParams& p);
// -inf outside the support.
double mv_logpdf(const MultivarPathwayParams& p, std::span<const double> x);

// f(X) = C |S|^γ |I - a(1-α) S|^{η/(1-α)}, S = A^{1/2}(X-M) B (X-M)' A^{1/2},
// X real p x q. Empty A, B, M mean identity, identity and zero.
struct MatrixPathwaySpec {
  int p = 1;
  int q = 1;
  double gamma = 0.0;
  double eta = 1.0;
  double a = 1.0;
  double alpha = 0.0;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd M;
};

void validate(const MatrixPathwaySpec& s);
double matrix_log_norm_const(const MatrixPathwaySpec& s);
// -inf outside the support.
double matrix_log_density(const MatrixPathwaySpec& s, const Eigen::MatrixXd& X);

// E[(v^2)^h] with v^2 = |S|.
double volume_moment(const MatrixPathwaySpec& s, double h);

// The same Mellin structure read as the h-th moment of a likelihood ratio
// criterion.
inline constexpr std::string_view kLambdaCriterionNote =
    "moment of a product of independent type-1 betas, the structure of the "
    "likelihood ratio criterion";
double lambda_criterion_moment(const MatrixPathwaySpec& s, double h);

// u1 = [a(1-α)]^p v^2 is a product of independent Beta(A - (j-1)/2, B).
struct BetaFactor {
  double a;
  double b;
};
std::vector<BetaFactor> u1_beta_factors(const MatrixPathwaySpec& s);
std::vector<double> sample_u1(const MatrixPathwaySpec& s, std::mt19937_64& rng,
                              std::size_t n);
// Density of u1 through G^{p,0}_{p,p}; zero outside (0, 1).
double u1_density(const MatrixPathwaySpec& s, double u);

}  // namespace pathkit::multivar
