#pragma once

#include <optional>
#include <vector>

namespace pathkit::specfun {

struct ParamPair {
  double value = 0.0;
  double slope = 1.0;
};

// Fox H-function H^{m,n}_{p,q}[z | (a_j, α_j) ; (b_j, β_j)]. Construction
// checks the orders and slopes and that a vertical line separates the poles
// of Γ(b_j + β_j s), j < m, from those of Γ(1 - a_j - α_j s), j < n.
class HFunctionSpec {
 public:
  HFunctionSpec(int m, int n, std::vector<ParamPair> upper,
                std::vector<ParamPair> lower);

  int m() const { return m_; }
  int n() const { return n_; }
  int p() const { return static_cast<int>(upper_.size()); }
  int q() const { return static_cast<int>(lower_.size()); }
  const std::vector<ParamPair>& upper() const { return upper_; }
  const std::vector<ParamPair>& lower() const { return lower_; }

  // Open interval of admissible abscissae; either end may be infinite.
  double gap_lo() const { return gap_lo_; }
  double gap_hi() const { return gap_hi_; }
  // Default abscissa: the gap midpoint, or a point one unit inside a
  // half-infinite gap.
  double abscissa() const { return c_; }

  // a* = Σ_{j<n} α_j - Σ_{j>=n} α_j + Σ_{j<m} β_j - Σ_{j>=m} β_j. The
  // integrand decays like exp(-π a* |τ|/2) on a vertical line.
  double aperture() const;
  // μ = Σ β_j - Σ α_j.
  double mu() const;

 private:
  int m_, n_;
  std::vector<ParamPair> upper_, lower_;
  double gap_lo_, gap_hi_, c_;
};

enum class ContourKind { Vertical, BentLeft, BentRight };

struct MellinBarnesResult {
  double value = 0.0;
  double imag = 0.0;
  double scaled = 0.0;     // value = scaled * exp(log_scale)
  double log_scale = 0.0;
  double condition = 1.0;  // ∫|integrand| / |value|; large means cancellation
  double abscissa = 0.0;
  double truncation = 0.0;  // |τ| at which the tail became negligible
  int panels = 0;
  ContourKind contour = ContourKind::Vertical;
};

struct MellinBarnesOptions {
  // Overrides the abscissa chosen by the evaluator; must lie in the gap.
  std::optional<double> abscissa;
  double t_max = 400.0;
};

MellinBarnesResult mellin_barnes(const HFunctionSpec& spec, double z,
                                 const MellinBarnesOptions& opt = {});

double mellin_barnes_eval(const HFunctionSpec& spec, double z);

// log |H(z)|, for values outside double range; *sign receives the sign.
double mellin_barnes_log(const HFunctionSpec& spec, double z, int* sign = nullptr);

// Meijer G^{m,n}_{p,q}(z | a ; b): all slopes equal to one.
HFunctionSpec g_spec(int m, int n, const std::vector<double>& a,
                     const std::vector<double>& b);

double g_function_eval(int m, int n, const std::vector<double>& a,
                       const std::vector<double>& b, double z);

}  // namespace pathkit::specfun
