#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathkit/entropy.hpp"
#include "pathkit/errors.hpp"
#include "pathkit/fracint.hpp"
#include "pathkit/multivar.hpp"
#include "pathkit/pathway.hpp"
#include "pathkit/reactions.hpp"
#include "pathkit/superstat.hpp"
#include "pathkit/transforms.hpp"

namespace pathkit::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void row(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// lo:hi:step, both ends included.
std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError("grid must look like lo:hi:step, got '" + spec + "'");
  const double lo = to_double(parts[0], "grid");
  const double hi = to_double(parts[1], "grid");
  const double step = to_double(parts[2], "grid");
  if (!(step > 0) || !(hi >= lo)) throw UsageError("grid needs lo <= hi and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 10'000'000) throw UsageError("grid has too many points");
  std::vector<double> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = lo + static_cast<double>(i) * step;
  return pts;
}

std::vector<double> require_grid(const std::string& spec, const char* what) {
  if (spec.empty()) throw UsageError(std::string("--grid is required for ") + what);
  return parse_grid(spec);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

// Numeric rows of a CSV file; lines that do not parse (headers) are skipped.
std::vector<std::vector<double>> read_numeric_rows(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> r;
    bool ok = true;
    for (const auto& cell : split(line, ',')) {
      try {
        r.push_back(to_double(trim(cell), "csv"));
      } catch (const UsageError&) {
        ok = false;
        break;
      }
    }
    if (ok) rows.push_back(std::move(r));
  }
  return rows;
}

// First line "rows,cols", then the entries row-major.
Eigen::MatrixXd read_matrix(const std::string& path) {
  const auto rows = read_numeric_rows(path);
  if (rows.empty() || rows[0].size() != 2) {
    throw UsageError("matrix file '" + path + "' must start with a rows,cols line");
  }
  const auto r = static_cast<long>(rows[0][0]);
  const auto c = static_cast<long>(rows[0][1]);
  if (r <= 0 || c <= 0 || static_cast<long>(rows.size()) != r + 1) {
    throw UsageError("matrix file '" + path + "' does not match its dimensions");
  }
  Eigen::MatrixXd m(r, c);
  for (long i = 0; i < r; ++i) {
    if (static_cast<long>(rows[i + 1].size()) != c) {
      throw UsageError("matrix file '" + path + "' has a short row");
    }
    for (long j = 0; j < c; ++j) m(i, j) = rows[i + 1][j];
  }
  return m;
}

// Test functions for the transforms: constant c, power t^μ, exponential
// e^{-λt}, or a sampled table (t, f) interpolated linearly and held constant
// past either end.
struct FunctionChoice {
  std::string name = "constant";
  double param = 1.0;
  std::string table;
};

fracint::Function make_function(const FunctionChoice& f) {
  const double p = f.param;
  if (f.name == "constant") return [p](double) { return p; };
  if (f.name == "power") return [p](double t) { return t > 0 ? std::pow(t, p) : (p == 0 ? 1.0 : 0.0); };
  if (f.name == "exponential") return [p](double t) { return std::exp(-p * t); };
  if (f.table.empty()) throw UsageError("--f table needs --f-table");
  auto rows = read_numeric_rows(f.table);
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (r.size() < 2) throw UsageError("table rows need t,f columns");
    pts.emplace_back(r[0], r[1]);
  }
  if (pts.empty()) throw UsageError("table '" + f.table + "' has no rows");
  std::sort(pts.begin(), pts.end());
  return [pts = std::move(pts)](double t) {
    if (t <= pts.front().first) return pts.front().second;
    if (t >= pts.back().first) return pts.back().second;
    const auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(t, -HUGE_VAL));
    const auto& [t1, f1] = *it;
    const auto& [t0, f0] = *(it - 1);
    return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
  };
}

void add_function_flags(CLI::App* c, FunctionChoice& f) {
  c->add_option("--f", f.name, "constant | power | exponential | table")
      ->check(CLI::IsMember({"constant", "power", "exponential", "table"}));
  c->add_option("--f-param", f.param, "constant value, power exponent or decay rate");
  c->add_option("--f-table", f.table, "CSV of t,f samples");
}

void add_pathway_flags(CLI::App* c, pathway::PathwayParams& p) {
  c->add_option("--alpha", p.alpha, "pathway parameter");
  c->add_option("--a", p.a, "scale");
  c->add_option("--delta", p.delta, "power of x in the bracket");
  c->add_option("--gamma", p.gamma_shape, "shape, density has x^(gamma-1)");
  c->add_option("--eta", p.eta, "bracket exponent");
  c->add_flag("--symmetric", p.symmetric, "use |x| on the whole line");
}

// Figure data: series label, curve parameter, x, value.
void figure_rows(const std::string& which, std::ostream& os) {
  row(os, {"series", "alpha", "x", "value"});
  auto emit = [&](const std::string& series, double alpha, const std::vector<double>& xs,
                  const std::function<double(double)>& f) {
    for (double x : xs) row(os, {series, num(alpha), num(x), num(f(x))});
  };
  if (which == "1a" || which == "1b") {
    const std::vector<double> alphas =
        which == "1a" ? std::vector<double>{-0.5, 0.0, 0.5, 0.8, 1.0}
                      : std::vector<double>{1.0, 1.2, 1.5, 2.0, 2.5};
    const auto xs = parse_grid(which == "1a" ? "0:2.5:0.01" : "0:4:0.01");
    for (double alpha : alphas) {
      pathway::PathwayParams p;
      p.alpha = alpha;
      p.delta = 2.0;
      emit(which, alpha, xs, [&](double x) { return pathway::pdf(p, x); });
    }
    return;
  }
  if (which == "2a" || which == "2b" || which == "3a" || which == "3b") {
    const double delta_b = (which == "2a" || which == "3a") ? 0.5 : -0.5;
    const bool below = which[0] == '2';
    const std::vector<double> alphas = below ? std::vector<double>{-1.0, 0.0, 0.5, 0.9}
                                             : std::vector<double>{1.05, 1.1, 1.2, 1.3};
    const auto xs = parse_grid(below ? "0:5:0.01" : "0:8:0.01");
    for (double alpha : alphas) {
      emit(which, alpha, xs, [&](double x) {
        return superstat::bessel_pathway_pdf(2.0, 1.2, 1.0, delta_b, alpha, x);
      });
    }
    return;
  }
  if (which == "4") {
    const auto xs = parse_grid("0.05:3:0.05");
    for (double rho : {3.0, 5.0}) {
      for (double alpha : {1.0, 1.25, 1.5, 1.8}) {
        const transforms::KratzelSpec k{2.0, rho, 1.0, alpha, 1.0};
        emit(rho == 3.0 ? "4a" : "4b", alpha, xs,
             [&](double x) { return transforms::kratzel_kernel(k, x); });
      }
    }
    return;
  }
  throw UsageError("unknown figure '" + which + "'");
}

bool flag_present(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Expands --job file.json: an object whose "command" key names the
// subcommand and whose other keys mirror flags. Flags given on the command
// line take precedence.
std::vector<std::string> expand_job(std::vector<std::string> args) {
  std::string job_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--job") {
      if (i + 1 >= args.size()) throw UsageError("--job needs a path");
      job_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--job=", 0) == 0) {
      job_path = args[i].substr(6);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (job_path.empty()) return args;

  auto in = open_input(job_path);
  nlohmann::json job;
  try {
    job = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("job file: " + std::string(e.what()));
  }
  if (!job.is_object()) throw UsageError("job file must hold a JSON object");

  const bool has_command = !args.empty() && args[0].rfind("-", 0) != 0;
  std::vector<std::string> out;
  if (has_command) {
    out.push_back(args[0]);
  } else {
    if (!job.contains("command") || !job["command"].is_string()) {
      throw UsageError("no subcommand given on the command line or in the job file");
    }
    out.push_back(job["command"].get<std::string>());
  }
  for (const auto& [key, value] : job.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    if (flag_present(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      out.push_back(flag);
      out.push_back(value.is_number_float() ? num(value.get<double>()) : value.dump());
    } else {
      throw UsageError("job key '" + key + "' must be a string, number or boolean");
    }
  }
  out.insert(out.end(), args.begin() + (has_command ? 1 : 0), args.end());
  return out;
}

int dispatch(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  const auto args = expand_job(raw);

  CLI::App app{"pathway distributions, H-function transforms and fractional operators", "pathkit"};
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 0;
  std::string grid;
  auto common = [&](CLI::App* c, bool with_grid) {
    c->add_option("--out", out_path, "write CSV here instead of stdout");
    c->add_option("--seed", seed, "random seed")->capture_default_str();
    if (with_grid) c->add_option("--grid", grid, "lo:hi:step");
  };

  pathway::PathwayParams pp;

  auto* pdf_cmd = app.add_subcommand("pdf", "pathway density on a grid");
  add_pathway_flags(pdf_cmd, pp);
  common(pdf_cmd, true);

  auto* cdf_cmd = app.add_subcommand("cdf", "pathway distribution function on a grid");
  add_pathway_flags(cdf_cmd, pp);
  common(cdf_cmd, true);

  std::size_t n_draws = 1000;
  auto* sample_cmd = app.add_subcommand("sample", "draw from a pathway density");
  add_pathway_flags(sample_cmd, pp);
  sample_cmd->add_option("--n", n_draws, "number of draws");
  common(sample_cmd, false);

  std::string in_path;
  auto* fit_cmd = app.add_subcommand("fit", "moment-matching fit of alpha");
  add_pathway_flags(fit_cmd, pp);
  fit_cmd->add_option("--in", in_path, "CSV with one sample per line")->required();
  common(fit_cmd, false);

  std::optional<double> order;
  bool check = false;
  int perturbations = 20;
  auto* entropy_cmd = app.add_subcommand("entropy", "Mathai entropy and its optimality check");
  add_pathway_flags(entropy_cmd, pp);
  entropy_cmd->add_option("--order", order, "entropy order (defaults to --alpha)");
  entropy_cmd->add_flag("--check", check, "run the perturbation optimality check");
  entropy_cmd->add_option("--perturbations", perturbations, "perturbations for --check");
  common(entropy_cmd, false);

  std::string method = "hfun";
  auto* laplace_cmd = app.add_subcommand("laplace", "Laplace transform of a pathway density");
  add_pathway_flags(laplace_cmd, pp);
  laplace_cmd->add_option("--method", method, "hfun | quad")
      ->check(CLI::IsMember({"hfun", "quad"}));
  common(laplace_cmd, true);

  transforms::KratzelSpec ks;
  FunctionChoice fchoice;
  bool kernel_only = false;
  auto* pt_cmd = app.add_subcommand("ptransform", "Kratzel kernel and P-transform");
  pt_cmd->add_option("--nu", ks.nu);
  pt_cmd->add_option("--rho", ks.rho);
  pt_cmd->add_option("--beta", ks.beta);
  pt_cmd->add_option("--alpha", ks.alpha);
  pt_cmd->add_option("--a", ks.a);
  pt_cmd->add_flag("--kernel", kernel_only, "emit the kernel D(x) itself");
  add_function_flags(pt_cmd, fchoice);
  common(pt_cmd, true);

  std::string family = "i1";
  reactions::ReactionIntegralSpec rs;
  double ig_mu = 1, ig_lam = 1, ig_h = 1;
  std::string sweep;
  auto* react_cmd = app.add_subcommand("react", "reaction-rate integrals");
  react_cmd->add_option("--family", family, "i1 | i2 | i1a | i2a | i1a-h | ig")
      ->check(CLI::IsMember({"i1", "i2", "i1a", "i2a", "i1a-h", "ig"}));
  react_cmd->add_option("--gamma", rs.gamma);
  react_cmd->add_option("--a", rs.a);
  react_cmd->add_option("--b", rs.b);
  react_cmd->add_option("--delta", rs.delta);
  react_cmd->add_option("--rho", rs.rho);
  react_cmd->add_option("--d", rs.d, "upper cut-off");
  react_cmd->add_option("--alpha", rs.alpha, "pathway parameter");
  react_cmd->add_option("--mu", ig_mu, "inverse Gaussian mean");
  react_cmd->add_option("--lam", ig_lam, "inverse Gaussian shape");
  react_cmd->add_option("--moment", ig_h, "inverse Gaussian moment order");
  react_cmd->add_option("--sweep", sweep, "name:lo:hi:step over one parameter");
  common(react_cmd, false);

  superstat::SuperstatModel sm;
  std::string quantity;
  std::optional<double> fixed_x, fixed_theta;
  double b_rho = 1, b_a = 1, b_delta = 0;
  auto* ss_cmd = app.add_subcommand("superstat", "superstatistics densities and Bayes estimates");
  ss_cmd->add_option("--quantity", quantity,
                     "conditional | marginal | posterior | bayes | bessel-gamma | bessel-pathway")
      ->required()
      ->check(CLI::IsMember(
          {"conditional", "marginal", "posterior", "bayes", "bessel-gamma", "bessel-pathway"}));
  ss_cmd->add_option("--gamma", sm.gamma);
  ss_cmd->add_option("--delta", sm.delta);
  ss_cmd->add_option("--lam", sm.lam);
  ss_cmd->add_option("--alpha", sm.alpha, "extended model (or Bessel pathway) parameter");
  ss_cmd->add_option("--x", fixed_x, "observation for the posterior");
  ss_cmd->add_option("--theta", fixed_theta, "rate for the conditional");
  ss_cmd->add_option("--rho", b_rho, "Bessel models: power of x");
  ss_cmd->add_option("--a", b_a, "Bessel models: scale");
  ss_cmd->add_option("--delta-b", b_delta, "Bessel models: 0F1 argument factor");
  ss_cmd->add_option("--method", method, "gfun | quad for the extended model")
      ->check(CLI::IsMember({"gfun", "quad", "hfun"}));
  common(ss_cmd, true);

  multivar::MatrixPathwaySpec ms;
  std::string a_path, b_path, m_path, x_path;
  auto* mat_cmd = app.add_subcommand("matrix", "matrix-variate pathway model");
  mat_cmd->add_option("--quantity", quantity, "log-norm | density | moment | lambda | u1 | sample-u1")
      ->required()
      ->check(CLI::IsMember({"log-norm", "density", "moment", "lambda", "u1", "sample-u1"}));
  mat_cmd->add_option("--p", ms.p);
  mat_cmd->add_option("--q", ms.q);
  mat_cmd->add_option("--gamma", ms.gamma);
  mat_cmd->add_option("--eta", ms.eta);
  mat_cmd->add_option("--a", ms.a);
  mat_cmd->add_option("--alpha", ms.alpha);
  mat_cmd->add_option("--A", a_path, "p x p matrix file");
  mat_cmd->add_option("--B", b_path, "q x q matrix file");
  mat_cmd->add_option("--M", m_path, "p x q location matrix file");
  mat_cmd->add_option("--X", x_path, "p x q point for --quantity density");
  mat_cmd->add_option("--n", n_draws, "draws for sample-u1");
  common(mat_cmd, true);

  std::string op = "pathway";
  double f_eta = 1, f_alpha = 0, f_a = 1, beta_s = 0, gamma_s = 0;
  double k_mu = 1, k_nu = 1, k_b = 1, k_n0 = 1;
  auto* frac_cmd = app.add_subcommand("fracint", "fractional integral operators");
  frac_cmd->add_option("--op", op, "pathway | rl | saigo | laplace-limit | kinetic")
      ->check(CLI::IsMember({"pathway", "rl", "saigo", "laplace-limit", "kinetic"}));
  frac_cmd->add_option("--eta", f_eta);
  frac_cmd->add_option("--alpha", f_alpha);
  frac_cmd->add_option("--a", f_a);
  frac_cmd->add_option("--beta-s", beta_s, "Saigo beta");
  frac_cmd->add_option("--gamma-s", gamma_s, "Saigo gamma");
  frac_cmd->add_option("--mu", k_mu, "kinetic: power of t");
  frac_cmd->add_option("--nu", k_nu, "kinetic: power in the bracket");
  frac_cmd->add_option("--b", k_b, "kinetic: rate");
  frac_cmd->add_option("--n0", k_n0, "kinetic: initial amount");
  add_function_flags(frac_cmd, fchoice);
  common(frac_cmd, true);

  std::string registry = "curated";
  auto* reduce_cmd = app.add_subcommand("reduce", "name the classical density a parameter set reduces to");
  add_pathway_flags(reduce_cmd, pp);
  reduce_cmd->add_option("--registry", registry, "curated | verbatim")
      ->check(CLI::IsMember({"curated", "verbatim"}));
  common(reduce_cmd, false);

  std::string which;
  auto* fig_cmd = app.add_subcommand("figures", "curve bundles for the standard figures");
  fig_cmd->add_option("--which", which, "1a | 1b | 2a | 2b | 3a | 3b | 4")
      ->required()
      ->check(CLI::IsMember({"1a", "1b", "2a", "2b", "3a", "3b", "4"}));
  common(fig_cmd, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream csv;

  if (pdf_cmd->parsed() || cdf_cmd->parsed()) {
    const bool is_pdf = pdf_cmd->parsed();
    const auto xs = require_grid(grid, is_pdf ? "pdf" : "cdf");
    pathway::validate(pp);
    row(csv, {"x", is_pdf ? "pdf" : "cdf"});
    for (double x : xs) row(csv, {num(x), num(is_pdf ? pathway::pdf(pp, x) : pathway::cdf(pp, x))});
  } else if (sample_cmd->parsed()) {
    std::mt19937_64 rng(seed);
    row(csv, {"x"});
    for (double x : pathway::sample(pp, rng, n_draws)) row(csv, {num(x)});
  } else if (fit_cmd->parsed()) {
    std::vector<double> samples;
    for (const auto& r : read_numeric_rows(in_path)) {
      if (!r.empty()) samples.push_back(r[0]);
    }
    const auto fit = pathway::fit_alpha_moments(samples, pp.a, pp.delta, pp.gamma_shape, pp.eta);
    row(csv, {"alpha", "a", "delta", "gamma", "eta", "regime"});
    row(csv, {num(fit.alpha), num(fit.a), num(fit.delta), num(fit.gamma_shape), num(fit.eta),
              std::string(pathway::regime_name(pathway::regime(fit)))});
  } else if (entropy_cmd->parsed()) {
    if (check) {
      const auto rep = entropy::entropy_optimality_check(pp, seed, perturbations);
      row(csv, {"optimal_entropy", "max_gap", "max_raw_violation", "max_residual", "rejected",
                "inconclusive"});
      row(csv, {num(rep.optimal_entropy), num(rep.max_gap), num(rep.max_raw_violation),
                num(rep.max_residual), std::to_string(rep.rejected),
                rep.inconclusive ? "true" : "false"});
    } else {
      const double o = order.value_or(pp.alpha);
      row(csv, {"order", "entropy"});
      row(csv, {num(o), num(entropy::mathai_entropy(pp, o))});
    }
  } else if (laplace_cmd->parsed()) {
    const auto ts = require_grid(grid, "laplace");
    row(csv, {"t", "value"});
    for (double t : ts) {
      row(csv, {num(t), num(method == "quad" ? transforms::laplace_pathway_quad(pp, t)
                                             : transforms::laplace_pathway_hfun(pp, t))});
    }
  } else if (pt_cmd->parsed()) {
    const auto xs = require_grid(grid, "ptransform");
    const auto f = make_function(fchoice);
    row(csv, {"x", "value"});
    for (double x : xs) {
      row(csv, {num(x), num(kernel_only ? transforms::kratzel_kernel(ks, x)
                                        : transforms::p_transform(f, ks, x))});
    }
  } else if (react_cmd->parsed()) {
    auto eval = [&]() {
      if (family == "i1") return reactions::i1(rs);
      if (family == "i2") return reactions::i2(rs);
      if (family == "i1a") return reactions::i1_alpha(rs);
      if (family == "i2a") return reactions::i2_alpha(rs);
      if (family == "i1a-h") return reactions::i1_alpha_hfun(rs);
      return reactions::inverse_gaussian_moment(ig_mu, ig_lam, ig_h);
    };
    if (sweep.empty()) {
      row(csv, {"value"});
      row(csv, {num(eval())});
    } else {
      const auto colon = sweep.find(':');
      if (colon == std::string::npos) throw UsageError("--sweep must look like name:lo:hi:step");
      const std::string name = sweep.substr(0, colon);
      const auto values = parse_grid(sweep.substr(colon + 1));
      std::map<std::string, std::function<void(double)>> setters{
          {"gamma", [&](double v) { rs.gamma = v; }}, {"a", [&](double v) { rs.a = v; }},
          {"b", [&](double v) { rs.b = v; }},         {"delta", [&](double v) { rs.delta = v; }},
          {"rho", [&](double v) { rs.rho = v; }},     {"d", [&](double v) { rs.d = v; }},
          {"alpha", [&](double v) { rs.alpha = v; }}, {"mu", [&](double v) { ig_mu = v; }},
          {"lam", [&](double v) { ig_lam = v; }},     {"moment", [&](double v) { ig_h = v; }},
      };
      const auto it = setters.find(name);
      if (it == setters.end()) throw UsageError("cannot sweep over '" + name + "'");
      row(csv, {name, "value"});
      for (double v : values) {
        it->second(v);
        row(csv, {num(v), num(eval())});
      }
    }
  } else if (ss_cmd->parsed()) {
    const auto xs = require_grid(grid, "superstat");
    const bool ext = sm.alpha.has_value();
    const bool quad = method == "quad";
    std::function<double(double)> f;
    std::string col = "x";
    if (quantity == "conditional") {
      if (!fixed_theta) throw UsageError("--quantity conditional needs --theta");
      f = [&](double x) {
        return ext ? superstat::ext_conditional_pdf(sm, x, *fixed_theta)
                   : superstat::conditional_pdf(sm, x, *fixed_theta);
      };
    } else if (quantity == "marginal") {
      f = [&](double x) {
        if (!ext) return superstat::marginal_pdf(sm, x);
        return quad ? superstat::ext_marginal_pdf_quad(sm, x) : superstat::ext_marginal_pdf(sm, x);
      };
    } else if (quantity == "posterior") {
      if (!fixed_x) throw UsageError("--quantity posterior needs --x");
      col = "theta";
      f = [&](double th) {
        return ext ? superstat::ext_posterior_pdf(sm, th, *fixed_x)
                   : superstat::posterior_pdf(sm, th, *fixed_x);
      };
    } else if (quantity == "bayes") {
      f = [&](double x) {
        if (!ext) return superstat::bayes_estimate(sm, x);
        return quad ? superstat::ext_bayes_estimate_quad(sm, x)
                    : superstat::ext_bayes_estimate(sm, x);
      };
    } else if (quantity == "bessel-gamma") {
      f = [&](double x) { return superstat::bessel_gamma_pdf(sm.gamma, b_rho, b_a, b_delta, x); };
    } else {
      if (!sm.alpha) throw UsageError("--quantity bessel-pathway needs --alpha");
      f = [&](double x) {
        return superstat::bessel_pathway_pdf(sm.gamma, b_rho, b_a, b_delta, *sm.alpha, x);
      };
    }
    row(csv, {col, "value"});
    for (double x : xs) row(csv, {num(x), num(f(x))});
  } else if (mat_cmd->parsed()) {
    if (!a_path.empty()) ms.A = read_matrix(a_path);
    if (!b_path.empty()) ms.B = read_matrix(b_path);
    if (!m_path.empty()) ms.M = read_matrix(m_path);
    multivar::validate(ms);
    if (quantity == "log-norm") {
      row(csv, {"log_norm_const"});
      row(csv, {num(multivar::matrix_log_norm_const(ms))});
    } else if (quantity == "density") {
      if (x_path.empty()) throw UsageError("--quantity density needs --X");
      row(csv, {"log_density"});
      row(csv, {num(multivar::matrix_log_density(ms, read_matrix(x_path)))});
    } else if (quantity == "sample-u1") {
      std::mt19937_64 rng(seed);
      row(csv, {"u1"});
      for (double u : multivar::sample_u1(ms, rng, n_draws)) row(csv, {num(u)});
    } else {
      const auto hs = require_grid(grid, "matrix moments and densities");
      row(csv, {quantity == "u1" ? "u" : "h", "value"});
      for (double h : hs) {
        const double v = quantity == "moment"   ? multivar::volume_moment(ms, h)
                         : quantity == "lambda" ? multivar::lambda_criterion_moment(ms, h)
                                                : multivar::u1_density(ms, h);
        row(csv, {num(h), num(v)});
      }
    }
  } else if (frac_cmd->parsed()) {
    const auto xs = require_grid(grid, "fracint");
    if (op == "kinetic") {
      row(csv, {"t", "value"});
      for (double t : xs) {
        row(csv, {num(t), num(fracint::fractional_kinetic_density(k_mu, k_nu, k_b, f_alpha, t, k_n0))});
      }
    } else {
      const auto f = make_function(fchoice);
      row(csv, {"x", "value"});
      for (double x : xs) {
        double v = 0;
        if (op == "pathway") v = fracint::pathway_frac_integral(f, x, f_eta, f_alpha, f_a);
        else if (op == "rl") v = fracint::rl_integral(f, x, f_eta);
        else if (op == "saigo") v = fracint::saigo_integral(f, x, f_eta, beta_s, gamma_s);
        else v = fracint::pathway_frac_laplace_limit(f, x, f_eta, f_a);
        row(csv, {num(x), num(v)});
      }
    }
  } else if (reduce_cmd->parsed()) {
    pathway::validate(pp);
    const auto tag = pathway::reduce_special_case(
        pp, registry == "verbatim" ? pathway::Registry::Verbatim : pathway::Registry::Curated);
    row(csv, {"special_case", "regime"});
    row(csv, {tag ? std::string(pathway::special_case_name(*tag)) : "none",
              std::string(pathway::regime_name(pathway::regime(pp)))});
  } else if (fig_cmd->parsed()) {
    figure_rows(which, csv);
  }

  if (out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(out_path);
    if (!file) throw UsageError("cannot write '" + out_path + "'");
    file << csv.str();
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << '\n';
    return kAccuracy;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << '\n';
    return kAccuracy;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kAccuracy;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pathkit::cli
