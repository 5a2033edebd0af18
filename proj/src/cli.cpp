#include "quadpencil/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "quadpencil/error.hpp"
#include "quadpencil/io.hpp"
#include "quadpencil/multinode.hpp"
#include "quadpencil/rules.hpp"

namespace quadpencil::cli {

namespace {

struct Options {
  std::string preset;
  double a = -1.0;
  double b = 1.0;
  std::optional<std::size_t> max_degree;
  std::string moments_path;
  std::string atoms_path;
  std::string output;
  std::optional<double> tol_residual;
  std::optional<double> tol_rank;
  std::optional<double> tol_inf;

  std::size_t d = 0;
  double y = 0.0;
  std::string method = "bilinear";
  std::size_t n = 1;
  std::size_t l = 1;
  std::vector<double> fixed;
  std::string rule_path;
  double x_min = -4.0;
  double x_max = 4.0;
  double y_min = -4.0;
  double y_max = 4.0;
  std::size_t steps = 21;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_source_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "Preset measure")
      ->check(CLI::IsMember({"normal", "exponential", "uniform"}));
  cmd->add_option("--a", o.a, "Left end of the uniform interval");
  cmd->add_option("--b", o.b, "Right end of the uniform interval");
  cmd->add_option("--max-degree", o.max_degree, "Highest moment index to generate");
  cmd->add_option("--moments", o.moments_path, "Moment CSV file (k,m_k per line)");
  cmd->add_option("--atoms", o.atoms_path, "Atom CSV file (position,weight per line)");
  cmd->add_option("--output", o.output, "Write data here instead of standard output");
  cmd->add_option("--tol-residual", o.tol_residual, "Relative moment residual tolerance");
  cmd->add_option("--tol-rank", o.tol_rank, "Relative rank tolerance");
  cmd->add_option("--tol-inf", o.tol_inf, "Threshold for eigenvalues mapped to infinity");
}

Tolerances tolerances(const Options& o) {
  Tolerances tol;
  if (o.tol_residual) tol.residual = *o.tol_residual;
  if (o.tol_rank) tol.rank = *o.tol_rank;
  if (o.tol_inf) tol.infinity = *o.tol_inf;
  for (double v : {tol.residual, tol.rank, tol.infinity}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("tolerances must be positive and finite");
  }
  return tol;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

// `needed` is the highest moment index the command uses.
MomentSequence load_moments(const Options& o, std::size_t needed) {
  const int sources = static_cast<int>(!o.preset.empty()) + static_cast<int>(!o.moments_path.empty()) +
                      static_cast<int>(!o.atoms_path.empty());
  if (sources != 1) throw UsageError("give exactly one of --preset, --moments, --atoms");
  const std::size_t degree = o.max_degree.value_or(needed);
  if (!o.preset.empty()) {
    if (o.preset == "normal") return moments_normal(degree);
    if (o.preset == "exponential") return moments_exponential(degree);
    return moments_uniform(o.a, o.b, degree);
  }
  if (!o.atoms_path.empty()) {
    std::ifstream in = open_input(o.atoms_path);
    return moments_from_atoms(io::read_atoms(in), degree);
  }
  std::ifstream in = open_input(o.moments_path);
  return io::read_moments(in, o.moments_path);
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

bool same_nodes(const std::vector<Node>& p, const std::vector<Node>& q, double& gap) {
  gap = 0.0;
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_infinite() != q[i].is_infinite()) return false;
    if (p[i].is_infinite()) continue;
    const double diff = std::abs(p[i].value() - q[i].value());
    gap = std::max(gap, diff);
    if (diff > 1e-6 * std::max(1.0, std::abs(p[i].value()))) return false;
  }
  return true;
}

int cmd_moments(const Options& o, std::ostream& out) {
  if (!o.max_degree && o.moments_path.empty()) throw UsageError("moments: --max-degree is required");
  io::write_moments(out, load_moments(o, o.max_degree.value_or(0)));
  return kSuccess;
}

int cmd_gauss(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(o);
  const QuadratureRule rule = gaussian_odd(load_moments(o, 2 * o.d + 1), o.d, tol);
  print_warnings(err, rule.warnings);
  io::write_rule(out, rule);
  return kSuccess;
}

int cmd_even(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(o);
  const MomentSequence seq = load_moments(o, 2 * o.d);
  QuadratureRule rule;
  if (o.method == "linear") {
    const LinearNodes ln = even_rule_linear(seq, o.d, o.y, tol);
    print_warnings(err, ln.warnings);
    rule = make_rule(seq, 2 * o.d, ln.nodes, tol);
  } else {
    rule = even_rule_through(seq, o.d, o.y, tol);
    if (o.method == "both") {
      const LinearNodes ln = even_rule_linear(seq, o.d, o.y, tol);
      double gap = 0.0;
      if (!same_nodes(rule.nodes, ln.nodes, gap)) {
        throw Error(ErrorKind::Disagreement, "bilinear and linear node sets disagree");
      }
      err << "info: bilinear and linear node sets agree (max gap " << io::format_number(gap) << ")\n";
    }
  }
  print_warnings(err, rule.warnings);
  io::write_rule(out, rule);
  return kSuccess;
}

int cmd_infinity(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(o);
  const InfinityRule ir = infinity_rule(load_moments(o, 2 * o.d), o.d, tol);
  print_warnings(err, ir.rule.warnings);
  err << "info: w_inf determinant ratio " << io::format_number(ir.w_inf_determinant) << ", least squares "
      << io::format_number(ir.w_inf_least_squares) << '\n';
  io::write_rule(out, ir.rule);
  return kSuccess;
}

int cmd_multinode(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(o);
  const MultiNodeProblem prob(o.n, o.l, o.fixed, load_moments(o, o.n + 2 * o.l));
  const FeasibilityReport report = multinode_solve(prob, tol);
  print_warnings(err, report.warnings);
  io::write_feasibility(out, report);
  switch (report.verdict) {
    case Verdict::Feasible: return kSuccess;
    case Verdict::Infeasible: return kNegativeResult;
    case Verdict::Inconclusive: return kNumericalFailure;
  }
  return kNumericalFailure;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(o);
  std::ifstream in = open_input(o.rule_path);
  const QuadratureRule rule = io::read_rule(in);
  const VerificationReport report = verify_rule(load_moments(o, rule.degree), rule, tol);
  io::write_verification(out, report);
  if (!report.pass) {
    err << "verification failed: first failing degree " << report.first_failing_degree << '\n';
    return kNegativeResult;
  }
  return kSuccess;
}

int cmd_curve(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances(o);
  if (!(o.x_min < o.x_max) || !(o.y_min < o.y_max)) throw UsageError("curve: need xmin < xmax and ymin < ymax");
  const EvenFamily fam = EvenFamily::build(load_moments(o, 2 * o.d), o.d, tol);
  print_warnings(err, fam.warnings);
  io::write_curve(out, curve_sample(fam, o.x_min, o.x_max, o.y_min, o.y_max, o.steps, tol));
  return kSuccess;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InsufficientMoments:
    case ErrorKind::Parse: return kUsageError;
    default: return kNumericalFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Minimal quadrature rules from moment sequences via symmetric matrix pencils", "quadpencil"};
  app.require_subcommand(1);

  auto* moments = app.add_subcommand("moments", "Print a moment sequence as CSV");
  add_source_options(moments, o);

  auto* gauss = app.add_subcommand("gauss", "Gaussian rule of degree 2d+1");
  add_source_options(gauss, o);
  gauss->add_option("--d", o.d, "Half degree")->required();

  auto* even = app.add_subcommand("even", "Rule of degree 2d with d+1 nodes through y");
  add_source_options(even, o);
  even->add_option("--d", o.d, "Half degree")->required()->check(CLI::PositiveNumber);
  even->add_option("--y", o.y, "Prescribed node")->required();
  even->add_option("--method", o.method, "Node computation")->check(CLI::IsMember({"bilinear", "linear", "both"}));

  auto* infinity = app.add_subcommand("infinity", "Rule of degree 2d with a node at infinity");
  add_source_options(infinity, o);
  infinity->add_option("--d", o.d, "Half degree")->required()->check(CLI::PositiveNumber);

  auto* multinode = app.add_subcommand("multinode", "Feasibility of a rule through n-1 prescribed nodes");
  add_source_options(multinode, o);
  multinode->add_option("--n", o.n, "Number of prescribed nodes plus one")->required()->check(CLI::PositiveNumber);
  multinode->add_option("--l", o.l, "Number of remaining free nodes")->required()->check(CLI::PositiveNumber);
  multinode->add_option("--fix", o.fixed, "Prescribed nodes, comma separated")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Check a rule file against moments");
  add_source_options(verify, o);
  verify->add_option("--rule", o.rule_path, "Rule file")->required();

  auto* curve = app.add_subcommand("curve", "Grid samples of F, det of the linear representation and inertia");
  add_source_options(curve, o);
  curve->add_option("--d", o.d, "Half degree")->required()->check(CLI::PositiveNumber);
  curve->add_option("--xmin", o.x_min, "Grid range")->capture_default_str();
  curve->add_option("--xmax", o.x_max, "Grid range")->capture_default_str();
  curve->add_option("--ymin", o.y_min, "Grid range")->capture_default_str();
  curve->add_option("--ymax", o.y_max, "Grid range")->capture_default_str();
  curve->add_option("--steps", o.steps, "Grid points per axis")->capture_default_str()->check(CLI::Range(2, 2000));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  std::ostringstream data;
  int code = kSuccess;
  try {
    if (moments->parsed()) code = cmd_moments(o, data);
    if (gauss->parsed()) code = cmd_gauss(o, data, err);
    if (even->parsed()) code = cmd_even(o, data, err);
    if (infinity->parsed()) code = cmd_infinity(o, data, err);
    if (multinode->parsed()) code = cmd_multinode(o, data, err);
    if (verify->parsed()) code = cmd_verify(o, data, err);
    if (curve->parsed()) code = cmd_curve(o, data, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }

  if (o.output.empty()) {
    out << data.str();
  } else {
    std::ofstream file(o.output);
    if (!file || !(file << data.str())) {
      err << "error: cannot write '" << o.output << "'\n";
      return kUsageError;
    }
  }
  return code;
}

}  // namespace quadpencil::cli
