#include "quadpencil/rules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadpencil/error.hpp"

namespace quadpencil {

namespace {

std::string conditioning_warning(std::size_t d, const NondegeneracyReport& report) {
  std::ostringstream msg;
  msg << "moment matrix M_" << d << " is ill-conditioned (eigenvalue ratio " << report.condition
      << "); results may have reduced accuracy";
  return msg.str();
}

std::vector<Node> to_nodes(std::vector<double> xs, const Tolerances& tol, std::vector<std::string>& warnings) {
  std::sort(xs.begin(), xs.end());
  std::vector<Node> nodes;
  for (double x : merge_close(std::move(xs), tol, warnings)) nodes.push_back(Node::real(x));
  return nodes;
}

void append_unique(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  for (const auto& s : src) {
    if (std::find(dst.begin(), dst.end(), s) == dst.end()) dst.push_back(s);
  }
}

}  // namespace

bool QuadratureRule::has_infinity() const {
  return std::any_of(nodes.begin(), nodes.end(), [](const Node& n) { return n.is_infinite(); });
}

std::vector<double> QuadratureRule::finite_nodes() const {
  std::vector<double> out;
  for (const Node& n : nodes) {
    if (!n.is_infinite()) out.push_back(n.value());
  }
  return out;
}

EvenFamily EvenFamily::build(const MomentSequence& seq, std::size_t d, const Tolerances& tol) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "even-degree rules need d >= 1");
  seq.require_degree(2 * d, "even family");
  const NondegeneracyReport report = require_nondegenerate(seq, d, tol);

  EvenFamily fam;
  fam.d = d;
  if (report.ill_conditioned) fam.warnings.push_back(conditioning_warning(d, report));
  const SymmetricMatrix md = hankel_shifted(seq, d + 1, 0);
  if (!cholesky(md, tol)) {
    throw Error(ErrorKind::Degenerate,
                "moment matrix M_" + std::to_string(d) + " is not positive definite (not the moments of a positive measure)");
  }
  fam.m0 = hankel_shifted(seq, d, 0);
  fam.m1 = hankel_shifted(seq, d, 1);
  fam.m2 = hankel_shifted(seq, d, 2);
  fam.det_md = determinant(md);
  fam.det_md1 = determinant(fam.m0);
  fam.c = (d % 2 == 0 ? 1.0 : -1.0) * fam.det_md / (fam.det_md1 * fam.det_md1);
  return fam;
}

SymmetricMatrix bilinear_matrix(const EvenFamily& fam, double x, double y) {
  const double xy = x * y;
  const double sum = x + y;
  return SymmetricMatrix::generate(fam.d, [&](std::size_t i, std::size_t j) {
    return xy * fam.m0(i, j) - sum * fam.m1(i, j) + fam.m2(i, j);
  });
}

double f_eval(const EvenFamily& fam, double x, double y) { return determinant(bilinear_matrix(fam, x, y)); }

SymmetricMatrix linear_rep_matrix(const EvenFamily& fam, double x, double y) {
  const std::size_t d = fam.d;
  SymmetricMatrix m(2 * d + 1);
  m.set(0, 0, fam.det_md1 / fam.det_md * (x - y));
  m.set(0, d, 1.0);
  m.set(0, 2 * d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      m.set(1 + i, 1 + j, x * fam.m0(i, j) - fam.m1(i, j));
      m.set(1 + d + i, 1 + d + j, -y * fam.m0(i, j) + fam.m1(i, j));
    }
  }
  return m;
}

SymPencil linear_rep_pencil(const EvenFamily& fam, double y) {
  const std::size_t d = fam.d;
  const double ratio = fam.det_md1 / fam.det_md;
  SymmetricMatrix a(2 * d + 1);
  SymmetricMatrix b(2 * d + 1);
  a.set(0, 0, ratio);
  b.set(0, 0, ratio * y);
  b.set(0, d, -1.0);
  b.set(0, 2 * d, -1.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      a.set(1 + i, 1 + j, fam.m0(i, j));
      b.set(1 + i, 1 + j, fam.m1(i, j));
      b.set(1 + d + i, 1 + d + j, y * fam.m0(i, j) - fam.m1(i, j));
    }
  }
  return SymPencil(std::move(a), std::move(b), Definiteness::PositiveSemidefinite);
}

QuadratureRule gaussian_odd(const MomentSequence& seq, std::size_t d, const Tolerances& tol) {
  seq.require_degree(2 * d + 1, "gaussian_odd");
  const NondegeneracyReport report = require_nondegenerate(seq, d, tol);
  std::vector<std::string> warnings;
  if (report.ill_conditioned) warnings.push_back(conditioning_warning(d, report));

  const SymPencil pencil(hankel_shifted(seq, d + 1, 0), hankel_shifted(seq, d + 1, 1),
                         Definiteness::PositiveDefinite);
  GenEigResult eig;
  try {
    eig = gen_eigen_definite(pencil, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
    throw Error(ErrorKind::Degenerate, "gaussian_odd: M_" + std::to_string(d) + " is not positive definite");
  }
  QuadratureRule rule = make_rule(seq, 2 * d + 1, to_nodes(eig.finite_eigenvalues, tol, warnings), tol);
  append_unique(rule.warnings, warnings);
  return rule;
}

QuadratureRule even_rule_through(const MomentSequence& seq, std::size_t d, double y, const Tolerances& tol) {
  const EvenFamily fam = EvenFamily::build(seq, d, tol);
  std::vector<std::string> warnings = fam.warnings;

  // lambda M(y,y) - (y M_{d-1} - M'_{d-1}); M(y,y) is positive definite.
  const SymmetricMatrix a = bilinear_matrix(fam, y, y);
  const SymmetricMatrix b = y * fam.m0 - fam.m1;
  const GenEigResult eig = gen_eigen_definite(SymPencil(a, b, Definiteness::PositiveDefinite), tol);

  const double na = a.frobenius_norm();
  const double zero = tol.infinity * (1.0 + (na > 0.0 ? b.frobenius_norm() / na : 0.0));
  std::vector<double> xs{y};
  std::size_t infinite = 0;
  for (double lambda : eig.finite_eigenvalues) {
    if (std::abs(lambda) <= zero) {
      ++infinite;
    } else {
      xs.push_back(y - 1.0 / lambda);
    }
  }
  if (infinite > 1) {
    throw Error(ErrorKind::RepeatedInfinity, "even_rule_through: more than one node at infinity");
  }
  std::vector<Node> nodes = to_nodes(std::move(xs), tol, warnings);
  if (infinite == 1) nodes.push_back(Node::infinity());
  QuadratureRule rule = make_rule(seq, 2 * d, std::move(nodes), tol);
  append_unique(rule.warnings, warnings);
  return rule;
}

LinearNodes even_rule_linear(const MomentSequence& seq, std::size_t d, double y, const Tolerances& tol) {
  const EvenFamily fam = EvenFamily::build(seq, d, tol);
  const SymPencil pencil = linear_rep_pencil(fam, y);
  LinearNodes out;
  out.warnings = fam.warnings;
  out.pencil_dimension = pencil.dimension();

  GenEigResult eig;
  try {
    eig = gen_eigen_semidefinite(pencil, tol);
  } catch (const Error& e) {
    // y is a root of F_inf: the node at infinity shows up as a
    // non-semisimple infinite eigenvalue that deflation cannot separate.
    if (e.kind() != ErrorKind::InfiniteDegeneracy) throw;
    eig = gen_eigen_semidefinite_shifted(pencil, tol);
  }
  out.rank_a = eig.rank_a;
  out.infinite_count = eig.infinite_count;
  if (eig.finite_eigenvalues.size() + 1 < d + 1) {
    throw Error(ErrorKind::RepeatedInfinity, "even_rule_linear: more than one node at infinity");
  }
  out.nodes = to_nodes(eig.finite_eigenvalues, tol, out.warnings);
  if (eig.finite_eigenvalues.size() == d) out.nodes.push_back(Node::infinity());
  return out;
}

Polynomial f_infinity(const MomentSequence& seq, std::size_t d, const Tolerances& tol) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "f_infinity needs d >= 1");
  seq.require_degree(2 * d - 1, "f_infinity");
  require_nondegenerate(seq, d - 1, tol);
  const SymmetricMatrix m0 = hankel_shifted(seq, d, 0);
  const GenEigResult eig =
      gen_eigen_definite(SymPencil(m0, hankel_shifted(seq, d, 1), Definiteness::PositiveDefinite), tol);
  const Polynomial monic = poly_from_roots(eig.finite_eigenvalues, d);
  const double lead = determinant(m0);
  std::vector<double> c(monic.coefficients().begin(), monic.coefficients().end());
  for (double& v : c) v *= lead;
  return Polynomial(std::move(c), d);
}

InfinityRule infinity_rule(const MomentSequence& seq, std::size_t d, const Tolerances& tol) {
  const EvenFamily fam = EvenFamily::build(seq, d, tol);
  std::vector<std::string> warnings = fam.warnings;
  const GenEigResult eig = gen_eigen_definite(SymPencil(fam.m0, fam.m1, Definiteness::PositiveDefinite), tol);

  std::vector<std::string> merges;
  std::vector<Node> nodes = to_nodes(eig.finite_eigenvalues, tol, merges);
  if (!merges.empty()) {
    throw Error(ErrorKind::Degenerate, "infinity_rule: F_inf has a repeated root (" + merges.front() + ")");
  }
  nodes.push_back(Node::infinity());

  InfinityRule out;
  out.rule = make_rule(seq, 2 * d, std::move(nodes), tol);
  append_unique(out.rule.warnings, warnings);
  out.w_inf_determinant = fam.det_md / fam.det_md1;
  out.w_inf_least_squares = out.rule.weights.back();
  const double gap = std::abs(out.w_inf_determinant - out.w_inf_least_squares);
  const double rel = gap / std::abs(out.w_inf_determinant);
  if (rel > 1e-6) {
    std::ostringstream msg;
    msg << "infinity_rule: w_inf disagrees between determinant ratio (" << out.w_inf_determinant
        << ") and least squares (" << out.w_inf_least_squares << ")";
    throw Error(ErrorKind::Disagreement, msg.str());
  }
  if (rel > 1e-8) {
    std::ostringstream msg;
    msg << "w_inf determinant ratio and least-squares values differ by " << rel << " (relative)";
    out.rule.warnings.push_back(msg.str());
  }
  return out;
}

namespace {

Matrix moment_system(std::size_t degree, const std::vector<Node>& nodes) {
  Matrix v(static_cast<Eigen::Index>(degree + 1), static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t k = 0; k <= degree; ++k) {
      v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = ev_monomial(nodes[j], k, degree);
    }
  }
  return v;
}

void check_nodes(const std::vector<Node>& nodes, std::size_t degree) {
  if (nodes.empty()) throw Error(ErrorKind::InvalidArgument, "weights_for_nodes: no nodes");
  if (nodes.size() > degree + 1) {
    throw Error(ErrorKind::InvalidArgument, "weights_for_nodes: more nodes than moments");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes[i] == nodes[j]) {
        throw Error(ErrorKind::InvalidArgument, "weights_for_nodes: repeated node " + nodes[i].to_string());
      }
    }
  }
}

// Signed size of each weight's largest contribution to a moment equation, relative to that moment.
std::vector<double> weight_margins(const Matrix& v, const Vector& w, const Vector& m) {
  std::vector<double> out(static_cast<std::size_t>(w.size()));
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const double size = (v.col(j).cwiseAbs().array() / (1.0 + m.cwiseAbs().array())).maxCoeff() * std::abs(w(j));
    out[static_cast<std::size_t>(j)] = w(j) > 0.0 ? size : -size;
  }
  return out;
}

}  // namespace

WeightSolution solve_weights(const MomentSequence& seq, std::size_t degree, const std::vector<Node>& nodes) {
  seq.require_degree(degree, "weights_for_nodes");
  check_nodes(nodes, degree);
  const Matrix v = moment_system(degree, nodes);
  const Vector m = Eigen::Map<const Vector>(seq.values().data(), static_cast<Eigen::Index>(degree + 1));
  // Rows are weighted by moment size so low moments are not swamped by high ones.
  Vector row(v.rows());
  for (Eigen::Index k = 0; k < v.rows(); ++k) row(k) = 1.0 / (1.0 + std::abs(m(k)));
  const LeastSquaresResult ls = least_squares(row.asDiagonal() * v, row.cwiseProduct(m));

  WeightSolution out;
  out.weights.assign(ls.x.data(), ls.x.data() + ls.x.size());
  out.residual = (v * ls.x - m).cwiseAbs().maxCoeff() / (1.0 + seq.max_abs(degree));
  const std::vector<double> margins = weight_margins(v, ls.x, m);
  out.min_margin = *std::min_element(margins.begin(), margins.end());
  return out;
}

WeightSolution weights_for_nodes(const MomentSequence& seq, std::size_t degree, const std::vector<Node>& nodes,
                                 const Tolerances& tol) {
  WeightSolution sol = solve_weights(seq, degree, nodes);
  if (sol.residual > tol.residual) {
    std::ostringstream msg;
    msg << "weights_for_nodes: nodes cannot match the moments (relative residual " << sol.residual << ")";
    throw ResidualTooLargeError(sol.residual, msg.str());
  }
  const Matrix v = moment_system(degree, nodes);
  const Vector w = Eigen::Map<const Vector>(sol.weights.data(), static_cast<Eigen::Index>(sol.weights.size()));
  const Vector m = Eigen::Map<const Vector>(seq.values().data(), static_cast<Eigen::Index>(degree + 1));
  const std::vector<double> margins = weight_margins(v, w, m);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!(margins[j] > tol.positivity)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "weights_for_nodes: weight " << j << " at node " << nodes[j].to_string() << " is not positive ("
          << sol.weights[j] << ")";
      throw NonPositiveWeightError(j, sol.min_margin, msg.str());
    }
  }
  return sol;
}

VerificationReport verify_rule(const MomentSequence& seq, const QuadratureRule& rule, const Tolerances& tol) {
  seq.require_degree(rule.degree, "verify_rule");
  if (rule.nodes.size() != rule.weights.size()) {
    throw Error(ErrorKind::InvalidArgument, "verify_rule: nodes and weights differ in length");
  }
  VerificationReport report;
  report.threshold = tol.residual * (1.0 + seq.max_abs(rule.degree));
  for (std::size_t k = 0; k <= rule.degree; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights[i] * ev_monomial(rule.nodes[i], k, rule.degree);
    }
    const double r = std::abs(sum - seq[k]);
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
    if (!(r <= report.threshold) && report.first_failing_degree < 0) {
      report.first_failing_degree = static_cast<std::ptrdiff_t>(k);
    }
  }
  report.pass = report.first_failing_degree < 0;
  return report;
}

QuadratureRule make_rule(const MomentSequence& seq, std::size_t degree, std::vector<Node> nodes,
                         const Tolerances& tol) {
  std::sort(nodes.begin(), nodes.end());
  const WeightSolution sol = weights_for_nodes(seq, degree, nodes, tol);
  QuadratureRule rule;
  rule.degree = degree;
  rule.nodes = std::move(nodes);
  rule.weights = sol.weights;
  const VerificationReport report = verify_rule(seq, rule, tol);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "constructed rule fails verification at degree " << report.first_failing_degree;
    throw ResidualTooLargeError(report.max_residual, msg.str());
  }
  rule.max_residual = report.max_residual;
  return rule;
}

std::vector<CurveSample> curve_sample(const EvenFamily& fam, double x_min, double x_max, double y_min,
                                      double y_max, std::size_t steps, const Tolerances& tol) {
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "curve_sample: steps must be >= 2");
  std::vector<CurveSample> out;
  out.reserve(steps * steps);
  const double dx = (x_max - x_min) / static_cast<double>(steps - 1);
  const double dy = (y_max - y_min) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = i + 1 == steps ? x_max : x_min + static_cast<double>(i) * dx;
    for (std::size_t j = 0; j < steps; ++j) {
      const double y = j + 1 == steps ? y_max : y_min + static_cast<double>(j) * dy;
      CurveSample s;
      s.x = x;
      s.y = y;
      const SymmetricMatrix bil = bilinear_matrix(fam, x, y);
      s.f = determinant(bil);
      s.det_linear = determinant(linear_rep_matrix(fam, x, y));
      s.inertia = inertia(bil, tol);
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace quadpencil
