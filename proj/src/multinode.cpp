#include "quadpencil/multinode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quadpencil/error.hpp"

namespace quadpencil {

MultiNodeProblem::MultiNodeProblem(std::size_t n_, std::size_t l_, std::vector<double> fixed, MomentSequence seq_,
                                   double separation)
    : n(n_), l(l_), fixed_nodes(std::move(fixed)), seq(std::move(seq_)) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "multinode: n must be >= 1");
  if (l == 0) throw Error(ErrorKind::InvalidArgument, "multinode: l must be >= 1");
  if (fixed_nodes.size() + 1 != n) {
    throw Error(ErrorKind::InvalidArgument, "multinode: expected " + std::to_string(n - 1) + " fixed nodes, got " +
                                                std::to_string(fixed_nodes.size()));
  }
  for (std::size_t i = 0; i < fixed_nodes.size(); ++i) {
    if (!std::isfinite(fixed_nodes[i])) throw Error(ErrorKind::InvalidArgument, "multinode: fixed node not finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(fixed_nodes[i] - fixed_nodes[j]) <= separation) {
        throw Error(ErrorKind::InvalidArgument, "multinode: fixed nodes " + std::to_string(j) + " and " +
                                                    std::to_string(i) + " coincide");
      }
    }
  }
  seq.require_degree(degree(), "multinode");
}

namespace {

// Hankel form of a polynomial q: entry (i, j) is L(q t^{i+j}).
SymmetricMatrix hankel_of(const MomentSequence& seq, std::size_t l, const std::vector<double>& q) {
  SymmetricMatrix out(l + 1);
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] != 0.0) out = out + q[k] * hankel_shifted(seq, l + 1, k);
  }
  return out;
}

// Coefficients of prod (t - x_i), lowest degree first.
std::vector<double> monic_from(const std::vector<double>& xs) {
  const std::vector<double> e = elementary_symmetric(xs);
  const std::size_t n = xs.size();
  std::vector<double> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c[n - k] = (k % 2 == 0 ? 1.0 : -1.0) * e[k];
  return c;
}

bool close(double a, double b, const Tolerances& tol) { return std::abs(a - b) <= tol.merge * (1.0 + std::abs(a)); }

}  // namespace

SymmetricMatrix multinode_matrix(const MultiNodeProblem& prob, const std::vector<double>& all_nodes) {
  if (all_nodes.size() != prob.n) {
    throw Error(ErrorKind::InvalidArgument, "multinode_matrix: expected " + std::to_string(prob.n) + " nodes");
  }
  const std::vector<double> e = elementary_symmetric(all_nodes);
  SymmetricMatrix out(prob.l + 1);
  for (std::size_t k = 0; k <= prob.n; ++k) {
    const double coef = (k % 2 == 0 ? 1.0 : -1.0) * e[k];
    out = out + coef * hankel_shifted(prob.seq, prob.l + 1, prob.n - k);
  }
  return out;
}

SymPencil multinode_pencil(const MultiNodeProblem& prob) {
  // H[p (t - x)] = x (-H[p]) - (-H[t p]) with p the product over the fixed nodes.
  const std::vector<double> p = monic_from(prob.fixed_nodes);
  std::vector<double> tp(p.size() + 1, 0.0);
  std::copy(p.begin(), p.end(), tp.begin() + 1);
  return SymPencil(-hankel_of(prob.seq, prob.l, p), -hankel_of(prob.seq, prob.l, tp));
}

Polynomial multinode_determinant(const MultiNodeProblem& prob, const Tolerances&) {
  const SymPencil pencil = multinode_pencil(prob);
  const double na = pencil.a.frobenius_norm();
  const double nb = pencil.b.frobenius_norm();
  const double radius = 1.0 + (na > 0.0 ? nb / na : nb);
  const std::size_t deg = prob.l + 1;
  const auto pts = static_cast<Eigen::Index>(deg + 1);

  // Interpolate in u = x / radius on Chebyshev points of [-1, 1].
  Matrix vander(pts, pts);
  Vector values(pts);
  for (Eigen::Index i = 0; i < pts; ++i) {
    const double u = std::cos(std::numbers::pi * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(pts)));
    double power = 1.0;
    for (Eigen::Index k = 0; k < pts; ++k) {
      vander(i, k) = power;
      power *= u;
    }
    values(i) = determinant(radius * u * pencil.a - pencil.b);
  }
  const Vector cu = solve_linear(vander, values);
  std::vector<double> c(deg + 1);
  double scale = 1.0;
  for (std::size_t k = 0; k <= deg; ++k) {
    c[k] = cu(static_cast<Eigen::Index>(k)) / scale;
    scale *= radius;
  }
  return Polynomial(std::move(c), deg);
}

std::vector<double> multinode_candidates(const MultiNodeProblem& prob, const Tolerances& tol) {
  const SymPencil pencil = multinode_pencil(prob);
  for (double sign : {1.0, -1.0}) {
    const SymmetricMatrix a = sign * pencil.a;
    if (cholesky(a, tol)) {
      return gen_eigen_definite(SymPencil(a, sign * pencil.b, Definiteness::PositiveDefinite), tol)
          .finite_eigenvalues;
    }
  }
  // A singular pencil is rank deficient at every x; a regular one only at its roots.
  const double na = pencil.a.frobenius_norm();
  const double nb = pencil.b.frobenius_norm();
  const double radius = 1.0 + (na > 0.0 ? nb / na : nb);
  bool singular = true;
  for (double u : {-0.9, -0.3, 0.2, 0.7}) {
    const SymEigen se = sym_eigen(radius * u * pencil.a - pencil.b);
    double lo = std::abs(se.values.front());
    double hi = 0.0;
    for (double v : se.values) {
      lo = std::min(lo, std::abs(v));
      hi = std::max(hi, std::abs(v));
    }
    if (lo > tol.degeneracy * hi) singular = false;
  }
  if (singular) throw Error(ErrorKind::Degenerate, "multinode: the pencil determinant vanishes identically");
  const Polynomial det = multinode_determinant(prob, tol);
  return real_roots(det, tol);
}

std::string to_string(CandidateOutcome outcome) {
  switch (outcome) {
    case CandidateOutcome::Rule: return "rule";
    case CandidateOutcome::NonPositiveWeight: return "non_positive_weight";
    case CandidateOutcome::ResidualTooLarge: return "residual_too_large";
    case CandidateOutcome::ComplexKernelRoots: return "complex_kernel_roots";
    case CandidateOutcome::RepeatedInfinity: return "repeated_infinity";
    case CandidateOutcome::NoKernel: return "no_kernel";
    case CandidateOutcome::AmbiguousKernel: return "ambiguous_kernel";
    case CandidateOutcome::CoincidentNodes: return "coincident_nodes";
    case CandidateOutcome::VerificationFailed: return "verification_failed";
  }
  return "unknown";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

CandidateResult complete_candidate(const MultiNodeProblem& prob, double x_n, const Tolerances& tol,
                                   std::vector<QuadratureRule>& rules) {
  CandidateResult res;
  res.x_n = x_n;
  for (double f : prob.fixed_nodes) {
    if (close(f, x_n, tol)) {
      res.outcome = CandidateOutcome::CoincidentNodes;
      return res;
    }
  }
  std::vector<double> all = prob.fixed_nodes;
  all.push_back(x_n);
  const SymmetricMatrix m = multinode_matrix(prob, all);
  double second = 0.0;
  const std::optional<Vector> kernel = kernel_vector(m, tol.kernel, &second);
  if (!kernel) {
    res.outcome = CandidateOutcome::NoKernel;
    return res;
  }
  if (second <= tol.kernel) {
    res.outcome = CandidateOutcome::AmbiguousKernel;
    res.margin = second;
    return res;
  }
  std::vector<double> q(kernel->data(), kernel->data() + kernel->size());
  const double qmax = kernel->cwiseAbs().maxCoeff();
  for (double& v : q) v /= qmax;
  const Polynomial poly(std::move(q), prob.l);

  NodeList kn;
  try {
    kn = roots_to_nodes(poly, prob.l, tol);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::ComplexRoots: {
        res.outcome = CandidateOutcome::ComplexKernelRoots;
        for (const auto& z : all_roots(poly, tol)) res.margin = std::max(res.margin, std::abs(z.imag()));
        return res;
      }
      case ErrorKind::RepeatedInfinity: res.outcome = CandidateOutcome::RepeatedInfinity; return res;
      case ErrorKind::ZeroPolynomial: res.outcome = CandidateOutcome::NoKernel; return res;
      default: throw;
    }
  }
  res.kernel_nodes = kn.nodes;
  res.warnings = kn.warnings;

  std::vector<Node> nodes;
  for (double f : prob.fixed_nodes) nodes.push_back(Node::real(f));
  nodes.push_back(Node::real(x_n));
  for (const Node& k : kn.nodes) {
    if (!k.is_infinite()) {
      for (const Node& other : nodes) {
        if (close(other.value(), k.value(), tol)) {
          res.outcome = CandidateOutcome::CoincidentNodes;
          return res;
        }
      }
    }
    nodes.push_back(k);
  }

  try {
    QuadratureRule rule = make_rule(prob.seq, prob.degree(), std::move(nodes), tol);
    res.outcome = CandidateOutcome::Rule;
    res.margin = rule.max_residual;
    rule.warnings.insert(rule.warnings.end(), res.warnings.begin(), res.warnings.end());
    rules.push_back(std::move(rule));
  } catch (const NonPositiveWeightError& e) {
    res.outcome = CandidateOutcome::NonPositiveWeight;
    res.margin = e.margin();
  } catch (const ResidualTooLargeError& e) {
    res.outcome = CandidateOutcome::ResidualTooLarge;
    res.margin = e.residual();
  }
  return res;
}

}  // namespace

FeasibilityReport multinode_solve(const MultiNodeProblem& prob, const Tolerances& tol) {
  FeasibilityReport report;
  const std::size_t wanted = (prob.degree() + 1) / 2;
  const std::size_t check = std::min(wanted, prob.seq.max_degree() / 2);
  const NondegeneracyReport nd = require_nondegenerate(prob.seq, check, tol);
  if (nd.ill_conditioned) {
    std::ostringstream msg;
    msg << "moment matrix M_" << check << " is ill-conditioned (eigenvalue ratio " << nd.condition << ")";
    report.warnings.push_back(msg.str());
  }

  const std::vector<double> candidates = multinode_candidates(prob, tol);
  bool unsure = !report.warnings.empty();
  for (double x : candidates) {
    CandidateResult res = complete_candidate(prob, x, tol, report.rules_found);
    switch (res.outcome) {
      case CandidateOutcome::NoKernel:
      case CandidateOutcome::AmbiguousKernel:
      case CandidateOutcome::CoincidentNodes:
      case CandidateOutcome::VerificationFailed: unsure = true; break;
      default: break;
    }
    if (!res.warnings.empty()) unsure = true;
    report.warnings.insert(report.warnings.end(), res.warnings.begin(), res.warnings.end());
    report.candidates.push_back(std::move(res));
  }
  if (!report.rules_found.empty()) {
    report.verdict = Verdict::Feasible;
  } else {
    report.verdict = unsure ? Verdict::Inconclusive : Verdict::Infeasible;
  }
  return report;
}

}  // namespace quadpencil
