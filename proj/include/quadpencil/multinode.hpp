#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quadpencil/moments.hpp"
#include "quadpencil/poly.hpp"
#include "quadpencil/rules.hpp"
#include "quadpencil/symlin.hpp"

namespace quadpencil {

/// Does mu admit a rule of degree n + 2l with n + l nodes that include the
/// n - 1 prescribed nodes?
struct MultiNodeProblem {
  std::size_t n = 1;
  std::size_t l = 1;
  std::vector<double> fixed_nodes;
  MomentSequence seq;

  /// Validates sizes, node separation and the moment count.
  MultiNodeProblem(std::size_t n_, std::size_t l_, std::vector<double> fixed, MomentSequence seq_,
                   double separation = 1e-9);

  std::size_t degree() const noexcept { return n + 2 * l; }
};

/// sum_k (-1)^k e_k(all_nodes) M^{(n-k)}_l; all_nodes has n entries.
SymmetricMatrix multinode_matrix(const MultiNodeProblem& prob, const std::vector<double>& all_nodes);

/// (A, B) with multinode_matrix(fixed + {x}) = x A - B.
SymPencil multinode_pencil(const MultiNodeProblem& prob);

/// det(x A - B) as a polynomial of degree bound l + 1, by evaluation at l + 2
/// Chebyshev points and interpolation.
Polynomial multinode_determinant(const MultiNodeProblem& prob, const Tolerances& tol = {});

/// Real roots of det(x A - B), ascending. Throws Degenerate when the
/// determinant vanishes identically.
std::vector<double> multinode_candidates(const MultiNodeProblem& prob, const Tolerances& tol = {});

enum class CandidateOutcome {
  Rule,
  NonPositiveWeight,
  ResidualTooLarge,
  ComplexKernelRoots,
  RepeatedInfinity,
  NoKernel,
  AmbiguousKernel,
  CoincidentNodes,
  VerificationFailed,
};
std::string to_string(CandidateOutcome outcome);

struct CandidateResult {
  double x_n = 0.0;
  std::vector<Node> kernel_nodes;  // remaining l nodes, when real
  CandidateOutcome outcome = CandidateOutcome::Rule;
  double margin = 0.0;  // residual, weight margin or max imaginary part, per outcome
  std::vector<std::string> warnings;
};

enum class Verdict { Feasible, Infeasible, Inconclusive };
std::string to_string(Verdict verdict);

struct FeasibilityReport {
  std::vector<CandidateResult> candidates;  // ascending by x_n
  std::vector<QuadratureRule> rules_found;
  Verdict verdict = Verdict::Infeasible;
  std::vector<std::string> warnings;
};

FeasibilityReport multinode_solve(const MultiNodeProblem& prob, const Tolerances& tol = {});

}  // namespace quadpencil
