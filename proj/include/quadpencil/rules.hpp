#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quadpencil/moments.hpp"
#include "quadpencil/poly.hpp"
#include "quadpencil/symlin.hpp"
#include "quadpencil/tolerances.hpp"

namespace quadpencil {

/// Positive weights on finitely many nodes reproducing m_0..m_D.
struct QuadratureRule {
  std::size_t degree = 0;
  std::vector<Node> nodes;  // ascending, infinity last
  std::vector<double> weights;
  double max_residual = 0.0;
  std::vector<std::string> warnings;

  bool has_infinity() const;
  std::vector<double> finite_nodes() const;
};

/// The d x d Hankel blocks M_{d-1}, M'_{d-1}, M''_{d-1} of a measure that is
/// non-degenerate in degree d, plus the determinant data of the linear
/// representation.
struct EvenFamily {
  std::size_t d = 0;
  SymmetricMatrix m0;
  SymmetricMatrix m1;
  SymmetricMatrix m2;
  double det_md = 0.0;   // det M_d
  double det_md1 = 0.0;  // det M_{d-1}
  double c = 0.0;        // (-1)^d det M_d / det M_{d-1}^2
  std::vector<std::string> warnings;

  /// Throws Degenerate / InsufficientMoments; requires max_degree >= 2d, d >= 1.
  static EvenFamily build(const MomentSequence& seq, std::size_t d, const Tolerances& tol = {});
};

/// xy M_{d-1} - (x+y) M'_{d-1} + M''_{d-1}.
SymmetricMatrix bilinear_matrix(const EvenFamily& fam, double x, double y);
/// F(x, y) = det of the bilinear matrix.
double f_eval(const EvenFamily& fam, double x, double y);

/// The (2d+1) x (2d+1) linear representation whose determinant times c is (x-y) F.
SymmetricMatrix linear_rep_matrix(const EvenFamily& fam, double x, double y);
/// Splits linear_rep_matrix(x, y) = x A - B for fixed y.
SymPencil linear_rep_pencil(const EvenFamily& fam, double y);

/// Unique Gaussian rule of degree 2d+1 with d+1 nodes.
QuadratureRule gaussian_odd(const MomentSequence& seq, std::size_t d, const Tolerances& tol = {});

/// Unique rule of degree 2d with d+1 nodes, one of which is y; shifted
/// bilinear pencil lambda M(y,y) - (y M_{d-1} - M'_{d-1}), x = y - 1/lambda.
QuadratureRule even_rule_through(const MomentSequence& seq, std::size_t d, double y,
                                 const Tolerances& tol = {});

struct LinearNodes {
  std::vector<Node> nodes;  // ascending, infinity last
  std::size_t pencil_dimension = 0;
  std::size_t rank_a = 0;
  std::size_t infinite_count = 0;
  std::vector<std::string> warnings;
};

/// Node set of the same rule from the (2d+1)-dimensional semidefinite pencil.
LinearNodes even_rule_linear(const MomentSequence& seq, std::size_t d, double y,
                             const Tolerances& tol = {});

/// det(x M_{d-1} - M'_{d-1}), leading coefficient det M_{d-1}.
Polynomial f_infinity(const MomentSequence& seq, std::size_t d, const Tolerances& tol = {});

struct InfinityRule {
  QuadratureRule rule;
  double w_inf_determinant = 0.0;    // det M_d / det M_{d-1}
  double w_inf_least_squares = 0.0;  // from weights_for_nodes
};

/// Rule of degree 2d whose nodes are the d roots of f_infinity and infinity.
InfinityRule infinity_rule(const MomentSequence& seq, std::size_t d, const Tolerances& tol = {});

struct WeightSolution {
  std::vector<double> weights;
  double residual = 0.0;   // max_k |sum w_i ev(node_i, t^k) - m_k| / (1 + max|m_k|)
  double min_margin = 0.0; // smallest signed weight contribution relative to its moment
};

/// Least-squares weights over the (D+1) x |nodes| moment system. Throws
/// NonPositiveWeightError or ResidualTooLargeError.
WeightSolution weights_for_nodes(const MomentSequence& seq, std::size_t degree,
                                 const std::vector<Node>& nodes, const Tolerances& tol = {});

/// Unchecked variant used for diagnostics: always returns the least-squares solution.
WeightSolution solve_weights(const MomentSequence& seq, std::size_t degree,
                             const std::vector<Node>& nodes);

struct VerificationReport {
  std::vector<double> residuals;  // |sum w_i ev(node_i, t^k) - m_k|, k = 0..degree
  double max_residual = 0.0;
  double threshold = 0.0;         // tol.residual * (1 + max|m_k|)
  bool pass = false;
  std::ptrdiff_t first_failing_degree = -1;
};

VerificationReport verify_rule(const MomentSequence& seq, const QuadratureRule& rule,
                               const Tolerances& tol = {});

/// Assembles a rule from nodes via weights_for_nodes and verifies it.
QuadratureRule make_rule(const MomentSequence& seq, std::size_t degree, std::vector<Node> nodes,
                         const Tolerances& tol = {});

struct CurveSample {
  double x = 0.0;
  double y = 0.0;
  double f = 0.0;
  double det_linear = 0.0;
  Inertia inertia;  // of the bilinear matrix
};

/// steps x steps grid, x outer and y inner, both ranges inclusive.
std::vector<CurveSample> curve_sample(const EvenFamily& fam, double x_min, double x_max,
                                      double y_min, double y_max, std::size_t steps,
                                      const Tolerances& tol = {});

}  // namespace quadpencil
