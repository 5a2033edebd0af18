#pragma once

namespace quadpencil {

/// Numerical thresholds shared across the library. Every public operation
/// that makes a numerical decision takes one of these (defaulted).
struct Tolerances {
  // Equilibrated M_d is degenerate when min|eig| <= degeneracy * max|eig|.
  double degeneracy = 1e-12;
  // Ratio of extreme eigenvalues of M_d above which results carry a warning.
  double condition_warning = 1e12;
  // Eigenvalues / pivots <= rank * (largest |eigenvalue| + 1) count as zero.
  double rank = 1e-12;
  // Backward error accepted for generalized eigenpairs.
  double eig_residual = 1e-8;
  // Moment-matching residual, relative to (1 + max |m_k|).
  double residual = 1e-9;
  // |lambda| threshold mapping a shifted eigenvalue to the node at infinity,
  // also used for leading-coefficient truncation of polynomials.
  double infinity = 1e-9;
  // Imaginary-part threshold for accepting a companion eigenvalue as real.
  double imaginary = 1e-7;
  // Roots closer than merge * (1 + |root|) are merged.
  double merge = 1e-7;
  // Relative threshold for the smallest eigenvalue of a matrix to count as a kernel.
  double kernel = 1e-8;
  // Column-scaled weights must exceed positivity * max scaled weight.
  double positivity = 1e-12;
};

}  // namespace quadpencil
