#pragma once

// Dense symmetric linear algebra behind every node computation.

#include <cstddef>
#include <optional>
#include <vector>

#include "quadpencil/symmetric_matrix.hpp"
#include "quadpencil/tolerances.hpp"

namespace quadpencil {

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite, Unknown };

/// The pencil lambda * A - B.
struct SymPencil {
  SymmetricMatrix a;
  SymmetricMatrix b;
  Definiteness hint = Definiteness::Unknown;

  SymPencil(SymmetricMatrix a_, SymmetricMatrix b_, Definiteness hint_ = Definiteness::Unknown);
  std::size_t dimension() const noexcept { return a.dimension(); }
};

struct GenEigResult {
  std::vector<double> finite_eigenvalues;  // ascending
  std::vector<Vector> eigenvectors;        // unit 2-norm, one per finite eigenvalue
  std::size_t infinite_count = 0;
  std::vector<double> residuals;  // ||(lambda A - B) v|| / ((|lambda| ||A|| + ||B||) ||v||)
  std::size_t rank_a = 0;         // numerical rank of A used by the solver
};

struct SymEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, orthonormal
};

/// Lower Cholesky factor, or nullopt when some pivot is <= tol.rank * (max diag + 1).
std::optional<Matrix> cholesky(const SymmetricMatrix& a, const Tolerances& tol = {});

/// Eigenvalues ascending; ties broken by lexicographic order of the
/// sign-normalized eigenvectors (largest-magnitude component positive).
SymEigen sym_eigen(const SymmetricMatrix& a);

/// det(lambda A - B) = 0 with A positive definite, via L^-1 B L^-T.
/// Throws NotPositiveDefinite if the Cholesky factorization of A fails.
GenEigResult gen_eigen_definite(const SymPencil& pencil, const Tolerances& tol = {});

/// A positive semidefinite. Deflates null(A) and solves the reduced definite
/// problem on the Schur complement. Throws Indefinite when A has a negative
/// eigenvalue, InfiniteDegeneracy when B is singular on null(A).
GenEigResult gen_eigen_semidefinite(const SymPencil& pencil, const Tolerances& tol = {});

/// A positive semidefinite, any regular pencil. Picks a shift s where
/// sA - B is well conditioned and solves the symmetric problem
/// G^T (sA - B)^-1 G u = nu u with A = G G^T; x = s - 1/nu, and nu = 0
/// counts as infinite. Handles pencils whose infinite eigenvalues are
/// not semisimple.
GenEigResult gen_eigen_semidefinite_shifted(const SymPencil& pencil, const Tolerances& tol = {});

double determinant(const SymmetricMatrix& a);
double determinant(const Matrix& a);

/// Unit vector for the eigenvalue of smallest magnitude, or nullopt when that
/// magnitude exceeds tol * max|eigenvalue|. `second_ratio` (if given) receives
/// the second-smallest |eigenvalue| over the largest, for ambiguity checks.
std::optional<Vector> kernel_vector(const SymmetricMatrix& a, double tol,
                                    double* second_ratio = nullptr);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};
Inertia inertia(const SymmetricMatrix& a, const Tolerances& tol = {});

/// Throws Singular for a (numerically) singular square system.
Vector solve_linear(const Matrix& a, const Vector& b);

struct LeastSquaresResult {
  Vector x;
  double residual_norm = 0.0;
};
/// Column-equilibrated, column-pivoted QR least squares.
LeastSquaresResult least_squares(const Matrix& a, const Vector& b);

}  // namespace quadpencil
