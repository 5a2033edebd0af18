#include "quadpencil/symlin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "quadpencil/error.hpp"

namespace quadpencil {

namespace {

using Eigen::Index;

Index as_index(std::size_t n) { return static_cast<Index>(n); }

// Largest-magnitude component positive; the first one wins ties.
void normalize_sign(Eigen::Ref<Vector> v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  }
  if (v.size() > 0 && v(best) < 0.0) v = -v;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

double pair_residual(const SymmetricMatrix& a, const SymmetricMatrix& b, double lambda, const Vector& v) {
  const double scale = (std::abs(lambda) * a.frobenius_norm() + b.frobenius_norm()) * v.norm();
  if (scale == 0.0) return 0.0;
  return (lambda * (a.dense() * v) - b.dense() * v).norm() / scale;
}

struct Equilibrated {
  Vector scale;  // S, with As = S A S
  SymmetricMatrix a;
  SymmetricMatrix b;
};

// Diagonal congruence making the nonzero diagonal entries of A equal to one.
// Eigenvalues of the pencil are unchanged; eigenvectors map back through S.
Equilibrated equilibrate(const SymPencil& pencil) {
  const std::size_t n = pencil.dimension();
  Vector s(as_index(n));
  for (std::size_t i = 0; i < n; ++i) {
    double d = pencil.a(i, i);
    // Rows outside the support of A are balanced against B instead.
    if (!(d > 0.0)) {
      d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(pencil.b(i, j)));
    }
    s(as_index(i)) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
  }
  const Matrix sd = s.asDiagonal();
  return {s, pencil.a.congruence(sd), pencil.b.congruence(sd)};
}

// Sorts eigenpairs ascending and fills residuals against the original pencil.
GenEigResult finish(const SymPencil& pencil, std::vector<std::pair<double, Vector>> pairs,
                    std::size_t rank_a) {
  for (auto& [lambda, v] : pairs) {
    v.normalize();
    normalize_sign(v);
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return lexicographic_less(l.second, r.second);
  });
  GenEigResult out;
  out.rank_a = rank_a;
  out.infinite_count = pencil.dimension() - pairs.size();
  for (auto& [lambda, v] : pairs) {
    out.residuals.push_back(pair_residual(pencil.a, pencil.b, lambda, v));
    out.finite_eigenvalues.push_back(lambda);
    out.eigenvectors.push_back(std::move(v));
  }
  return out;
}

void check_square_pair(const SymPencil& p) {
  if (p.a.dimension() != p.b.dimension()) {
    throw Error(ErrorKind::InvalidArgument, "pencil matrices differ in dimension");
  }
}

struct RangeSplit {
  Matrix range;       // columns spanning range(As)
  Vector range_vals;  // corresponding positive eigenvalues
  Matrix null;        // columns spanning null(As)
};

RangeSplit split_psd(const SymmetricMatrix& as, const Tolerances& tol) {
  const SymEigen se = sym_eigen(as);
  double largest = 0.0;
  for (double v : se.values) largest = std::max(largest, std::abs(v));
  const double zero = tol.rank * (largest + 1.0);
  const Index n = as_index(as.dimension());
  std::vector<Index> pos;
  std::vector<Index> nul;
  for (Index i = 0; i < n; ++i) {
    const double v = se.values[static_cast<std::size_t>(i)];
    if (v < -zero) {
      std::ostringstream msg;
      msg << "pencil coefficient A is indefinite (eigenvalue " << v << ")";
      throw Error(ErrorKind::Indefinite, msg.str());
    }
    (v > zero ? pos : nul).push_back(i);
  }
  RangeSplit split{Matrix(n, as_index(pos.size())), Vector(as_index(pos.size())),
                   Matrix(n, as_index(nul.size()))};
  for (std::size_t k = 0; k < pos.size(); ++k) {
    split.range.col(as_index(k)) = se.vectors.col(pos[k]);
    split.range_vals(as_index(k)) = se.values[static_cast<std::size_t>(pos[k])];
  }
  for (std::size_t k = 0; k < nul.size(); ++k) split.null.col(as_index(k)) = se.vectors.col(nul[k]);
  return split;
}

}  // namespace

SymPencil::SymPencil(SymmetricMatrix a_, SymmetricMatrix b_, Definiteness hint_)
    : a(std::move(a_)), b(std::move(b_)), hint(hint_) {
  check_square_pair(*this);
}

std::optional<Matrix> cholesky(const SymmetricMatrix& a, const Tolerances& tol) {
  const Index n = as_index(a.dimension());
  const Matrix& m = a.dense();
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    const double diag = m(j, j);
    const double pivot = diag - l.row(j).head(j).squaredNorm();
    // Pivot relative to its own diagonal entry: invariant under diagonal
    // scaling, which matters for graded Hankel matrices.
    if (!(diag > 0.0) || !(pivot > tol.rank * diag)) return std::nullopt;
    l(j, j) = std::sqrt(pivot);
    for (Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

SymEigen sym_eigen(const SymmetricMatrix& a) {
  const Index n = as_index(a.dimension());
  SymEigen out;
  if (n == 0) {
    out.vectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.dense());
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "symmetric eigensolver did not converge (n = " << n << ", max|a| = " << a.max_abs() << ")";
    throw Error(ErrorKind::Convergence, msg.str());
  }
  std::vector<std::pair<double, Vector>> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Vector v = solver.eigenvectors().col(i);
    normalize_sign(v);
    pairs.emplace_back(solver.eigenvalues()(i), std::move(v));
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
    if (l.first != r.first) return l.first < r.first;
    return lexicographic_less(l.second, r.second);
  });
  out.vectors = Matrix(n, n);
  for (Index i = 0; i < n; ++i) {
    out.values.push_back(pairs[static_cast<std::size_t>(i)].first);
    out.vectors.col(i) = pairs[static_cast<std::size_t>(i)].second;
  }
  return out;
}

GenEigResult gen_eigen_definite(const SymPencil& pencil, const Tolerances& tol) {
  const auto l = cholesky(pencil.a, tol);
  if (!l) {
    throw Error(ErrorKind::NotPositiveDefinite,
                "gen_eigen_definite: A is not positive definite; use the semidefinite solver");
  }
  const auto lower = l->triangularView<Eigen::Lower>();
  // C = L^-1 B L^-T
  Matrix tmp = lower.solve(pencil.b.dense());
  Matrix c = lower.solve(tmp.transpose());
  const SymEigen se = sym_eigen(SymmetricMatrix::from_lower(c));

  std::vector<std::pair<double, Vector>> pairs;
  const auto upper = l->transpose().triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < se.values.size(); ++i) {
    Vector v = upper.solve(se.vectors.col(as_index(i)));
    pairs.emplace_back(se.values[i], std::move(v));
  }
  return finish(pencil, std::move(pairs), pencil.dimension());
}

GenEigResult gen_eigen_semidefinite(const SymPencil& pencil, const Tolerances& tol) {
  const std::size_t n = pencil.dimension();
  if (n == 0) return {};
  const Equilibrated eq = equilibrate(pencil);
  const RangeSplit split = split_psd(eq.a, tol);
  const Index r = split.range.cols();
  const Index k = split.null.cols();

  const Matrix& bs = eq.b.dense();
  const Matrix b22 = split.null.transpose() * bs * split.null;
  Matrix b22_inv_b21;
  if (k > 0) {
    const SymEigen b22_eig = sym_eigen(SymmetricMatrix::from_lower(b22));
    double smallest = std::numeric_limits<double>::infinity();
    for (double v : b22_eig.values) smallest = std::min(smallest, std::abs(v));
    const double scale = std::max(bs.norm(), std::numeric_limits<double>::min());
    if (smallest <= tol.rank * scale) {
      std::ostringstream msg;
      msg << "B is singular on null(A) (smallest |eigenvalue| " << smallest << " of the " << k << "x" << k
          << " restriction): the pencil has higher-order infinite eigenvalues";
      throw Error(ErrorKind::InfiniteDegeneracy, msg.str());
    }
    const Matrix b21 = split.null.transpose() * bs * split.range;
    b22_inv_b21 = b22_eig.vectors *
                  (b22_eig.vectors.transpose() * b21).cwiseQuotient(
                      Eigen::Map<const Vector>(b22_eig.values.data(), k).replicate(1, r));
  }

  // Reduced problem det(lambda D - S), D = diag(range eigenvalues),
  // S = B11 - B12 B22^-1 B21; solved as D^-1/2 S D^-1/2.
  Matrix s = split.range.transpose() * bs * split.range;
  if (k > 0) s -= (split.null.transpose() * bs * split.range).transpose() * b22_inv_b21;
  const Vector dinv = split.range_vals.cwiseSqrt().cwiseInverse();
  const Matrix reduced = dinv.asDiagonal() * s * dinv.asDiagonal();
  const SymEigen se = sym_eigen(SymmetricMatrix::from_lower(reduced));

  std::vector<std::pair<double, Vector>> pairs;
  for (std::size_t i = 0; i < se.values.size(); ++i) {
    const Vector u = dinv.asDiagonal() * se.vectors.col(as_index(i));
    Vector v = split.range * u;
    if (k > 0) v -= split.null * (b22_inv_b21 * u);
    pairs.emplace_back(se.values[i], eq.scale.asDiagonal() * v);
  }
  return finish(pencil, std::move(pairs), static_cast<std::size_t>(r));
}

GenEigResult gen_eigen_semidefinite_shifted(const SymPencil& pencil, const Tolerances& tol) {
  const std::size_t n = pencil.dimension();
  if (n == 0) return {};
  const Equilibrated eq = equilibrate(pencil);
  const RangeSplit split = split_psd(eq.a, tol);
  const Index r = split.range.cols();
  const Matrix g = split.range * split.range_vals.cwiseSqrt().asDiagonal();

  const double na = eq.a.frobenius_norm();
  const double ratio = na > 0.0 ? eq.b.frobenius_norm() / na : 1.0;
  // Fixed, irrational-looking offsets keep the choice deterministic while
  // making an accidental hit on an eigenvalue unlikely.
  constexpr std::array<double, 7> kOffsets = {0.3183, -0.5772, 1.4142, -2.2361, 3.1416, -4.6692, 0.0};
  double best_rcond = -1.0;
  double shift = 0.0;
  SymEigen k_eig;
  for (double off : kOffsets) {
    const double sigma = off * std::max(ratio, 1e-300);
    const SymEigen ke = sym_eigen(sigma * eq.a - eq.b);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double v : ke.values) {
      lo = std::min(lo, std::abs(v));
      hi = std::max(hi, std::abs(v));
    }
    const double rc = hi > 0.0 ? lo / hi : 0.0;
    if (rc > best_rcond) {
      best_rcond = rc;
      shift = sigma;
      k_eig = ke;
    }
  }
  if (best_rcond <= tol.rank) {
    throw Error(ErrorKind::Singular, "pencil appears singular: det(xA - B) vanishes at every trial shift");
  }

  const Vector mu = Eigen::Map<const Vector>(k_eig.values.data(), as_index(n));
  const Matrix vg = k_eig.vectors.transpose() * g;              // V^T G
  const Matrix t = vg.transpose() * mu.cwiseInverse().asDiagonal() * vg;  // G^T K^-1 G
  const SymEigen te = sym_eigen(SymmetricMatrix::from_lower(t));

  double nu_max = 0.0;
  for (double v : te.values) nu_max = std::max(nu_max, std::abs(v));
  const double nu_zero = tol.infinity * std::max(nu_max, 1.0 / std::max(ratio, 1e-300));

  std::vector<std::pair<double, Vector>> pairs;
  for (std::size_t i = 0; i < te.values.size(); ++i) {
    const double nu = te.values[i];
    if (std::abs(nu) <= nu_zero) continue;
    const Vector gu = g * te.vectors.col(as_index(i));
    const Vector kinv_gu = k_eig.vectors * (k_eig.vectors.transpose() * gu).cwiseQuotient(mu);
    pairs.emplace_back(shift - 1.0 / nu, eq.scale.asDiagonal() * kinv_gu);
  }
  return finish(pencil, std::move(pairs), static_cast<std::size_t>(r));
}

double determinant(const Matrix& a) {
  if (a.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(a).determinant();
}

double determinant(const SymmetricMatrix& a) { return determinant(a.dense()); }

std::optional<Vector> kernel_vector(const SymmetricMatrix& a, double tol, double* second_ratio) {
  const SymEigen se = sym_eigen(a);
  if (se.values.empty()) return std::nullopt;
  std::vector<std::size_t> order(se.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return std::abs(se.values[l]) < std::abs(se.values[r]);
  });
  const double scale = std::abs(se.values[order.back()]);
  if (second_ratio != nullptr) {
    *second_ratio = order.size() < 2 ? std::numeric_limits<double>::infinity()
                    : scale > 0.0    ? std::abs(se.values[order[1]]) / scale
                                     : 0.0;
  }
  if (std::abs(se.values[order.front()]) > tol * scale) return std::nullopt;
  Vector v = se.vectors.col(as_index(order.front()));
  normalize_sign(v);
  return v;
}

Inertia inertia(const SymmetricMatrix& a, const Tolerances& tol) {
  const SymEigen se = sym_eigen(a);
  double largest = 0.0;
  for (double v : se.values) largest = std::max(largest, std::abs(v));
  const double zero = tol.rank * largest;
  Inertia in;
  for (double v : se.values) {
    if (v > zero) {
      ++in.positive;
    } else if (v < -zero) {
      ++in.negative;
    } else {
      ++in.zero;
    }
  }
  return in;
}

Vector solve_linear(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "solve_linear: dimensions do not conform");
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::Singular, "solve_linear: matrix is singular");
  }
  return lu.solve(b);
}

LeastSquaresResult least_squares(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "least_squares: dimensions do not conform");
  }
  Vector col_scale(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    const double c = a.col(j).cwiseAbs().maxCoeff();
    col_scale(j) = c > 0.0 ? c : 1.0;
  }
  const Matrix as = a * col_scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Matrix> qr(as);
  const Vector z = qr.solve(b);
  LeastSquaresResult out;
  out.x = z.cwiseQuotient(col_scale);
  out.residual_norm = (a * out.x - b).norm();
  return out;
}

}  // namespace quadpencil
