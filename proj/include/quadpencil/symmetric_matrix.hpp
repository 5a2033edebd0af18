#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>

#include <Eigen/Dense>

namespace quadpencil {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense real symmetric matrix. Entries (i,j) and (j,i) are always bitwise
/// equal: every constructor writes both halves from one computed value, and
/// the entrywise arithmetic below preserves that.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : data_(Matrix::Zero(idx(n), idx(n))) {}

  /// Builds the matrix from f(i, j) evaluated on the upper triangle only.
  template <class Fn>
  static SymmetricMatrix generate(std::size_t n, Fn&& f) {
    SymmetricMatrix s(n);
    for (Eigen::Index i = 0; i < idx(n); ++i) {
      for (Eigen::Index j = i; j < idx(n); ++j) {
        const double v = f(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        s.data_(i, j) = v;
        s.data_(j, i) = v;
      }
    }
    return s;
  }

  /// Throws InvalidArgument unless `m` is square and exactly symmetric.
  static SymmetricMatrix from_dense(const Matrix& m);
  static SymmetricMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix diagonal(const Vector& d);

  /// Symmetric part of the lower triangle of `m`; used for products such as
  /// L^-1 B L^-T whose upper half is only equal up to round-off.
  static SymmetricMatrix from_lower(const Matrix& m);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return data_(idx(i), idx(j)); }
  void set(std::size_t i, std::size_t j, double v) {
    data_(idx(i), idx(j)) = v;
    data_(idx(j), idx(i)) = v;
  }

  const Matrix& dense() const noexcept { return data_; }

  double max_abs() const;
  double frobenius_norm() const { return data_.norm(); }

  friend SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
  friend SymmetricMatrix operator*(double s, const SymmetricMatrix& a);
  friend SymmetricMatrix operator-(const SymmetricMatrix& a);

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.data_.rows() == b.data_.rows() && a.data_ == b.data_;
  }

  /// Congruence Q^T A Q, built symmetric.
  SymmetricMatrix congruence(const Matrix& q) const;

  static Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

 private:
  Matrix data_;
};

}  // namespace quadpencil
