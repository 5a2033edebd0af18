#include "quadpencil/symmetric_matrix.hpp"

#include "quadpencil/error.hpp"

namespace quadpencil {

SymmetricMatrix SymmetricMatrix::from_dense(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidArgument, "symmetric matrix must be square");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) {
        throw Error(ErrorKind::InvalidArgument, "matrix is not exactly symmetric");
      }
    }
  }
  SymmetricMatrix s;
  s.data_ = m;
  return s;
}

SymmetricMatrix SymmetricMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::InvalidArgument, "ragged matrix rows");
    }
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return from_dense(m);
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix s;
  s.data_ = Matrix::Identity(idx(n), idx(n));
  return s;
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
  SymmetricMatrix s;
  s.data_ = d.asDiagonal();
  return s;
}

SymmetricMatrix SymmetricMatrix::from_lower(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidArgument, "symmetric matrix must be square");
  }
  return generate(static_cast<std::size_t>(m.rows()), [&](std::size_t i, std::size_t j) {
    return 0.5 * (m(idx(i), idx(j)) + m(idx(j), idx(i)));
  });
}

double SymmetricMatrix::max_abs() const {
  return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  SymmetricMatrix s;
  s.data_ = a.data_ + b.data_;
  return s;
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  SymmetricMatrix s;
  s.data_ = a.data_ - b.data_;
  return s;
}

SymmetricMatrix operator*(double f, const SymmetricMatrix& a) {
  SymmetricMatrix s;
  s.data_ = f * a.data_;
  return s;
}

SymmetricMatrix operator-(const SymmetricMatrix& a) {
  SymmetricMatrix s;
  s.data_ = -a.data_;
  return s;
}

SymmetricMatrix SymmetricMatrix::congruence(const Matrix& q) const {
  return from_lower(q.transpose() * data_ * q);
}

}  // namespace quadpencil
