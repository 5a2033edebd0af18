#include "quadpencil/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "quadpencil/error.hpp"
#include "quadpencil/symlin.hpp"

namespace quadpencil {

MomentSequence::MomentSequence(std::vector<double> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  if (values_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "moment sequence needs at least m_0");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw Error(ErrorKind::InvalidArgument, "moment m_" + std::to_string(k) + " is not finite");
    }
  }
}

double MomentSequence::at(std::size_t k) const {
  require_degree(k, "moment access");
  return values_[k];
}

void MomentSequence::require_degree(std::size_t degree, const char* what) const {
  if (degree >= values_.size()) {
    std::ostringstream msg;
    msg << what << ": moment m_" << degree << " required but the sequence ends at m_"
        << max_degree();
    throw Error(ErrorKind::InsufficientMoments, msg.str());
  }
}

double MomentSequence::max_abs(std::size_t degree) const {
  double best = 0.0;
  for (std::size_t k = 0; k <= std::min(degree, max_degree()); ++k) {
    best = std::max(best, std::abs(values_[k]));
  }
  return best;
}

MomentSequence MomentSequence::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return MomentSequence(std::move(v), source_);
}

MomentSequence MomentSequence::truncated(std::size_t degree) const {
  require_degree(degree, "truncate");
  return MomentSequence(std::vector<double>(values_.begin(), values_.begin() + degree + 1), source_);
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms, double separation) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!std::isfinite(a.position) || !std::isfinite(a.weight)) {
      throw Error(ErrorKind::InvalidArgument, "atom " + std::to_string(i) + " is not finite");
    }
    if (!(a.weight > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "atom " + std::to_string(i) + " has non-positive weight");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(atoms_[j].position - a.position) <= separation) {
        throw Error(ErrorKind::InvalidArgument,
                    "atoms " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

namespace {

void check_finite(double v, std::size_t k, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::Overflow,
                std::string(what) + ": moment m_" + std::to_string(k) + " overflows a double");
  }
}

}  // namespace

MomentSequence moments_normal(std::size_t max_degree) {
  std::vector<double> m(max_degree + 1, 0.0);
  m[0] = 1.0;
  for (std::size_t k = 2; k <= max_degree; k += 2) {
    m[k] = m[k - 2] * static_cast<double>(k - 1);  // (k-1)!!
    check_finite(m[k], k, "normal");
  }
  return MomentSequence(std::move(m), "normal");
}

MomentSequence moments_exponential(std::size_t max_degree) {
  std::vector<double> m(max_degree + 1, 1.0);
  for (std::size_t k = 1; k <= max_degree; ++k) {
    m[k] = m[k - 1] * static_cast<double>(k);
    check_finite(m[k], k, "exponential");
  }
  return MomentSequence(std::move(m), "exponential");
}

MomentSequence moments_uniform(double a, double b, std::size_t max_degree) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::InvalidArgument, "uniform: need finite a < b");
  }
  std::vector<double> m(max_degree + 1);
  double ak = a;
  double bk = b;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    m[k] = (bk - ak) / (static_cast<double>(k + 1) * (b - a));
    check_finite(m[k], k, "uniform");
    ak *= a;
    bk *= b;
  }
  std::ostringstream src;
  src << "uniform(" << a << "," << b << ")";
  return MomentSequence(std::move(m), src.str());
}

MomentSequence moments_from_atoms(const AtomicMeasure& measure, std::size_t max_degree) {
  std::vector<double> m(max_degree + 1, 0.0);
  for (const Atom& atom : measure.atoms()) {
    double p = atom.weight;
    for (std::size_t k = 0; k <= max_degree; ++k) {
      m[k] += p;
      p *= atom.position;
    }
  }
  for (std::size_t k = 0; k <= max_degree; ++k) check_finite(m[k], k, "atoms");
  return MomentSequence(std::move(m), "atoms");
}

SymmetricMatrix hankel_shifted(const MomentSequence& seq, std::size_t size, std::size_t shift) {
  if (size == 0) {
    throw Error(ErrorKind::InvalidArgument, "hankel_shifted: size must be positive");
  }
  seq.require_degree(2 * (size - 1) + shift, "hankel_shifted");
  return SymmetricMatrix::generate(size, [&](std::size_t i, std::size_t j) { return seq[i + j + shift]; });
}

NondegeneracyReport nondegeneracy_check(const MomentSequence& seq, std::size_t d, const Tolerances& tol) {
  seq.require_degree(2 * d, "nondegeneracy_check");
  const SymmetricMatrix md = hankel_shifted(seq, d + 1, 0);

  NondegeneracyReport report;
  report.det_value = determinant(md);

  // Diagonal equilibration is a congruence, so it leaves the (non)singularity
  // of M_d unchanged while removing the grading of the moments.
  Vector scale(static_cast<Eigen::Index>(d + 1));
  for (std::size_t i = 0; i <= d; ++i) {
    const double diag = std::abs(md(i, i));
    scale(static_cast<Eigen::Index>(i)) = diag > 0.0 ? 1.0 / std::sqrt(diag) : 1.0;
  }
  const SymmetricMatrix scaled = md.congruence(scale.asDiagonal().toDenseMatrix());
  const SymEigen se = sym_eigen(scaled);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : se.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  report.scaled_eigen_ratio = hi > 0.0 ? lo / hi : 0.0;
  report.nondegenerate = report.scaled_eigen_ratio > tol.degeneracy;

  const SymEigen raw = sym_eigen(md);
  lo = std::numeric_limits<double>::infinity();
  hi = 0.0;
  for (double v : raw.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  report.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  report.ill_conditioned = report.condition > tol.condition_warning;
  return report;
}

NondegeneracyReport require_nondegenerate(const MomentSequence& seq, std::size_t d, const Tolerances& tol) {
  NondegeneracyReport report = nondegeneracy_check(seq, d, tol);
  if (!report.nondegenerate) {
    std::ostringstream msg;
    msg << "moments are degenerate in degree " << d << " (det M_" << d << " = " << report.det_value
        << ", scaled eigenvalue ratio " << report.scaled_eigen_ratio << ")";
    throw Error(ErrorKind::Degenerate, msg.str());
  }
  return report;
}

}  // namespace quadpencil
