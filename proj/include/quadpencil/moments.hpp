#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quadpencil/symmetric_matrix.hpp"
#include "quadpencil/tolerances.hpp"

namespace quadpencil {

/// Moments m_0..m_D of a measure on the real line.
class MomentSequence {
 public:
  MomentSequence() = default;
  /// Throws InvalidArgument on an empty list or non-finite entries.
  explicit MomentSequence(std::vector<double> values, std::string source = "");

  std::size_t max_degree() const noexcept { return values_.size() - 1; }
  double operator[](std::size_t k) const { return values_[k]; }
  /// Bounds-checked access; InsufficientMoments names the missing index.
  double at(std::size_t k) const;
  std::span<const double> values() const noexcept { return values_; }
  const std::string& source() const noexcept { return source_; }

  /// Largest |m_k| over 0..degree.
  double max_abs(std::size_t degree) const;
  double max_abs() const { return max_abs(max_degree()); }

  MomentSequence scaled(double factor) const;
  MomentSequence truncated(std::size_t degree) const;

  void require_degree(std::size_t degree, const char* what) const;

 private:
  std::vector<double> values_;
  std::string source_;
};

struct Atom {
  double position;
  double weight;
};

/// Finitely supported positive measure; used to generate exact moment data.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  /// Rejects non-positive weights and positions closer than `separation`.
  explicit AtomicMeasure(std::vector<Atom> atoms, double separation = 1e-9);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  std::vector<Atom> atoms_;
};

MomentSequence moments_normal(std::size_t max_degree);
MomentSequence moments_exponential(std::size_t max_degree);
MomentSequence moments_uniform(double a, double b, std::size_t max_degree);
MomentSequence moments_from_atoms(const AtomicMeasure& measure, std::size_t max_degree);

/// size x size Hankel matrix with (i,j) entry m_{i+j+shift} (0-based).
/// shift 0, 1, 2 give M_{size-1}, M'_{size-1}, M''_{size-1}.
SymmetricMatrix hankel_shifted(const MomentSequence& seq, std::size_t size, std::size_t shift);

struct NondegeneracyReport {
  bool nondegenerate = false;
  double det_value = 0.0;
  // Smallest |eigenvalue| over largest of the diagonally equilibrated M_d.
  double scaled_eigen_ratio = 0.0;
  // Ratio of extreme |eigenvalues| of M_d itself.
  double condition = 0.0;
  bool ill_conditioned = false;
};

NondegeneracyReport nondegeneracy_check(const MomentSequence& seq, std::size_t d,
                                        const Tolerances& tol = {});

/// Throws Degenerate when the sequence is degenerate in degree d; returns the
/// report so callers can forward conditioning warnings.
NondegeneracyReport require_nondegenerate(const MomentSequence& seq, std::size_t d,
                                          const Tolerances& tol = {});

}  // namespace quadpencil
