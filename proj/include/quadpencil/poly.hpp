#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quadpencil/tolerances.hpp"

namespace quadpencil {

/// A point of the real line or the point at infinity.
class Node {
 public:
  static Node real(double x);
  static Node infinity() { return Node(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Throws InvalidArgument for the node at infinity.
  double value() const;

  friend bool operator==(const Node& a, const Node& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  /// Real nodes ascending, infinity last.
  friend bool operator<(const Node& a, const Node& b) {
    if (a.infinite_ || b.infinite_) return !a.infinite_ && b.infinite_;
    return a.value_ < b.value_;
  }

  std::string to_string() const;

 private:
  Node() = default;
  bool infinite_ = true;
  double value_ = 0.0;
};

/// Polynomial with an explicit degree bound D; coefficient k multiplies t^k.
/// Trailing zeros are allowed, and matter for evaluation at infinity.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::vector<double> coefficients, std::size_t degree_bound);

  std::size_t degree_bound() const noexcept { return coeffs_.size() - 1; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  double operator()(double x) const;
  double max_abs() const;
  bool is_zero() const;
  /// Degree after discarding leading coefficients with |c_k| <= rel * max|c_j|.
  std::size_t effective_degree(double rel = 0.0) const;

 private:
  std::vector<double> coeffs_;
};

/// ev_x(f) = f(x); ev_inf(f) = coefficient of t^D.
double ev(const Node& node, const Polynomial& f);
/// ev at a node of the monomial t^k in R[t]_{<=degree_bound}.
double ev_monomial(const Node& node, std::size_t k, std::size_t degree_bound);

/// All complex roots via companion-matrix eigenvalues, leading coefficients
/// below tol.infinity * max|c| discarded first.
std::vector<std::complex<double>> all_roots(const Polynomial& f, const Tolerances& tol = {});

/// Real roots ascending with multiplicity. Roots whose imaginary part is at
/// most tol.imaginary * (1 + max|c_k / c_n|) count as real and are Newton-polished.
std::vector<double> real_roots(const Polynomial& f, const Tolerances& tol = {});

/// e_0..e_n with prod (t - x_i) = sum (-1)^k e_k t^(n-k).
std::vector<double> elementary_symmetric(std::span<const double> xs);

/// Monic product of (t - r_i), zero-padded to degree_bound.
Polynomial poly_from_roots(std::span<const double> roots, std::size_t degree_bound);

struct NodeList {
  std::vector<Node> nodes;  // ascending, infinity last
  std::vector<std::string> warnings;
  double max_imaginary = 0.0;
};

/// Real roots of `f` plus (expected_count - effective degree) copies of
/// infinity. Throws ComplexRoots if a non-real root is present and
/// RepeatedInfinity if more than one infinite node would result. Roots
/// closer than tol.merge * (1 + |r|) are merged with a warning.
NodeList roots_to_nodes(const Polynomial& f, std::size_t expected_count, const Tolerances& tol = {});

/// Merges values closer than tol.merge * (1 + |x|); input must be sorted.
std::vector<double> merge_close(std::vector<double> sorted, const Tolerances& tol,
                                std::vector<std::string>& warnings);

}  // namespace quadpencil
