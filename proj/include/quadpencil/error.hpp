#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadpencil {

enum class ErrorKind {
  InvalidArgument,
  InsufficientMoments,
  Overflow,
  Degenerate,
  NotPositiveDefinite,
  Indefinite,
  InfiniteDegeneracy,  // pencil has higher-order infinite eigenvalues
  Singular,
  Convergence,
  ZeroPolynomial,
  ComplexRoots,
  RepeatedInfinity,
  NonPositiveWeight,
  ResidualTooLarge,
  Disagreement,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so
/// callers (and the CLI exit-code mapping) can classify it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by weights_for_nodes when the recovered weight at `index` is not positive.
class NonPositiveWeightError : public Error {
 public:
  NonPositiveWeightError(std::size_t index, double margin, const std::string& message)
      : Error(ErrorKind::NonPositiveWeight, message), index_(index), margin_(margin) {}

  std::size_t index() const noexcept { return index_; }
  double margin() const noexcept { return margin_; }

 private:
  std::size_t index_;
  double margin_;
};

class ResidualTooLargeError : public Error {
 public:
  ResidualTooLargeError(double residual, const std::string& message)
      : Error(ErrorKind::ResidualTooLarge, message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace quadpencil
