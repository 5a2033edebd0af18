#include "quadpencil/error.hpp"

namespace quadpencil {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::InsufficientMoments: return "insufficient_moments";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NotPositiveDefinite: return "not_positive_definite";
    case ErrorKind::Indefinite: return "indefinite";
    case ErrorKind::InfiniteDegeneracy: return "infinite_degeneracy";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::ZeroPolynomial: return "zero_polynomial";
    case ErrorKind::ComplexRoots: return "complex_roots";
    case ErrorKind::RepeatedInfinity: return "repeated_infinity";
    case ErrorKind::NonPositiveWeight: return "non_positive_weight";
    case ErrorKind::ResidualTooLarge: return "residual_too_large";
    case ErrorKind::Disagreement: return "disagreement";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace quadpencil
