#include "quadpencil/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "quadpencil/error.hpp"
#include "quadpencil/symmetric_matrix.hpp"

namespace quadpencil {

Node Node::real(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::InvalidArgument, "real node must be finite");
  }
  Node n;
  n.infinite_ = false;
  n.value_ = x;
  return n;
}

double Node::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidArgument, "the node at infinity has no real value");
  return value_;
}

std::string Node::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream s;
  s.precision(12);
  s << value_;
  return s.str();
}

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial::Polynomial(std::vector<double> coefficients, std::size_t degree_bound)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() > degree_bound + 1) {
    for (std::size_t k = degree_bound + 1; k < coeffs_.size(); ++k) {
      if (coeffs_[k] != 0.0) {
        throw Error(ErrorKind::InvalidArgument, "polynomial exceeds its degree bound");
      }
    }
  }
  coeffs_.resize(degree_bound + 1, 0.0);
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::is_zero() const { return max_abs() == 0.0; }

std::size_t Polynomial::effective_degree(double rel) const {
  const double cut = rel * max_abs();
  std::size_t deg = degree_bound();
  while (deg > 0 && std::abs(coeffs_[deg]) <= cut) --deg;
  return deg;
}

double ev(const Node& node, const Polynomial& f) {
  if (node.is_infinite()) return f[f.degree_bound()];
  return f(node.value());
}

double ev_monomial(const Node& node, std::size_t k, std::size_t degree_bound) {
  if (node.is_infinite()) return k == degree_bound ? 1.0 : 0.0;
  return std::pow(node.value(), static_cast<double>(k));
}

namespace {

// Parlett-Reinsch balancing by powers of two.
void balance(Matrix& a) {
  constexpr double radix = 2.0;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

double polish(const std::vector<double>& c, double x) {
  auto eval = [&](double t, double& deriv) {
    double p = 0.0;
    deriv = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      deriv = deriv * t + p;
      p = p * t + *it;
    }
    return p;
  };
  double d = 0.0;
  double px = eval(x, d);
  for (int iter = 0; iter < 3 && d != 0.0 && px != 0.0; ++iter) {
    const double cand = x - px / d;
    double dc = 0.0;
    const double pc = eval(cand, dc);
    if (!(std::abs(pc) < std::abs(px))) break;
    x = cand;
    px = pc;
    d = dc;
  }
  return x;
}

std::vector<double> trimmed(const Polynomial& f, const Tolerances& tol) {
  if (f.is_zero()) {
    throw Error(ErrorKind::ZeroPolynomial, "polynomial is identically zero");
  }
  const std::size_t deg = f.effective_degree(tol.infinity);
  return {f.coefficients().begin(), f.coefficients().begin() + static_cast<std::ptrdiff_t>(deg) + 1};
}

}  // namespace

std::vector<std::complex<double>> all_roots(const Polynomial& f, const Tolerances& tol) {
  const std::vector<double> c = trimmed(f, tol);
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  if (n == 0) return {};
  Matrix comp = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  balance(comp);
  Eigen::EigenSolver<Matrix> solver(comp, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Convergence, "companion eigenvalue iteration did not converge");
  }
  std::vector<std::complex<double>> roots(solver.eigenvalues().begin(), solver.eigenvalues().end());
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<double> real_roots(const Polynomial& f, const Tolerances& tol) {
  const std::vector<double> c = trimmed(f, tol);
  std::vector<double> out;
  for (const auto& z : all_roots(f, tol)) {
    if (std::abs(z.imag()) <= tol.imaginary * (1.0 + std::abs(z))) {
      out.push_back(polish(c, z.real()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> elementary_symmetric(std::span<const double> xs) {
  std::vector<double> e(xs.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = i + 1; k >= 1; --k) e[k] += xs[i] * e[k - 1];
  }
  return e;
}

Polynomial poly_from_roots(std::span<const double> roots, std::size_t degree_bound) {
  if (roots.size() > degree_bound) {
    throw Error(ErrorKind::InvalidArgument, "more roots than the degree bound allows");
  }
  const std::vector<double> e = elementary_symmetric(roots);
  const std::size_t n = roots.size();
  std::vector<double> c(degree_bound + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) c[n - k] = (k % 2 == 0 ? 1.0 : -1.0) * e[k];
  return Polynomial(std::move(c), degree_bound);
}

std::vector<double> merge_close(std::vector<double> sorted, const Tolerances& tol,
                                std::vector<std::string>& warnings) {
  std::vector<double> out;
  for (double x : sorted) {
    if (!out.empty() && std::abs(x - out.back()) <= tol.merge * (1.0 + std::abs(x))) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "merged nearly coincident roots " << out.back() << " and " << x;
      warnings.push_back(msg.str());
      out.back() = 0.5 * (out.back() + x);
      continue;
    }
    out.push_back(x);
  }
  return out;
}

NodeList roots_to_nodes(const Polynomial& f, std::size_t expected_count, const Tolerances& tol) {
  const std::size_t eff = f.is_zero() ? 0 : f.effective_degree(tol.infinity);
  if (f.is_zero()) {
    throw Error(ErrorKind::ZeroPolynomial, "roots_to_nodes: polynomial is identically zero");
  }
  if (eff > expected_count) {
    throw Error(ErrorKind::InvalidArgument, "roots_to_nodes: degree exceeds the expected node count");
  }
  if (expected_count - eff > 1) {
    throw Error(ErrorKind::RepeatedInfinity,
                "roots_to_nodes: degree deficiency " + std::to_string(expected_count - eff) +
                    " would place a repeated node at infinity");
  }
  NodeList out;
  const std::vector<double> c = trimmed(f, tol);
  std::vector<double> reals;
  for (const auto& z : all_roots(f, tol)) {
    const double imag = std::abs(z.imag());
    if (imag > tol.imaginary * (1.0 + std::abs(z))) {
      out.max_imaginary = std::max(out.max_imaginary, imag);
      continue;
    }
    reals.push_back(polish(c, z.real()));
  }
  if (out.max_imaginary > 0.0) {
    std::ostringstream msg;
    msg << "roots_to_nodes: polynomial has non-real roots (max |imag| = " << out.max_imaginary << ")";
    throw Error(ErrorKind::ComplexRoots, msg.str());
  }
  std::sort(reals.begin(), reals.end());
  for (double x : merge_close(std::move(reals), tol, out.warnings)) out.nodes.push_back(Node::real(x));
  if (expected_count > eff) out.nodes.push_back(Node::infinity());
  return out;
}

}  // namespace quadpencil
