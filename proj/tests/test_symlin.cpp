#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "quadpencil/error.hpp"
#include "quadpencil/moments.hpp"
#include "quadpencil/rules.hpp"
#include "quadpencil/symlin.hpp"

using namespace quadpencil;

namespace {

SymmetricMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  return SymmetricMatrix::generate(n, [&](std::size_t, std::size_t) { return g(rng); });
}

SymmetricMatrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = g(rng);
  }
  return SymmetricMatrix::identity(n).congruence(x) + SymmetricMatrix::identity(n);
}

SymmetricMatrix random_psd(std::mt19937_64& rng, std::size_t n, std::size_t rank) {
  std::normal_distribution<double> g;
  Matrix x(static_cast<Eigen::Index>(rank), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = g(rng);
  }
  return SymmetricMatrix::identity(rank).congruence(x);
}

// |det(lambda A - B)| relative to the product of row norms, in long double.
double relative_char_det(const SymmetricMatrix& a, const SymmetricMatrix& b, double lambda) {
  const std::size_t n = a.dimension();
  oracle::Dense m(n, std::vector<long double>(n));
  long double bound = 1.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = static_cast<long double>(lambda) * a(i, j) - b(i, j);
      const long double size = std::fabs(static_cast<long double>(lambda) * a(i, j)) + std::fabs(b(i, j));
      row += size * size;
    }
    bound *= std::sqrt(row);
  }
  return static_cast<double>(std::fabs(oracle::det(m)) / bound);
}

}  // namespace

TEST_SUITE("symlin") {
  TEST_CASE("cholesky") {
    const SymmetricMatrix a = SymmetricMatrix::from_rows({{4, 2, 0}, {2, 5, 1}, {0, 1, 3}});
    const auto l = cholesky(a);
    REQUIRE(l);
    CHECK(((*l) * l->transpose() - a.dense()).norm() <= 1e-14);
    CHECK_FALSE(cholesky(SymmetricMatrix::from_rows({{1, 2}, {2, 1}})));
    CHECK_FALSE(cholesky(SymmetricMatrix::from_rows({{1, 1}, {1, 1}})));
    CHECK_FALSE(cholesky(SymmetricMatrix::from_rows({{0, 0}, {0, 1}})));
  }

  TEST_CASE("cholesky accepts graded positive definite Hankel matrices") {
    const MomentSequence expo = moments_exponential(16);
    for (std::size_t d = 0; d <= 8; ++d) CHECK(cholesky(hankel_shifted(expo, d + 1, 0)));
  }

  TEST_CASE("symmetric eigen decomposition") {
    const SymmetricMatrix a = SymmetricMatrix::from_rows({{2, 1}, {1, 2}});
    const SymEigen se = sym_eigen(a);
    REQUIRE(se.values.size() == 2);
    CHECK(se.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(se.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    // Largest-magnitude component made positive.
    for (Eigen::Index c = 0; c < 2; ++c) {
      const Vector v = se.vectors.col(c);
      Eigen::Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      CHECK(v(imax) > 0.0);
    }
    const SymEigen again = sym_eigen(a);
    CHECK(again.vectors == se.vectors);
  }

  TEST_CASE("definite pencil: the rule-through-one pencil of the normal distribution") {
    // lambda M(1,1) - (M_2 - M'_2) has lambda = 1/(1 - x) at the other nodes.
    const EvenFamily fam = EvenFamily::build(moments_normal(6), 3);
    const SymPencil p(bilinear_matrix(fam, 1, 1), fam.m0 - fam.m1, Definiteness::PositiveDefinite);
    const GenEigResult r = gen_eigen_definite(p);
    REQUIRE(r.finite_eigenvalues.size() == 3);
    std::vector<double> expected;
    for (double x : {-2.1451026912004224, -0.52397639708186597, 2.6690790882822884}) expected.push_back(1.0 / (1.0 - x));
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(r.finite_eigenvalues[i] - expected[i]) <= 1e-10);
    CHECK(r.finite_eigenvalues[0] == doctest::Approx(-0.599).epsilon(1e-3));
    CHECK(r.finite_eigenvalues[1] == doctest::Approx(0.318).epsilon(1e-3));
    CHECK(r.finite_eigenvalues[2] == doctest::Approx(0.656).epsilon(1e-3));

    // The opposite sign convention negates every eigenvalue.
    const GenEigResult neg = gen_eigen_definite(SymPencil(p.a, fam.m1 - fam.m0));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(neg.finite_eigenvalues[2 - i] + r.finite_eigenvalues[i]) <= 1e-12);
  }

  TEST_CASE("definite pencil rejects a non-definite A") {
    const SymPencil p(SymmetricMatrix::from_rows({{1, 0}, {0, -1}}), SymmetricMatrix::identity(2));
    try {
      gen_eigen_definite(p);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    }
  }

  TEST_CASE("definite pencils: eigenvalues are roots of the characteristic determinant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
      const SymmetricMatrix a = random_spd(rng, n);
      const SymmetricMatrix b = random_symmetric(rng, n);
      const GenEigResult r = gen_eigen_definite(SymPencil(a, b));
      REQUIRE(r.finite_eigenvalues.size() == n);
      CHECK(r.infinite_count == 0);
      CHECK(std::is_sorted(r.finite_eigenvalues.begin(), r.finite_eigenvalues.end()));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(relative_char_det(a, b, r.finite_eigenvalues[i]) <= 1e-10);
        CHECK(r.residuals[i] <= 1e-12);
        CHECK(std::abs(r.eigenvectors[i].norm() - 1.0) <= 1e-12);
      }
    }
  }

  TEST_CASE("semidefinite pencils: finite spectrum matches the characteristic determinant") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
      const std::size_t rank = 1 + static_cast<std::size_t>(trial) % (n - 1);
      const SymmetricMatrix a = random_psd(rng, n, rank);
      const SymmetricMatrix b = random_symmetric(rng, n);
      const GenEigResult r = gen_eigen_semidefinite(SymPencil(a, b));
      CAPTURE(n);
      CAPTURE(rank);
      CHECK(r.rank_a == rank);
      CHECK(r.finite_eigenvalues.size() == rank);
      CHECK(r.infinite_count == n - rank);
      for (std::size_t i = 0; i < r.finite_eigenvalues.size(); ++i) {
        CHECK(relative_char_det(a, b, r.finite_eigenvalues[i]) <= 1e-9);
        CHECK(r.residuals[i] <= 1e-9);
      }
      const GenEigResult s = gen_eigen_semidefinite_shifted(SymPencil(a, b));
      REQUIRE(s.finite_eigenvalues.size() == r.finite_eigenvalues.size());
      for (std::size_t i = 0; i < s.finite_eigenvalues.size(); ++i) {
        CHECK(oracle::near_rel(s.finite_eigenvalues[i], r.finite_eigenvalues[i], 1e-7));
      }
    }
  }

  TEST_CASE("semidefinite and definite paths agree on definite pencils") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 9);
      const SymmetricMatrix a = random_spd(rng, n);
      const SymmetricMatrix b = random_symmetric(rng, n);
      const GenEigResult d = gen_eigen_definite(SymPencil(a, b));
      const GenEigResult s = gen_eigen_semidefinite(SymPencil(a, b));
      REQUIRE(d.finite_eigenvalues.size() == s.finite_eigenvalues.size());
      for (std::size_t i = 0; i < n; ++i) CHECK(oracle::near_rel(d.finite_eigenvalues[i], s.finite_eigenvalues[i], 1e-9));
    }
  }

  TEST_CASE("semidefinite solver errors") {
    const SymPencil indefinite(SymmetricMatrix::from_rows({{1, 0}, {0, -1}}), SymmetricMatrix::identity(2));
    try {
      gen_eigen_semidefinite(indefinite);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Indefinite);
    }
    // B vanishes on null(A): a Jordan block at infinity.
    const SymPencil jordan(SymmetricMatrix::from_rows({{1, 0}, {0, 0}}), SymmetricMatrix::from_rows({{0, 1}, {1, 0}}));
    try {
      gen_eigen_semidefinite(jordan);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InfiniteDegeneracy);
    }
    // det(x A - B) = -1 for every x: no finite eigenvalue at all.
    const GenEigResult s = gen_eigen_semidefinite_shifted(jordan);
    CHECK(s.finite_eigenvalues.empty());
  }

  TEST_CASE("shifted solver handles a repeated infinite eigenvalue") {
    // Linear representation of the normal distribution with y = 0, a root of
    // det(x M_2 - M'_2): the remaining nodes are -sqrt 3, 0, sqrt 3.
    const EvenFamily fam = EvenFamily::build(moments_normal(6), 3);
    const SymPencil p = linear_rep_pencil(fam, 0.0);
    CHECK_THROWS_AS(gen_eigen_semidefinite(p), Error);
    const GenEigResult r = gen_eigen_semidefinite_shifted(p);
    CHECK(r.rank_a == 4);
    REQUIRE(r.finite_eigenvalues.size() == 3);
    CHECK(std::abs(r.finite_eigenvalues[0] + std::sqrt(3.0)) <= 1e-9);
    CHECK(std::abs(r.finite_eigenvalues[1]) <= 1e-9);
    CHECK(std::abs(r.finite_eigenvalues[2] - std::sqrt(3.0)) <= 1e-9);
  }

  TEST_CASE("determinant, inertia, kernel") {
    CHECK(determinant(SymmetricMatrix::from_rows({{2, 1}, {1, 2}})) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(determinant(SymmetricMatrix(0)) == 1.0);
    const Inertia in = inertia(SymmetricMatrix::from_rows({{1, 0, 0}, {0, -2, 0}, {0, 0, 0}}));
    CHECK(in.positive == 1);
    CHECK(in.negative == 1);
    CHECK(in.zero == 1);

    const SymmetricMatrix singular = SymmetricMatrix::from_rows({{1, 1}, {1, 1}});
    double second = 0.0;
    const auto v = kernel_vector(singular, 1e-8, &second);
    REQUIRE(v);
    CHECK((singular.dense() * *v).norm() <= 1e-14);
    CHECK(second == doctest::Approx(1.0));
    CHECK_FALSE(kernel_vector(SymmetricMatrix::identity(3), 1e-8));
  }

  TEST_CASE("linear solves") {
    Matrix a(2, 2);
    a << 2, 1, 1, 3;
    Vector b(2);
    b << 3, 5;
    const Vector x = solve_linear(a, b);
    CHECK((a * x - b).norm() <= 1e-14);
    Matrix s(2, 2);
    s << 1, 2, 2, 4;
    CHECK_THROWS_AS(solve_linear(s, b), Error);

    Matrix tall(3, 2);
    tall << 1, 0, 0, 1, 1, 1;
    Vector rhs(3);
    rhs << 1, 2, 3;
    const LeastSquaresResult ls = least_squares(tall, rhs);
    CHECK(ls.x(0) == doctest::Approx(1.0));
    CHECK(ls.x(1) == doctest::Approx(2.0));
    CHECK(ls.residual_norm <= 1e-14);
  }
}
