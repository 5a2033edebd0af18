#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "quadpencil/error.hpp"
#include "quadpencil/rules.hpp"

using namespace quadpencil;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Closed form of det M(x,y) for the standard normal distribution, d = 3,
// expanded by hand from the 3x3 Hankel blocks.
double normal_f3(double x, double y) {
  const double x2 = x * x, y2 = y * y;
  return 2.0 * (x2 * x * y2 * y - 3.0 * x2 * x * y + 3.0 * x2 * y2 - 3.0 * x2 - 3.0 * x * y2 * y + 15.0 * x * y -
                3.0 * y2 + 9.0);
}

void check_rule(const QuadratureRule& rule, const std::vector<double>& nodes, const std::vector<double>& weights,
                double tol) {
  REQUIRE(rule.nodes.size() == nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CAPTURE(i);
    if (std::isinf(nodes[i])) {
      CHECK(rule.nodes[i].is_infinite());
    } else {
      REQUIRE_FALSE(rule.nodes[i].is_infinite());
      CHECK(std::abs(rule.nodes[i].value() - nodes[i]) <= tol * std::max(1.0, std::abs(nodes[i])));
    }
    CHECK(std::abs(rule.weights[i] - weights[i]) <= tol * std::max(1.0, std::abs(weights[i])));
  }
}

}  // namespace

TEST_SUITE("rules") {
  TEST_CASE("even family data for the normal distribution") {
    const EvenFamily fam = EvenFamily::build(moments_normal(6), 3);
    CHECK(std::abs(fam.det_md - 12.0) <= 1e-12);
    CHECK(std::abs(fam.det_md1 - 2.0) <= 1e-12);
    CHECK(std::abs(fam.c + 3.0) <= 1e-12);
    CHECK(fam.warnings.empty());
    CHECK_THROWS_AS(EvenFamily::build(moments_normal(5), 3), Error);
    CHECK_THROWS_AS(EvenFamily::build(moments_normal(6), 0), Error);
  }

  TEST_CASE("bilinear determinant matches the closed form") {
    const EvenFamily fam = EvenFamily::build(moments_normal(6), 3);
    CHECK(std::abs(f_eval(fam, 1, 1) - 32.0) <= 1e-12);
    CHECK(normal_f3(1, 1) == 32.0);
    CHECK(std::abs(f_eval(fam, 0, kSqrt3)) <= 1e-12);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng), y = u(rng);
      const double exact = normal_f3(x, y);
      CHECK(std::abs(f_eval(fam, x, y) - exact) <= 1e-11 * (1 + std::abs(exact)));
      CHECK(std::abs(static_cast<double>(oracle::det(bilinear_matrix(fam, x, y))) - exact) <=
            1e-11 * (1 + std::abs(exact)));
    }
  }

  TEST_CASE("bilinear matrix is symmetric in x and y") {
    const EvenFamily fam = EvenFamily::build(moments_exponential(12), 5);
    CHECK(bilinear_matrix(fam, 0.3, 2.7) == bilinear_matrix(fam, 2.7, 0.3));
  }

  TEST_CASE("linear representation identity") {
    const EvenFamily fam = EvenFamily::build(moments_normal(6), 3);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng), y = u(rng);
      const double lhs = (x - y) * normal_f3(x, y);
      const double rhs = -3.0 * static_cast<double>(oracle::det(linear_rep_matrix(fam, x, y)));
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(lhs)));
    }
    const SymPencil p = linear_rep_pencil(fam, 0.7);
    CHECK(p.dimension() == 7);
    const SymmetricMatrix direct = linear_rep_matrix(fam, 1.9, 0.7);
    const SymmetricMatrix split = 1.9 * p.a - p.b;
    CHECK((direct.dense() - split.dense()).norm() <= 1e-14);
  }

  TEST_CASE("odd degree Gaussian rules match Golub-Welsch") {
    const MomentSequence normal = moments_normal(20);
    const MomentSequence expo = moments_exponential(20);
    const MomentSequence unif = moments_uniform(-1, 2, 20);
    for (std::size_t d = 0; d <= 8; ++d) {
      CAPTURE(d);
      const auto h = oracle::gauss_hermite(d + 1);
      check_rule(gaussian_odd(normal, d), h.nodes, h.weights, 1e-9);
      const auto l = oracle::gauss_laguerre(d + 1);
      check_rule(gaussian_odd(expo, d), l.nodes, l.weights, 1e-7);
      const auto g = oracle::gauss_legendre(d + 1, -1, 2);
      check_rule(gaussian_odd(unif, d), g.nodes, g.weights, 1e-8);
    }
    check_rule(gaussian_odd(normal, 2), {-kSqrt3, 0, kSqrt3}, {1.0 / 6, 2.0 / 3, 1.0 / 6}, 1e-12);
    check_rule(gaussian_odd(expo, 1), {2 - std::sqrt(2.0), 2 + std::sqrt(2.0)},
               {(2 + std::sqrt(2.0)) / 4, (2 - std::sqrt(2.0)) / 4}, 1e-12);
  }

  TEST_CASE("even rule through y = 1 for the normal distribution") {
    const QuadratureRule rule = even_rule_through(moments_normal(6), 3, 1.0);
    CHECK(rule.degree == 6);
    check_rule(rule, {-2.1451026912004224, -0.52397639708186597, 1.0, 2.6690790882822884},
               {0.071155978513099824, 0.53259851659716889, 0.375, 0.021245504889731246}, 1e-10);
    CHECK_FALSE(rule.has_infinity());
    CHECK(rule.max_residual <= 1e-12);
  }

  TEST_CASE("linear path for the same input") {
    const LinearNodes ln = even_rule_linear(moments_normal(6), 3, 1.0);
    CHECK(ln.pencil_dimension == 7);
    CHECK(ln.rank_a == 4);
    REQUIRE(ln.nodes.size() == 4);
    const double expected[] = {-2.1451026912004224, -0.52397639708186597, 1.0, 2.6690790882822884};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ln.nodes[i].value() - expected[i]) <= 1e-10);
  }

  TEST_CASE("rule through a root of F_inf has a node at infinity") {
    const QuadratureRule bil = even_rule_through(moments_normal(6), 3, 0.0);
    check_rule(bil, {-kSqrt3, 0, kSqrt3, INFINITY}, {1.0 / 6, 2.0 / 3, 1.0 / 6, 6.0}, 1e-9);
    const LinearNodes lin = even_rule_linear(moments_normal(6), 3, 0.0);
    REQUIRE(lin.nodes.size() == 4);
    CHECK(lin.nodes[3].is_infinite());
    CHECK(std::abs(lin.nodes[0].value() + kSqrt3) <= 1e-9);
  }

  TEST_CASE("F_inf polynomials") {
    const Polynomial fn = f_infinity(moments_normal(6), 3);
    CHECK(fn.degree_bound() == 3);
    const double expected_n[] = {0, -6, 0, 2};
    for (std::size_t k = 0; k <= 3; ++k) CHECK(std::abs(fn[k] - expected_n[k]) <= 1e-12);
    const Polynomial fe = f_infinity(moments_exponential(4), 2);
    const double expected_e[] = {2, -4, 1};
    for (std::size_t k = 0; k <= 2; ++k) CHECK(std::abs(fe[k] - expected_e[k]) <= 1e-12);
    const Polynomial f1 = f_infinity(moments_normal(2), 1);
    CHECK(std::abs(f1[1] - 1.0) <= 1e-15);
    CHECK(std::abs(f1[0]) <= 1e-15);
  }

  TEST_CASE("infinity rule") {
    const InfinityRule ir = infinity_rule(moments_normal(6), 3);
    check_rule(ir.rule, {-kSqrt3, 0, kSqrt3, INFINITY}, {1.0 / 6, 2.0 / 3, 1.0 / 6, 6.0}, 1e-10);
    CHECK(std::abs(ir.w_inf_determinant - 6.0) <= 1e-12);
    CHECK(std::abs(ir.w_inf_least_squares - 6.0) <= 1e-10);
    // Exponential: w_inf = det M_d / det M_{d-1} = (d!)^2.
    const InfinityRule ie = infinity_rule(moments_exponential(8), 4);
    CHECK(std::abs(ie.w_inf_determinant / 576.0 - 1.0) <= 1e-9);
    CHECK(std::abs(ie.w_inf_least_squares / 576.0 - 1.0) <= 1e-9);
  }

  TEST_CASE("weights for prescribed nodes") {
    const MomentSequence normal = moments_normal(6);
    const auto sol = weights_for_nodes(normal, 5, {Node::real(-kSqrt3), Node::real(0), Node::real(kSqrt3)});
    CHECK(std::abs(sol.weights[1] - 2.0 / 3.0) <= 1e-13);
    CHECK(sol.residual <= 1e-14);
    try {
      weights_for_nodes(normal, 4, {Node::real(1), Node::real(2)});
      FAIL("expected an error");
    } catch (const ResidualTooLargeError& e) {
      CHECK(e.kind() == ErrorKind::ResidualTooLarge);
      CHECK(e.residual() > 0.1);
    }
    try {
      weights_for_nodes(normal, 2, {Node::real(0), Node::real(0.5), Node::real(1)});
      FAIL("expected an error");
    } catch (const NonPositiveWeightError& e) {
      CHECK(e.index() == 1);
    }
    const auto raw = solve_weights(normal, 2, {Node::real(0), Node::real(0.5), Node::real(1)});
    CHECK(std::abs(raw.weights[0] - 3.0) <= 1e-12);
    CHECK(std::abs(raw.weights[1] + 4.0) <= 1e-12);
    CHECK(std::abs(raw.weights[2] - 2.0) <= 1e-12);
    CHECK_THROWS_AS(weights_for_nodes(normal, 2, {Node::real(1), Node::real(1)}), Error);
    CHECK_THROWS_AS(weights_for_nodes(normal, 1, {Node::real(1), Node::real(2), Node::real(3)}), Error);
    CHECK_THROWS_AS(weights_for_nodes(normal, 7, {Node::real(1)}), Error);
  }

  TEST_CASE("verification of rules") {
    QuadratureRule rule = gaussian_odd(moments_normal(5), 2);
    const auto ok = verify_rule(moments_normal(5), rule);
    CHECK(ok.pass);
    CHECK(ok.residuals.size() == 6);
    CHECK(ok.first_failing_degree == -1);
    rule.weights[0] += 1e-3;
    const auto bad = verify_rule(moments_normal(5), rule);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failing_degree == 0);
    QuadratureRule shifted = gaussian_odd(moments_normal(5), 2);
    shifted.nodes[2] = Node::real(kSqrt3 + 1e-6);
    const auto bad1 = verify_rule(moments_normal(5), shifted);
    CHECK_FALSE(bad1.pass);
    CHECK(bad1.first_failing_degree == 1);
  }

  TEST_CASE("degenerate and insufficient input is refused") {
    const MomentSequence two = moments_from_atoms(AtomicMeasure({{-1, 1}, {1, 1}}), 10);
    try {
      even_rule_through(two, 3, 0.5);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Degenerate);
    }
    CHECK_THROWS_AS(gaussian_odd(two, 2), Error);
    CHECK_THROWS_AS(infinity_rule(two, 2), Error);
    try {
      gaussian_odd(moments_normal(6), 3);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InsufficientMoments);
    }
    // Not the moments of a positive measure: M_1 is negative definite.
    CHECK_THROWS_AS(even_rule_through(MomentSequence({-1, 0, -1}), 1, 0.0), Error);
  }

  TEST_CASE("curve samples") {
    const EvenFamily fam = EvenFamily::build(moments_normal(6), 3);
    const auto samples = curve_sample(fam, -1, 1, -2, 2, 3);
    REQUIRE(samples.size() == 9);
    CHECK(samples[0].x == -1);
    CHECK(samples[0].y == -2);
    CHECK(samples[1].x == -1);
    CHECK(samples[1].y == 0);
    CHECK(samples[8].x == 1);
    CHECK(samples[8].y == 2);
    for (const auto& s : samples) {
      CHECK(std::abs(s.f - normal_f3(s.x, s.y)) <= 1e-10 * (1 + std::abs(s.f)));
      CHECK(s.inertia.positive + s.inertia.negative + s.inertia.zero == 3);
      if (s.x == s.y) CHECK(s.inertia.positive == 3);
    }
    CHECK_THROWS_AS(curve_sample(fam, 0, 1, 0, 1, 1), Error);
  }
}
