#include <doctest.h>

#include <clocale>
#include <cmath>
#include <sstream>

#include "quadpencil/error.hpp"
#include "quadpencil/io.hpp"

using namespace quadpencil;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("number formatting") {
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(-2.14510269120042) == "-2.1451026912");
    CHECK(io::format_number(6.0) == "6");
    CHECK(io::format_number(1.0 / 3.0, 0) == "0.3333333333333333");
    CHECK(io::format_number(1e-20) == "1e-20");
    CHECK(io::parse_number("1.5") == 1.5);
    CHECK(io::parse_number(" -2e3 ") == -2000.0);
    CHECK(io::parse_number("+4") == 4.0);
    CHECK_THROWS_AS(io::parse_number("1,5"), Error);
    CHECK_THROWS_AS(io::parse_number("abc"), Error);
    CHECK_THROWS_AS(io::parse_number("1.5x"), Error);
    CHECK_THROWS_AS(io::parse_number(""), Error);
    CHECK_THROWS_AS(io::parse_number("inf"), Error);
    CHECK_THROWS_AS(io::parse_number("nan"), Error);
  }

  TEST_CASE("number formatting ignores the C locale") {
    const char* old = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = old ? old : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
      CHECK(io::format_number(0.5) == "0.5");
      CHECK(io::parse_number("0.5") == 0.5);
    }
    std::setlocale(LC_NUMERIC, saved.c_str());
  }

  TEST_CASE("moment CSV round trip") {
    std::ostringstream out;
    io::write_moments(out, moments_uniform(-2, 2, 4));
    std::istringstream in(out.str());
    const MomentSequence back = io::read_moments(in, "file");
    REQUIRE(back.max_degree() == 4);
    CHECK(std::abs(back[2] - 4.0 / 3.0) <= 1e-11);
    CHECK(back[4] == 3.2);
    CHECK(back.source() == "file");
  }

  TEST_CASE("moment CSV parsing rejects malformed input") {
    auto parse = [](const std::string& text) {
      std::istringstream in(text);
      return io::read_moments(in, "t");
    };
    CHECK(parse("# comment\n0,1\n\n1,0\n2,1\n").max_degree() == 2);
    CHECK(kind_of([&] { parse("0,1\n2,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("0,1\n0,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("1,1\n0,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("0,1,2\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("0,x\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("-1,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("# only comments\n"); }) == ErrorKind::Parse);
    try {
      parse("0,1\n1,0\n3,1\n");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("missing moment index 2") != std::string::npos);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }

  TEST_CASE("atom CSV") {
    std::istringstream in("# atoms\n-1,0.5\n1,0.5\n");
    const AtomicMeasure mu = io::read_atoms(in);
    CHECK(mu.size() == 2);
    std::istringstream bad("0,1\n0,2\n");
    CHECK_THROWS_AS(io::read_atoms(bad), Error);
    std::istringstream neg("0,-1\n");
    CHECK_THROWS_AS(io::read_atoms(neg), Error);
  }

  TEST_CASE("rule serialization round trip") {
    QuadratureRule rule;
    rule.degree = 6;
    rule.nodes = {Node::real(-1.7320508075688772), Node::real(0), Node::real(1.7320508075688772), Node::infinity()};
    rule.weights = {1.0 / 6, 2.0 / 3, 1.0 / 6, 6.0};
    rule.max_residual = 3.5e-15;
    std::ostringstream out;
    io::write_rule(out, rule);
    const std::string text = out.str();
    CHECK(text ==
          "degree,6\nreal,-1.73205080757,0.166666666667\nreal,0,0.666666666667\n"
          "real,1.73205080757,0.166666666667\ninfinity,,6\nmax_residual,3.5e-15\n");
    std::istringstream in(text);
    const QuadratureRule back = io::read_rule(in);
    CHECK(back.degree == 6);
    REQUIRE(back.nodes.size() == 4);
    CHECK(back.nodes[3].is_infinite());
    CHECK(back.weights[3] == 6.0);
    std::ostringstream again;
    io::write_rule(again, back);
    CHECK(again.str() == text);
  }

  TEST_CASE("rule parsing rejects malformed input") {
    auto parse = [](const std::string& text) {
      std::istringstream in(text);
      return io::read_rule(in);
    };
    CHECK(kind_of([&] { parse("real,1,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("degree,2\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("degree,2\nreal,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("degree,2\ninfinity,3,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("degree,2\nnode,1,1\n"); }) == ErrorKind::Parse);
    CHECK(kind_of([&] { parse("degree,2\ndegree,3\nreal,1,1\n"); }) == ErrorKind::Parse);
  }

  TEST_CASE("report formats") {
    VerificationReport v;
    v.residuals = {0, 1e-3};
    v.max_residual = 1e-3;
    v.threshold = 2e-9;
    v.pass = false;
    v.first_failing_degree = 1;
    std::ostringstream out;
    io::write_verification(out, v);
    CHECK(out.str() ==
          "residual,0,0\nresidual,1,0.001\nthreshold,2e-09\nmax_residual,0.001\nstatus,fail\n"
          "first_failing_degree,1\n");

    FeasibilityReport f;
    f.verdict = Verdict::Infeasible;
    CandidateResult c;
    c.x_n = 1.5;
    c.kernel_nodes = {Node::real(-1), Node::infinity()};
    c.outcome = CandidateOutcome::NonPositiveWeight;
    c.margin = -0.25;
    f.candidates.push_back(c);
    std::ostringstream fo;
    io::write_feasibility(fo, f);
    CHECK(fo.str() == "verdict,infeasible\ncandidate,1.5,-1;inf,non_positive_weight,-0.25\n");

    CurveSample s;
    s.x = 1;
    s.y = -1;
    s.f = 0.5;
    s.det_linear = 2;
    s.inertia = {2, 1, 0};
    std::ostringstream co;
    io::write_curve(co, {s});
    CHECK(co.str() == "x,y,F,detM,inertia_pos,inertia_neg,inertia_zero\n1,-1,0.5,2,2,1,0\n");
  }
}
