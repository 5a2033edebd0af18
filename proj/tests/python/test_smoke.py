import math

import pytest

import quadpencil as qp


def test_normal_rule_through_one():
    m = qp.moments_normal(6)
    rule = qp.even_rule_through(m, 3, 1.0)
    assert rule.degree == 6
    expected = [-2.1451026912004224, -0.52397639708186597, 1.0, 2.6690790882822884]
    assert rule.nodes == pytest.approx(expected, abs=1e-10)
    assert rule.weights[2] == pytest.approx(0.375, abs=1e-12)
    assert qp.verify_rule(m, rule).passed


def test_linear_and_bilinear_paths_agree():
    m = qp.moments_exponential(8)
    bilinear = qp.even_rule_through(m, 4, 0.7).nodes
    linear = qp.even_rule_linear(m, 4, 0.7)
    assert linear == pytest.approx(bilinear, rel=1e-8)


def test_gaussian_and_infinity_rules():
    m = qp.moments_normal(7)
    gauss = qp.gaussian_odd(m, 3)
    assert len(gauss.nodes) == 4
    assert sum(gauss.weights) == pytest.approx(1.0, abs=1e-12)

    inf = qp.infinity_rule(m, 3)
    assert inf.rule.has_infinity
    assert inf.rule.nodes[-1] == math.inf
    assert inf.w_inf_determinant == pytest.approx(6.0, rel=1e-12)
    assert qp.f_infinity(qp.moments_exponential(4), 2) == pytest.approx([2.0, -4.0, 1.0])


def test_rule_text_round_trip_and_tampering():
    m = qp.moments_normal(6)
    rule = qp.even_rule_through(m, 3, 1.0)
    back = qp.parse_rule(rule.to_text())
    assert qp.verify_rule(m, back).passed

    nodes = list(rule.nodes)
    nodes[2] = 1.01
    bad = qp.QuadratureRule(rule.degree, nodes, rule.weights)
    report = qp.verify_rule(m, bad)
    assert not report.passed
    assert report.first_failing_degree == 1


def test_multinode_counterexample_is_infeasible():
    m = qp.moments_exponential(9)
    report = qp.multinode_solve(m, 3, 3, [1.0 / 3.0, 11.0])
    assert report.verdict == "infeasible"
    xs = [c.x for c in report.candidates]
    assert xs == pytest.approx([1.87076711744697, 5.19637418206904], rel=1e-9)
    assert all(c.outcome == "complex_kernel_roots" for c in report.candidates)


def test_errors_carry_a_kind():
    with pytest.raises(qp.QuadpencilError) as info:
        qp.even_rule_through([1.0, 0.0, -1.0, 0.0, 1.0], 2, 0.0)
    assert info.value.kind in {"degenerate", "indefinite", "not_positive_definite"}
    with pytest.raises(qp.QuadpencilError) as info:
        qp.gaussian_odd(qp.moments_normal(3), 3)
    assert info.value.kind == "insufficient_moments"


def test_weights_for_nodes_with_atoms():
    m = qp.moments_from_atoms([-1.0, 0.5, 2.0], [0.25, 0.5, 0.25], 5)
    w = qp.weights_for_nodes(m, 5, [-1.0, 0.5, 2.0])
    assert w == pytest.approx([0.25, 0.5, 0.25], rel=1e-12)
