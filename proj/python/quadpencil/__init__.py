"""Quadrature rules from moment pencils.

Moments are plain sequences of floats m_0..m_D. Nodes are floats, with
``math.inf`` standing for the node at infinity.
"""

from ._core import (
    CandidateResult,
    FeasibilityReport,
    InfinityRule,
    QuadpencilError,
    QuadratureRule,
    Tolerances,
    VerificationReport,
    even_rule_linear,
    even_rule_through,
    f_eval,
    f_infinity,
    gaussian_odd,
    infinity_rule,
    moments_exponential,
    moments_from_atoms,
    moments_normal,
    moments_uniform,
    multinode_determinant,
    multinode_solve,
    parse_rule,
    verify_rule,
    weights_for_nodes,
)

__all__ = [
    "CandidateResult",
    "FeasibilityReport",
    "InfinityRule",
    "QuadpencilError",
    "QuadratureRule",
    "Tolerances",
    "VerificationReport",
    "even_rule_linear",
    "even_rule_through",
    "f_eval",
    "f_infinity",
    "gaussian_odd",
    "infinity_rule",
    "moments_exponential",
    "moments_from_atoms",
    "moments_normal",
    "moments_uniform",
    "multinode_determinant",
    "multinode_solve",
    "parse_rule",
    "verify_rule",
    "weights_for_nodes",
]
