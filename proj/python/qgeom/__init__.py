"""Information geometry of parametric density matrices.

Thin Python layer over the C++ core: model families, SLD solvers, geometry
reports (Fisher matrix, geometric tensor, curvature), curvature integration,
measurement trade-off audits, and the randomized self-test suite.
"""

from ._core import (
    Model,
    NumericError,
    QgeomError,
    ValidationError,
    bures_fidelity,
    chern_number,
    embedded_qubit,
    mixed_bloch,
    pure_bloch,
    report,
    selftest,
    sld_vec_solve,
    solve_sld,
    tradeoff,
    unitary_family,
    validate_density,
)

__all__ = [
    "Model",
    "NumericError",
    "QgeomError",
    "ValidationError",
    "bures_fidelity",
    "chern_number",
    "embedded_qubit",
    "mixed_bloch",
    "pure_bloch",
    "report",
    "selftest",
    "sld_vec_solve",
    "solve_sld",
    "tradeoff",
    "unitary_family",
    "validate_density",
]
