"""Tolerance defaults used by validators and verifiers."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Comparison tolerances.

    abs_tol/rel_tol are the generic scalar-comparison pair; tol_alg bounds
    exact algebraic residuals (e.g. max-entry of A^2 + I); tol_iso bounds
    sampled isometry residuals.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    tol_alg: float = 1e-9
    tol_iso: float = 1e-8


DEFAULT_TOL = Tolerances()
