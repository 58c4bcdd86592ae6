"""Pairs [X, A]: i-operator validation, conjugation, and existence search.

An i-operator A on a real space X satisfies A^2 = -I and makes every rotation
alpha*I + beta*A with alpha^2 + beta^2 = 1 an isometry.  Validation is exact
(algebraic) for Euclidean-like norms and sampled otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.optimize

from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatchError, StructureValidationError
from .spaces import (NormedSpace, direct_sum, euclidean_gram, norm,
                     norm_batch, space_equal, space_from_dict, space_to_dict)

DEFAULT_SAMPLE_VECTORS = 512
DEFAULT_SAMPLE_ANGLES = 64


@dataclass(eq=False)
class Certificate:
    """Validation evidence for a candidate i-operator."""

    algebraic_residual: float
    isometry_residual: float
    samples_used: int
    exact: bool
    # worst witness for the isometry residual: (x, alpha, beta); None when the
    # check was algebraic
    witness: Optional[tuple] = None


@dataclass(eq=False)
class ComplexStructure:
    space: NormedSpace
    A: np.ndarray
    certificate: Certificate


def structure_equal(a: ComplexStructure, b: ComplexStructure) -> bool:
    return space_equal(a.space, b.space) and np.array_equal(a.A, b.A)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def certify(space: NormedSpace, A, *, seed: int = 0,
            samples: int = DEFAULT_SAMPLE_VECTORS,
            angles: int = DEFAULT_SAMPLE_ANGLES) -> Certificate:
    """Compute residuals for a candidate i-operator without rejecting it."""
    A = np.asarray(A, dtype=float)
    n = space.dim
    if A.shape != (n, n):
        raise DimensionMismatchError(f"A must be {n} x {n}, got {A.shape}")
    alg = float(np.max(np.abs(A @ A + np.eye(n))))

    gram = euclidean_gram(space)
    if gram is not None:
        # rotations are G-isometries iff A'GA = G and GA is antisymmetric
        r1 = np.max(np.abs(A.T @ gram @ A - gram))
        r2 = np.max(np.abs(A.T @ gram + gram @ A))
        return Certificate(alg, float(max(r1, r2)), 0, True, None)

    iso, witness, used = _sampled_isometry_residual(space, A, seed, samples, angles)
    return Certificate(alg, iso, used, False, witness)


def _sampled_isometry_residual(space: NormedSpace, A: np.ndarray, seed: int,
                               samples: int, angles: int):
    """Max over sampled unit vectors and grid angles of | ||ax + bAx|| - 1 |.

    The angle grid divides the quadrature node grid, so for complexification
    norms the rotated evaluations reuse the same discretization and the check
    is not polluted by quadrature error.
    """
    n = space.dim
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n))
    theta = 2.0 * np.pi * np.arange(angles) / angles
    al, be = np.cos(theta), np.sin(theta)

    worst = -1.0
    witness = None
    chunk = max(1, 32768 // angles)
    AX_T = None
    for lo in range(0, samples, chunk):
        Xc = X[lo:lo + chunk]
        AXc = Xc @ A.T
        # rows: for each sample, all rotated vectors (angle 0 first as the
        # reference norm)
        R = al[None, :, None] * Xc[:, None, :] + be[None, :, None] * AXc[:, None, :]
        vals = norm_batch(space, R.reshape(-1, n)).reshape(len(Xc), angles)
        ref = vals[:, 0]
        ok = ref > 0
        dev = np.abs(vals[ok] / ref[ok, None] - 1.0)
        if dev.size:
            i, j = np.unravel_index(np.argmax(dev), dev.shape)
            if dev[i, j] > worst:
                worst = float(dev[i, j])
                xi = Xc[ok][i] / ref[ok][i]
                witness = (xi, float(al[j]), float(be[j]))
    return max(worst, 0.0), witness, samples * angles


def reevaluate_witness(space: NormedSpace, A: np.ndarray, witness) -> float:
    """Residual | ||alpha x + beta A x|| - ||x|| | for a recorded witness."""
    x, al, be = witness
    x = np.asarray(x, dtype=float)
    return abs(norm(space, al * x + be * (A @ x)) - norm(space, x))


def validate_i_operator(space: NormedSpace, A, *, tol: Tolerances = DEFAULT_TOL,
                        seed: int = 0, samples: int = DEFAULT_SAMPLE_VECTORS,
                        angles: int = DEFAULT_SAMPLE_ANGLES) -> ComplexStructure:
    """Validate A as an i-operator on the space, or raise with a witness."""
    if space.dim % 2 != 0:
        raise StructureValidationError(
            f"odd dimension {space.dim}: A^2 = -I forces even dimension "
            "(determinant argument)")
    cert = certify(space, A, seed=seed, samples=samples, angles=angles)
    if cert.algebraic_residual > tol.tol_alg:
        raise StructureValidationError(
            f"algebraic residual ||A^2 + I||_max = {cert.algebraic_residual:.3e} "
            f"exceeds {tol.tol_alg:.1e}", certificate=cert)
    if cert.isometry_residual > tol.tol_iso:
        raise StructureValidationError(
            f"isometry residual {cert.isometry_residual:.3e} exceeds "
            f"{tol.tol_iso:.1e}", certificate=cert)
    return ComplexStructure(space, np.asarray(A, dtype=float), cert)


# ---------------------------------------------------------------------------
# Basic constructions
# ---------------------------------------------------------------------------

def conjugate_structure(s: ComplexStructure) -> ComplexStructure:
    """[X, A] -> [X, -A]; residuals are unchanged."""
    cert = s.certificate
    wit = cert.witness
    if wit is not None:
        # alpha x + beta (-A) x = alpha x + (-beta) A x
        wit = (wit[0], wit[1], -wit[2])
    new_cert = Certificate(cert.algebraic_residual, cert.isometry_residual,
                           cert.samples_used, cert.exact, wit)
    return ComplexStructure(s.space, -s.A, new_cert)


def natural_i_operator_matrix(n: int) -> np.ndarray:
    """Block matrix of (x1, x2) -> (-x2, x1) on a doubled space."""
    N = np.zeros((2 * n, 2 * n))
    N[:n, n:] = -np.eye(n)
    N[n:, :n] = np.eye(n)
    return N


def natural_i_operator(base: NormedSpace, *, tol: Tolerances = DEFAULT_TOL,
                       seed: int = 0, samples: int = DEFAULT_SAMPLE_VECTORS,
                       angles: int = DEFAULT_SAMPLE_ANGLES) -> ComplexStructure:
    """The doubled space with the averaged norm and (x1, x2) -> (-x2, x1)."""
    space = direct_sum(base, base, "complexification")
    N = natural_i_operator_matrix(base.dim)
    return validate_i_operator(space, N, tol=tol, seed=seed, samples=samples,
                               angles=angles)


def complex_scalar_action(s: ComplexStructure, alpha: float, beta: float, x) -> np.ndarray:
    """(alpha + i beta) . x := alpha x + beta A x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (s.space.dim,):
        raise DimensionMismatchError(
            f"expected vector of length {s.space.dim}, got {x.shape}")
    return alpha * x + beta * (s.A @ x)


# ---------------------------------------------------------------------------
# Heuristic existence search
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class SearchResult:
    found: Optional[ComplexStructure]
    best_residual: float
    tag: str  # "found" | "budget exhausted" | "odd dimension"
    best_candidate: Optional[np.ndarray] = None


def search_i_operator(space: NormedSpace, budget: int = 2000,
                      seed: int = 0, *, tol: Tolerances = DEFAULT_TOL) -> SearchResult:
    """Local search for an i-operator; not a nonexistence proof.

    Candidates are parametrized as M J M^{-1} with J the canonical block
    rotation, so the algebraic condition holds by construction and only the
    sampled isometry residual is minimized.  "found" is returned only after
    full validation passes.
    """
    n = space.dim
    if n % 2 != 0:
        return SearchResult(None, float("inf"), "odd dimension")
    J = natural_i_operator_matrix(n // 2)
    rng = np.random.default_rng(seed)

    def candidate(mvec):
        M = np.eye(n) + mvec.reshape(n, n)
        if abs(np.linalg.det(M)) < 1e-8:
            return None
        return M @ J @ np.linalg.inv(M)

    def objective(mvec):
        A = candidate(mvec)
        if A is None:
            return 1e6
        c = certify(space, A, seed=seed, samples=64, angles=16)
        return c.algebraic_residual + c.isometry_residual

    evals = 0
    best_val = float("inf")
    best_A = None
    restart = 0
    while evals < budget:
        if restart == 0:
            m0 = np.zeros(n * n)
        else:
            m0 = 0.5 * rng.standard_normal(n * n)
        restart += 1
        res = scipy.optimize.minimize(
            objective, m0, method="Nelder-Mead",
            options={"maxfev": max(1, min(budget - evals, 400)),
                     "xatol": 1e-10, "fatol": 1e-12})
        evals += res.nfev
        if res.fun < best_val:
            best_val = float(res.fun)
            best_A = candidate(res.x)
            if best_A is not None and best_val <= tol.tol_iso:
                try:
                    s = validate_i_operator(space, best_A, tol=tol, seed=seed)
                    return SearchResult(s, best_val, "found", best_A)
                except StructureValidationError:
                    pass  # full validation stricter than the search proxy
    return SearchResult(None, best_val, "budget exhausted", best_A)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def structure_to_dict(s: ComplexStructure) -> dict:
    c = s.certificate
    wit = None
    if c.witness is not None:
        wit = {"x": np.asarray(c.witness[0]).tolist(),
               "alpha": c.witness[1], "beta": c.witness[2]}
    return {"space": space_to_dict(s.space), "A": s.A.tolist(),
            "certificate": {"algebraic_residual": c.algebraic_residual,
                            "isometry_residual": c.isometry_residual,
                            "samples_used": c.samples_used,
                            "exact": c.exact,
                            "witness": wit}}


def structure_from_dict(obj: dict, *, tol: Tolerances = DEFAULT_TOL,
                        revalidate: bool = True, seed: int = 0,
                        samples: int = DEFAULT_SAMPLE_VECTORS,
                        angles: int = DEFAULT_SAMPLE_ANGLES) -> ComplexStructure:
    space = space_from_dict(obj["space"])
    A = np.asarray(obj["A"], dtype=float)
    if revalidate:
        return validate_i_operator(space, A, tol=tol, seed=seed,
                                   samples=samples, angles=angles)
    c = obj["certificate"]
    wit = c.get("witness")
    if wit is not None:
        wit = (np.asarray(wit["x"], dtype=float), wit["alpha"], wit["beta"])
    return ComplexStructure(space, A, Certificate(
        c["algebraic_residual"], c["isometry_residual"], c["samples_used"],
        c["exact"], wit))
