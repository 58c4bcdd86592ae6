"""Operators that respect i-operators, canonical maps, and norm estimates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (CompositionError, DimensionMismatchError,
                     RespectViolationError)
from .spaces import NormedSpace, euclidean_gram, norm_batch
from .structures import (ComplexStructure, conjugate_structure,
                         natural_i_operator, structure_equal,
                         structure_to_dict)

RANK_RTOL = 1e-10  # smallest singular value > RANK_RTOL * largest


@dataclass(eq=False)
class RespectingOperator:
    """[T, A, B]: a real matrix with T A = B T between two structures."""

    domain: ComplexStructure
    codomain: ComplexStructure
    matrix: np.ndarray
    respect_residual: float


# ---------------------------------------------------------------------------
# Canonical injections and surjections on X (+) X
# ---------------------------------------------------------------------------

def injection_first(n: int) -> np.ndarray:
    """x -> (x, 0), as a 2n x n block matrix."""
    return np.vstack([np.eye(n), np.zeros((n, n))])


def injection_second(n: int) -> np.ndarray:
    """x -> (0, x)."""
    return np.vstack([np.zeros((n, n)), np.eye(n)])


def surjection_first(n: int) -> np.ndarray:
    """(x1, x2) -> x1, as an n x 2n block matrix."""
    return np.hstack([np.eye(n), np.zeros((n, n))])


def surjection_second(n: int) -> np.ndarray:
    """(x1, x2) -> x2."""
    return np.hstack([np.zeros((n, n)), np.eye(n)])


def block_diag2(T: np.ndarray) -> np.ndarray:
    """T (+) T: (x1, x2) -> (T x1, T x2)."""
    m, n = T.shape
    out = np.zeros((2 * m, 2 * n))
    out[:m, :n] = T
    out[m:, n:] = T
    return out


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def respect_residual(T: np.ndarray, A: np.ndarray, B: np.ndarray) -> float:
    return float(np.max(np.abs(T @ A - B @ T)))


def make_respecting(domain: ComplexStructure, codomain: ComplexStructure, T,
                    *, tol: Tolerances = DEFAULT_TOL) -> RespectingOperator:
    """Wrap T as [T, A, B]; rejected with the max-entry witness if T A != B T."""
    T = np.asarray(T, dtype=float)
    if T.shape != (codomain.space.dim, domain.space.dim):
        raise DimensionMismatchError(
            f"T must be {codomain.space.dim} x {domain.space.dim}, got {T.shape}")
    R = T @ domain.A - codomain.A @ T
    res = float(np.max(np.abs(R)))
    if res > tol.tol_alg:
        i, j = np.unravel_index(np.argmax(np.abs(R)), R.shape)
        raise RespectViolationError(
            f"T A - B T has entry {R[i, j]:.3e} at ({i}, {j}), above "
            f"{tol.tol_alg:.1e}", residual=res, witness=(int(i), int(j)))
    return RespectingOperator(domain, codomain, T, res)


def complexify_operator(T, baseX: NormedSpace, baseY: NormedSpace, *,
                        tol: Tolerances = DEFAULT_TOL,
                        samples: int = 512, angles: int = 64,
                        seed: int = 0) -> RespectingOperator:
    """T (+) T between the complexified spaces with their natural i-operators."""
    T = np.asarray(T, dtype=float)
    if T.shape != (baseY.dim, baseX.dim):
        raise DimensionMismatchError(
            f"T must be {baseY.dim} x {baseX.dim}, got {T.shape}")
    dom = natural_i_operator(baseX, tol=tol, samples=samples, angles=angles, seed=seed)
    cod = natural_i_operator(baseY, tol=tol, samples=samples, angles=angles, seed=seed)
    return make_respecting(dom, cod, block_diag2(T), tol=tol)


def conjugate_operator(op: RespectingOperator) -> RespectingOperator:
    """[T, A, B] -> [T, -A, -B]; the residual is preserved exactly."""
    return RespectingOperator(conjugate_structure(op.domain),
                              conjugate_structure(op.codomain),
                              op.matrix, op.respect_residual)


def identity_operator(s: ComplexStructure) -> RespectingOperator:
    return RespectingOperator(s, s, np.eye(s.space.dim), 0.0)


def compose(f: RespectingOperator, g: RespectingOperator, *,
            tol: Tolerances = DEFAULT_TOL) -> RespectingOperator:
    """f after g.  Requires g's codomain and f's domain to match exactly."""
    if not structure_equal(g.codomain, f.domain):
        raise CompositionError(
            "codomain of g and domain of f differ (structures must match "
            "exactly, including the A matrix)")
    return make_respecting(g.domain, f.codomain, f.matrix @ g.matrix, tol=tol)


# ---------------------------------------------------------------------------
# Isomorphism test
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class IsomorphismResult:
    is_isomorphism: bool
    inverse: Optional[RespectingOperator] = None
    condition_number: Optional[float] = None
    reason: Optional[str] = None


def is_isomorphism(op: RespectingOperator, *,
                   tol: Tolerances = DEFAULT_TOL) -> IsomorphismResult:
    """Square and numerically invertible => inverse operator, which respects
    the structures automatically (T A = B T and T invertible give
    T^{-1} B = A T^{-1})."""
    T = op.matrix
    if T.shape[0] != T.shape[1]:
        return IsomorphismResult(False, reason="non-square")
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= RANK_RTOL * sv[0]:
        return IsomorphismResult(False, reason="singular")
    Tinv = np.linalg.inv(T)
    inv_op = make_respecting(op.codomain, op.domain, Tinv, tol=tol)
    return IsomorphismResult(True, inverse=inv_op,
                             condition_number=float(sv[0] / sv[-1]))


# ---------------------------------------------------------------------------
# Operator norm estimation
# ---------------------------------------------------------------------------

def matrix_norm_between(T: np.ndarray, dom: NormedSpace, cod: NormedSpace, *,
                        samples: int = 2000, seed: int = 0) -> tuple[float, bool]:
    """Norm of T : dom -> cod; (value, exact).

    Exact via singular values when both norms are Euclidean-like; otherwise a
    sampled lower bound over seeded Gaussian directions plus the coordinate
    directions (which attain the sup for the common polyhedral cases).
    """
    T = np.asarray(T, dtype=float)
    if T.shape != (cod.dim, dom.dim):
        raise DimensionMismatchError(
            f"T must be {cod.dim} x {dom.dim}, got {T.shape}")
    g_dom, g_cod = euclidean_gram(dom), euclidean_gram(cod)
    if g_dom is not None and g_cod is not None:
        l_dom = np.linalg.cholesky(g_dom)
        l_cod = np.linalg.cholesky(g_cod)
        M = l_cod.T @ T @ np.linalg.inv(l_dom.T)
        sv = np.linalg.svd(M, compute_uv=False)
        return float(sv[0]) if sv.size else 0.0, True

    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, dom.dim))
    X = np.vstack([X, np.eye(dom.dim), -np.eye(dom.dim)])
    dn = norm_batch(dom, X)
    keep = dn > 0
    ratios = norm_batch(cod, X[keep] @ T.T) / dn[keep]
    return float(np.max(ratios)) if ratios.size else 0.0, False


def operator_norm_estimate(op: RespectingOperator, samples: int = 2000,
                           seed: int = 0) -> float:
    value, _ = matrix_norm_between(op.matrix, op.domain.space, op.codomain.space,
                                   samples=samples, seed=seed)
    return value


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def operator_to_dict(op: RespectingOperator) -> dict:
    return {"domain": structure_to_dict(op.domain),
            "codomain": structure_to_dict(op.codomain),
            "T": op.matrix.tolist()}
