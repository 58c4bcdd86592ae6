"""Finite-dimensional real normed spaces and the averaged complexification norm.

A space is a dimension plus a norm descriptor.  The complexification norm on
X (+) X is the L2 average of || x cos(phi) + y sin(phi) || over a full period,
evaluated by the periodic trapezoid rule with node doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DescriptorError, DimensionMismatchError, QuadratureError

# Quadrature policy: uniform nodes on [-pi, pi), doubling from 64 up to 4096.
# Doubling stops when every batch entry changes by less than QUAD_RTOL.  For
# integrands with kinks (l1-type base norms) the budget is reached first; the
# last value is accepted as long as the final relative change is below
# QUAD_FAIL_RTOL, otherwise a QuadratureError is raised.
QUAD_START_NODES = 64
QUAD_MAX_NODES = 4096
QUAD_RTOL = 1e-10
QUAD_FAIL_RTOL = 1e-5

_CHUNK_ELEMENTS = 4_000_000


# ---------------------------------------------------------------------------
# Norm descriptors
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Lp:
    p: float  # in [1, inf]; math.inf means the max norm


@dataclass(eq=False)
class WeightedLp:
    p: float
    weights: np.ndarray  # positive, length = dim


@dataclass(eq=False)
class EuclideanQuadratic:
    gram: np.ndarray  # symmetric positive definite


@dataclass(eq=False)
class Polyhedral:
    functionals: np.ndarray  # rows are covectors; norm = max |<f, x>|


@dataclass(eq=False)
class ComplexificationOfBase:
    base: "NormedSpace"  # total dim = 2 * base.dim


@dataclass(eq=False)
class SumNorm:
    left: "NormedSpace"
    right: "NormedSpace"


@dataclass(eq=False)
class SubspaceNorm:
    """Norm induced on a subspace: ||c|| = ||basis @ c|| in the ambient space."""

    ambient: "NormedSpace"
    basis: np.ndarray  # ambient.dim x dim, full column rank


NormDescriptor = Union[
    Lp, WeightedLp, EuclideanQuadratic, Polyhedral,
    ComplexificationOfBase, SumNorm, SubspaceNorm,
]


@dataclass(eq=False)
class NormedSpace:
    dim: int
    norm_desc: NormDescriptor

    def __post_init__(self):
        _check_descriptor(self.dim, self.norm_desc)


def _check_descriptor(dim: int, d: NormDescriptor) -> None:
    if dim <= 0:
        raise DescriptorError("dimension must be positive")
    if isinstance(d, Lp):
        if not (d.p >= 1):
            raise DescriptorError("Lp requires p >= 1")
    elif isinstance(d, WeightedLp):
        d.weights = np.asarray(d.weights, dtype=float)
        if d.weights.shape != (dim,):
            raise DescriptorError("weight vector length must equal dim")
        if not (d.p >= 1):
            raise DescriptorError("WeightedLp requires p >= 1")
        if not np.all(d.weights > 0):
            raise DescriptorError("weights must be positive")
    elif isinstance(d, EuclideanQuadratic):
        d.gram = np.asarray(d.gram, dtype=float)
        if d.gram.shape != (dim, dim):
            raise DescriptorError("Gram matrix shape must be dim x dim")
        if not np.allclose(d.gram, d.gram.T, atol=1e-12):
            raise DescriptorError("Gram matrix must be symmetric")
        if np.linalg.eigvalsh(d.gram)[0] <= 0:
            raise DescriptorError("Gram matrix must be positive definite")
    elif isinstance(d, Polyhedral):
        d.functionals = np.asarray(d.functionals, dtype=float)
        if d.functionals.ndim != 2 or d.functionals.shape[1] != dim:
            raise DescriptorError("functionals must be rows of length dim")
        if np.linalg.matrix_rank(d.functionals) < dim:
            raise DescriptorError("functionals must span the dual (definite norm)")
    elif isinstance(d, ComplexificationOfBase):
        if dim != 2 * d.base.dim:
            raise DescriptorError("complexification dim must be twice the base dim")
    elif isinstance(d, SumNorm):
        if dim != d.left.dim + d.right.dim:
            raise DescriptorError("sum-norm dim must be the sum of the part dims")
    elif isinstance(d, SubspaceNorm):
        d.basis = np.asarray(d.basis, dtype=float)
        if d.basis.shape != (d.ambient.dim, dim):
            raise DescriptorError("basis must be ambient.dim x dim")
        if np.linalg.matrix_rank(d.basis) < dim:
            raise DescriptorError("basis must have full column rank")
    else:
        raise DescriptorError(f"unknown descriptor {type(d).__name__}")


def descriptor_equal(a: NormDescriptor, b: NormDescriptor) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Lp):
        return a.p == b.p
    if isinstance(a, WeightedLp):
        return a.p == b.p and np.array_equal(a.weights, b.weights)
    if isinstance(a, EuclideanQuadratic):
        return np.array_equal(a.gram, b.gram)
    if isinstance(a, Polyhedral):
        return np.array_equal(a.functionals, b.functionals)
    if isinstance(a, ComplexificationOfBase):
        return space_equal(a.base, b.base)
    if isinstance(a, SumNorm):
        return space_equal(a.left, b.left) and space_equal(a.right, b.right)
    if isinstance(a, SubspaceNorm):
        return space_equal(a.ambient, b.ambient) and np.array_equal(a.basis, b.basis)
    return False


def space_equal(a: NormedSpace, b: NormedSpace) -> bool:
    return a.dim == b.dim and descriptor_equal(a.norm_desc, b.norm_desc)


# Convenience constructors -------------------------------------------------

def lp_space(dim: int, p: float) -> NormedSpace:
    return NormedSpace(dim, Lp(float(p)))


def euclidean_space(dim: int, gram: Optional[np.ndarray] = None) -> NormedSpace:
    if gram is None:
        return lp_space(dim, 2.0)
    return NormedSpace(dim, EuclideanQuadratic(np.asarray(gram, dtype=float)))


# ---------------------------------------------------------------------------
# Norm evaluation
# ---------------------------------------------------------------------------

def _check_vector(x, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise DimensionMismatchError(f"expected vector of length {dim}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DimensionMismatchError("vector entries must be finite")
    return x


def norm(space: NormedSpace, x) -> float:
    """Evaluate the space's norm at a single vector."""
    x = _check_vector(x, space.dim)
    return float(norm_batch(space, x[None, :])[0])


def norm_batch(space: NormedSpace, X: np.ndarray) -> np.ndarray:
    """Evaluate the norm for each row of X (shape (k, dim))."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != space.dim:
        raise DimensionMismatchError(f"expected batch of dim-{space.dim} rows, got {X.shape}")
    d = space.norm_desc
    if isinstance(d, Lp):
        return _lp_batch(X, d.p, None)
    if isinstance(d, WeightedLp):
        return _lp_batch(X, d.p, d.weights)
    if isinstance(d, EuclideanQuadratic):
        return np.sqrt(np.maximum(np.einsum("ki,ij,kj->k", X, d.gram, X), 0.0))
    if isinstance(d, Polyhedral):
        return np.max(np.abs(X @ d.functionals.T), axis=1)
    if isinstance(d, ComplexificationOfBase):
        n = d.base.dim
        return complexification_norm_batch(d.base, X[:, :n], X[:, n:])
    if isinstance(d, SumNorm):
        n = d.left.dim
        return norm_batch(d.left, X[:, :n]) + norm_batch(d.right, X[:, n:])
    if isinstance(d, SubspaceNorm):
        return norm_batch(d.ambient, X @ d.basis.T)
    raise DescriptorError(f"unknown descriptor {type(d).__name__}")


def _lp_batch(X: np.ndarray, p: float, weights) -> np.ndarray:
    A = np.abs(X)
    if weights is not None and math.isinf(p):
        A = A * weights
    if math.isinf(p):
        return np.max(A, axis=1)
    if p == 1.0:
        if weights is not None:
            return A @ weights
        return np.sum(A, axis=1)
    if p == 2.0:
        if weights is not None:
            return np.sqrt((A * A) @ weights)
        return np.sqrt(np.sum(A * A, axis=1))
    P = A ** p
    if weights is not None:
        return (P @ weights) ** (1.0 / p)
    return np.sum(P, axis=1) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Complexification norm by periodic trapezoid quadrature
# ---------------------------------------------------------------------------

def complexification_norm(base: NormedSpace, x, y, *, rtol: float = QUAD_RTOL,
                          max_nodes: int = QUAD_MAX_NODES) -> float:
    """Averaged norm ( mean over phi of ||x cos phi + y sin phi||^2 )^(1/2)."""
    x = _check_vector(x, base.dim)
    y = _check_vector(y, base.dim)
    return float(complexification_norm_batch(base, x[None, :], y[None, :],
                                             rtol=rtol, max_nodes=max_nodes)[0])


def complexification_norm_batch(base: NormedSpace, X: np.ndarray, Y: np.ndarray, *,
                                rtol: float = QUAD_RTOL,
                                max_nodes: int = QUAD_MAX_NODES) -> np.ndarray:
    """Batched complexification norm; all rows share the same node count.

    Sharing the node count keeps rotation invariance exact at the discrete
    level whenever the rotation angle is a multiple of the node spacing.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != Y.shape or X.ndim != 2 or X.shape[1] != base.dim:
        raise DimensionMismatchError("X, Y must both be (k, base.dim)")
    k = X.shape[0]
    if k == 0:
        return np.zeros(0)
    nonzero = np.any(X != 0.0, axis=1) | np.any(Y != 0.0, axis=1)
    out = np.zeros(k)
    if not np.any(nonzero):
        return out
    Xn, Yn = X[nonzero], Y[nonzero]

    n = QUAD_START_NODES
    sums = _quad_sum_sq(base, Xn, Yn, _quad_nodes(n))
    values = sums / n
    while True:
        # doubling only adds the midpoints of the current uniform grid
        sums = sums + _quad_sum_sq(base, Xn, Yn, _quad_nodes(n, midpoints=True))
        n *= 2
        new = sums / n
        change = np.abs(new - values) / np.maximum(np.abs(new), 1e-300)
        values = new
        if np.max(change) < rtol:
            break
        if n >= max_nodes:
            if np.max(change) > QUAD_FAIL_RTOL:
                raise QuadratureError(
                    f"quadrature did not settle within {max_nodes} nodes "
                    f"(last relative change {np.max(change):.3e})")
            break
    out[nonzero] = np.sqrt(np.maximum(values, 0.0))
    return out


def _quad_nodes(n: int, midpoints: bool = False) -> np.ndarray:
    offset = 0.5 if midpoints else 0.0
    return -math.pi + 2.0 * math.pi * (np.arange(n) + offset) / n


def _quad_sum_sq(base: NormedSpace, X: np.ndarray, Y: np.ndarray,
                 phi: np.ndarray) -> np.ndarray:
    """Sum over the given nodes of ||x cos phi + y sin phi||^2, per row."""
    c, s = np.cos(phi), np.sin(phi)
    n = len(phi)
    k, d = X.shape
    acc = np.empty(k)
    # chunk over rows to bound the (rows * nodes, dim) intermediate
    rows_per_chunk = max(1, _CHUNK_ELEMENTS // max(n * d, 1))
    for lo in range(0, k, rows_per_chunk):
        hi = min(k, lo + rows_per_chunk)
        Z = X[lo:hi, None, :] * c[None, :, None] + Y[lo:hi, None, :] * s[None, :, None]
        vals = norm_batch(base, Z.reshape(-1, d)).reshape(hi - lo, n)
        acc[lo:hi] = np.sum(vals * vals, axis=1)
    return acc


# ---------------------------------------------------------------------------
# Direct sums
# ---------------------------------------------------------------------------

def direct_sum(left: NormedSpace, right: NormedSpace, mode: str) -> NormedSpace:
    """Combine two spaces.

    mode="complexification": requires identical halves; the result carries the
    averaged L2 norm.  mode="sum": ||(x, y)|| = ||x|| + ||y||.
    """
    if mode == "complexification":
        if not space_equal(left, right):
            raise DescriptorError("complexification mode requires identical halves")
        return NormedSpace(2 * left.dim, ComplexificationOfBase(left))
    if mode == "sum":
        return NormedSpace(left.dim + right.dim, SumNorm(left, right))
    raise DescriptorError(f"unknown direct-sum mode {mode!r}")


# ---------------------------------------------------------------------------
# Euclidean recognition (exact fast paths)
# ---------------------------------------------------------------------------

def euclidean_gram(space: NormedSpace) -> Optional[np.ndarray]:
    """Gram matrix G with ||x||^2 = x' G x, or None if not Euclidean-like.

    Recognizes Lp(2), WeightedLp(2), explicit quadratic norms, and (recursively)
    complexifications of Euclidean-like bases, whose averaged norm has Gram
    diag(G, G) / 2.
    """
    d = space.norm_desc
    if isinstance(d, Lp) and d.p == 2.0:
        return np.eye(space.dim)
    if isinstance(d, WeightedLp) and d.p == 2.0:
        return np.diag(d.weights)
    if isinstance(d, EuclideanQuadratic):
        return d.gram
    if isinstance(d, ComplexificationOfBase):
        g = euclidean_gram(d.base)
        if g is None:
            return None
        n = d.base.dim
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = g / 2.0
        out[n:, n:] = g / 2.0
        return out
    if isinstance(d, SubspaceNorm):
        g = euclidean_gram(d.ambient)
        if g is None:
            return None
        return d.basis.T @ g @ d.basis
    return None


# ---------------------------------------------------------------------------
# JSON (de)serialization
# ---------------------------------------------------------------------------

def descriptor_to_dict(d: NormDescriptor) -> dict:
    if isinstance(d, Lp):
        return {"kind": "lp", "p": "inf" if math.isinf(d.p) else d.p}
    if isinstance(d, WeightedLp):
        return {"kind": "wlp", "p": "inf" if math.isinf(d.p) else d.p,
                "weights": d.weights.tolist()}
    if isinstance(d, EuclideanQuadratic):
        return {"kind": "quad", "G": d.gram.tolist()}
    if isinstance(d, Polyhedral):
        return {"kind": "poly", "functionals": d.functionals.tolist()}
    if isinstance(d, ComplexificationOfBase):
        return {"kind": "cplx", "base": space_to_dict(d.base)}
    if isinstance(d, SumNorm):
        return {"kind": "sum", "left": space_to_dict(d.left),
                "right": space_to_dict(d.right)}
    if isinstance(d, SubspaceNorm):
        return {"kind": "sub", "ambient": space_to_dict(d.ambient),
                "basis": d.basis.tolist()}
    raise DescriptorError(f"unknown descriptor {type(d).__name__}")


def descriptor_from_dict(obj: dict) -> NormDescriptor:
    kind = obj.get("kind")
    if kind == "lp":
        return Lp(math.inf if obj["p"] == "inf" else float(obj["p"]))
    if kind == "wlp":
        return WeightedLp(math.inf if obj["p"] == "inf" else float(obj["p"]),
                          np.asarray(obj["weights"], dtype=float))
    if kind == "quad":
        return EuclideanQuadratic(np.asarray(obj["G"], dtype=float))
    if kind == "poly":
        return Polyhedral(np.asarray(obj["functionals"], dtype=float))
    if kind == "cplx":
        return ComplexificationOfBase(space_from_dict(obj["base"]))
    if kind == "sum":
        return SumNorm(space_from_dict(obj["left"]), space_from_dict(obj["right"]))
    if kind == "sub":
        return SubspaceNorm(space_from_dict(obj["ambient"]),
                            np.asarray(obj["basis"], dtype=float))
    raise DescriptorError(f"unknown descriptor kind {kind!r}")


def space_to_dict(space: NormedSpace) -> dict:
    return {"dim": space.dim, "norm": descriptor_to_dict(space.norm_desc)}


def space_from_dict(obj: dict) -> NormedSpace:
    return NormedSpace(int(obj["dim"]), descriptor_from_dict(obj["norm"]))
