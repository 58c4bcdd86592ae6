"""Symbolic checker for direct-sum isomorphism derivations.

Expressions are multisets of signed atoms (X, Y, Z with a + or - marking the
structure on that summand); commutativity and associativity of the direct sum
are built into the multiset representation.  The six bidirectional rules are
the hypothesis relations of the decomposition argument:

    R3: X+ <-> Y+ . Z+        R7: X- <-> Y- . Z-
    R8: Y+ <-> X-             R4: Y- <-> X+
    R5: X+ <-> X+ . X+        R6: X- <-> X- . X-
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import DimensionMismatchError, IstructError
from .report import VERIFIED, VIOLATED, VerificationReport
from .structures import ComplexStructure

LABELS = ("X", "Y", "Z")
SIGNS = ("+", "-")

DEFAULT_MAX_ATOMS = 8


@dataclass(frozen=True)
class Atom:
    label: str
    sign: str

    def __post_init__(self):
        if self.label not in LABELS or self.sign not in SIGNS:
            raise IstructError(f"bad atom ({self.label}, {self.sign})")

    def __str__(self):
        return f"{self.label}{self.sign}"


class SumExpr:
    """An unordered, nonempty direct sum of atoms."""

    __slots__ = ("_items",)

    def __init__(self, atoms):
        items = tuple(sorted(atoms, key=lambda a: (a.label, a.sign)))
        if not items:
            raise IstructError("a direct-sum expression must be nonempty")
        object.__setattr__(self, "_items", items)

    @property
    def atoms(self):
        return self._items

    def counter(self) -> Counter:
        return Counter(self._items)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        return isinstance(other, SumExpr) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __str__(self):
        return " . ".join(str(a) for a in self._items)

    def __repr__(self):
        return f"SumExpr({self})"


def expr(*tokens: str) -> SumExpr:
    """Build an expression from tokens like "X+", "Y-"."""
    return SumExpr(Atom(t[0], t[1:]) for t in tokens)


RULES: dict = {
    "R3": (expr("X+"), expr("Y+", "Z+")),
    "R7": (expr("X-"), expr("Y-", "Z-")),
    "R8": (expr("Y+"), expr("X-")),
    "R4": (expr("Y-"), expr("X+")),
    "R5": (expr("X+"), expr("X+", "X+")),
    "R6": (expr("X-"), expr("X-", "X-")),
}

FORWARD = "fwd"
REVERSE = "rev"


def apply_rule(e: SumExpr, rule_id: str, direction: str = FORWARD,
               max_atoms: int = DEFAULT_MAX_ATOMS) -> set:
    """All expressions reachable by one application of the rule.

    With multiset expressions every occurrence of the pattern yields the same
    result, so the set has at most one element; it is empty when the pattern
    does not occur or when the result would exceed the atom cap.
    """
    if rule_id not in RULES:
        raise IstructError(f"unknown rule id {rule_id!r}")
    if direction not in (FORWARD, REVERSE):
        raise IstructError(f"direction must be {FORWARD!r} or {REVERSE!r}")
    lhs, rhs = RULES[rule_id]
    if direction == REVERSE:
        lhs, rhs = rhs, lhs
    have = e.counter()
    need = lhs.counter()
    if any(have[a] < k for a, k in need.items()):
        return set()
    rest = have - need
    rest.update(rhs.counter())
    if sum(rest.values()) > max_atoms:
        return set()
    return {SumExpr(rest.elements())}


@dataclass(eq=False)
class Step:
    expr: SumExpr
    rule: str
    direction: str = FORWARD


@dataclass(eq=False)
class ChainDerivation:
    start: SumExpr
    steps: list  # of Step


def check_derivation(chain: ChainDerivation, *, start: Optional[SumExpr] = None,
                     end: Optional[SumExpr] = None,
                     max_atoms: int = DEFAULT_MAX_ATOMS) -> VerificationReport:
    """Verified iff every step is one legal rule application and the declared
    endpoints match; an illegal step is reported with its index."""
    if start is not None and chain.start != start:
        return VerificationReport(
            claim="chain-derivation", status=VIOLATED,
            residuals={}, witness={"reason": "start mismatch",
                                   "declared": str(start),
                                   "actual": str(chain.start)})
    current = chain.start
    for idx, step in enumerate(chain.steps):
        try:
            reachable = apply_rule(current, step.rule, step.direction, max_atoms)
        except IstructError as exc:
            return VerificationReport(
                claim="chain-derivation", status=VIOLATED, residuals={},
                witness={"step": idx, "reason": str(exc)})
        if step.expr not in reachable:
            return VerificationReport(
                claim="chain-derivation", status=VIOLATED, residuals={},
                witness={"step": idx, "from": str(current),
                         "rule": f"{step.rule}:{step.direction}",
                         "claimed": str(step.expr)})
        current = step.expr
    if end is not None and current != end:
        return VerificationReport(
            claim="chain-derivation", status=VIOLATED, residuals={},
            witness={"reason": "end mismatch", "declared": str(end),
                     "actual": str(current)})
    return VerificationReport(claim="chain-derivation", status=VERIFIED,
                              residuals={"steps": float(len(chain.steps))})


def search_chain(source: SumExpr, target: SumExpr, max_depth: int,
                 rules: Optional[Sequence[str]] = None,
                 max_atoms: int = DEFAULT_MAX_ATOMS) -> Optional[ChainDerivation]:
    """Breadth-first search over the rewrite relation; None if unreachable.

    Expansion order is deterministic (rule id, direction), so the returned
    chain is reproducible.
    """
    if max_depth < 0:
        raise IstructError("max_depth must be >= 0")
    rule_ids = sorted(RULES) if rules is None else list(rules)
    if source == target:
        return ChainDerivation(source, [])
    seen = {source: None}
    frontier = deque([source])
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        next_frontier = deque()
        while frontier:
            e = frontier.popleft()
            for rid in rule_ids:
                for direction in (FORWARD, REVERSE):
                    for out in sorted(apply_rule(e, rid, direction, max_atoms),
                                      key=str):
                        if out in seen:
                            continue
                        seen[out] = (e, rid, direction)
                        if out == target:
                            return _backtrack(source, out, seen)
                        next_frontier.append(out)
        frontier = next_frontier
    return None


def _backtrack(source: SumExpr, target: SumExpr, seen: dict) -> ChainDerivation:
    steps = []
    node = target
    while node != source:
        prev, rid, direction = seen[node]
        steps.append(Step(node, rid, direction))
        node = prev
    steps.reverse()
    return ChainDerivation(source, steps)


# ---------------------------------------------------------------------------
# Factorization hypotheses behind the decomposition argument
# ---------------------------------------------------------------------------

def factorization_hypothesis_check(R, S, s: ComplexStructure, *,
                                   tol: Tolerances = DEFAULT_TOL,
                                   proj_tol: float = 1e-9) -> VerificationReport:
    """Check R S = I, that R respects (A, -A) and S respects (-A, A), and that
    S R is a projection splitting the space into its range and kernel."""
    A = s.A
    n = s.space.dim
    R = np.asarray(R, dtype=float)
    S = np.asarray(S, dtype=float)
    if R.shape != (n, n) or S.shape != (n, n):
        raise DimensionMismatchError(f"R and S must be {n} x {n}")
    residuals = {
        "RS_minus_I": float(np.max(np.abs(R @ S - np.eye(n)))),
        "R_respects(A,-A)": float(np.max(np.abs(R @ A + A @ R))),
        "S_respects(-A,A)": float(np.max(np.abs(S @ (-A) - A @ S))),
    }
    P = S @ R
    residuals["projection"] = float(np.max(np.abs(P @ P - P)))
    sv = np.linalg.svd(P, compute_uv=False)
    rank = int(np.sum(sv > 1e-10 * max(sv[0], 1.0)))
    # range basis (the summand carried by the image) and kernel basis
    U, _, Vt = np.linalg.svd(P)
    range_basis = U[:, :rank]
    kernel_basis = Vt[rank:].T
    split = np.hstack([range_basis, kernel_basis])
    residuals["split_rank_defect"] = float(
        n - np.linalg.matrix_rank(split)) if split.size else float(n)

    bad = {k: v for k, v in residuals.items()
           if v > (proj_tol if k == "projection" else tol.tol_alg)}
    status = VERIFIED if not bad else VIOLATED
    return VerificationReport(
        claim="factorization-hypotheses", status=status,
        residuals=residuals,
        witness={"failed": bad} if bad else None,
        tolerances={"algebraic": tol.tol_alg, "projection": proj_tol},
        notes=[f"range dimension {rank}, kernel dimension {n - rank}"])


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def expr_to_list(e: SumExpr) -> list:
    return [[a.label, a.sign] for a in e.atoms]


def expr_from_list(obj) -> SumExpr:
    return SumExpr(Atom(label, sign) for label, sign in obj)


def chain_to_dict(chain: ChainDerivation) -> dict:
    return {"start": expr_to_list(chain.start),
            "steps": [{"expr": expr_to_list(st.expr), "rule": st.rule,
                       "dir": st.direction} for st in chain.steps]}


def chain_from_dict(obj: dict) -> ChainDerivation:
    steps = [Step(expr_from_list(st["expr"]), st["rule"], st.get("dir", FORWARD))
             for st in obj["steps"]]
    return ChainDerivation(expr_from_list(obj["start"]), steps)


def reference_chain() -> ChainDerivation:
    """The bundled ten-step derivation from X+ to X-."""
    seq = [
        (("Y+", "Z+"), "R3", FORWARD),
        (("X-", "Z+"), "R8", FORWARD),
        (("X-", "X-", "Z+"), "R6", FORWARD),
        (("X-", "Y+", "Z+"), "R8", REVERSE),
        (("X-", "X+"), "R3", REVERSE),
        (("Y-", "Z-", "X+"), "R7", FORWARD),
        (("X+", "Z-", "X+"), "R4", FORWARD),
        (("X+", "Z-"), "R5", REVERSE),
        (("Y-", "Z-"), "R4", REVERSE),
        (("X-",), "R7", REVERSE),
    ]
    return ChainDerivation(expr("X+"),
                           [Step(expr(*toks), rid, d) for toks, rid, d in seq])
