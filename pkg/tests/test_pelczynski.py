import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from istruct.errors import IstructError
from istruct.pelczynski import (FORWARD, REVERSE, RULES, Atom,
                                ChainDerivation, Step, SumExpr, apply_rule,
                                chain_from_dict, chain_to_dict,
                                check_derivation, expr, expr_from_list,
                                expr_to_list, factorization_hypothesis_check,
                                reference_chain, search_chain)
from istruct.spaces import lp_space
from istruct.structures import validate_i_operator

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------

def test_expr_is_commutative_multiset():
    assert expr("X+", "Y-") == expr("Y-", "X+")
    assert expr("X+", "X+") != expr("X+")
    assert hash(expr("X+", "Y-")) == hash(expr("Y-", "X+"))


def test_bad_atoms_and_empty_expr():
    with pytest.raises(IstructError):
        Atom("W", "+")
    with pytest.raises(IstructError):
        Atom("X", "0")
    with pytest.raises(IstructError):
        SumExpr([])


# ---------------------------------------------------------------------------
# Rule application
# ---------------------------------------------------------------------------

def test_apply_rule_forward_and_reverse():
    assert apply_rule(expr("X+"), "R3") == {expr("Y+", "Z+")}
    assert apply_rule(expr("Y+", "Z+"), "R3", REVERSE) == {expr("X+")}
    assert apply_rule(expr("Y-", "Z-"), "R4") == {expr("X+", "Z-")}


def test_apply_rule_missing_pattern_is_empty():
    assert apply_rule(expr("X-"), "R3") == set()
    assert apply_rule(expr("X+"), "R8") == set()


def test_apply_rule_respects_atom_cap():
    e = expr(*["X+"] * 8)
    assert apply_rule(e, "R5") == set()  # would need nine atoms
    assert apply_rule(e, "R5", max_atoms=9) == {expr(*["X+"] * 9)}


def test_apply_rule_rejects_bad_ids():
    with pytest.raises(IstructError):
        apply_rule(expr("X+"), "R99")
    with pytest.raises(IstructError):
        apply_rule(expr("X+"), "R3", "sideways")


@settings(deadline=None, max_examples=100)
@given(tokens=st.lists(st.sampled_from(["X+", "X-", "Y+", "Y-", "Z+", "Z-"]),
                       min_size=1, max_size=6),
       rule=st.sampled_from(sorted(RULES)),
       direction=st.sampled_from([FORWARD, REVERSE]))
def test_rule_applications_invert(tokens, rule, direction):
    e = expr(*tokens)
    back = REVERSE if direction == FORWARD else FORWARD
    for out in apply_rule(e, rule, direction):
        assert e in apply_rule(out, rule, back, max_atoms=len(e))


# ---------------------------------------------------------------------------
# Derivation checking
# ---------------------------------------------------------------------------

def test_reference_chain_verifies():
    chain = reference_chain()
    assert len(chain.steps) == 10
    rep = check_derivation(chain, start=expr("X+"), end=expr("X-"))
    assert rep.ok


def test_endpoint_mismatches_reported():
    chain = reference_chain()
    bad_start = check_derivation(chain, start=expr("X-"))
    assert bad_start.witness["reason"] == "start mismatch"
    bad_end = check_derivation(chain, end=expr("Y+"))
    assert bad_end.witness["reason"] == "end mismatch"


def test_every_rule_mutation_fails_at_its_index():
    chain = reference_chain()
    rule_ids = sorted(RULES)
    for idx, step in enumerate(chain.steps):
        mutated = rule_ids[(rule_ids.index(step.rule) + 1) % len(rule_ids)]
        steps = list(chain.steps)
        steps[idx] = Step(step.expr, mutated, step.direction)
        rep = check_derivation(ChainDerivation(chain.start, steps))
        assert rep.status == "violated"
        assert rep.witness["step"] == idx


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def test_search_finds_bridge_chain():
    chain = search_chain(expr("X+"), expr("X-"), 10)
    assert chain is not None
    assert len(chain.steps) <= 10
    assert check_derivation(chain, start=expr("X+"), end=expr("X-")).ok


def test_search_without_bridges_fails():
    assert search_chain(expr("X+"), expr("X-"), 10,
                        rules=["R3", "R5", "R6", "R7"]) is None


def test_search_trivial_and_deterministic():
    trivial = search_chain(expr("X+"), expr("X+"), 5)
    assert trivial.steps == []
    a = search_chain(expr("X+"), expr("X-"), 10)
    b = search_chain(expr("X+"), expr("X-"), 10)
    assert chain_to_dict(a) == chain_to_dict(b)


# ---------------------------------------------------------------------------
# Serialization and the bundled fixture
# ---------------------------------------------------------------------------

def test_expr_serialization_roundtrip():
    e = expr("X+", "Y-", "Y-")
    assert expr_from_list(expr_to_list(e)) == e


def test_chain_serialization_roundtrip():
    chain = reference_chain()
    again = chain_from_dict(chain_to_dict(chain))
    assert again.start == chain.start
    assert [(s.expr, s.rule, s.direction) for s in again.steps] == \
        [(s.expr, s.rule, s.direction) for s in chain.steps]


def test_bundled_chain_fixture_matches_reference():
    path = resources.files("istruct.data") / "prop8_chain.json"
    with path.open("r", encoding="utf-8") as fh:
        bundled = chain_from_dict(json.load(fh))
    assert chain_to_dict(bundled) == chain_to_dict(reference_chain())


# ---------------------------------------------------------------------------
# Factorization hypotheses
# ---------------------------------------------------------------------------

def test_factorization_check_passes_for_reflection():
    s = validate_i_operator(lp_space(2, 2.0), J2)
    R = np.array([[1.0, 0.0], [0.0, -1.0]])
    rep = factorization_hypothesis_check(R, R, s)
    assert rep.ok
    assert rep.residuals["RS_minus_I"] == 0.0


def test_factorization_check_fails_for_identity():
    s = validate_i_operator(lp_space(2, 2.0), J2)
    rep = factorization_hypothesis_check(np.eye(2), np.eye(2), s)
    assert rep.status == "violated"
    assert "R_respects(A,-A)" in rep.witness["failed"]
