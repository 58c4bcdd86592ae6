import numpy as np
import pytest

from istruct.corpus import (random_complexification_isomorphism,
                            random_exact_structure,
                            random_respecting_operator)
from istruct.errors import WitnessError
from istruct.ideals import (IdealOracle, NormThreshold, RankThreshold,
                            RealOperator)
from istruct.spaces import ComplexificationOfBase, lp_space, space_equal
from istruct.structures import validate_i_operator
from istruct.theory import (build_complexification_witness,
                            conjugation_matrix, extract_conjugation,
                            split_structure, squares_isomorphism,
                            verify_complex_cartesian_identities,
                            verify_real_cartesian_identities,
                            verify_squares_isomorphism,
                            verify_theorem_complex, verify_theorem_real)

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


# ---------------------------------------------------------------------------
# Complexification witnesses
# ---------------------------------------------------------------------------

def test_conjugation_matrix():
    C = conjugation_matrix(2)
    assert np.array_equal(C @ C, np.eye(4))
    assert np.array_equal(C @ np.array([1.0, 2, 3, 4]), [1, 2, -3, -4])


def test_extract_conjugation_roundtrip():
    rng = np.random.default_rng(0)
    s, iso = random_complexification_isomorphism(2, rng)
    T = extract_conjugation(iso)
    assert np.max(np.abs(T @ T - np.eye(4))) <= 1e-9
    assert np.max(np.abs(T @ s.A + s.A @ T)) <= 1e-9


def test_witness_on_rotation_plane():
    # with A the quarter turn and T the reflection, the fixed line is the
    # first axis and the forward map doubles coordinates with a swap
    s = validate_i_operator(lp_space(2, 2.0), J2)
    T = np.array([[1.0, 0.0], [0.0, -1.0]])
    wit = build_complexification_witness(s, T)
    assert wit.report.ok
    assert wit.Y_basis.shape == (2, 1)
    assert np.allclose(np.abs(wit.S.matrix), [[0.0, 2.0], [2.0, 0.0]])
    assert np.allclose(wit.S_inverse.matrix @ wit.S.matrix, np.eye(2),
                       atol=1e-12)
    assert wit.norm_bound["status"] == "verified"


def test_witness_roundtrip_random():
    rng = np.random.default_rng(1)
    for _ in range(5):
        s, iso = random_complexification_isomorphism(2, rng)
        T = extract_conjugation(iso)
        wit = build_complexification_witness(s, T)
        assert wit.report.ok
        dev = np.max(np.abs(wit.S_inverse.matrix @ wit.S.matrix - np.eye(4)))
        assert dev <= 1e-8
        assert wit.norm_bound["S"] <= wit.norm_bound["I_plus_T"] + 1e-6


def test_witness_rejects_bad_hypotheses():
    s = validate_i_operator(lp_space(2, 2.0), J2)
    with pytest.raises(WitnessError, match="anticommuting involution"):
        build_complexification_witness(s, np.eye(2) * 2.0)
    with pytest.raises(WitnessError, match="anticommuting involution"):
        # -I is an involution but commutes with A instead of anticommuting
        build_complexification_witness(s, -np.eye(2))
    with pytest.raises(WitnessError, match="2 x 2"):
        build_complexification_witness(s, np.eye(3))


# ---------------------------------------------------------------------------
# Square spaces
# ---------------------------------------------------------------------------

def test_split_structure_shape():
    s = random_exact_structure(4, np.random.default_rng(2))
    sp = split_structure(s)
    assert sp.space.dim == 8
    assert np.array_equal(sp.A[:4, :4], s.A)
    assert np.array_equal(sp.A[4:, 4:], -s.A)


def test_split_structure_complexification_mode():
    s = random_exact_structure(2, np.random.default_rng(3))
    sp = split_structure(s, mode="complexification")
    assert isinstance(sp.space.norm_desc, ComplexificationOfBase)
    assert space_equal(sp.space.norm_desc.base, s.space)


def test_squares_isomorphism_exact():
    rng = np.random.default_rng(4)
    for dim in (2, 4, 6):
        s = random_exact_structure(dim, rng)
        rep = verify_squares_isomorphism(s, samples=64, angles=16)
        assert rep.ok
        assert rep.residuals["respect"] == 0.0
        assert rep.residuals["inverse_composition"] <= 1e-12


def test_squares_isomorphism_is_invertible():
    s = random_exact_structure(4, np.random.default_rng(5))
    op = squares_isomorphism(s, samples=64, angles=16)
    assert np.linalg.matrix_rank(op.matrix) == 8


# ---------------------------------------------------------------------------
# Cartesian identities
# ---------------------------------------------------------------------------

def test_real_cartesian_identities_exact():
    rng = np.random.default_rng(6)
    for _ in range(20):
        T = rng.standard_normal((int(rng.integers(1, 6)),
                                 int(rng.integers(1, 6))))
        rep = verify_real_cartesian_identities(T)
        assert rep.ok
        assert max(rep.residuals.values()) == 0.0


def test_complex_cartesian_identities():
    rng = np.random.default_rng(7)
    dom = random_exact_structure(4, rng)
    cod = random_exact_structure(2, rng)
    op = random_respecting_operator(dom, cod, rng)
    rep = verify_complex_cartesian_identities(op)
    assert rep.ok
    assert max(rep.residuals.values()) <= 1e-12


def test_complex_cartesian_corrupt_annotation_detected():
    rng = np.random.default_rng(8)
    dom = random_exact_structure(2, rng)
    cod = random_exact_structure(2, rng)
    op = random_respecting_operator(dom, cod, rng)
    rep = verify_complex_cartesian_identities(op, corrupt_annotation=True)
    assert rep.status == "violated"
    assert "J2_X(A,split)" in rep.witness["failed"]


# ---------------------------------------------------------------------------
# Oracle-transform roundtrips
# ---------------------------------------------------------------------------

def real_corpus(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        out.append(RealOperator(rng.standard_normal((m, n)),
                                lp_space(n, 2.0), lp_space(m, 2.0)))
    return out


def complex_corpus(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        dom = random_exact_structure(int(rng.choice([2, 4])), rng)
        cod = random_exact_structure(int(rng.choice([2, 4])), rng)
        out.append(random_respecting_operator(dom, cod, rng))
    return out


def test_theorem_real_norm_threshold():
    oracle = IdealOracle("real", NormThreshold("operator_norm", 2.0))
    rep = verify_theorem_real(oracle, real_corpus(20, 9))
    assert rep.ok


def test_theorem_real_detects_doubling_sensitive_oracle():
    # rank <= 1 is not stable under doubling: rank(T (+) T) = 2 rank(T)
    oracle = IdealOracle("real", RankThreshold(1))
    corpus = [RealOperator(np.array([[1.0]]), lp_space(1, 2.0),
                           lp_space(1, 2.0))]
    rep = verify_theorem_real(oracle, corpus)
    assert rep.status == "violated"
    assert rep.witness[0]["direct"] is True
    assert rep.witness[0]["unfolded"] is False


def test_theorem_complex_norm_threshold():
    oracle = IdealOracle("complex", NormThreshold("operator_norm", 1.5))
    rep = verify_theorem_complex(oracle, complex_corpus(10, 10))
    assert rep.ok
    assert any("self-conjugate: True" in n for n in rep.notes)


def test_theorem_complex_structure_sensitive_oracle_violated():
    from istruct.ideals import MatrixPredicate, PREDICATES
    oracle = IdealOracle("complex", MatrixPredicate(
        "a-entry-sign", PREDICATES[("a-entry-sign", "complex")]))
    corpus = complex_corpus(10, 11)
    rep = verify_theorem_complex(oracle, corpus)
    # over a corpus of random signed pairings both signs of the probed entry
    # occur, so the unfolded oracle disagrees with the direct one
    assert rep.status == "violated"
