import math

import numpy as np
import pytest

from istruct.corpus import (pairing_conjugation_matrix, random_exact_structure,
                            signed_pairing_matrix)
from istruct.errors import (DimensionMismatchError, StructureValidationError)
from istruct.spaces import NormedSpace, Polyhedral, lp_space, norm
from istruct.structures import (certify, complex_scalar_action,
                                conjugate_structure, natural_i_operator,
                                natural_i_operator_matrix, reevaluate_witness,
                                search_i_operator, structure_from_dict,
                                structure_to_dict, validate_i_operator)

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


def test_rotation_is_i_operator_on_euclidean_plane():
    s = validate_i_operator(lp_space(2, 2.0), J2)
    assert s.certificate.exact
    assert s.certificate.algebraic_residual == 0.0
    assert s.certificate.isometry_residual == 0.0


def test_odd_dimension_rejected():
    with pytest.raises(StructureValidationError, match="odd dimension"):
        validate_i_operator(lp_space(3, 2.0), np.zeros((3, 3)))


def test_algebraic_failure_rejected():
    with pytest.raises(StructureValidationError, match="algebraic"):
        validate_i_operator(lp_space(2, 2.0), np.eye(2))


def test_isometry_failure_has_reproducible_witness():
    space = lp_space(2, 1.0)
    A = np.array([[0.0, -2.0], [0.5, 0.0]])  # A^2 = -I but not isometric
    with pytest.raises(StructureValidationError) as exc_info:
        validate_i_operator(space, A)
    cert = exc_info.value.certificate
    assert cert.witness is not None
    redo = reevaluate_witness(space, A, cert.witness)
    assert redo == pytest.approx(cert.isometry_residual, abs=1e-12)


def test_rotation_on_l1_plane_rejected():
    # the quarter turn preserves the l1 ball, but intermediate rotations do
    # not, so it is not an i-operator
    with pytest.raises(StructureValidationError):
        validate_i_operator(lp_space(2, 1.0), J2)


def test_certify_shape_check():
    with pytest.raises(DimensionMismatchError):
        certify(lp_space(2, 2.0), np.zeros((3, 3)))


def test_natural_i_operator_matrix_layout():
    N = natural_i_operator_matrix(2)
    x = np.array([1.0, 2.0, 3.0, 4.0])
    assert np.array_equal(N @ x, [-3.0, -4.0, 1.0, 2.0])


@pytest.mark.parametrize("base", [
    lp_space(2, 2.0),
    lp_space(2, 1.0),
    lp_space(2, math.inf),
    NormedSpace(2, Polyhedral(np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]))),
])
def test_natural_i_operator_validates(base):
    s = natural_i_operator(base, samples=128, angles=16)
    assert s.certificate.algebraic_residual <= 1e-12
    assert s.certificate.isometry_residual <= 1e-8


def test_conjugate_structure_negates_matrix():
    s = validate_i_operator(lp_space(2, 2.0), J2)
    c = conjugate_structure(s)
    assert np.array_equal(c.A, -J2)
    assert c.certificate.isometry_residual == s.certificate.isometry_residual


def test_complex_scalar_action():
    s = validate_i_operator(lp_space(2, 2.0), J2)
    out = complex_scalar_action(s, 0.0, 1.0, [1.0, 0.0])
    assert np.allclose(out, [0.0, 1.0])
    # i . (i . x) = -x
    twice = complex_scalar_action(s, 0.0, 1.0, out)
    assert np.allclose(twice, [-1.0, 0.0])
    with pytest.raises(DimensionMismatchError):
        complex_scalar_action(s, 1.0, 0.0, [1.0, 2.0, 3.0])


def test_scalar_action_is_isometric():
    s = natural_i_operator(lp_space(2, 1.0), samples=64, angles=16)
    rng = np.random.default_rng(3)
    x = rng.standard_normal(4)
    for th in (0.3, 1.1, 2.9):
        y = complex_scalar_action(s, math.cos(th), math.sin(th), x)
        assert norm(s.space, y) == pytest.approx(norm(s.space, x), rel=1e-8)


# ---------------------------------------------------------------------------
# Exact integer generators
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("dim", [2, 4, 6, 8])
def test_signed_pairing_is_exact(dim):
    rng = np.random.default_rng(dim)
    for _ in range(5):
        A = signed_pairing_matrix(dim, rng)
        assert np.array_equal(A @ A, -np.eye(dim))


@pytest.mark.parametrize("dim", [2, 4, 6])
def test_pairing_conjugation_is_exact(dim):
    rng = np.random.default_rng(dim)
    for _ in range(5):
        A = signed_pairing_matrix(dim, rng)
        T = pairing_conjugation_matrix(A, rng)
        assert np.array_equal(T @ T, np.eye(dim))
        assert np.array_equal(T @ A, -(A @ T))


def test_random_exact_structure_certificate():
    s = random_exact_structure(6, np.random.default_rng(7))
    assert s.certificate.algebraic_residual == 0.0
    assert s.certificate.isometry_residual == 0.0


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def test_search_finds_structure_on_euclidean_plane():
    result = search_i_operator(lp_space(2, 2.0), budget=300, seed=0)
    assert result.tag == "found"
    assert result.found is not None
    assert result.found.certificate.isometry_residual <= 1e-8


def test_search_odd_dimension():
    result = search_i_operator(lp_space(3, 2.0), budget=10)
    assert result.tag == "odd dimension"
    assert result.found is None


def test_search_exhausts_budget_on_l1_plane():
    # no complex structure makes the l1 plane norm complex-homogeneous
    result = search_i_operator(lp_space(2, 1.0), budget=120, seed=0)
    assert result.tag == "budget exhausted"
    assert result.found is None
    assert result.best_residual > 1e-8


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_structure_serialization_roundtrip():
    s = natural_i_operator(lp_space(2, 1.0), samples=64, angles=16)
    obj = structure_to_dict(s)
    revalidated = structure_from_dict(obj, samples=64, angles=16)
    assert np.array_equal(revalidated.A, s.A)
    raw = structure_from_dict(obj, revalidate=False)
    assert raw.certificate.samples_used == s.certificate.samples_used
