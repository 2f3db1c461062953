import pytest

from tautile.algebra import cartan_matrix, gabriel_quiver, is_symmetric
from tautile.enumerate import enumerate_exchange_graph
from tautile.families import (
    FamilySpec,
    ParameterOutOfRange,
    algebra_Apq,
    algebra_Gamma,
    algebra_Lambda,
    algebra_Omega,
    algebra_T22rStar,
    algebra_Tpq,
    algebra_Tpqr,
    build_family,
    preprojective_A,
)
from tautile.linalg import GF, definiteness, integer_determinant

SYMMETRIC = [
    algebra_Apq(1, 1), algebra_Apq(1, 2), algebra_Apq(2, 3), algebra_Lambda(2), algebra_Lambda(3),
    algebra_Gamma(1), algebra_Gamma(2), algebra_Tpq(1, 1), algebra_Tpq(1, 2), algebra_Tpq(2, 2),
    algebra_Tpqr(2, 2, 2), algebra_Tpqr(2, 2, 3), algebra_Tpqr(3, 3, 3),
    algebra_T22rStar(2), algebra_T22rStar(3),
]


def test_A11_is_local_of_dimension_4():
    A = algebra_Apq(1, 1)
    assert A.n == 1 and A.dim == 4


def test_Gamma_dimensions_and_cartan():
    assert algebra_Gamma(1).dim == 11
    for n in range(1, 6):
        C = cartan_matrix(algebra_Gamma(n))
        assert integer_determinant(C) == 8
        assert definiteness(C).kind == "PositiveDefinite"


def test_Gamma_quiver_is_its_own_gabriel_quiver():
    G = algebra_Gamma(1)
    assert gabriel_quiver(G).is_isomorphic(G.quiver)


def test_Omega1_local_and_finite():
    O = algebra_Omega(1)
    assert O.n == 1
    assert enumerate_exchange_graph(O).count == 2


def test_Omega_symmetry_depends_on_characteristic():
    assert not is_symmetric(algebra_Omega(1))
    assert is_symmetric(algebra_Omega(1, field=GF(2)))


def test_preprojective():
    assert preprojective_A(1).dim == 1 and not preprojective_A(1).quiver.arrows
    assert preprojective_A(2).dim == 4
    assert preprojective_A(3).dim == 10
    assert enumerate_exchange_graph(preprojective_A(3)).count == 24


@pytest.mark.parametrize("A", SYMMETRIC, ids=lambda A: A.name)
def test_symmetric_families(A):
    assert is_symmetric(A)


@pytest.mark.parametrize("A, singular", [
    (algebra_Apq(1, 2), False), (algebra_Lambda(2), False), (algebra_Gamma(2), False), (algebra_Omega(2), False),
    (algebra_Tpq(1, 1), True), (algebra_Tpq(2, 2), True), (algebra_T22rStar(2), True),
    (algebra_Tpqr(3, 3, 3), True), (algebra_Tpqr(2, 3, 6), True),
], ids=lambda x: getattr(x, "name", str(x)))
def test_cartan_singularity_split(A, singular):
    assert (integer_determinant(cartan_matrix(A)) == 0) == singular


@pytest.mark.parametrize("spec", [
    FamilySpec("Apq", (2, 1)), FamilySpec("Apq", (0, 1)), FamilySpec("Lambda", (1,)), FamilySpec("Gamma", (0,)),
    FamilySpec("Tpqr", (1, 2, 3)), FamilySpec("Tpqr", (3, 2, 2)), FamilySpec("Tpq", (2, 1)),
    FamilySpec("T22rStar", (1,)), FamilySpec("Omega", (0,)), FamilySpec("PreprojA", (0,)),
    FamilySpec("Nope", (1,)), FamilySpec("Gamma", (1, 2)),
])
def test_parameter_ranges(spec):
    with pytest.raises(ParameterOutOfRange):
        build_family(spec)


def test_build_family_dispatch():
    A = build_family(FamilySpec("Apq", (1, 2)))
    assert A.name == "Apq(1,2)"
    assert A.provenance.kind == "family"
