import pytest

from tautile.algebra import gabriel_quiver
from tautile.hecke import CoxeterSpec, basic_hecke, hecke_algebra, hecke_quiver, label_idempotents
from tautile.linalg import GF, QQ
from tautile.presentation import (
    AbstractAlgebra,
    CharPUnsupported,
    NonSplitSemisimpleQuotient,
    NotBasic,
    check_idempotents,
    primitive_idempotents,
    radical_char0,
    to_bound_quiver,
)


def semisimple_pair():
    # k x k on the coordinate idempotents
    return AbstractAlgebra(["e", "f"], {(0, 0): {0: 1}, (1, 1): {1: 1}}, QQ, identity={0: 1, 1: 1})


def dual_numbers_abstract(F=QQ):
    return AbstractAlgebra(["1", "x"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, F, identity={0: 1})


def matrix_algebra():
    # M_2(k) on matrix units e_ij, label index 2*i + j
    table = {}
    for i in range(2):
        for j in range(2):
            for k in range(2):
                table[(2 * i + j, 2 * j + k)] = {2 * i + k: 1}
    return AbstractAlgebra(["e11", "e12", "e21", "e22"], table, QQ, identity={0: 1, 3: 1})


def test_radical_semisimple_is_zero():
    assert radical_char0(semisimple_pair()) == []


def test_radical_dual_numbers():
    rad = radical_char0(dual_numbers_abstract())
    assert len(rad) == 1 and rad[0][0] == 0


def test_radical_needs_char_zero():
    with pytest.raises(CharPUnsupported):
        radical_char0(dual_numbers_abstract(GF(3)))


def test_radical_of_hecke_A2():
    assert len(radical_char0(hecke_algebra(CoxeterSpec("A", 2)))) == 2


def test_coordinate_idempotents():
    A = semisimple_pair()
    idems = primitive_idempotents(A)
    assert sorted(tuple(sorted(e.items())) for e in idems) == [((0, 1),), ((1, 1),)]
    assert check_idempotents(A, idems)


def test_hecke_A1_idempotents():
    A = hecke_algebra(CoxeterSpec("A", 1))
    idems = primitive_idempotents(A)
    # basis (T_e, T_s); expect 1 + T_s and -T_s
    dense = sorted(tuple(A.dense(e)) for e in idems)
    assert dense == sorted([(1, 1), (0, -1)])


def test_hecke_A2_labels():
    hp = basic_hecke(CoxeterSpec("A", 2))
    assert [sorted(J) for J in hp.subsets] == [[], [1], [2], [1, 2]]
    assert label_idempotents(hp.abstract, hp.idempotents) == hp.subsets


def test_non_split_quotient_is_reported():
    # Q(i): i^2 = -1
    A = AbstractAlgebra(["1", "i"], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: -1}},
                        QQ, identity={0: 1})
    with pytest.raises(NonSplitSemisimpleQuotient):
        primitive_idempotents(A)


def test_matrix_block_is_not_basic():
    with pytest.raises(NotBasic):
        to_bound_quiver(matrix_algebra())
    assert len(primitive_idempotents(matrix_algebra(), basic=False)) == 2


def test_dual_numbers_presentation():
    B, _ = to_bound_quiver(dual_numbers_abstract())
    assert B.n == 1 and len(B.quiver.arrows) == 1
    assert B.dim == 2
    (rel,) = B.relations
    assert len(rel.terms) == 1 and len(rel.terms[0][1]) == 2


def test_hecke_A2_blocks():
    B = basic_hecke(CoxeterSpec("A", 2)).algebra
    assert B.dim == 6 and B.n == 4
    q = gabriel_quiver(B)
    assert sorted((a.source, a.target) for a in q.arrows) == [("v{1}", "v{2}"), ("v{2}", "v{1}")]


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_pipeline_matches_combinatorial_quiver(rank):
    spec = CoxeterSpec("A", rank)
    q = gabriel_quiver(basic_hecke(spec).algebra)
    assert q.is_isomorphic(hecke_quiver(spec))
    # labels agree too, not only the shape
    assert sorted((a.source, a.target) for a in q.arrows) == \
        sorted((a.source, a.target) for a in hecke_quiver(spec).arrows)
