import itertools

import pytest

from tautile.algebra import gabriel_quiver, idempotent_truncation, tensor_product
from tautile.enumerate import enumerate_exchange_graph
from tautile.hecke import (
    CoxeterSpec,
    InvalidCoxeterSpec,
    UnsupportedType,
    all_subsets,
    basic_hecke,
    block_matrix,
    classify_hecke,
    classify_schur,
    group_data,
    hecke_algebra,
    hecke_quiver,
    parse_coxeter,
    schur_algebra,
    schur_truncation,
    subset_label,
)
from tautile.presentation import check_idempotents


def edges(q):
    return sorted((a.source, a.target) for a in q.arrows)


def components(q):
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((a.source, a.target) for a in q.arrows)
    return nx.number_connected_components(g)


def test_parse():
    assert [str(s) for s in parse_coxeter("A1xA2")] == ["A1", "A2"]
    assert str(parse_coxeter("I2(7)")[0]) == "I2(7)"
    for bad in ("", "Z3", "E9", "D3", "B1", "I2(1)", "H5"):
        with pytest.raises(InvalidCoxeterSpec):
            parse_coxeter(bad)


def test_explicit_matrices():
    assert CoxeterSpec(matrix=((1, 3), (3, 1))).rank == 2
    with pytest.raises(InvalidCoxeterSpec):
        CoxeterSpec(matrix=((1, 3), (2, 1)))
    with pytest.raises(InvalidCoxeterSpec):
        CoxeterSpec(matrix=((2, 3), (3, 1)))
    assert block_matrix(parse_coxeter("A1xA1")) == ((1, 2), (2, 1))


def test_quiver_A2():
    q = hecke_quiver("A2")
    assert q.vertices == ("v{}", "v{1}", "v{2}", "v{1,2}")
    assert edges(q) == [("v{1}", "v{2}"), ("v{2}", "v{1}")]


def test_quiver_A3_matches_worked_example():
    q = hecke_quiver("A3")
    assert q.n == 8 and len(q.arrows) == 10 and components(q) == 3
    pairs = [("{1}", "{2}"), ("{2}", "{3}"), ("{2}", "{1,3}"), ("{1,2}", "{1,3}"), ("{1,3}", "{2,3}")]
    expected = sorted([(f"v{a}", f"v{b}") for a, b in pairs] + [(f"v{b}", f"v{a}") for a, b in pairs])
    assert edges(q) == expected


@pytest.mark.parametrize("spec", ["A2", "A3", "A4", "B3", "D4", "F4", "H3", "I2(5)", "A1xA2"])
def test_quiver_invariants(spec):
    q = hecke_quiver(spec)
    n = len(block_matrix(parse_coxeter(spec)))
    assert q.n == 2 ** n
    assert edges(q) == sorted((t, s) for s, t in edges(q))
    touched = {v for e in edges(q) for v in e}
    assert "v{}" not in touched and subset_label(range(1, n + 1)) not in touched


def test_group_orders():
    assert len(group_data(CoxeterSpec("A", 3)).lengths) == 24
    assert len(group_data(CoxeterSpec("I", 2, 7)).lengths) == 14
    assert len(group_data(CoxeterSpec("B", 2)).lengths) == 8
    with pytest.raises(UnsupportedType):
        group_data(CoxeterSpec("D", 4))


@pytest.mark.parametrize("spec", [CoxeterSpec("A", 2), CoxeterSpec("A", 3), CoxeterSpec("I", 2, 5)], ids=str)
def test_hecke_associative(spec):
    A = hecke_algebra(spec)
    for x, y, z in itertools.product(range(A.dim), repeat=3):
        assert A.mul(A.mul({x: 1}, {y: 1}), {z: 1}) == A.mul({x: 1}, A.mul({y: 1}, {z: 1}))


def test_basic_presentation_idempotents():
    hp = basic_hecke(CoxeterSpec("A", 3))
    assert check_idempotents(hp.abstract, hp.idempotents)
    assert hp.algebra.dim == 24
    assert gabriel_quiver(hp.algebra).is_isomorphic(hecke_quiver("A3"))


def test_truncation_to_singletons_of_A2():
    B = basic_hecke(CoxeterSpec("A", 2)).algebra
    T = idempotent_truncation(B, ["v{1}", "v{2}"])
    assert T.dim == 4
    assert edges(gabriel_quiver(T)) == [("v{1}", "v{2}"), ("v{2}", "v{1}")]


def test_schur_vertex_sets():
    assert schur_truncation(3, 3) == all_subsets(2)
    assert [sorted(J) for J in schur_truncation(3, 2)] == [[], [1], [2]]
    assert len(schur_truncation(4, 3)) == 7 and frozenset({1, 2, 3}) not in schur_truncation(4, 3)


def test_schur_algebra_contains_delta2():
    S = schur_algebra(3, 4)
    rep = classify_schur(3, 4)
    assert rep.verdict.kind == "infinite"
    assert sorted(rep.verdict.certificate.vertices) == sorted(
        ["v{1}", "v{2}", "v{3}", "v{1,2}", "v{1,3}", "v{2,3}"])
    assert S.n == 7


def test_schur_limits():
    with pytest.raises(UnsupportedType):
        schur_algebra(2, 8)
    with pytest.raises(InvalidCoxeterSpec):
        classify_schur(0, 3)


@pytest.mark.parametrize("spec, count", [("A1", 4), ("A2", 24), ("B2", 24), ("I2(5)", 24), ("I2(7)", 24)])
def test_classify_finite(spec, count):
    rep = classify_hecke(spec)
    assert rep.verdict.kind == "finite" and rep.verdict.count == count


@pytest.mark.parametrize("spec", ["A3", "A4", "A5", "B3", "B4", "D4", "F4", "H3", "H4", "E6"])
def test_classify_infinite(spec):
    rep = classify_hecke(spec)
    assert rep.verdict.kind == "infinite" and rep.verdict.certificate.which == "Delta2"


def test_classify_products():
    assert classify_hecke("A1xA1").verdict.count == 2 ** 4
    assert classify_hecke("A1xA2").verdict.count == 24 ** 2
    rep = classify_hecke("A2xA2")
    assert rep.verdict.kind == "infinite" and rep.verdict.certificate.which == "Delta1"
    assert classify_hecke("A1xA3").verdict.kind == "infinite"


def test_schur_two_rows_flag():
    rep = classify_schur(2, 4)
    assert rep.verdict.count == 48
    assert rep.notes["block_count"] == 24 and rep.notes["block_matches_preprojective"]
    assert not rep.notes["total_matches_preprojective"]


def test_product_rule_matches_direct_enumeration():
    T = tensor_product(basic_hecke(CoxeterSpec("A", 1)).algebra, basic_hecke(CoxeterSpec("A", 2)).algebra)
    g = enumerate_exchange_graph(T)
    assert g.complete and g.count == classify_hecke("A1xA2").verdict.count == 576
