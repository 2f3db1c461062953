import pytest
from oracles import brute_force_pairs

from tautile.algebra import idempotent_truncation, quotient
from tautile.enumerate import (
    CharPUnsupportedEnumeration,
    check_exchange_graph,
    default_cap,
    enumerate_exchange_graph,
)
from tautile.families import algebra_Gamma, dual_numbers, linear_A, preprojective_A
from tautile.hecke import CoxeterSpec, basic_hecke
from tautile.linalg import GF
from tautile.modules import Representation, projective_of, simple_of


def test_brute_force_kA2():
    A = linear_A(2)
    inds = [simple_of(A, 0), simple_of(A, 1), projective_of(A, 0)]
    assert len(brute_force_pairs(A, inds)) == 5
    assert enumerate_exchange_graph(A).count == 5


def test_brute_force_preprojective_A2():
    A = preprojective_A(2)
    inds = [simple_of(A, 0), simple_of(A, 1), projective_of(A, 0), projective_of(A, 1)]
    assert len(brute_force_pairs(A, inds)) == 6
    assert enumerate_exchange_graph(A).count == 6


def test_brute_force_kA3():
    A = linear_A(3)
    F = A.field
    one = [[F.one]]
    # interval modules [i, j] of 1 -> 2 -> 3
    inds = []
    for i in range(3):
        for j in range(i, 3):
            dims = tuple(1 if i <= v <= j else 0 for v in range(3))
            maps = []
            for a in range(2):
                s, t = a, a + 1
                maps.append(one if dims[s] and dims[t] else [[F.zero] * dims[s] for _ in range(dims[t])])
            M = Representation(A, dims, tuple(maps))
            M.validate()
            inds.append(M)
    assert len(brute_force_pairs(A, inds)) == 14
    assert enumerate_exchange_graph(A).count == 14


@pytest.mark.parametrize("make, count", [
    (dual_numbers, 2), (lambda: linear_A(2), 5), (lambda: preprojective_A(2), 6),
    (lambda: preprojective_A(3), 24), (lambda: algebra_Gamma(1), 20),
], ids=["dual", "kA2", "pp2", "pp3", "Gamma1"])
def test_counts_and_structure(make, count):
    g = enumerate_exchange_graph(make(), validate=True)
    assert g.complete and g.count == count
    assert g.mismatches == 0 and g.validated == count
    assert all(check_exchange_graph(g).values())


def test_product_rule_on_hecke_A2():
    B = basic_hecke(CoxeterSpec("A", 2)).algebra
    assert enumerate_exchange_graph(B).count == 2 * 6 * 2


def test_count_monotone_under_quotients_and_truncations():
    A = preprojective_A(3)
    total = enumerate_exchange_graph(A).count
    for B in (quotient(A, kill_vertices=["3"]), idempotent_truncation(A, ["1", "2"]),
              idempotent_truncation(A, ["1", "3"])):
        assert enumerate_exchange_graph(B).count <= total


def test_cap_gives_incomplete():
    g = enumerate_exchange_graph(preprojective_A(3), cap=5)
    assert not g.complete and g.count == 5


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("TAUTILE_CAP", "7")
    assert default_cap() == 7
    monkeypatch.setenv("TAUTILE_CAP", "zero")
    with pytest.raises(ValueError):
        default_cap()
    monkeypatch.delenv("TAUTILE_CAP")
    assert default_cap() == 50000


def test_char_p_is_unsupported():
    with pytest.raises(CharPUnsupportedEnumeration):
        enumerate_exchange_graph(dual_numbers(GF(2)))


def test_output_is_deterministic():
    a = enumerate_exchange_graph(algebra_Gamma(1))
    b = enumerate_exchange_graph(algebra_Gamma(1))
    assert a.nodes == b.nodes and a.edges == b.edges
    assert a.nodes == sorted(a.nodes)


def test_full_approximation_mode_counts():
    assert enumerate_exchange_graph(preprojective_A(2), full_approximation=True).count == 6
