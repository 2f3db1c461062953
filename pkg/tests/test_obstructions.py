import json

import pytest

from tautile.algebra import Arrow, Quiver, quotient, tensor_product, trivial_extension
from tautile.families import (
    algebra_Gamma,
    algebra_T22rStar,
    algebra_Tpq,
    algebra_Tpqr,
    kronecker,
    linear_A,
    preprojective_A,
    star_D4,
)
from tautile.hecke import hecke_quiver
from tautile.obstructions import (
    DeltaSubquiver,
    Disconnected,
    FactorPropagation,
    HereditaryQuotient,
    TruncationPropagation,
    certificate_from_json,
    detect_delta,
    detect_hereditary_quotient,
    dynkin_classify,
    is_delta_subquiver,
    replay_certificate,
)


def chain(n):
    return [(i, i + 1) for i in range(n - 1)]


def test_dynkin_classify_examples():
    assert str(dynkin_classify(4, chain(4))) == "Dynkin(A4)"
    assert str(dynkin_classify(5, [(0, 1), (0, 2), (0, 3), (0, 4)])) == "Euclidean(D~4)"
    assert str(dynkin_classify(2, [(0, 1), (0, 1)])) == "Euclidean(A~1)"


@pytest.mark.parametrize("n, edges, name", [
    (4, [(0, 1), (1, 2), (2, 3), (3, 0)], "A~3"),
    (4, [(0, 1), (1, 2), (1, 3)], "D4"),
    (6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)], "E6"),
    (7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], "E7"),
    (8, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7)], "E~7"),
    (9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 8)], "E~8"),
    (7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)], "E~6"),
])
def test_dynkin_shapes(n, edges, name):
    assert dynkin_classify(n, edges).name == name


def test_wild_and_disconnected():
    assert dynkin_classify(2, [(0, 1)] * 3).family == "Wild"
    assert dynkin_classify(1, [(0, 0)]).family == "Euclidean"
    with pytest.raises(Disconnected):
        dynkin_classify(3, [(0, 1)])


def test_delta_on_hecke_quivers():
    assert detect_delta(hecke_quiver("A2")) is None
    cert = detect_delta(hecke_quiver("A3"))
    assert cert.which == "Delta2"
    assert sorted(cert.vertices) == sorted(["v{1}", "v{2}", "v{3}", "v{1,2}", "v{1,3}", "v{2,3}"])


def test_delta_needs_exact_full_subquiver():
    # a 4-cycle of double arrows plus a diagonal is not Delta1 on those vertices
    vs = ("a", "b", "c", "d")
    pairs = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]
    arrows = [Arrow(f"{s}{t}", s, t) for s, t in pairs] + [Arrow(f"{t}{s}", t, s) for s, t in pairs]
    q = Quiver(vs, tuple(arrows))
    assert is_delta_subquiver(q, vs, "Delta1")
    q2 = Quiver(vs, tuple(arrows) + (Arrow("ac", "a", "c"), Arrow("ca", "c", "a")))
    assert not is_delta_subquiver(q2, vs, "Delta1")
    assert detect_delta(q2) is None
    q3 = Quiver(vs, tuple(arrows) + (Arrow("loop", "a", "a"),))
    assert detect_delta(q3) is None


def test_delta_on_tensor_square():
    L = preprojective_A(2)
    LL = tensor_product(L, L)
    cert = detect_delta(LL)
    assert cert.which == "Delta1" and len(cert.vertices) == 4
    rep = replay_certificate(LL, cert)
    assert rep.ok and rep.bridge


@pytest.mark.parametrize("make, kind", [
    (lambda: algebra_Tpq(1, 1), "A~1"),
    (lambda: algebra_Tpq(2, 2), "A~1"),
    (lambda: algebra_T22rStar(2), "D~4"),
    (lambda: algebra_Tpqr(3, 3, 3), "E~6"),
    (lambda: algebra_Tpqr(2, 3, 6), "E~8"),
    (lambda: algebra_Tpqr(2, 4, 4), "E~7"),
    (kronecker, "A~1"),
    (star_D4, "D~4"),
], ids=["T11", "T22", "T222*", "T333", "T236", "T244", "kronecker", "star"])
def test_hereditary_quotients(make, kind):
    A = make()
    cert = detect_hereditary_quotient(A)
    assert cert is not None and cert.euclidean_type == kind
    assert replay_certificate(A, cert).ok
    B = quotient(A, cert.kill_vertices, cert.kill_arrows)
    assert not B.relations


def test_T333_kills_the_third_arrows():
    cert = detect_hereditary_quotient(algebra_Tpqr(3, 3, 3))
    assert cert.kill_arrows == ("alpha3", "beta3", "gamma3") and cert.kill_vertices == ()


def test_no_hereditary_quotient_for_finite_algebras():
    assert detect_hereditary_quotient(algebra_Gamma(1)) is None
    assert detect_hereditary_quotient(linear_A(4)) is None


def test_tampered_certificates_fail():
    A = algebra_Tpqr(3, 3, 3)
    bad = HereditaryQuotient((), ("alpha3",), "E~6")
    assert not replay_certificate(A, bad).ok
    q = hecke_quiver("A3")
    assert not replay_certificate(q, DeltaSubquiver(("v{1}", "v{2}", "v{3}", "v{}"), "Delta1")).ok


def test_factor_and_truncation_certificates():
    T = trivial_extension(star_D4())
    base = detect_hereditary_quotient(star_D4())
    cert = FactorPropagation(("Triv(kD4~)", "kD4~"), base)
    assert replay_certificate(T, cert).ok
    assert not replay_certificate(T, FactorPropagation(("Triv(kD4~)", "other"), base)).ok
    L = preprojective_A(2)
    LL = tensor_product(L, L)
    sub = detect_delta(LL)
    assert replay_certificate(LL, TruncationPropagation(LL.quiver.vertices, sub)).ok


def test_certificate_json_round_trip():
    certs = [
        DeltaSubquiver(("a", "b", "c", "d"), "Delta1"),
        HereditaryQuotient(("x",), ("y", "z"), "D~4"),
        FactorPropagation(("A", "B"), HereditaryQuotient((), (), "A~1")),
        TruncationPropagation(("1", "2"), DeltaSubquiver(("1", "2", "3", "4"), "Delta1")),
    ]
    for c in certs:
        assert certificate_from_json(json.loads(json.dumps(c.to_json()))) == c
