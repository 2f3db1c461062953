import json

import pytest

from tautile.algebra import tensor_product, trivial_extension
from tautile.families import algebra_Gamma, algebra_Tpqr, dual_numbers, linear_A, preprojective_A, star_D4
from tautile.io import (
    FormatError,
    algebra_from_json,
    algebra_to_json,
    export,
    fingerprint,
    report_to_json,
)
from tautile.linalg import GF
from tautile.obstructions import HereditaryQuotient, replay_certificate
from tautile.verdict import Verdict, VerdictConfig, find_obstruction, infinite, verdict


def test_finite_verdicts_carry_counts():
    rep = verdict(algebra_Gamma(1), VerdictConfig(validate=True))
    assert rep.verdict == Verdict("finite", count=20)
    assert rep.graph.count == 20
    assert all(rep.notes["checks"].values())


def test_infinite_verdicts_carry_replayable_certificates():
    A = algebra_Tpqr(2, 3, 6)
    rep = verdict(A)
    assert rep.verdict.kind == "infinite"
    assert rep.verdict.certificate.euclidean_type == "E~8"
    assert replay_certificate(A, rep.verdict.certificate).ok
    assert rep.graph is None


def test_trivial_extension_propagates_from_factor():
    T = trivial_extension(star_D4())
    rep = verdict(T)
    cert = rep.verdict.certificate
    assert cert.kind == "FactorPropagation"
    assert cert.chain == ("Triv(kD4~)", "kD4~")
    assert cert.base.kind == "HereditaryQuotient"


def test_tensor_with_infinite_factor():
    T = tensor_product(star_D4(), linear_A(1))
    cert = find_obstruction(T)
    assert cert is not None
    assert replay_certificate(T, cert).ok


def test_configured_truncation():
    L = preprojective_A(2)
    LL = tensor_product(L, L)
    cfg = VerdictConfig(truncations=(LL.quiver.vertices,))
    assert find_obstruction(LL, cfg).kind == "DeltaSubquiver"


def test_cap_makes_inconclusive():
    rep = verdict(preprojective_A(3), VerdictConfig(cap=3))
    assert rep.verdict.kind == "inconclusive" and rep.verdict.cap_hit
    assert report_to_json(rep)["cap_hit"] is True


def test_supplied_certificate_is_replayed():
    A = algebra_Tpqr(3, 3, 3)
    good = HereditaryQuotient((), ("alpha3", "beta3", "gamma3"), "E~6")
    rep = verdict(A, VerdictConfig(certificate=good, detectors=False, enumerate=False))
    assert rep.verdict.kind == "infinite" and rep.notes["supplied_certificate"] == "replayed"
    bad = HereditaryQuotient((), ("alpha3",), "E~6")
    rep = verdict(A, VerdictConfig(certificate=bad, detectors=False, enumerate=False))
    assert rep.verdict.kind == "inconclusive" and rep.notes["supplied_certificate"] == "rejected"


def test_infinite_needs_certificate():
    with pytest.raises(ValueError):
        infinite(None)


def test_algebra_json_round_trip():
    for A in (algebra_Gamma(2), dual_numbers(GF(5)), preprojective_A(3)):
        data = algebra_to_json(A)
        B = algebra_from_json(json.loads(json.dumps(data)))
        assert algebra_to_json(B) == data
        assert B.dim == A.dim
        assert fingerprint(B) == fingerprint(A)


def test_fractional_coefficients():
    data = {"field": "Q", "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"},
                                                         {"name": "y", "from": "1", "to": "1"}],
            "relations": [[{"coeff": "1", "path": ["x", "y"]}, {"coeff": "-3/2", "path": ["y", "x"]}],
                          [{"coeff": "1", "path": ["x", "x"]}], [{"coeff": "1", "path": ["y", "y"]}]]}
    A = algebra_from_json(data)
    assert algebra_to_json(A)["relations"][0][1]["coeff"] == "-3/2"


@pytest.mark.parametrize("data", [
    [], {"arrows": []}, {"vertices": ["1"], "field": {"prime": 4}},
    {"vertices": ["1"], "arrows": [{"name": "x", "from": "1"}]},
    {"vertices": ["1"], "field": "R"},
])
def test_malformed_algebra_json(data):
    with pytest.raises((FormatError, ValueError)):
        algebra_from_json(data)


def test_dot_export():
    dot = export(verdict(dual_numbers()), "dot").decode()
    assert dot.count("label=") == 2 and dot.count("->") == 1
    dot = export(verdict(linear_A(2)), "dot").decode()
    assert dot.count("label=") == 5 and dot.count("->") == 5


def test_reports_are_byte_stable():
    a = export(verdict(algebra_Gamma(1)), "json")
    b = export(verdict(algebra_Gamma(1)), "json")
    assert a == b
    data = json.loads(a)
    assert data["elapsed_ms"] is None
    assert data["count"] == len(data["nodes"]) == 20
    assert all(e[2] == "down" for e in data["edges"])
    with pytest.raises(FormatError):
        export(verdict(dual_numbers()), "svg")


def test_timing_is_opt_in():
    assert verdict(dual_numbers(), VerdictConfig(timing=True)).elapsed_ms is not None
