"""Algebra-definition JSON, report JSON and DOT export."""
from __future__ import annotations

import hashlib
import json

from .algebra import Arrow, BoundQuiverAlgebra, DEFAULT_CAP, Quiver, RelationElement
from .linalg import GF, QQ, ScalarField


class FormatError(ValueError):
    pass


def _coeff_text(c) -> str:
    num, den = int(c.numerator), int(c.denominator) if hasattr(c, "denominator") else 1
    return str(num) if den == 1 else f"{num}/{den}"


def field_to_json(F: ScalarField):
    return "Q" if F.is_rational else {"prime": F.p}


def field_from_json(data) -> ScalarField:
    if data in ("Q", "QQ", None):
        return QQ
    if isinstance(data, dict) and "prime" in data:
        p = int(data["prime"])
        if p < 2:
            raise FormatError("field prime must be at least 2")
        return GF(p)
    raise FormatError(f"unrecognised field {data!r}")


def algebra_to_json(A: BoundQuiverAlgebra) -> dict:
    return {
        "field": field_to_json(A.field),
        "vertices": [str(v) for v in A.quiver.vertices],
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in A.quiver.arrows],
        "relations": [[{"coeff": _coeff_text(c), "path": list(p)} for c, p in r.terms] for r in A.relations],
        "cap": A.cap,
    }


def algebra_from_json(data: dict, name: str | None = None) -> BoundQuiverAlgebra:
    if not isinstance(data, dict):
        raise FormatError("algebra definition must be a JSON object")
    try:
        F = field_from_json(data.get("field", "Q"))
        vertices = tuple(str(v) for v in data["vertices"])
        arrows = tuple(Arrow(str(a["name"]), str(a["from"]), str(a["to"])) for a in data.get("arrows", []))
        rels = []
        for rel in data.get("relations", []):
            terms = tuple((F.elem(str(t["coeff"])), tuple(str(x) for x in t["path"])) for t in rel)
            rels.append(RelationElement(terms))
        cap = int(data.get("cap", DEFAULT_CAP))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"malformed algebra definition: {exc}") from None
    return BoundQuiverAlgebra(Quiver(vertices, arrows), rels, F, cap, name=name or data.get("name"))


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def fingerprint(A: BoundQuiverAlgebra) -> str:
    return "sha256:" + hashlib.sha256(canonical_dumps(algebra_to_json(A)).encode()).hexdigest()


def load_algebra(path: str, stdin=None) -> BoundQuiverAlgebra:
    import sys
    try:
        if path == "-":
            text = (stdin or sys.stdin).read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return algebra_from_json(data)


# ------------------------------------------------------------------ reports


def report_to_json(report) -> dict:
    v = report.verdict
    out = {"algebra": report.fingerprint, "verdict": v.kind, "cap": report.cap,
           "elapsed_ms": report.elapsed_ms}
    if v.count is not None:
        out["count"] = v.count
    if v.certificate is not None:
        out["certificate"] = v.certificate.to_json()
    if v.kind == "inconclusive":
        out["cap_hit"] = True
    if report.graph is not None:
        out["nodes"] = [[list(g) for g in key] for key in report.graph.nodes]
        out["edges"] = [[a, b, "down"] for a, b in report.graph.edges]
    if report.notes:
        out["notes"] = dict(report.notes)
    return out


def report_dumps(report) -> str:
    return json.dumps(report_to_json(report), sort_keys=True, indent=2) + "\n"


def _g_label(key) -> str:
    return " ".join("(" + ",".join(str(x) for x in g) + ")" for g in key)


def report_to_dot(report) -> str:
    lines = ["digraph exchange {", "  rankdir=TB;", "  node [shape=box];"]
    if report.graph is not None:
        for k, key in enumerate(report.graph.nodes):
            lines.append(f'  n{k} [label="{_g_label(key)}"];')
        for a, b in report.graph.edges:
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return report_dumps(report).encode()
    if fmt == "dot":
        return report_to_dot(report).encode()
    raise FormatError(f"unknown export format {fmt!r}")
