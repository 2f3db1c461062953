"""Command-line interface: ``tautile <group> <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError, cartan_matrix, gabriel_quiver
from .enumerate import CharPUnsupportedEnumeration, default_cap
from .families import FamilySpec, ParameterOutOfRange, build_family
from .hecke import InvalidCoxeterSpec, UnsupportedType, basic_hecke, classify_hecke, classify_schur, \
    hecke_quiver, parse_coxeter, schur_algebra
from .io import FormatError, algebra_to_json, export, fingerprint, load_algebra, report_dumps
from .linalg import GF, QQ, integer_determinant
from .obstructions import certificate_from_json
from .verdict import INCONCLUSIVE, VerdictConfig, verdict

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_UNSUPPORTED = 0, 2, 3, 4


class UsageError(ValueError):
    pass


# ------------------------------------------------------------------ output


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj):
    _emit(json.dumps(obj, sort_keys=True, indent=2))


def _cert_line(cert) -> str:
    data = cert.to_json()
    if data["kind"] == "DeltaSubquiver":
        return f"{data['which']} on {', '.join(data['vertices'])}"
    if data["kind"] == "HereditaryQuotient":
        kills = data["kill_vertices"] + data["kill_arrows"]
        return f"hereditary quotient of type {data['type']} (kill {', '.join(kills) or 'nothing'})"
    if data["kind"] == "FactorPropagation":
        return f"factor {' -> '.join(data['chain'])}; " + _cert_line(cert.base)
    return f"truncation to {', '.join(data['vertices'])}; " + _cert_line(cert.base)


def _print_report(report, as_json: bool) -> int:
    if as_json:
        _emit(report_dumps(report))
    else:
        v = report.verdict
        _emit(v.kind)
        if v.kind == "finite":
            _emit(f"count: {v.count}")
        elif v.kind == "infinite":
            _emit(f"certificate: {_cert_line(v.certificate)}")
        elif v.cap_hit:
            _emit(f"cap hit: {report.cap}")
        for key in sorted(report.notes):
            _emit(f"{key}: {json.dumps(report.notes[key], sort_keys=True)}")
        if report.elapsed_ms is not None:
            _emit(f"elapsed_ms: {report.elapsed_ms}")
    return EXIT_INCONCLUSIVE if report.verdict.kind == INCONCLUSIVE else EXIT_OK


def _print_quiver(q, as_json: bool):
    if as_json:
        _emit_json({"vertices": list(q.vertices),
                    "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in q.arrows]})
        return
    _emit(f"vertices ({q.n}): {' '.join(q.vertices)}")
    _emit(f"arrows ({len(q.arrows)}):")
    for a in q.arrows:
        _emit(f"  {a.source} -> {a.target}")


# ---------------------------------------------------------------- commands


def _config(args) -> VerdictConfig:
    cap = args.cap if getattr(args, "cap", None) is not None else default_cap()
    if cap < 1:
        raise UsageError("--cap must be at least 1")
    cert = None
    if getattr(args, "certificate", None):
        with open(args.certificate, encoding="utf-8") as fh:
            cert = certificate_from_json(json.load(fh))
    return VerdictConfig(cap=cap, max_keep=getattr(args, "max_keep", 9),
                         max_kill_arrows=getattr(args, "max_kill_arrows", 6),
                         validate=getattr(args, "validate", False), certificate=cert,
                         timing=getattr(args, "timing", False))


def cmd_alg_build(args) -> int:
    A = load_algebra(args.file)
    if args.json:
        _emit_json(algebra_to_json(A))
        return EXIT_OK
    _emit(f"field: {A.field}")
    _emit(f"dimension: {A.dim}")
    _emit(f"vertices: {A.n}")
    _emit(f"arrows: {len(A.quiver.arrows)}")
    _emit(f"fingerprint: {fingerprint(A)}")
    return EXIT_OK


def cmd_alg_cartan(args) -> int:
    A = load_algebra(args.file)
    C = cartan_matrix(A)
    rows = C.to_int_rows()
    det = integer_determinant(C) if args.det else None
    if args.json:
        out = {"vertices": list(A.quiver.vertices), "cartan": rows}
        if det is not None:
            out["det"] = det
        _emit_json(out)
        return EXIT_OK
    width = max((len(str(x)) for r in rows for x in r), default=1)
    for r in rows:
        _emit(" ".join(str(x).rjust(width) for x in r))
    if det is not None:
        _emit(f"det: {det}")
    return EXIT_OK


def cmd_alg_enum(args) -> int:
    A = load_algebra(args.file)
    cfg = _config(args)
    cfg.detectors = False
    return _print_report(verdict(A, cfg), args.json)


def cmd_alg_verdict(args) -> int:
    A = load_algebra(args.file)
    return _print_report(verdict(A, _config(args)), args.json)


def cmd_family_build(args) -> int:
    params = [getattr(args, k) for k in ("p", "q", "r", "m", "n") if getattr(args, k) is not None]
    field = GF(args.prime) if args.prime else QQ
    A = build_family(FamilySpec(args.family, tuple(params)), field)
    data = algebra_to_json(A)
    _emit_json(data)
    return EXIT_OK


def _coxeter_arg(text: str):
    specs = parse_coxeter(text)
    return specs[0] if len(specs) == 1 else specs


def cmd_hecke_quiver(args) -> int:
    _print_quiver(hecke_quiver(_coxeter_arg(args.type)), args.json)
    return EXIT_OK


def cmd_hecke_algebra(args) -> int:
    spec = _coxeter_arg(args.type)
    if isinstance(spec, list) or not spec.has_element_model():
        raise UnsupportedType(f"no element model for {args.type}; only A_n (n <= 6) and rank 2 are built")
    hp = basic_hecke(spec)
    if args.json:
        _emit_json(algebra_to_json(hp.algebra))
    else:
        _emit(f"dimension: {hp.abstract.dim}")
        _print_quiver(gabriel_quiver(hp.algebra), False)
    return EXIT_OK


def cmd_hecke_verdict(args) -> int:
    return _print_report(classify_hecke(_coxeter_arg(args.type), _config(args)), args.json)


def cmd_schur_build(args) -> int:
    S = schur_algebra(args.n, args.r)
    if args.json:
        _emit_json(algebra_to_json(S))
    else:
        _emit(f"dimension: {S.dim}")
        _print_quiver(gabriel_quiver(S), False)
    return EXIT_OK


def cmd_schur_verdict(args) -> int:
    return _print_report(classify_schur(args.n, args.r, _config(args)), args.json)


def cmd_export(args) -> int:
    A = load_algebra(args.file)
    cfg = _config(args)
    cfg.detectors = not args.enumerate_only
    report = verdict(A, cfg)
    sys.stdout.write(export(report, args.format).decode())
    return EXIT_INCONCLUSIVE if report.verdict.kind == INCONCLUSIVE else EXIT_OK


# ------------------------------------------------------------------ parser


def _add_search(p, detectors: bool = True):
    p.add_argument("--cap", type=int, default=None, help="enumeration cap (overrides TAUTILE_CAP)")
    p.add_argument("--validate", action="store_true", help="cross-check every node at module level")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")
    if detectors:
        p.add_argument("--max-keep", dest="max_keep", type=int, default=9)
        p.add_argument("--max-kill-arrows", dest="max_kill_arrows", type=int, default=6)
        p.add_argument("--certificate", help="certificate JSON to replay before searching")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tautile", description="tau-tilting finiteness of bound quiver algebras")
    groups = parser.add_subparsers(dest="group", required=True)

    alg = groups.add_parser("alg", help="algebras given as JSON").add_subparsers(dest="command", required=True)
    p = alg.add_parser("build", help="validate an algebra definition")
    p.add_argument("file", help="algebra JSON, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_alg_build)
    p = alg.add_parser("cartan", help="Cartan matrix")
    p.add_argument("file")
    p.add_argument("--det", action="store_true", help="also print the determinant")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_alg_cartan)
    p = alg.add_parser("enum", help="enumerate support tau-tilting pairs")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    _add_search(p, detectors=False)
    p.set_defaults(func=cmd_alg_enum)
    p = alg.add_parser("verdict", help="detectors, then enumeration")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    _add_search(p)
    p.set_defaults(func=cmd_alg_verdict)

    fam = groups.add_parser("family", help="named families").add_subparsers(dest="command", required=True)
    p = fam.add_parser("build", help="emit the algebra JSON of a family member")
    p.add_argument("family")
    for k in ("p", "q", "r", "m", "n"):
        p.add_argument(f"--{k}", type=int)
    p.add_argument("--prime", type=int, default=0, help="work over GF(prime) instead of Q")
    p.set_defaults(func=cmd_family_build)

    hk = groups.add_parser("hecke", help="0-Hecke algebras").add_subparsers(dest="command", required=True)
    for name, func, helptext in (("quiver", cmd_hecke_quiver, "the quiver Q_W"),
                                 ("algebra", cmd_hecke_algebra, "basic presentation of H_0(W)"),
                                 ("verdict", cmd_hecke_verdict, "classify H_0(W)")):
        p = hk.add_parser(name, help=helptext)
        p.add_argument("type", help='Coxeter type such as "A3", "I2(7)" or "A1xA2"')
        p.add_argument("--json", action="store_true")
        if name == "verdict":
            _add_search(p)
        p.set_defaults(func=func)

    sc = groups.add_parser("schur", help="0-Schur algebras").add_subparsers(dest="command", required=True)
    for name, func in (("build", cmd_schur_build), ("verdict", cmd_schur_verdict)):
        p = sc.add_parser(name)
        p.add_argument("-n", type=int, required=True)
        p.add_argument("-r", type=int, required=True)
        p.add_argument("--json", action="store_true")
        if name == "verdict":
            _add_search(p)
        p.set_defaults(func=func)

    p = groups.add_parser("export", help="report as DOT or JSON")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--enumerate-only", action="store_true", help="skip the obstruction detectors")
    _add_search(p)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (CharPUnsupportedEnumeration, UnsupportedType) as exc:
        sys.stderr.write(f"error: unsupported: {exc}\n")
        return EXIT_UNSUPPORTED
    except (FormatError, AlgebraError, InvalidCoxeterSpec, ParameterOutOfRange, UsageError,
            OSError, ValueError) as exc:
        sys.stderr.write(f"error: invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
