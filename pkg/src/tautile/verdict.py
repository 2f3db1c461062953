"""Verdict engine: obstruction detectors first, then exhaustive enumeration."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import AlgebraError, BoundQuiverAlgebra, idempotent_truncation
from .enumerate import ExchangeGraph, check_exchange_graph, default_cap, enumerate_exchange_graph
from .obstructions import (
    FactorPropagation,
    TruncationPropagation,
    algebra_label,
    detect_delta,
    detect_hereditary_quotient,
    replay_certificate,
)

FINITE, INFINITE, INCONCLUSIVE = "finite", "infinite", "inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: str
    count: int | None = None
    certificate: object = None
    cap_hit: bool = False

    def __str__(self):
        if self.kind == FINITE:
            return f"finite ({self.count})"
        if self.kind == INFINITE:
            return f"infinite [{self.certificate.kind}]"
        return "inconclusive (cap hit)" if self.cap_hit else "inconclusive"


def finite(count: int) -> Verdict:
    return Verdict(FINITE, count=count)


def infinite(cert) -> Verdict:
    if cert is None:
        raise ValueError("an infinite verdict needs a certificate")
    return Verdict(INFINITE, certificate=cert)


@dataclass
class VerdictConfig:
    cap: int | None = None
    max_keep: int = 9
    max_kill_arrows: int = 6
    validate: bool = False
    truncations: tuple = ()         # vertex subsets whose corners are also searched
    certificate: object = None      # user-supplied, replayed before any search
    detectors: bool = True
    enumerate: bool = True
    factor_depth: int = 3
    timing: bool = False


@dataclass
class Report:
    fingerprint: str
    verdict: Verdict
    cap: int
    graph: ExchangeGraph | None = None
    elapsed_ms: int | None = None
    notes: dict = field(default_factory=dict)


def _detect(A: BoundQuiverAlgebra, config: VerdictConfig):
    cert = detect_delta(A)
    if cert is not None:
        return cert
    return detect_hereditary_quotient(A, config.max_keep, config.max_kill_arrows)


def _from_factors(A: BoundQuiverAlgebra, config: VerdictConfig, depth: int):
    if depth >= config.factor_depth:
        return None
    for F in getattr(A, "known_factors", ()):
        sub = find_obstruction(F, config, depth + 1)
        if sub is None:
            continue
        if isinstance(sub, FactorPropagation):
            return FactorPropagation((algebra_label(A),) + sub.chain, sub.base)
        return FactorPropagation((algebra_label(A), algebra_label(F)), sub)
    return None


def find_obstruction(A: BoundQuiverAlgebra, config: VerdictConfig | None = None, depth: int = 0):
    """A certificate that ``A`` is tau-tilting infinite, or ``None``.

    Order: Delta subquivers of ``A``, then the algebras ``A`` is known to
    surject onto (tensor factors, the base of a trivial extension), then
    hereditary quotients of ``A``, then the configured idempotent
    truncations.  Quotient provenance is not used: a base being
    infinite says nothing about its quotients.
    """
    config = config or VerdictConfig()
    cert = detect_delta(A)
    if cert is None:
        cert = _from_factors(A, config, depth)
    if cert is None:
        cert = detect_hereditary_quotient(A, config.max_keep, config.max_kill_arrows)
    if cert is not None or depth > 0:
        return cert
    for vs in config.truncations:
        try:
            B = idempotent_truncation(A, tuple(vs))
        except AlgebraError:
            continue
        sub = _detect(B, config)
        if sub is not None:
            return TruncationPropagation(tuple(vs), sub)
    return None


def verdict(A: BoundQuiverAlgebra, config: VerdictConfig | None = None, fingerprint: str | None = None,
            progress=None) -> Report:
    """Decide tau-tilting finiteness of ``A`` where an implemented route applies."""
    from .io import fingerprint as fp

    config = config or VerdictConfig()
    cap = default_cap() if config.cap is None else config.cap
    t0 = time.perf_counter()
    notes = {}
    result, graph = None, None
    if config.certificate is not None:
        rep = replay_certificate(A, config.certificate)
        notes["supplied_certificate"] = "replayed" if rep.ok else "rejected"
        if rep.ok:
            result = infinite(config.certificate)
    if result is None and config.detectors:
        cert = find_obstruction(A, config)
        if cert is not None:
            rep = replay_certificate(A, cert)
            if not rep.ok:  # a detector bug; refuse to claim anything from it
                raise AssertionError(f"certificate failed to replay: {rep.detail}")
            if rep.bridge is not None:
                notes["bridge"] = rep.bridge
            result = infinite(cert)
    if result is None and config.enumerate:
        graph = enumerate_exchange_graph(A, cap=cap, validate=config.validate, progress=progress)
        if graph.complete:
            result = finite(graph.count)
            if config.validate:
                notes["checks"] = check_exchange_graph(graph)
                notes["dual_stack_mismatches"] = graph.mismatches
        else:
            result = Verdict(INCONCLUSIVE, cap_hit=True)
    if result is None:
        result = Verdict(INCONCLUSIVE)
    elapsed = round((time.perf_counter() - t0) * 1000) if config.timing else None
    return Report(fingerprint or fp(A), result, cap, graph, elapsed, notes)
