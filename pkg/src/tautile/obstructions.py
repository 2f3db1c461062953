"""Certificates of tau-tilting infiniteness and the detectors that find them."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms import isomorphism

from .algebra import AlgebraError, BoundQuiverAlgebra, Quiver, gabriel_quiver, idempotent_truncation, quotient
from .linalg import definiteness


class Disconnected(ValueError):
    pass


# ----------------------------------------------------------- certificates


@dataclass(frozen=True)
class DeltaSubquiver:
    vertices: tuple
    which: str  # "Delta1" | "Delta2"
    kind: str = field(default="DeltaSubquiver", init=False)

    def to_json(self):
        return {"kind": self.kind, "which": self.which, "vertices": list(self.vertices)}


@dataclass(frozen=True)
class HereditaryQuotient:
    kill_vertices: tuple
    kill_arrows: tuple
    euclidean_type: str
    kind: str = field(default="HereditaryQuotient", init=False)

    def to_json(self):
        return {"kind": self.kind, "kill_vertices": list(self.kill_vertices),
                "kill_arrows": list(self.kill_arrows), "type": self.euclidean_type}


@dataclass(frozen=True)
class FactorPropagation:
    chain: tuple  # names, from the algebra down to the factor
    base: object
    kind: str = field(default="FactorPropagation", init=False)

    def to_json(self):
        return {"kind": self.kind, "chain": list(self.chain), "base": self.base.to_json()}


@dataclass(frozen=True)
class TruncationPropagation:
    vertices: tuple
    base: object
    kind: str = field(default="TruncationPropagation", init=False)

    def to_json(self):
        return {"kind": self.kind, "vertices": list(self.vertices), "base": self.base.to_json()}


def certificate_from_json(data: dict):
    kind = data.get("kind")
    if kind == "DeltaSubquiver":
        return DeltaSubquiver(tuple(data["vertices"]), data["which"])
    if kind == "HereditaryQuotient":
        return HereditaryQuotient(tuple(data["kill_vertices"]), tuple(data["kill_arrows"]), data.get("type", ""))
    if kind == "FactorPropagation":
        return FactorPropagation(tuple(data["chain"]), certificate_from_json(data["base"]))
    if kind == "TruncationPropagation":
        return TruncationPropagation(tuple(data["vertices"]), certificate_from_json(data["base"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


# -------------------------------------------------------- Dynkin / Euclid


@dataclass(frozen=True)
class GraphType:
    family: str  # "Dynkin" | "Euclidean" | "Wild"
    name: str

    def __str__(self):
        return f"{self.family}({self.name})" if self.name else self.family


def tits_matrix(n: int, edges) -> list:
    """Symmetrized Tits form ``2I - adjacency`` (a loop contributes 2 to its diagonal)."""
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for u, v in edges:
        if u == v:
            m[u][u] -= 2
        else:
            m[u][v] -= 1
            m[v][u] -= 1
    return m


def _shape_name(n: int, edges, family: str) -> str:
    simple = Counter(tuple(sorted(e)) for e in edges)
    loops = sum(c for (u, v), c in simple.items() if u == v)
    deg = Counter()
    for (u, v), c in simple.items():
        if u != v:
            deg[u] += c
            deg[v] += c
    if family == "Euclidean":
        if loops:
            return "A~0"
        if len(edges) == n:
            return f"A~{n - 1}"
        branch = [v for v in range(n) if deg[v] >= 3]
        if len(branch) == 1 and deg[branch[0]] == 4:
            return "D~4"
        if len(branch) == 2:
            return f"D~{n - 1}"
        arms = sorted(_arms(n, simple, branch[0]))
        return {(2, 2, 2): "E~6", (1, 3, 3): "E~7", (1, 2, 5): "E~8"}.get(tuple(arms), "?")
    branch = [v for v in range(n) if deg[v] >= 3]
    if not branch:
        return f"A{n}"
    arms = tuple(sorted(_arms(n, simple, branch[0])))
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(arms, "?")


def _arms(n, simple, center):
    adj = {v: set() for v in range(n)}
    for (u, v) in simple:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    out = []
    for start in sorted(adj[center]):
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if len(nxt) != 1:
                break
            prev, cur = cur, nxt[0]
            length += 1
        out.append(length)
    return out


def dynkin_classify(n: int, edges) -> GraphType:
    """Classify a connected undirected multigraph on ``range(n)`` by its Tits form."""
    g = nx.MultiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    if n == 0 or not nx.is_connected(g):
        raise Disconnected("dynkin_classify needs a connected graph")
    d = definiteness(tits_matrix(n, edges))
    if d.kind == "PositiveDefinite":
        return GraphType("Dynkin", _shape_name(n, edges, "Dynkin"))
    if d.kind == "PositiveSemidefinite" and d.radical_rank == 1:
        return GraphType("Euclidean", _shape_name(n, edges, "Euclidean"))
    return GraphType("Wild", "")


def classify_quiver(q: Quiver) -> GraphType:
    idx = {v: k for k, v in enumerate(q.vertices)}
    return dynkin_classify(q.n, [(idx[a.source], idx[a.target]) for a in q.arrows])


# ---------------------------------------------------------------- Delta


def delta_pattern(which: str) -> nx.Graph:
    g = nx.Graph()
    if which == "Delta1":
        g.add_edges_from([(0, 1), (1, 2), (2, 3), (3, 0)])
    elif which == "Delta2":
        g.add_edges_from([(0, 1), (1, 2), (1, 4), (3, 4), (4, 5)])
    else:
        raise ValueError(f"unknown pattern {which!r}")
    for v in g.nodes:
        g.nodes[v]["loops"] = 0
    for e in g.edges:
        g.edges[e]["arrows"] = (1, 1)
    return g


def _pair_graph(q: Quiver) -> nx.Graph:
    """Undirected graph; edge label = (#arrows u->v, #arrows v->u) for u < v in vertex order."""
    order = {v: k for k, v in enumerate(q.vertices)}
    g = nx.Graph()
    for v in q.vertices:
        g.add_node(v, loops=0)
    counts = Counter((a.source, a.target) for a in q.arrows)
    for (s, t), c in counts.items():
        if s == t:
            g.nodes[s]["loops"] += c
            continue
        u, v = (s, t) if order[s] < order[t] else (t, s)
        g.add_edge(u, v, arrows=(counts.get((u, v), 0), counts.get((v, u), 0)))
    return g


def iter_delta(q: Quiver, which: str):
    """Distinct vertex tuples of full subquivers isomorphic to Delta1/Delta2."""
    big = _pair_graph(q)
    pat = delta_pattern(which)
    gm = isomorphism.GraphMatcher(
        big, pat,
        node_match=lambda a, b: a["loops"] == b["loops"],
        edge_match=lambda a, b: a["arrows"] == b["arrows"])
    seen = set()
    pos = {v: k for k, v in enumerate(q.vertices)}
    for mapping in gm.subgraph_isomorphisms_iter():
        if frozenset(mapping) in seen:
            continue
        seen.add(frozenset(mapping))
        # listed in quiver order so the output does not depend on the matcher
        yield tuple(sorted(mapping, key=pos.__getitem__))


def find_delta(q: Quiver, which: str):
    """Vertex tuple of a full subquiver isomorphic to Delta1/Delta2, or None."""
    return next(iter_delta(q, which), None)


def detect_delta_quiver(q: Quiver):
    for which in ("Delta2", "Delta1"):
        hit = find_delta(q, which)
        if hit is not None:
            return DeltaSubquiver(hit, which)
    return None


def delta_bridge(A: BoundQuiverAlgebra, cert: DeltaSubquiver) -> bool:
    """The truncation to the certificate's vertices has exactly the Delta quiver."""
    try:
        q = gabriel_quiver(idempotent_truncation(A, cert.vertices))
    except AlgebraError:
        return False
    expected = 2 * (4 if cert.which == "Delta1" else 5)
    return len(q.arrows) == expected and is_delta_subquiver(q, cert.vertices, cert.which)


def detect_delta(A, bridge_tries: int = 64) -> DeltaSubquiver | None:
    """Delta1/Delta2 full subquiver of the Gabriel quiver (or of a bare quiver).

    For an algebra, occurrences whose truncation keeps exactly the Delta
    quiver are preferred; up to ``bridge_tries`` occurrences are checked.
    """
    if isinstance(A, Quiver):
        return detect_delta_quiver(A)
    q = gabriel_quiver(A)
    for which in ("Delta2", "Delta1"):
        first = None
        for k, hit in enumerate(iter_delta(q, which)):
            cert = DeltaSubquiver(hit, which)
            first = first or cert
            if k >= bridge_tries or delta_bridge(A, cert):
                return cert if k < bridge_tries else first
        if first is not None:
            return first
    return None


def is_delta_subquiver(q: Quiver, vertices, which: str) -> bool:
    vs = list(vertices)
    if len(set(vs)) != len(vs) or any(v not in q.vertices for v in vs):
        return False
    sub = _pair_graph(q).subgraph(vs)
    pat = delta_pattern(which)
    return nx.is_isomorphic(sub, pat, node_match=lambda a, b: a["loops"] == b["loops"],
                            edge_match=lambda a, b: a["arrows"] == b["arrows"])


# ------------------------------------------------------ hereditary search


def _path_count(n: int, arrows) -> int | None:
    """Number of paths (including trivial ones) of an acyclic quiver, None if cyclic."""
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(arrows)
    if not nx.is_directed_acyclic_graph(g):
        return None
    count = {v: 1 for v in range(n)}
    for v in reversed(list(nx.topological_sort(g))):
        count[v] = 1 + sum(count[w] for _, w in g.out_edges(v))
    return sum(count.values())


def _connected_subsets(q: Quiver, max_keep: int):
    """Connected vertex subsets (undirected sense) of size >= 2, by size then index."""
    n = q.n
    idx = {v: k for k, v in enumerate(q.vertices)}
    adj = [set() for _ in range(n)]
    for a in q.arrows:
        s, t = idx[a.source], idx[a.target]
        if s != t:
            adj[s].add(t)
            adj[t].add(s)
    seen = set()
    level = {frozenset([v]) for v in range(n)}
    for size in range(2, max_keep + 1):
        nxt = set()
        for S in level:
            for v in S:
                for w in adj[v]:
                    if w not in S:
                        nxt.add(S | {w})
        level = nxt
        for S in sorted(level, key=sorted):
            if S not in seen:
                seen.add(S)
                yield sorted(S)


def detect_hereditary_quotient(A: BoundQuiverAlgebra, max_keep: int = 9, max_kill_arrows: int = 6):
    """Search for a quotient of ``A`` that is the path algebra of a non-Dynkin quiver."""
    q = A.quiver
    rel_paths = [[set(p) for _, p in r.terms] for r in A.relations]
    for keep in _connected_subsets(q, min(max_keep, q.n)):
        kset = {q.vertices[k] for k in keep}
        inner = [a for a in q.arrows if a.source in kset and a.target in kset and a.source != a.target]
        loops = [a.name for a in q.arrows if a.source in kset and a.source == a.target]
        pos = {v: k for k, v in enumerate(sorted(kset, key=q.vertex_index))}
        m = len(keep)
        for size in (m - 1, m):
            if size < 1 or size > len(inner) or len(inner) - size > max_kill_arrows:
                continue
            for chosen in itertools.combinations(range(len(inner)), size):
                S = [inner[k] for k in chosen]
                edges = [(pos[a.source], pos[a.target]) for a in S]
                try:
                    kind = dynkin_classify(m, edges)
                except Disconnected:
                    continue
                if kind.family != "Euclidean":
                    continue
                if _path_count(m, edges) is None:
                    continue
                alive = {a.name for a in S}
                # hereditary iff every relation dies in the quotient
                if any(any(p <= alive for p in terms) for terms in rel_paths):
                    continue
                kill_v = tuple(v for v in q.vertices if v not in kset)
                kill_a = tuple(sorted(a.name for a in inner if a.name not in alive) + sorted(loops))
                cert = HereditaryQuotient(kill_v, kill_a, kind.name)
                if replay_hereditary(A, cert):
                    return cert
    return None


# ----------------------------------------------------------------- replay


def replay_hereditary(A: BoundQuiverAlgebra, cert: HereditaryQuotient) -> bool:
    try:
        B = quotient(A, cert.kill_vertices, cert.kill_arrows)
    except AlgebraError:
        return False
    q = B.quiver
    idx = {v: k for k, v in enumerate(q.vertices)}
    arrows = [(idx[a.source], idx[a.target]) for a in q.arrows]
    count = _path_count(q.n, arrows)
    if count is None or count != B.dim:
        return False
    try:
        kind = dynkin_classify(q.n, arrows)
    except Disconnected:
        return False
    return kind.family != "Dynkin"


@dataclass
class Replay:
    ok: bool
    bridge: bool | None = None  # Gabriel quiver of the truncation equals the pattern
    detail: str = ""


def replay_certificate(A, cert, check_bridge: bool = True) -> Replay:
    """Re-check a certificate against ``A`` (a BoundQuiverAlgebra or a bare Quiver)."""
    if isinstance(cert, DeltaSubquiver):
        q = A if isinstance(A, Quiver) else gabriel_quiver(A)
        ok = is_delta_subquiver(q, cert.vertices, cert.which)
        bridge = None
        if ok and check_bridge and isinstance(A, BoundQuiverAlgebra):
            bridge = delta_bridge(A, cert)
        return Replay(ok, bridge, f"{cert.which} on {len(cert.vertices)} vertices")
    if isinstance(cert, HereditaryQuotient):
        if isinstance(A, Quiver):
            return Replay(False, None, "hereditary certificates need an algebra")
        return Replay(replay_hereditary(A, cert), None, cert.euclidean_type)
    if isinstance(cert, FactorPropagation):
        factor = _follow_factors(A, cert.chain)
        if factor is None:
            return Replay(False, None, "factor chain does not match the recorded provenance")
        inner = replay_certificate(factor, cert.base, check_bridge)
        return Replay(inner.ok, inner.bridge, "via " + " -> ".join(cert.chain))
    if isinstance(cert, TruncationPropagation):
        try:
            B = idempotent_truncation(A, cert.vertices)
        except AlgebraError:
            return Replay(False, None, "truncation failed")
        inner = replay_certificate(B, cert.base, check_bridge)
        return Replay(inner.ok, inner.bridge, "truncation")
    return Replay(False, None, "unknown certificate")


def algebra_label(A) -> str:
    return A.name or f"<algebra dim {A.dim}>"


def _follow_factors(A, chain):
    cur = A
    if not chain or chain[0] != algebra_label(A):
        return None
    for name in chain[1:]:
        nxt = next((F for F in getattr(cur, "known_factors", ()) if algebra_label(F) == name), None)
        if nxt is None:
            return None
        cur = nxt
    return cur
