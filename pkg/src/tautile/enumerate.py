"""Breadth-first enumeration of the two-term silting exchange graph."""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field

from .algebra import AlgebraError, BoundQuiverAlgebra
from .linalg import ExactMatrix, integer_determinant
from .modules import direct_sum as module_sum, tau_rigid_check, zero_module
from .silting import SiltingContext, cokernel_module, hom_one_shift

DEFAULT_CAP = 50000


class CharPUnsupportedEnumeration(AlgebraError):
    pass


def default_cap() -> int:
    env = os.environ.get("TAUTILE_CAP")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"TAUTILE_CAP must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError("TAUTILE_CAP must be at least 1")
        return value
    return DEFAULT_CAP


Key = tuple


def node_key(node) -> Key:
    return tuple(sorted(node))


@dataclass
class ExchangeGraph:
    algebra: BoundQuiverAlgebra
    nodes: list                     # canonical keys, sorted
    edges: list                     # (upper, lower) index pairs, sorted
    complete: bool
    cap: int
    mismatches: int = 0             # dual-stack disagreements (validated runs)
    validated: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.nodes)

    def top(self) -> Key:
        return node_key(tuple(tuple(1 if i == j else 0 for i in range(self.algebra.n)) for j in range(self.algebra.n)))

    def bottom(self) -> Key:
        return node_key(tuple(tuple(-1 if i == j else 0 for i in range(self.algebra.n)) for j in range(self.algebra.n)))


def pair_of_node(ctx: SiltingContext, node):
    """Module-level pair ``(M, P)`` of a silting node."""
    A = ctx.A
    mods, support = [], []
    for g in node:
        X = ctx.objects[g]
        if X.p0:
            mods.append(cokernel_module(X))
        else:
            support.extend(X.p1)
    M = module_sum(*mods) if mods else zero_module(A)
    return M, tuple(support)


def dual_stack_agree(ctx: SiltingContext, node) -> bool:
    """Complex-level presilting and module-level tau-rigidity give the same answer."""
    objs = [ctx.objects[g] for g in node]
    complex_ok = all(hom_one_shift(X, Y) == 0 for X in objs for Y in objs)
    M, P = pair_of_node(ctx, node)
    module_ok = tau_rigid_check(M, P)
    return complex_ok == module_ok and complex_ok


def enumerate_exchange_graph(A: BoundQuiverAlgebra, cap: int | None = None, validate: bool = False,
                             full_approximation: bool = False, progress=None) -> ExchangeGraph:
    """BFS over basic two-term silting complexes starting from ``A`` in degree 0.

    Stops with ``complete=False`` as soon as more than ``cap`` nodes are seen.
    """
    if not A.field.is_rational:
        raise CharPUnsupportedEnumeration("enumeration is only supported over the rationals")
    cap = default_cap() if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be at least 1")
    ctx = SiltingContext(A, full_approximation=full_approximation)
    start = [X.g_vector() for X in ctx.initial()]
    seen = {node_key(start): 0}
    order = [node_key(start)]
    queue = deque([start])
    edges = set()
    mismatches = validated = 0
    complete = True
    while queue:
        node = queue.popleft()
        here = seen[node_key(node)]
        if validate:
            validated += 1
            if not dual_stack_agree(ctx, node):
                mismatches += 1
        for k in range(len(node)):
            new, direction = ctx.mutate(node, k)
            key = node_key(new)
            if key not in seen:
                if len(seen) >= cap:
                    complete = False
                    queue.clear()
                    break
                seen[key] = len(order)
                order.append(key)
                queue.append(new)
            there = seen[key]
            edges.add((here, there) if direction == "left" else (there, here))
        if progress is not None:
            progress(len(seen))
    # deterministic output: sort nodes by key and renumber edges
    ranked = sorted(range(len(order)), key=lambda i: order[i])
    new_index = {old: k for k, old in enumerate(ranked)}
    nodes = [order[i] for i in ranked]
    edge_list = sorted((new_index[a], new_index[b]) for a, b in edges
                       if a in new_index and b in new_index)
    return ExchangeGraph(A, nodes, edge_list, complete, cap, mismatches, validated,
                         {"objects": len(ctx.objects)})


# ----------------------------------------------------------------- checks


def _is_unimodular(key) -> bool:
    m = ExactMatrix.from_rows([list(g) for g in key])
    return abs(integer_determinant(m)) == 1


def check_exchange_graph(graph: ExchangeGraph) -> dict:
    """Structural properties every finite exchange graph must have."""
    n = graph.algebra.n
    N = len(graph.nodes)
    nbrs = [set() for _ in range(N)]
    up = [0] * N
    down = [0] * N
    for a, b in graph.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
        down[a] += 1
        up[b] += 1
    seen = {0} if N else set()
    stack = [0] if N else []
    while stack:
        v = stack.pop()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    maxima = [i for i in range(N) if up[i] == 0]
    minima = [i for i in range(N) if down[i] == 0]
    index = {k: i for i, k in enumerate(graph.nodes)}
    return {
        "connected": len(seen) == N,
        "regular": all(len(s) == n for s in nbrs) and len(graph.edges) * 2 == n * N,
        "unique_max": [graph.nodes[i] for i in maxima] == [graph.top()],
        "unique_min": [graph.nodes[i] for i in minima] == [graph.bottom()] and graph.bottom() in index,
        "distinct": len(set(graph.nodes)) == N and all(len(set(k)) == n for k in graph.nodes),
        "unimodular": all(_is_unimodular(k) for k in graph.nodes),
    }
