"""Bound quiver algebras kQ/I with an explicit path basis.

Conventions used everywhere in the package:

* a path is written with its first arrow leftmost, so ``a b`` means
  "a then b" and is nonzero only when ``target(a) == source(b)``;
* modules are right modules, so ``e_i A`` is spanned by the basis paths
  starting at ``i`` and ``Hom(P_i, P_j) = e_j A e_i``;
* the Cartan entry ``C[i][j]`` counts basis paths from ``j`` to ``i``.

The path basis is found by saturation: for N = 1, 2, ... the span of all
relation translates ``p r q`` is reduced inside the paths of length <= N
(terms longer than N are dropped) until every path of length N lies in
that span.  Pivots are the largest paths in (length, lex) order, so the
basis consists of the surviving small paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .linalg import QQ, EchelonBasis, ExactMatrix, ScalarField, nullspace, rref


class AlgebraError(ValueError):
    pass


class MalformedRelation(AlgebraError):
    pass


class InfiniteDimensionalError(AlgebraError):
    def __init__(self, cap: int):
        super().__init__(f"no nilpotency bound N <= {cap} found; the ideal is not admissible up to the cap")
        self.cap = cap


class FieldMismatch(AlgebraError):
    pass


class EverythingKilled(AlgebraError):
    pass


class SocleNotTwoSided(AlgebraError):
    pass


DEFAULT_CAP = 30


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of Arrow

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2])) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(vs)) != len(vs):
            raise AlgebraError("vertex labels must be unique")
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow labels must be unique")
        vset = set(vs)
        for a in arrows:
            if a.source not in vset or a.target not in vset:
                raise AlgebraError(f"arrow {a.name} uses an undeclared vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v) -> int:
        return self.vertices.index(str(v))

    def arrow_index(self, name) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise KeyError(name)

    def multiplicity(self, i, j) -> int:
        """Number of arrows from vertex ``i`` to vertex ``j`` (labels)."""
        return sum(1 for a in self.arrows if a.source == i and a.target == j)

    def adjacency(self) -> list:
        idx = {v: k for k, v in enumerate(self.vertices)}
        m = [[0] * self.n for _ in range(self.n)]
        for a in self.arrows:
            m[idx[a.source]][idx[a.target]] += 1
        return m

    def is_isomorphic(self, other: "Quiver") -> bool:
        import networkx as nx
        from networkx.algorithms.isomorphism import DiGraphMatcher

        def graph(q):
            g = nx.DiGraph()
            g.add_nodes_from(q.vertices)
            mult = {}
            for a in q.arrows:
                mult[(a.source, a.target)] = mult.get((a.source, a.target), 0) + 1
            for (s, t), k in mult.items():
                g.add_edge(s, t, m=k)
            return g

        if self.n != other.n or len(self.arrows) != len(other.arrows):
            return False
        return DiGraphMatcher(graph(self), graph(other), edge_match=lambda x, y: x["m"] == y["m"]).is_isomorphic()


@dataclass(frozen=True)
class RelationElement:
    terms: tuple  # of (coefficient, tuple of arrow names)

    @classmethod
    def of(cls, *terms):
        """``RelationElement.of((1, "ab"), (-1, ["b", "a"]))``; strings of length
        one per arrow are split into characters only when given as lists."""
        return cls(tuple((c, tuple(p)) for c, p in terms))

    @classmethod
    def monomial(cls, path):
        return cls(((1, tuple(path)),))


@dataclass(frozen=True)
class Provenance:
    """How an algebra was obtained.  ``kind`` is one of ``quotient``,
    ``truncation``, ``socle_factor`` or ``family``; ``base`` is the algebra
    it came from (for quotients the base surjects onto this algebra)."""

    kind: str
    base: object = None
    detail: dict = dc_field(default_factory=dict)


class BoundQuiverAlgebra:
    """A finite-dimensional algebra kQ/I together with a path basis."""

    def __init__(self, quiver: Quiver, relations, field: ScalarField = QQ, cap: int = DEFAULT_CAP,
                 provenance: Provenance | None = None, known_factors: Sequence = (), name: str | None = None):
        self.quiver = quiver
        self.field = field
        self.cap = cap
        self.name = name
        self.provenance = provenance
        # algebras this one is known to surject onto (besides its quotients)
        self.known_factors = tuple(known_factors)
        self.relations = tuple(self._check_relation(r) for r in relations)
        self.relations = tuple(r for r in self.relations if r.terms)
        self._saturate()

    # ---------------------------------------------------------------- build

    def _check_relation(self, rel) -> RelationElement:
        if not isinstance(rel, RelationElement):
            rel = RelationElement(tuple((c, tuple(p)) for c, p in rel))
        q = self.quiver
        F = self.field
        merged = {}
        ends = set()
        for coef, path in rel.terms:
            path = tuple(path)
            if len(path) < 2:
                raise MalformedRelation(f"relation term {path} has length < 2")
            try:
                arrows = [q.arrows[q.arrow_index(a)] for a in path]
            except KeyError as exc:
                raise MalformedRelation(f"unknown arrow {exc.args[0]!r}") from None
            for a, b in zip(arrows, arrows[1:]):
                if a.target != b.source:
                    raise MalformedRelation(f"path {'.'.join(path)} is not composable at {a.name}.{b.name}")
            ends.add((arrows[0].source, arrows[-1].target))
            merged[path] = F.norm(merged.get(path, F.zero) + F.elem(coef))
        if len(ends) > 1:
            raise MalformedRelation("relation terms are not parallel paths")
        terms = tuple((c, p) for p, c in sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0])) if c)
        return RelationElement(terms)

    def _saturate(self):
        q = self.quiver
        F = self.field
        n = q.n
        out_arrows = [[] for _ in range(n)]
        vidx = {v: k for k, v in enumerate(q.vertices)}
        self._arrow_src = [vidx[a.source] for a in q.arrows]
        self._arrow_tgt = [vidx[a.target] for a in q.arrows]
        for k in range(len(q.arrows)):
            out_arrows[self._arrow_src[k]].append(k)
        rels = []
        for r in self.relations:
            terms = [(c, tuple(q.arrow_index(a) for a in p)) for c, p in r.terms]
            s = self._arrow_src[terms[0][1][0]]
            t = self._arrow_tgt[terms[0][1][-1]]
            rels.append((s, t, min(len(p) for _, p in terms), terms))

        levels = [[(v, ()) for v in range(n)]]
        for N in range(1, self.cap + 1):
            nxt = []
            for (s, p) in levels[-1]:
                t = self._arrow_tgt[p[-1]] if p else s
                for a in out_arrows[t]:
                    nxt.append((s, p + (a,)))
            levels.append(nxt)
            if not nxt:
                # no paths of length N at all: the path algebra is finite
                self._finish(levels, N, EchelonBasis(F))
                return
            col = {}
            for lvl in levels:
                for path in lvl:
                    col[path] = len(col)
            ending = [[] for _ in range(n)]
            starting = [[] for _ in range(n)]
            for lvl in levels:
                for (s, p) in lvl:
                    t = self._arrow_tgt[p[-1]] if p else s
                    ending[t].append((s, p))
                    starting[s].append(p)
            span = EchelonBasis(F)
            for (s, t, m, terms) in rels:
                if m > N:
                    continue
                for (ps, pp) in ending[s]:
                    if len(pp) + m > N:
                        continue
                    room = N - m - len(pp)
                    for qq in starting[t]:
                        if len(qq) > room:
                            continue
                        vec = {}
                        for c, path in terms:
                            full = pp + path + qq
                            if len(full) <= N:
                                key = col[(ps, full)]
                                vec[key] = F.norm(vec.get(key, F.zero) + c)
                        span.add(vec)
            top = set(col[x] for x in nxt)
            if top <= span.pivots():
                self._finish(levels, N, span, col)
                return
        raise InfiniteDimensionalError(self.cap)

    def _finish(self, levels, N, span, col=None):
        F = self.field
        all_paths = [p for lvl in levels for p in lvl]
        if col is None:
            col = {p: k for k, p in enumerate(all_paths)}
        pivots = span.pivots()
        self.nilpotency_bound = N
        self.basis = [p for p in all_paths if col[p] not in pivots and len(p[1]) < N]
        self._index = {p: k for k, p in enumerate(self.basis)}
        # normal forms of the paths shorter than N
        nf = {}
        for p in all_paths:
            if len(p[1]) >= N:
                continue
            c = col[p]
            if c in pivots:
                row = span.rows[c]
                nf[p] = {self._index[all_paths[cc]]: F.norm(-x) for cc, x in row.items() if cc != c}
            else:
                nf[p] = {self._index[p]: F.one}
        self._nf = nf
        self.dim = len(self.basis)
        self._src = [p[0] for p in self.basis]
        self._tgt = [self._arrow_tgt[p[1][-1]] if p[1] else p[0] for p in self.basis]
        self.vertex_idempotents = [self._index[(v, ())] for v in range(self.quiver.n)]
        self.radical_basis = [k for k, p in enumerate(self.basis) if p[1]]
        self.arrow_elements = []
        for k in range(len(self.quiver.arrows)):
            self.arrow_elements.append(dict(nf.get((self._arrow_src[k], (k,)), {})))
        self._table = {}

    # ---------------------------------------------------------------- access

    @property
    def n(self) -> int:
        return self.quiver.n

    def source(self, b: int) -> int:
        return self._src[b]

    def target(self, b: int) -> int:
        return self._tgt[b]

    def basis_length(self, b: int) -> int:
        return len(self.basis[b][1])

    def basis_label(self, b: int) -> str:
        s, p = self.basis[b]
        if not p:
            return f"e_{self.quiver.vertices[s]}"
        return ".".join(self.quiver.arrows[a].name for a in p)

    def block(self, i: int, j: int) -> list:
        """Basis indices of the paths from vertex ``i`` to vertex ``j``."""
        if not hasattr(self, "_blocks"):
            blocks = {}
            for b in range(self.dim):
                blocks.setdefault((self._src[b], self._tgt[b]), []).append(b)
            self._blocks = blocks
        return list(self._blocks.get((i, j), ()))

    def path_element(self, arrows: Iterable) -> dict:
        """Normal form of a path given by arrow names or indices (sparse)."""
        q = self.quiver
        idx = tuple(a if isinstance(a, int) else q.arrow_index(a) for a in arrows)
        if not idx:
            raise AlgebraError("use vertex_idempotents for trivial paths")
        for a, b in zip(idx, idx[1:]):
            if self._arrow_tgt[a] != self._arrow_src[b]:
                return {}
        if len(idx) >= self.nilpotency_bound:
            return {}
        return dict(self._nf[(self._arrow_src[idx[0]], idx)])

    def mul_basis(self, i: int, j: int) -> dict:
        """Sparse product ``b_i * b_j``."""
        key = (i, j)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        if self._tgt[i] != self._src[j]:
            out = {}
        else:
            s, p = self.basis[i]
            full = p + self.basis[j][1]
            out = {} if len(full) >= self.nilpotency_bound else self._nf[(s, full)]
        self._table[key] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        F = self.field
        out = {}
        for i, a in x.items():
            ti = self._tgt[i]
            for j, b in y.items():
                if self._src[j] != ti:
                    continue
                ab = a * b
                for k, c in self.mul_basis(i, j).items():
                    out[k] = F.norm(out.get(k, F.zero) + ab * c)
        return {k: v for k, v in out.items() if v}

    def structure_constants(self) -> dict:
        return {(i, j): self.mul_basis(i, j) for i in range(self.dim) for j in range(self.dim)
                if self._tgt[i] == self._src[j] and self.mul_basis(i, j)}

    def one(self) -> dict:
        return {e: self.field.one for e in self.vertex_idempotents}

    def dense(self, x: dict) -> list:
        v = [self.field.zero] * self.dim
        for k, c in x.items():
            v[k] = c
        return v

    def sparse(self, v: Sequence) -> dict:
        return {k: self.field.elem(c) for k, c in enumerate(v) if c}

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<BoundQuiverAlgebra{tag}: {self.n} vertices, {len(self.quiver.arrows)} arrows, dim {self.dim} over {self.field}>"


def build_algebra(q: Quiver, rels, field: ScalarField = QQ, cap: int = DEFAULT_CAP, **kw) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(q, rels, field, cap, **kw)


def multiply(A: BoundQuiverAlgebra, a: Sequence, b: Sequence) -> list:
    """Product of two elements given as dense basis coordinates."""
    if len(a) != A.dim or len(b) != A.dim:
        raise FieldMismatch("coordinate vectors must have length dim A")
    return A.dense(A.mul(A.sparse(a), A.sparse(b)))


def cartan_matrix(A: BoundQuiverAlgebra) -> ExactMatrix:
    n = A.n
    C = [[0] * n for _ in range(n)]
    for b in range(A.dim):
        C[A.target(b)][A.source(b)] += 1
    return ExactMatrix.from_rows(C, QQ, n)


def euler_form(A: BoundQuiverAlgebra, x: Sequence[int], y: Sequence[int]) -> int:
    C = cartan_matrix(A).to_int_rows()
    return sum(int(x[i]) * C[i][j] * int(y[j]) for i in range(A.n) for j in range(A.n))


def is_associative(A: BoundQuiverAlgebra, triples=None) -> bool:
    rng = range(A.dim)
    items = triples if triples is not None else ((i, j, k) for i in rng for j in rng for k in rng)
    for i, j, k in items:
        left = A.mul(A.mul_basis(i, j), {k: A.field.one})
        right = A.mul({i: A.field.one}, A.mul_basis(j, k))
        if left != right:
            return False
    return True


# -------------------------------------------------------------- constructions


def quotient(A: BoundQuiverAlgebra, kill_vertices=(), kill_arrows=(), cap: int | None = None) -> BoundQuiverAlgebra:
    """A / <e_v (v killed), a (a killed)> presented on the surviving quiver."""
    q = A.quiver
    kv = {str(v) for v in kill_vertices}
    ka = {str(a) for a in kill_arrows}
    for v in kv:
        if v not in q.vertices:
            raise AlgebraError(f"unknown vertex {v}")
    for a in ka:
        q.arrow_index(a)
    vertices = tuple(v for v in q.vertices if v not in kv)
    if not vertices:
        raise EverythingKilled("every vertex idempotent was killed")
    dead = set(ka) | {a.name for a in q.arrows if a.source in kv or a.target in kv}
    arrows = tuple(a for a in q.arrows if a.name not in dead)
    rels = []
    for r in A.relations:
        terms = tuple((c, p) for c, p in r.terms if not dead.intersection(p))
        if terms:
            rels.append(RelationElement(terms))
    B = BoundQuiverAlgebra(Quiver(vertices, arrows), rels, A.field, cap or A.cap,
                           provenance=Provenance("quotient", A, {"kill_vertices": sorted(kv), "kill_arrows": sorted(ka)}))
    return B


def gabriel_quiver(A: BoundQuiverAlgebra) -> Quiver:
    """Quiver with dim e_i (rad/rad^2) e_j arrows from i to j."""
    F = A.field
    rad2 = {}
    for i in A.radical_basis:
        for j in A.radical_basis:
            if A.target(i) == A.source(j):
                p = A.mul_basis(i, j)
                if p:
                    rad2.setdefault((A.source(i), A.target(j)), []).append(p)
    arrows = []
    V = A.quiver.vertices
    for i in range(A.n):
        for j in range(A.n):
            blk = [b for b in A.block(i, j) if A.basis_length(b) > 0]
            if not blk:
                continue
            pos = {b: k for k, b in enumerate(blk)}
            vecs = [[F.zero] * len(blk) for _ in rad2.get((i, j), [])]
            for row, x in zip(vecs, rad2.get((i, j), [])):
                for b, c in x.items():
                    row[pos[b]] = c
            r2 = len(rref(vecs, len(blk), F)[1]) if vecs else 0
            for k in range(len(blk) - r2):
                arrows.append(Arrow(f"{V[i]}>{V[j]}#{k}", V[i], V[j]))
    return Quiver(V, tuple(arrows))


def idempotent_truncation(A: BoundQuiverAlgebra, keep_vertices) -> BoundQuiverAlgebra:
    """eAe for e the sum of the kept vertex idempotents, re-presented."""
    from .presentation import AbstractAlgebra, present_with_idempotents

    keep = [A.quiver.vertex_index(v) for v in keep_vertices]
    if not keep:
        raise AlgebraError("keep set must be nonempty")
    keep = sorted(set(keep))
    if keep == list(range(A.n)):
        return A
    kset = set(keep)
    sub = [b for b in range(A.dim) if A.source(b) in kset and A.target(b) in kset]
    pos = {b: k for k, b in enumerate(sub)}
    table = {}
    for i in sub:
        for j in sub:
            if A.target(i) == A.source(j):
                p = A.mul_basis(i, j)
                if p:
                    table[(pos[i], pos[j])] = {pos[k]: c for k, c in p.items()}
    labels = [A.basis_label(b) for b in sub]
    abstract = AbstractAlgebra(labels, table, A.field)
    idems = [{pos[A.vertex_idempotents[v]]: A.field.one} for v in keep]
    radical = [pos[b] for b in sub if A.basis_length(b) > 0]
    vlabels = [A.quiver.vertices[v] for v in keep]
    B = present_with_idempotents(abstract, idems, radical_unit_vectors(radical, len(sub), A.field), vlabels, cap=A.cap)
    B.provenance = Provenance("truncation", A, {"keep_vertices": vlabels})
    return B


def radical_unit_vectors(indices, dim, F):
    out = []
    for k in indices:
        v = [F.zero] * dim
        v[k] = F.one
        out.append(v)
    return out


def tensor_product(A: BoundQuiverAlgebra, B: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """A (x) B presented on the product quiver.

    Arrows are ``a|w`` (arrow of A at vertex w of B) and ``v|b``; relations
    are the relations of each factor at every vertex of the other together
    with the commutativity squares.  The dimension is checked afterwards.
    """
    if A.field != B.field:
        raise FieldMismatch("tensor factors live over different fields")
    qa, qb = A.quiver, B.quiver
    vertices = tuple(f"{v}|{w}" for v in qa.vertices for w in qb.vertices)
    arrows = []
    for a in qa.arrows:
        for w in qb.vertices:
            arrows.append(Arrow(f"{a.name}|{w}", f"{a.source}|{w}", f"{a.target}|{w}"))
    for v in qa.vertices:
        for b in qb.arrows:
            arrows.append(Arrow(f"{v}|{b.name}", f"{v}|{b.source}", f"{v}|{b.target}"))
    rels = []
    for r in A.relations:
        for w in qb.vertices:
            rels.append(RelationElement(tuple((c, tuple(f"{x}|{w}" for x in p)) for c, p in r.terms)))
    for r in B.relations:
        for v in qa.vertices:
            rels.append(RelationElement(tuple((c, tuple(f"{v}|{x}" for x in p)) for c, p in r.terms)))
    for a in qa.arrows:
        for b in qb.arrows:
            rels.append(RelationElement((
                (1, (f"{a.name}|{b.source}", f"{a.target}|{b.name}")),
                (-1, (f"{a.source}|{b.name}", f"{a.name}|{b.target}")),
            )))
    T = BoundQuiverAlgebra(Quiver(vertices, tuple(arrows)), rels, A.field,
                           cap=max(A.cap, A.nilpotency_bound + B.nilpotency_bound + 1),
                           known_factors=(A, B), name=f"({A.name or 'A'})x({B.name or 'B'})")
    if T.dim != A.dim * B.dim:
        raise AlgebraError(f"tensor product has dimension {T.dim}, expected {A.dim * B.dim}")
    return T


def trivial_extension(A: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """Triv(A) = A + D(A) with (a, f)(b, g) = (ab, ag + fb)."""
    from .presentation import AbstractAlgebra, present_with_idempotents

    F = A.field
    d = A.dim
    table = {}
    for i in range(d):
        for j in range(d):
            p = A.mul_basis(i, j)
            if p:
                table[(i, j)] = dict(p)
    # dual basis f_k sits at index d + k.
    # (b_i . f_k)(x) = f_k(x b_i): coefficient of f_l is coef_k(b_l b_i)
    # (f_k . b_j)(x) = f_k(b_j x): coefficient of f_l is coef_k(b_j b_l)
    for l in range(d):
        for i in range(d):
            for k, c in A.mul_basis(l, i).items():
                table.setdefault((i, d + k), {})[d + l] = c
            for k, c in A.mul_basis(i, l).items():
                table.setdefault((d + k, i), {})[d + l] = c
    labels = [A.basis_label(b) for b in range(d)] + [f"D({A.basis_label(b)})" for b in range(d)]
    abstract = AbstractAlgebra(labels, table, F)
    idems = [{e: F.one} for e in A.vertex_idempotents]
    radical = [b for b in A.radical_basis] + list(range(d, 2 * d))
    T = present_with_idempotents(abstract, idems, radical_unit_vectors(radical, 2 * d, F),
                                 list(A.quiver.vertices), cap=max(A.cap, 2 * A.nilpotency_bound + 2))
    T.known_factors = (A,)
    T.name = f"Triv({A.name or 'A'})"
    return T


def is_symmetric(A: BoundQuiverAlgebra, seed: int = 0, attempts: int = 6) -> bool:
    """Search for a nondegenerate form with lambda(ab) = lambda(ba).

    The admissible forms are a linear space; a seeded random member is
    tested for nondegeneracy (a False answer is correct with overwhelming
    probability, a True answer is always certified).
    """
    import random

    F = A.field
    d = A.dim
    cons = []
    for i in range(d):
        for j in range(i + 1, d):
            x = A.mul_basis(i, j)
            y = A.mul_basis(j, i)
            if x or y:
                row = [F.zero] * d
                for k, c in x.items():
                    row[k] = F.norm(row[k] + c)
                for k, c in y.items():
                    row[k] = F.norm(row[k] - c)
                if any(row):
                    cons.append(row)
    forms = nullspace(cons, d, F) if cons else [[F.one if k == j else F.zero for k in range(d)] for j in range(d)]
    if not forms:
        return False
    rng = random.Random(seed)
    bound = 10**6 if F.p == 0 else F.p - 1
    for _ in range(attempts):
        coeffs = [F.elem(rng.randint(1, bound)) for _ in forms]
        lam = [F.norm(sum((c * f[k] for c, f in zip(coeffs, forms)), F.zero)) for k in range(d)]
        gram = [[F.norm(sum((lam[k] * c for k, c in A.mul_basis(i, j).items()), F.zero)) for j in range(d)]
                for i in range(d)]
        if len(rref(gram, d, F)[1]) == d:
            return True
    return False


def right_socle(A: BoundQuiverAlgebra) -> list:
    """Basis (dense vectors) of {a : a * arrow = 0 for every arrow}."""
    F = A.field
    d = A.dim
    rows = []
    for k, arr in enumerate(A.arrow_elements):
        if not arr:
            continue
        # column b of the map a -> a * arrow
        block = {}
        for b in range(d):
            for t, c in A.mul({b: F.one}, arr).items():
                block.setdefault(t, {})[b] = c
        for t, entries in block.items():
            row = [F.zero] * d
            for b, c in entries.items():
                row[b] = c
            rows.append(row)
    if not rows:
        return [[F.one if k == j else F.zero for k in range(d)] for j in range(d)]
    return nullspace(rows, d, F)


def socle_factor(A: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """A / soc(A) for the right socle; semisimple algebras are returned as is."""
    from .presentation import AbstractAlgebra, present_with_idempotents

    F = A.field
    if not A.radical_basis:
        return A
    soc = right_socle(A)
    R, piv = rref(soc, A.dim, F)
    span = EchelonBasis(F)
    for v in R:
        span.add({k: c for k, c in enumerate(v) if c})
    # two-sidedness: basis elements times socle vectors stay in the socle
    for v in R:
        sv = {k: c for k, c in enumerate(v) if c}
        for b in range(A.dim):
            if not span.contains(A.mul({b: F.one}, sv)):
                raise SocleNotTwoSided("the right socle is not a left ideal")
    # quotient basis: complement of the socle, reduced by the echelon
    piv_set = span.pivots()
    keep = [b for b in range(A.dim) if b not in piv_set]
    pos = {b: k for k, b in enumerate(keep)}

    def reduce(x):
        r = span.reduce(x)
        return {pos[k]: c for k, c in r.items()}

    table = {}
    for i in keep:
        for j in keep:
            p = reduce(A.mul_basis(i, j)) if A.target(i) == A.source(j) else {}
            if p:
                table[(pos[i], pos[j])] = p
    abstract = AbstractAlgebra([A.basis_label(b) for b in keep], table, F)
    idems, labels = [], []
    for v, e in enumerate(A.vertex_idempotents):
        img = reduce({e: F.one})
        if img:
            idems.append(img)
            labels.append(A.quiver.vertices[v])
    if not idems:
        raise EverythingKilled("socle factor is zero")
    radical = []
    for b in A.radical_basis:
        img = reduce({b: F.one})
        if img:
            radical.append(abstract.dense(img))
    B = present_with_idempotents(abstract, idems, radical, labels, cap=A.cap)
    B.provenance = Provenance("socle_factor", A, {})
    return B
