"""From structure constants to a basic bound quiver presentation.

The pipeline is: Dickson radical (char 0), splitting of the semisimple
quotient by factoring minimal polynomials, idempotent lifting, arrow
representatives in rad \\ rad^2 and finally the relation ideal as the
kernel of the path map.
"""
from __future__ import annotations

from typing import Sequence

import sympy

from .algebra import (AlgebraError, Arrow, BoundQuiverAlgebra, Quiver, RelationElement)
from .linalg import QQ, EchelonBasis, ScalarField, nullspace, rref


class CharPUnsupported(AlgebraError):
    pass


class NonSplitSemisimpleQuotient(AlgebraError):
    pass


class NotBasic(AlgebraError):
    pass


class AbstractAlgebra:
    """Algebra on an explicit basis with sparse structure constants.

    ``table[(i, j)]`` is the sparse product ``b_i b_j`` (missing = zero).
    """

    def __init__(self, labels: Sequence[str], table: dict, field: ScalarField = QQ, identity=None):
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.field = field
        # coerce so that plain ints never leak into divisions
        self.table = {}
        for key, v in table.items():
            v = {k: field.elem(c) for k, c in v.items() if c}
            if v:
                self.table[key] = v
        self._left = {}
        for (i, j), v in self.table.items():
            self._left.setdefault(i, []).append((j, v))
        self._identity = None if identity is None else {k: field.elem(c) for k, c in identity.items()}

    def mul_basis(self, i, j) -> dict:
        return self.table.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        F = self.field
        out = {}
        if len(y) * 4 < self.dim:
            for i, a in x.items():
                for j, b in y.items():
                    p = self.table.get((i, j))
                    if p:
                        ab = a * b
                        for k, c in p.items():
                            out[k] = F.norm(out.get(k, F.zero) + ab * c)
        else:
            for i, a in x.items():
                for j, p in self._left.get(i, ()):
                    b = y.get(j)
                    if b:
                        ab = a * b
                        for k, c in p.items():
                            out[k] = F.norm(out.get(k, F.zero) + ab * c)
        return {k: v for k, v in out.items() if v}

    def add(self, x: dict, y: dict, s=1) -> dict:
        F = self.field
        out = dict(x)
        for k, v in y.items():
            out[k] = F.norm(out.get(k, F.zero) + s * v)
        return {k: v for k, v in out.items() if v}

    def scale(self, x: dict, s) -> dict:
        F = self.field
        return {k: F.norm(v * s) for k, v in x.items() if F.norm(v * s)}

    def dense(self, x: dict) -> list:
        v = [self.field.zero] * self.dim
        for k, c in x.items():
            v[k] = c
        return v

    @staticmethod
    def sparse(v) -> dict:
        return {k: c for k, c in enumerate(v) if c}

    def one(self) -> dict:
        if self._identity is None:
            self._identity = self._find_identity()
        return dict(self._identity)

    def _find_identity(self) -> dict:
        F = self.field
        d = self.dim
        # u . b_j = b_j and b_j . u = b_j for all j: linear in u
        rows, rhs = [], []
        for j in range(d):
            for side in (0, 1):
                block = [[F.zero] * d for _ in range(d)]
                for i in range(d):
                    p = self.mul_basis(i, j) if side == 0 else self.mul_basis(j, i)
                    for k, c in p.items():
                        block[k][i] = c
                for k in range(d):
                    rows.append(block[k])
                    rhs.append(F.one if k == j else F.zero)
        from .linalg import solve
        u = solve(rows, rhs, d, F)
        if u is None:
            raise AlgebraError("algebra has no identity element")
        return self.sparse(u)

    def left_matrix(self, x: dict) -> list:
        """Matrix of ``y -> x y`` (column k is the image of b_k)."""
        F = self.field
        m = [[F.zero] * self.dim for _ in range(self.dim)]
        for k in range(self.dim):
            for t, c in self.mul(x, {k: F.one}).items():
                m[t][k] = c
        return m

    def is_associative(self) -> bool:
        F = self.field
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mul_basis(i, j)
                for k in range(self.dim):
                    if self.mul(ij, {k: F.one}) != self.mul({i: F.one}, self.mul_basis(j, k)):
                        return False
        return True


# ------------------------------------------------------------------ radical


def radical_char0(A: AbstractAlgebra) -> list:
    """Basis of the Jacobson radical via the trace form Tr(L_{xy})."""
    F = A.field
    if F.p:
        raise CharPUnsupported("the trace-form radical needs characteristic zero")
    d = A.dim
    traces = [F.zero] * d
    for (i, j), p in A.table.items():
        c = p.get(j)
        if c:
            traces[i] += c
    gram = [[F.zero] * d for _ in range(d)]
    for (i, j), p in A.table.items():
        gram[i][j] = sum((c * traces[k] for k, c in p.items()), F.zero)
    rad = nullspace(gram, d, F)
    _check_nilpotent(A, rad)
    return rad


def _check_nilpotent(A: AbstractAlgebra, rad: list):
    F = A.field
    if not rad:
        return
    gens = [A.sparse(v) for v in rad]
    power = gens
    for _ in range(A.dim + 1):
        nxt = EchelonBasis(F)
        for x in power:
            for r in gens:
                nxt.add(A.mul(x, r))
        if not len(nxt):
            return
        power = list(nxt.rows.values())
    raise AlgebraError("trace-form radical is not nilpotent")


def radical_powers(A: AbstractAlgebra, rad: list) -> list:
    """[rad, rad^2, ...] as EchelonBasis objects, ending before the zero power."""
    F = A.field
    gens = [A.sparse(v) for v in rad]
    first = EchelonBasis(F)
    for g in gens:
        first.add(g)
    powers = [first] if len(first) else []
    while powers:
        nxt = EchelonBasis(F)
        for x in list(powers[-1].rows.values()):
            for r in gens:
                nxt.add(A.mul(x, r))
        if not len(nxt):
            break
        powers.append(nxt)
    return powers


# --------------------------------------------------------------- idempotents


class _Quotient:
    """A / rad with coordinates on the non-pivot basis elements."""

    def __init__(self, A: AbstractAlgebra, rad_span: EchelonBasis):
        self.A = A
        self.span = rad_span
        piv = rad_span.pivots()
        self.keep = [b for b in range(A.dim) if b not in piv]

    def reduce(self, x: dict) -> dict:
        return self.span.reduce(x)

    def is_zero(self, x: dict) -> bool:
        return not self.span.reduce(x)


def _minimal_polynomial(Q: _Quotient, x: dict, unit: dict):
    """Minimal polynomial of x inside the corner algebra with identity ``unit``."""
    A = Q.A
    F = A.field
    # marker column -(k+1) records the power x^k; markers sit below every
    # basis column so the echelon pivots stay on algebra coordinates
    ech = EchelonBasis(F)
    cur = unit
    for k in range(A.dim + 2):
        if k:
            cur = A.mul(cur, x)
        aug = dict(Q.reduce(cur))
        aug[-(k + 1)] = F.one
        r = ech.reduce(aug)
        if all(c < 0 for c in r):
            lead = r[-(k + 1)]
            coeffs = [F.zero] * (k + 1)
            for c, val in r.items():
                coeffs[-c - 1] = val / lead
            t = sympy.Symbol("t")
            return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)], t)
        ech.add(aug)
    raise AlgebraError("minimal polynomial search did not terminate")


def _poly_eval(A: AbstractAlgebra, poly, x: dict, unit: dict) -> dict:
    F = A.field
    out = {}
    for c in poly.all_coeffs():
        out = A.mul(out, x)
        if c:
            out = A.add(out, unit, F.elem(str(c)))
    return out


def _split(Q: _Quotient, e: dict, basic: bool = True):
    """Return (f, e - f) splitting the idempotent e of A/rad, or None if the
    corner e(A/rad)e is one-dimensional.  With ``basic=False`` matrix blocks
    are split too."""
    A = Q.A
    F = A.field
    corner = EchelonBasis(F)
    corner.add(Q.reduce(e))
    candidates = []
    for b in Q.keep:
        y = Q.reduce(A.mul(A.mul(e, {b: F.one}), e))
        if y and corner.add(y):
            candidates.append(y)
    if not candidates:
        return None
    import random
    rng = random.Random(len(candidates))
    tries = list(candidates)
    for _ in range(4):
        combo = {}
        for c in candidates:
            combo = A.add(combo, c, F.elem(rng.randint(1, 97)))
        tries.append(combo)
    saw_nilpotent = None
    k_try = 0
    while k_try < len(tries):
        x = tries[k_try]
        k_try += 1
        poly = _minimal_polynomial(Q, x, e)
        factors = sympy.factor_list(poly)[1]
        if len(factors) >= 2:
            p, k = factors[0]
            pk = p ** k
            rest = sympy.quo(poly, pk)
            s, t_, g = sympy.gcdex(pk.as_expr(), rest.as_expr(), poly.gen)
            proj = sympy.Poly(sympy.expand(t_ * rest.as_expr()), poly.gen)
            f = Q.reduce(_poly_eval(A, proj, x, e))
            # f is idempotent modulo rad; multiply into the corner
            f = Q.reduce(A.mul(A.mul(e, f), e))
            return f, Q.reduce(A.add(e, f, -1))
        (p, k), = factors
        if p.degree() > 1:
            continue
        if k > 1 and saw_nilpotent is None:
            # x - lambda is a nonzero nilpotent n of a matrix block; some n b
            # has nonzero trace and is singular, so it splits the block
            lam = -p.all_coeffs()[1]
            saw_nilpotent = Q.reduce(A.add(x, e, F.elem(str(-lam))))
            if not basic:
                tries.extend(y for y in (Q.reduce(A.mul(saw_nilpotent, c)) for c in candidates) if y)
    if saw_nilpotent is not None:
        raise NotBasic("the semisimple quotient contains a matrix block")
    raise NonSplitSemisimpleQuotient("a simple component of A/rad is not split over Q")


def _lift(A: AbstractAlgebra, x: dict) -> dict:
    """Newton-type iteration e <- 3e^2 - 2e^3 until e is idempotent."""
    F = A.field
    e = x
    for _ in range(64):
        e2 = A.mul(e, e)
        if e2 == e:
            return e
        e3 = A.mul(e2, e)
        e = A.add(A.scale(e2, F.elem(3)), e3, F.elem(-2))
    raise AlgebraError("idempotent lifting did not converge")


def primitive_idempotents(A: AbstractAlgebra, rad: list | None = None, basic: bool = True) -> list:
    """Complete set of orthogonal primitive idempotents (sparse), ordered by
    the order in which the quotient splits (deterministic).

    With ``basic=True`` a non-basic algebra raises NotBasic; otherwise matrix
    blocks of the semisimple quotient are split as well.
    """
    F = A.field
    if rad is None:
        rad = radical_char0(A)
    span = EchelonBasis(F)
    for v in rad:
        span.add(A.sparse(v))
    Q = _Quotient(A, span)
    one = A.one()
    done, work = [], [Q.reduce(one)]
    while work:
        e = work.pop(0)
        parts = _split(Q, e, basic)
        if parts is None:
            done.append(e)
        else:
            work[:0] = list(parts)
    if basic and len(done) != len(Q.keep):
        raise NotBasic(f"A/rad has dimension {len(Q.keep)} but only {len(done)} primitive idempotents")
    # lift one by one inside the complement of the ones already lifted
    lifted = []
    total = {}
    for k, e in enumerate(done):
        if k == len(done) - 1:
            lifted.append(A.add(one, total, -1))
            break
        comp = A.add(one, total, -1)
        x = A.mul(A.mul(comp, e), comp)
        E = _lift(A, x)
        lifted.append(E)
        total = A.add(total, E)
    return lifted


def check_idempotents(A: AbstractAlgebra, idems: list) -> bool:
    F = A.field
    for i, x in enumerate(idems):
        for j, y in enumerate(idems):
            p = A.mul(x, y)
            if i == j and p != x:
                return False
            if i != j and p:
                return False
    total = {}
    for x in idems:
        total = A.add(total, x)
    return total == A.one()


# ---------------------------------------------------------------- presenting


def present_with_idempotents(A: AbstractAlgebra, idems: list, rad: list, vertex_labels: Sequence[str],
                             cap: int = 30, arrow_prefix: str = "") -> BoundQuiverAlgebra:
    """Bound quiver presentation of a basic algebra with known idempotents and radical.

    The returned algebra carries ``iso``: for every path-basis element its
    image in ``A`` (sparse).
    """
    F = A.field
    n = len(idems)
    labels = [str(v) for v in vertex_labels]
    powers = radical_powers(A, rad)
    loewy = len(powers)  # rad^(loewy+1) = 0
    rad1 = powers[0] if powers else EchelonBasis(F)
    rad2 = powers[1] if len(powers) > 1 else EchelonBasis(F)

    def corner(i, x, j):
        return A.mul(A.mul(idems[i], x), idems[j])

    arrows, reps = [], []
    for i in range(n):
        for j in range(n):
            sq = EchelonBasis(F)
            for v in rad2.rows.values():
                c = corner(i, v, j)
                if c:
                    sq.add(c)
            k = 0
            for v in list(rad1.rows.values()):
                c = corner(i, v, j)
                if c and sq.add(c):
                    name = f"{arrow_prefix}{labels[i]}>{labels[j]}"
                    if k:
                        name += f"#{k}"
                    arrows.append(Arrow(name, labels[i], labels[j]))
                    reps.append(c)
                    k += 1
    quiver = Quiver(tuple(labels), tuple(arrows))
    src = [labels.index(a.source) for a in arrows]
    tgt = [labels.index(a.target) for a in arrows]
    # images of all paths of length <= loewy + 1, grouped by (source, target)
    images = {}
    level = [((v,), idems[v], v) for v in range(n)]
    for v in range(n):
        images.setdefault((v, v), []).append(((), idems[v]))
    total = EchelonBasis(F)
    for v in range(n):
        total.add(idems[v])
    paths_by_len = [level]
    for length in range(1, loewy + 2):
        nxt = []
        for (key, img, t) in paths_by_len[-1]:
            s = key[0]
            for a in range(len(arrows)):
                if src[a] != t:
                    continue
                new = A.mul(img, reps[a]) if length > 1 else reps[a]
                path = key[1:] + (a,)
                images.setdefault((s, tgt[a]), []).append((path, new))
                if new:
                    # zero paths are recorded but not extended: every longer
                    # path through them lies in the ideal they generate
                    nxt.append(((s,) + path, new, tgt[a]))
                    total.add(new)
        paths_by_len.append(nxt)
    if len(total) != A.dim:
        raise NotBasic(f"paths span {len(total)} of {A.dim} dimensions; the idempotents are not a basic set")
    # relation ideal: kernel of the path map on paths of length >= 2
    rels = []
    for (s, t), items in sorted(images.items()):
        long = [(p, img) for p, img in items if len(p) >= 2]
        if not long:
            continue
        support = sorted({k for _, img in long for k in img})
        pos = {k: r for r, k in enumerate(support)}
        # columns ordered from largest path to smallest so the kernel basis
        # is expressed with the largest path as leading term
        order = sorted(range(len(long)), key=lambda k: (len(long[k][0]), long[k][0]), reverse=True)
        rows = [[F.zero] * len(order) for _ in support]
        for col, k in enumerate(order):
            for key, c in long[k][1].items():
                rows[pos[key]][col] = c
        kernel = nullspace(rows, len(order), F) if support else [
            [F.one if c == k else F.zero for c in range(len(order))] for k in range(len(order))]
        for vec in kernel:
            terms = tuple((vec[col], tuple(arrows[a].name for a in long[order[col]][0]))
                          for col in range(len(order)) if vec[col])
            rels.append((RelationElement(terms), s, t))
    rels = _minimal_generators(quiver, [r for r, _, _ in rels], F, loewy + 1)
    B = BoundQuiverAlgebra(quiver, rels, F, cap=max(cap, loewy + 3))
    if B.dim != A.dim:
        raise AlgebraError(f"presentation has dimension {B.dim}, expected {A.dim}")
    # path basis -> A coordinates
    lookup = {}
    for (s, t), items in images.items():
        for p, img in items:
            lookup[(s, p)] = img
    B.iso = [lookup[(s, p)] for (s, p) in B.basis]
    return B


def _minimal_generators(quiver: Quiver, rels: list, F: ScalarField, max_len: int) -> list:
    """Drop relations lying in the span of translates of the ones kept so far.

    Translates are truncated above ``max_len``; the caller rebuilds the
    algebra and compares dimensions, so an over-eager drop cannot go
    unnoticed.
    """
    arrows = {a.name: a for a in quiver.arrows}
    into = {}
    out_of = {}
    for a in quiver.arrows:
        into.setdefault(a.target, []).append(a.name)
        out_of.setdefault(a.source, []).append(a.name)
    index = {}

    def vec(terms):
        out = {}
        for c, p in terms:
            k = index.setdefault(p, len(index))
            out[k] = F.norm(out.get(k, F.zero) + c)
        return out

    span = EchelonBasis(F)
    chosen = []
    for rel in sorted(rels, key=lambda r: (min(len(p) for _, p in r.terms), max(len(p) for _, p in r.terms))):
        if span.contains(vec(rel.terms)):
            continue
        chosen.append(rel)
        seen = {rel.terms}
        frontier = [rel.terms]
        while frontier:
            nxt = []
            for terms in frontier:
                span.add(vec(terms))
                s = arrows[terms[0][1][0]].source
                t = arrows[terms[0][1][-1]].target
                grown = [tuple((c, (a,) + p) for c, p in terms if len(p) < max_len) for a in into.get(s, ())]
                grown += [tuple((c, p + (a,)) for c, p in terms if len(p) < max_len) for a in out_of.get(t, ())]
                for g in grown:
                    if g and g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
    return chosen


def to_bound_quiver(A: AbstractAlgebra, vertex_labels=None, cap: int = 30):
    """Basic presentation of ``A``.  Returns ``(algebra, idempotents)``."""
    rad = radical_char0(A)
    idems = primitive_idempotents(A, rad)
    labels = vertex_labels(idems) if callable(vertex_labels) else (
        vertex_labels or [str(k + 1) for k in range(len(idems))])
    B = present_with_idempotents(A, idems, rad, labels, cap=max(cap, A.dim))
    return B, idems
