"""Two-term complexes of projectives and silting mutation.

A map ``P_i -> P_j`` between indecomposable projective right modules is left
multiplication by an element of ``e_j A e_i``.  A matrix of such maps is a
dict ``{(row, col): element}`` with rows indexed by the target summands.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraError, BoundQuiverAlgebra
from .linalg import EchelonBasis
from .modules import Representation, _zeros, decompose_module, min_proj_presentation


class NotSilting(AlgebraError):
    pass


class NotTwoTermSilting(AlgebraError):
    pass


class NonSplitSummand(AlgebraError):
    pass


# ----------------------------------------------------------- element algebra


def _add_into(A, acc: dict, x: dict, s=None):
    F = A.field
    for k, v in x.items():
        nv = F.norm(acc.get(k, F.zero) + (v if s is None else s * v))
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def mat_mul(A, X: dict, Y: dict) -> dict:
    """Product of element matrices (entries multiplied left to right)."""
    by_row = {}
    for (k, c), y in Y.items():
        by_row.setdefault(k, []).append((c, y))
    out = {}
    for (r, k), x in X.items():
        for c, y in by_row.get(k, ()):
            p = A.mul(x, y)
            if p:
                _add_into(A, out.setdefault((r, c), {}), p)
    return {k: v for k, v in out.items() if v}


def mat_add(A, X: dict, Y: dict, s=None) -> dict:
    out = {k: dict(v) for k, v in X.items()}
    for k, y in Y.items():
        _add_into(A, out.setdefault(k, {}), y, s)
    return {k: v for k, v in out.items() if v}


def unit_part(A: BoundQuiverAlgebra, x: dict, i: int):
    return x.get(A.vertex_idempotents[i], A.field.zero)


def local_inverse(A: BoundQuiverAlgebra, u: dict, i: int) -> dict:
    """Inverse of ``u`` in the local ring ``e_i A e_i`` (unit part nonzero)."""
    F = A.field
    lam = unit_part(A, u, i)
    if not lam:
        raise AlgebraError("element is not invertible in the local ring")
    li = F.inv(lam)
    e = {A.vertex_idempotents[i]: F.one}
    # u = lam (e - m) with m nilpotent, so u^-1 = lam^-1 (e + m + m^2 + ...)
    m = _add_into(A, dict(e), {k: F.norm(v * li) for k, v in u.items()}, F.elem(-1))
    out, power = dict(e), dict(e)
    while True:
        power = A.mul(power, m)
        if not power:
            break
        _add_into(A, out, power)
    return {k: F.norm(v * li) for k, v in out.items()}


# ------------------------------------------------------------- complexes


@dataclass(eq=False)
class TwoTermComplex:
    """``P^-1 -> P^0``; ``diff[(r, c)]`` lies in ``e_{p0[r]} A e_{p1[c]}``."""

    algebra: BoundQuiverAlgebra
    p1: tuple
    p0: tuple
    diff: dict = field(default_factory=dict)

    def g_vector(self) -> tuple:
        g = [0] * self.algebra.n
        for v in self.p0:
            g[v] += 1
        for v in self.p1:
            g[v] -= 1
        return tuple(g)

    def is_zero(self) -> bool:
        return not self.p1 and not self.p0

    def is_minimal(self) -> bool:
        A = self.algebra
        for (r, c), x in self.diff.items():
            if self.p0[r] == self.p1[c] and unit_part(A, x, self.p0[r]):
                return False
        return True

    def __repr__(self):
        q = self.algebra.quiver
        left = "+".join(f"P{q.vertices[v]}" for v in self.p1) or "0"
        right = "+".join(f"P{q.vertices[v]}" for v in self.p0) or "0"
        return f"({left} -> {right})"


def stalk(A: BoundQuiverAlgebra, verts, degree: int = 0) -> TwoTermComplex:
    """``P`` concentrated in degree 0 (``degree=0``) or -1 (``degree=-1``)."""
    verts = tuple(verts)
    if degree == 0:
        return TwoTermComplex(A, (), verts, {})
    return TwoTermComplex(A, verts, (), {})


def direct_sum(*xs: TwoTermComplex) -> TwoTermComplex:
    A = xs[0].algebra
    p1, p0, diff = [], [], {}
    for X in xs:
        o1, o0 = len(p1), len(p0)
        for (r, c), v in X.diff.items():
            diff[(r + o0, c + o1)] = dict(v)
        p1.extend(X.p1)
        p0.extend(X.p0)
    return TwoTermComplex(A, tuple(p1), tuple(p0), diff)


@dataclass
class _Chain:
    """A bounded complex of projectives; ``diffs[t]`` maps ``terms[t]`` to ``terms[t+1]``."""

    algebra: BoundQuiverAlgebra
    terms: list
    diffs: list

    def eliminate_once(self) -> bool:
        A = self.algebra
        for t, D in enumerate(self.diffs):
            for (r, c), u in sorted(D.items()):
                i = self.terms[t + 1][r]
                if self.terms[t][c] == i and unit_part(A, u, i):
                    self._eliminate(t, r, c)
                    return True
        return False

    def _eliminate(self, t: int, r: int, c: int):
        A = self.algebra
        F = A.field
        D = self.diffs[t]
        u = D[(r, c)]
        uinv = local_inverse(A, u, self.terms[t][c])
        # clear column c by row operations on terms[t+1]
        for (rr, cc), x in list(D.items()):
            if cc != c or rr == r:
                continue
            E = A.mul(x, uinv)
            row_r = {k[1]: v for k, v in D.items() if k[0] == r}
            for c2, y in row_r.items():
                p = A.mul(E, y)
                if p:
                    acc = _add_into(A, D.setdefault((rr, c2), {}), p, F.elem(-1))
                    if not acc:
                        D.pop((rr, c2))
            if t + 1 < len(self.diffs):
                N = self.diffs[t + 1]
                for (s, k), z in list(N.items()):
                    if k == rr:
                        p = A.mul(z, E)
                        if p:
                            acc = _add_into(A, N.setdefault((s, r), {}), p)
                            if not acc:
                                N.pop((s, r))
        # clear row r by column operations on terms[t]
        for (rr, cc), y in list(D.items()):
            if rr != r or cc == c:
                continue
            E = A.mul(uinv, y)
            col_c = {k[0]: v for k, v in D.items() if k[1] == c}
            for r2, x in col_c.items():
                p = A.mul(x, E)
                if p:
                    acc = _add_into(A, D.setdefault((r2, cc), {}), p, F.elem(-1))
                    if not acc:
                        D.pop((r2, cc))
            if t > 0:
                Pm = self.diffs[t - 1]
                for (k, s), z in list(Pm.items()):
                    if k == cc:
                        p = A.mul(E, z)
                        if p:
                            acc = _add_into(A, Pm.setdefault((c, s), {}), p)
                            if not acc:
                                Pm.pop((c, s))
        self._drop(t + 1, r)
        self._drop(t, c)

    def _drop(self, t: int, k: int):
        del self.terms[t][k]
        if t < len(self.diffs):
            D = self.diffs[t]
            self.diffs[t] = {(r, c - (c > k)): v for (r, c), v in D.items() if c != k}
        if t > 0:
            D = self.diffs[t - 1]
            self.diffs[t - 1] = {(r - (r > k), c): v for (r, c), v in D.items() if r != k}

    def minimize(self):
        while self.eliminate_once():
            pass
        return self


def minimize(X: TwoTermComplex) -> TwoTermComplex:
    ch = _Chain(X.algebra, [list(X.p1), list(X.p0)], [{k: dict(v) for k, v in X.diff.items()}]).minimize()
    return TwoTermComplex(X.algebra, tuple(ch.terms[0]), tuple(ch.terms[1]), ch.diffs[0])


# --------------------------------------------------------- Hom spaces


class _MapSpace:
    """Coordinates on ``Hom(P(V), P(W))`` for vertex lists ``V`` (sources), ``W``."""

    def __init__(self, A: BoundQuiverAlgebra, V, W, offset: int = 0):
        self.A = A
        self.coords = [(r, c, b) for r, w in enumerate(W) for c, v in enumerate(V) for b in A.block(w, v)]
        self.offset = offset
        self.index = {x: k + offset for k, x in enumerate(self.coords)}

    def __len__(self):
        return len(self.coords)

    def vec(self, M: dict) -> dict:
        out = {}
        for (r, c), x in M.items():
            for b, v in x.items():
                out[self.index[(r, c, b)]] = v
        return out

    def mat(self, vec: dict) -> dict:
        out = {}
        for k, v in vec.items():
            k -= self.offset
            if 0 <= k < len(self.coords):
                r, c, b = self.coords[k]
                out.setdefault((r, c), {})[b] = v
        return out

    def unit(self, k: int) -> dict:
        r, c, b = self.coords[k]
        return {(r, c): {b: self.A.field.one}}


def _span_rank(vectors, F) -> int:
    ech = EchelonBasis(F)
    for v in vectors:
        if v:
            ech.add(v)
    return len(ech)


def hom_one_shift(X: TwoTermComplex, Y: TwoTermComplex) -> int:
    """``dim Hom_K(X, Y[1])``: maps ``X^-1 -> Y^0`` modulo those through the differentials."""
    A = X.algebra
    target = _MapSpace(A, X.p1, Y.p0)
    if not len(target):
        return 0
    vecs = []
    h_space = _MapSpace(A, X.p1, Y.p1)
    for k in range(len(h_space)):
        vecs.append(target.vec(mat_mul(A, Y.diff, h_space.unit(k))))
    g_space = _MapSpace(A, X.p0, Y.p0)
    for k in range(len(g_space)):
        vecs.append(target.vec(mat_mul(A, g_space.unit(k), X.diff)))
    return len(target) - _span_rank(vecs, A.field)


@dataclass
class ChainMap:
    """A chain map ``X -> Y``: components in degrees -1 and 0."""

    f1: dict
    f0: dict


def compose(A, g: ChainMap, f: ChainMap) -> ChainMap:
    return ChainMap(mat_mul(A, g.f1, f.f1), mat_mul(A, g.f0, f.f0))


class HomK:
    """``Hom`` in the homotopy category between two two-term complexes."""

    def __init__(self, X: TwoTermComplex, Y: TwoTermComplex):
        A = X.algebra
        F = A.field
        self.X, self.Y = X, Y
        self.s1 = _MapSpace(A, X.p1, Y.p1)
        self.s0 = _MapSpace(A, X.p0, Y.p0, offset=len(self.s1))
        total = len(self.s1) + len(self.s0)
        # chain condition d_Y f1 - f0 d_X = 0
        tgt = _MapSpace(A, X.p1, Y.p0)
        cols = []
        for k in range(len(self.s1)):
            cols.append(tgt.vec(mat_mul(A, Y.diff, self.s1.unit(k))))
        for k in range(len(self.s0)):
            cols.append({i: F.norm(-v) for i, v in tgt.vec(mat_mul(A, self.s0.unit(k), X.diff)).items()})
        chain = _kernel(cols, total, F)
        # homotopies h: X^0 -> Y^-1 give (h d_X, d_Y h)
        hs = _MapSpace(A, X.p0, Y.p1)
        self.homotopy = EchelonBasis(F)
        for k in range(len(hs)):
            h = hs.unit(k)
            v = self.s1.vec(mat_mul(A, h, X.diff))
            v.update(self.s0.vec(mat_mul(A, Y.diff, h)))
            if v:
                self.homotopy.add(v)
        self.basis = []
        ech = EchelonBasis(F)
        for v in self.homotopy.rows.values():
            ech.add(v)
        for v in chain:
            if ech.add(v):
                self.basis.append(v)

    def as_map(self, v: dict) -> ChainMap:
        return ChainMap(self.s1.mat(v), self.s0.mat(v))

    def as_vector(self, f: ChainMap) -> dict:
        v = self.s1.vec(f.f1)
        v.update(self.s0.vec(f.f0))
        return v

    def maps(self) -> list:
        return [self.as_map(v) for v in self.basis]

    def __len__(self):
        return len(self.basis)


def _kernel(cols, ncols: int, F) -> list:
    """Sparse kernel of the linear map whose k-th column is ``cols[k]``."""
    from .linalg import nullspace
    if ncols == 0:
        return []
    rows_idx = sorted({i for c in cols for i in c})
    if not rows_idx:
        return [{k: F.one} for k in range(ncols)]
    pos = {i: n for n, i in enumerate(rows_idx)}
    rows = [[F.zero] * ncols for _ in rows_idx]
    for k, c in enumerate(cols):
        for i, v in c.items():
            rows[pos[i]][k] = v
    return [{k: x for k, x in enumerate(v) if x} for v in nullspace(rows, ncols, F)]


def top_trace(X: TwoTermComplex, f: ChainMap):
    """Trace of an endomorphism on the top of the first nonzero term."""
    A = X.algebra
    F = A.field
    if X.p0:
        verts, M = X.p0, f.f0
    else:
        verts, M = X.p1, f.f1
    total = F.zero
    for r, v in enumerate(verts):
        x = M.get((r, r))
        if x:
            total += unit_part(A, x, v)
    return F.norm(total)


def radical_endomorphisms(X: TwoTermComplex, H: HomK | None = None) -> list:
    """Basis of the radical of ``End_K(X)`` for an indecomposable ``X``."""
    H = H or HomK(X, X)
    F = X.algebra.field
    maps = H.maps()
    traces = [top_trace(X, f) for f in maps]
    pivot = next((k for k, t in enumerate(traces) if t), None)
    if pivot is None:
        raise NonSplitSummand("no endomorphism with nonzero top trace")
    out = []
    for k, f in enumerate(maps):
        if k == pivot:
            continue
        s = traces[k] / traces[pivot]
        out.append(ChainMap(mat_add(X.algebra, f.f1, maps[pivot].f1, F.norm(-s)),
                            mat_add(X.algebra, f.f0, maps[pivot].f0, F.norm(-s))))
    return out


# ------------------------------------------------------------ presilting


def is_presilting(summands) -> bool:
    return all(hom_one_shift(X, Y) == 0 for X in summands for Y in summands)


# ---------------------------------------------------- pairs and complexes


def cokernel_module(X: TwoTermComplex) -> Representation:
    """``H^0(X)`` as a representation."""
    A = X.algebra
    F = A.field
    spaces, reds = [], []
    for j in range(A.n):
        labels = [(r, b) for r, w in enumerate(X.p0) for b in A.block(w, j)]
        pos = {lab: k for k, lab in enumerate(labels)}
        ech = EchelonBasis(F)
        for c, v in enumerate(X.p1):
            for b in A.block(v, j):
                vec = {}
                for r in range(len(X.p0)):
                    u = X.diff.get((r, c))
                    if u:
                        for bb, x in A.mul(u, {b: F.one}).items():
                            vec[pos[(r, bb)]] = F.norm(vec.get(pos[(r, bb)], F.zero) + x)
                vec = {k: x for k, x in vec.items() if x}
                if vec:
                    ech.add(vec)
        free = [k for k in range(len(labels)) if k not in ech.rows]
        spaces.append((labels, pos, free, {k: t for t, k in enumerate(free)}))
        reds.append(ech)
    dims = tuple(len(s[2]) for s in spaces)
    maps = []
    for a, elem in enumerate(A.arrow_elements):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        labels_s, _, free_s, _ = spaces[s]
        _, pos_t, _, coord_t = spaces[t]
        m = _zeros(dims[t], dims[s], F)
        for col, k in enumerate(free_s):
            r, b = labels_s[k]
            vec = {}
            for bb, x in A.mul({b: F.one}, elem).items():
                vec[pos_t[(r, bb)]] = x
            for kk, x in reds[t].reduce(vec).items():
                m[coord_t[kk]][col] = x
        maps.append(m)
    return Representation(A, dims, tuple(maps))


def presentation_complex(M: Representation) -> TwoTermComplex:
    pres = min_proj_presentation(M)
    return TwoTermComplex(M.algebra, pres.p1, pres.p0, dict(pres.diff))


def pair_to_complex(A: BoundQuiverAlgebra, M: Representation | None, P=()) -> TwoTermComplex:
    parts = []
    if M is not None and not M.is_zero():
        parts.append(presentation_complex(M))
    if P:
        parts.append(stalk(A, P, -1))
    if not parts:
        return TwoTermComplex(A, (), (), {})
    return direct_sum(*parts)


def complex_to_pair(X: TwoTermComplex):
    """``(H^0 X, P)`` with ``X`` homotopic to ``presentation(H^0 X) + P[1]``."""
    X = minimize(X)
    M = cokernel_module(X)
    pres = min_proj_presentation(M)
    counts = [0] * X.algebra.n
    for v in X.p1:
        counts[v] += 1
    for v in pres.p1:
        counts[v] -= 1
    if any(c < 0 for c in counts) or sorted(pres.p0) != sorted(X.p0):
        raise NotTwoTermSilting("complex does not split as a presentation plus shifted projectives")
    P = tuple(v for v in range(X.algebra.n) for _ in range(counts[v]))
    return M, P


def decompose(X: TwoTermComplex) -> list:
    """Indecomposable summands with multiplicities ``[(Y, m), ...]``."""
    A = X.algebra
    M, P = complex_to_pair(X)
    out = []
    for N, m in decompose_module(M):
        out.append((presentation_complex(N), m))
    for v in sorted(set(P)):
        out.append((stalk(A, [v], -1), P.count(v)))
    return out


# --------------------------------------------------------------- mutation


class SiltingContext:
    """Caches Hom spaces between indecomposable two-term presilting complexes.

    Indecomposable presilting complexes are determined by their g-vectors,
    so every summand is stored once under its g-vector.
    """

    def __init__(self, A: BoundQuiverAlgebra, full_approximation: bool = False):
        self.A = A
        self.full_approximation = full_approximation
        self.objects: dict = {}
        self._hom: dict = {}
        self._rad: dict = {}

    def canonical(self, X: TwoTermComplex) -> TwoTermComplex:
        g = X.g_vector()
        return self.objects.setdefault(g, X)

    def initial(self) -> list:
        return [self.canonical(stalk(self.A, [i], 0)) for i in range(self.A.n)]

    def shifted(self) -> list:
        return [self.canonical(stalk(self.A, [i], -1)) for i in range(self.A.n)]

    def hom(self, gx, gy) -> HomK:
        key = (gx, gy)
        if key not in self._hom:
            self._hom[key] = HomK(self.objects[gx], self.objects[gy])
        return self._hom[key]

    def rad(self, gx) -> list:
        if gx not in self._rad:
            self._rad[gx] = radical_endomorphisms(self.objects[gx], self.hom(gx, gx))
        return self._rad[gx]

    def radical_maps(self, ga, gb) -> list:
        """Basis of ``rad(U_a, U_b)`` (all maps when non-isomorphic)."""
        if ga == gb:
            return self.rad(ga)
        return self.hom(ga, gb).maps()

    # approximations ----------------------------------------------------

    def _left_approximation(self, gx, others) -> list:
        A = self.A
        F = A.field
        chosen = []
        for gl in others:
            H = self.hom(gx, gl)
            if not len(H):
                continue
            if self.full_approximation:
                chosen.extend((gl, f) for f in H.maps())
                continue
            ech = EchelonBasis(F)
            for v in H.homotopy.rows.values():
                ech.add(v)
            for gm in others:
                for f in self.hom(gx, gm).maps():
                    for rho in self.radical_maps(gm, gl):
                        ech.add(H.as_vector(compose(A, rho, f)))
            for v in H.basis:
                if ech.add(v):
                    chosen.append((gl, H.as_map(v)))
        return chosen

    def _right_approximation(self, gx, others) -> list:
        A = self.A
        F = A.field
        chosen = []
        for gl in others:
            H = self.hom(gl, gx)
            if not len(H):
                continue
            if self.full_approximation:
                chosen.extend((gl, f) for f in H.maps())
                continue
            ech = EchelonBasis(F)
            for v in H.homotopy.rows.values():
                ech.add(v)
            for gm in others:
                for f in self.hom(gm, gx).maps():
                    for rho in self.radical_maps(gl, gm):
                        ech.add(H.as_vector(compose(A, f, rho)))
            for v in H.basis:
                if ech.add(v):
                    chosen.append((gl, H.as_map(v)))
        return chosen

    # cones ---------------------------------------------------------------

    def _stack(self, maps):
        """Direct sum of the targets/sources of ``maps`` with block offsets."""
        objs = [self.objects[g] for g, _ in maps]
        U = direct_sum(*objs) if objs else TwoTermComplex(self.A, (), (), {})
        offs, o1, o0 = [], 0, 0
        for Y in objs:
            offs.append((o1, o0))
            o1 += len(Y.p1)
            o0 += len(Y.p0)
        return U, offs

    def left_cone(self, X: TwoTermComplex, maps) -> _Chain:
        A = self.A
        F = A.field
        U, offs = self._stack(maps)
        n0 = len(X.p0)
        # X^-1 -> X^0 + U^-1 -> U^0
        D0 = {k: {b: F.norm(-v) for b, v in x.items()} for k, x in X.diff.items()}
        D1 = {}
        for (g, f), (o1, o0) in zip(maps, offs):
            for (r, c), x in f.f1.items():
                D0[(n0 + o1 + r, c)] = dict(x)
            for (r, c), x in f.f0.items():
                D1[(o0 + r, c)] = dict(x)
        for (r, c), x in U.diff.items():
            D1[(r, n0 + c)] = dict(x)
        return _Chain(A, [list(X.p1), list(X.p0) + list(U.p1), list(U.p0)], [D0, D1])

    def right_cocone(self, X: TwoTermComplex, maps) -> _Chain:
        A = self.A
        F = A.field
        U, offs = self._stack(maps)
        n0 = len(U.p0)
        # U^-1 -> U^0 + X^-1 -> X^0
        D0 = {k: {b: F.norm(-v) for b, v in x.items()} for k, x in U.diff.items()}
        D1 = {}
        for (g, f), (o1, o0) in zip(maps, offs):
            for (r, c), x in f.f1.items():
                D0[(n0 + r, o1 + c)] = dict(x)
            for (r, c), x in f.f0.items():
                D1[(r, o0 + c)] = dict(x)
        for (r, c), x in X.diff.items():
            D1[(r, n0 + c)] = dict(x)
        return _Chain(A, [list(U.p1), list(U.p0) + list(X.p1), list(X.p0)], [D0, D1])

    def _new_summand(self, ch: _Chain, lo: int, others) -> TwoTermComplex | None:
        """Two-term part of a minimized cone, or None if it needs three terms."""
        ch.minimize()
        if ch.terms[2 * lo]:
            return None
        if lo == 0:
            Y = TwoTermComplex(self.A, tuple(ch.terms[1]), tuple(ch.terms[2]), ch.diffs[1])
        else:
            Y = TwoTermComplex(self.A, tuple(ch.terms[0]), tuple(ch.terms[1]), ch.diffs[0])
        if self.full_approximation:
            parts = [(Z, m) for Z, m in decompose(Y) if Z.g_vector() not in set(others)]
            if len(parts) != 1 or parts[0][1] != 1:
                raise NotSilting("mutation did not produce exactly one new summand")
            Y = parts[0][0]
        return Y

    def mutate(self, node, k: int):
        """Mutate the node (a list of g-vectors) at position ``k``.

        Returns ``(new_node, direction)`` where direction is ``"left"`` when
        the result is smaller than the input and ``"right"`` otherwise.
        """
        gx = node[k]
        others = [g for i, g in enumerate(node) if i != k]
        X = self.objects[gx]
        Y = self._new_summand(self.left_cone(X, self._left_approximation(gx, others)), 0, others)
        direction = "left"
        if Y is None:
            Y = self._new_summand(self.right_cocone(X, self._right_approximation(gx, others)), 1, others)
            direction = "right"
        if Y is None:
            raise NotSilting("neither mutation of the summand is two-term")
        Y = self.canonical(Y)
        new = list(node)
        new[k] = Y.g_vector()
        return new, direction


def mutate(T: list, k: int, full_approximation: bool = False) -> list:
    """Mutate a silting complex given as a list of indecomposable summands."""
    if not T:
        raise NotSilting("empty complex")
    A = T[0].algebra
    ctx = SiltingContext(A, full_approximation)
    node = [ctx.canonical(X).g_vector() for X in T]
    if len(set(node)) != A.n or not is_presilting(T):
        raise NotSilting("input is not a basic two-term silting complex")
    new, _ = ctx.mutate(node, k)
    return [ctx.objects[g] for g in new]
