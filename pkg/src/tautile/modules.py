"""Right modules over bound quiver algebras: Hom, presentations and tau.

A representation assigns a vector space ``M e_i`` to each vertex and, to an
arrow ``a: i -> j``, the matrix of ``m -> m a`` (rows indexed by the target
space, columns by the source space).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraError, BoundQuiverAlgebra
from .linalg import EchelonBasis, nullspace, rank, solve_many


class InvalidRepresentation(AlgebraError):
    pass


def _zeros(r, c, F):
    return [[F.zero] * c for _ in range(r)]


def _mm(X, Y, F):
    """Matrix product of row lists (X is r x m, Y is m x c)."""
    if not X or not Y:
        return _zeros(len(X), len(Y[0]) if Y else 0, F)
    cols = len(Y[0])
    out = []
    for row in X:
        acc = [F.zero] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(Y[k]):
                    if y:
                        acc[j] += x * y
        out.append([F.norm(v) for v in acc])
    return out


def _col(X, j):
    return [row[j] for row in X]


@dataclass(eq=False)
class Representation:
    algebra: BoundQuiverAlgebra
    dims: tuple
    maps: tuple  # maps[a] is a (dim target) x (dim source) matrix
    _paths: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple:
        return tuple(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_matrix(self, b: int):
        """Matrix of ``m -> m p`` for the basis path ``b``."""
        hit = self._paths.get(b)
        if hit is not None:
            return hit
        A = self.algebra
        F = A.field
        s, arrows = A.basis[b]
        d = self.dims[s]
        mat = [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]
        for a in arrows:
            mat = _mm(self.maps[a], mat, F)
        self._paths[b] = mat
        return mat

    def element_matrix(self, x: dict, i: int, j: int):
        """Matrix of right multiplication by ``x`` from ``M e_i`` to ``M e_j``."""
        F = self.algebra.field
        out = _zeros(self.dims[j], self.dims[i], F)
        for b, c in x.items():
            A = self.algebra
            if A.source(b) != i or A.target(b) != j:
                continue
            pm = self.path_matrix(b)
            for r in range(len(out)):
                for k in range(len(out[r])):
                    if pm[r][k]:
                        out[r][k] = F.norm(out[r][k] + c * pm[r][k])
        return out

    def act(self, v, b: int):
        """Vector ``v`` at the source of path ``b`` times ``b``."""
        pm = self.path_matrix(b)
        F = self.algebra.field
        return [F.norm(sum((x * y for x, y in zip(row, v) if x and y), F.zero)) for row in pm]

    def validate(self):
        A = self.algebra
        F = A.field
        q = A.quiver
        if len(self.dims) != q.n or len(self.maps) != len(q.arrows):
            raise InvalidRepresentation("wrong number of vertices or arrows")
        for k, m in enumerate(self.maps):
            s, t = A._arrow_src[k], A._arrow_tgt[k]
            if len(m) != self.dims[t] or any(len(r) != self.dims[s] for r in m):
                raise InvalidRepresentation(f"matrix of arrow {q.arrows[k].name} has the wrong shape")
        for rel in A.relations:
            total = None
            for c, path in rel.terms:
                idx = [q.arrow_index(a) for a in path]
                s = A._arrow_src[idx[0]]
                mat = [[F.one if i == j else F.zero for j in range(self.dims[s])] for i in range(self.dims[s])]
                for a in idx:
                    mat = _mm(self.maps[a], mat, F)
                if total is None:
                    total = [[F.elem(c) * x for x in row] for row in mat]
                else:
                    total = [[F.norm(x + F.elem(c) * y) for x, y in zip(r1, r2)] for r1, r2 in zip(total, mat)]
            if total and any(x for row in total for x in row):
                raise InvalidRepresentation("a relation does not vanish")
        return self


def zero_module(A: BoundQuiverAlgebra) -> Representation:
    return Representation(A, tuple(0 for _ in range(A.n)),
                          tuple([] for _ in A.quiver.arrows))


def free_module(A: BoundQuiverAlgebra, verts) -> tuple:
    """``P = sum of P_v`` for ``v`` in ``verts``; returns ``(rep, labels)``.

    ``labels[j]`` lists the basis of ``P e_j`` as pairs ``(summand, path)``.
    """
    F = A.field
    verts = list(verts)
    labels = []
    for j in range(A.n):
        labels.append([(r, b) for r, v in enumerate(verts) for b in A.block(v, j)])
    pos = [{lab: k for k, lab in enumerate(labels[j])} for j in range(A.n)]
    maps = []
    for a, elem in enumerate(A.arrow_elements):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        m = _zeros(len(labels[t]), len(labels[s]), F)
        for k, (r, b) in enumerate(labels[s]):
            for bb, c in A.mul({b: F.one}, elem).items():
                m[pos[t][(r, bb)]][k] = c
        maps.append(m)
    rep = Representation(A, tuple(len(x) for x in labels), tuple(maps))
    return rep, labels


def projective_of(A: BoundQuiverAlgebra, vertex) -> Representation:
    i = vertex if isinstance(vertex, int) else A.quiver.vertex_index(vertex)
    return free_module(A, [i])[0]


def simple_of(A: BoundQuiverAlgebra, vertex) -> Representation:
    i = vertex if isinstance(vertex, int) else A.quiver.vertex_index(vertex)
    dims = tuple(1 if j == i else 0 for j in range(A.n))
    maps = []
    for a in range(len(A.quiver.arrows)):
        maps.append(_zeros(dims[A._arrow_tgt[a]], dims[A._arrow_src[a]], A.field))
    return Representation(A, dims, tuple(maps))


def direct_sum(*mods: Representation) -> Representation:
    A = mods[0].algebra
    F = A.field
    dims = tuple(sum(M.dims[i] for M in mods) for i in range(A.n))
    maps = []
    for a in range(len(A.quiver.arrows)):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        m = _zeros(dims[t], dims[s], F)
        ro = co = 0
        for M in mods:
            for r, row in enumerate(M.maps[a]):
                for c, x in enumerate(row):
                    m[ro + r][co + c] = x
            ro += M.dims[t]
            co += M.dims[s]
        maps.append(m)
    return Representation(A, dims, tuple(maps))


# ------------------------------------------------------------------- Hom


def hom_space(M: Representation, N: Representation) -> list:
    """Basis of Hom_A(M, N); each map is a tuple of matrices (N_i x M_i)."""
    A = M.algebra
    F = A.field
    off, k = [], 0
    for i in range(A.n):
        off.append(k)
        k += N.dims[i] * M.dims[i]
    nvars = k
    if nvars == 0:
        return []
    rows = []
    for a in range(len(A.quiver.arrows)):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        Na, Ma = N.maps[a], M.maps[a]
        # (N_a f_s - f_t M_a)[p][q] = 0
        for p in range(N.dims[t]):
            for q in range(M.dims[s]):
                row = {}
                for x in range(N.dims[s]):
                    c = Na[p][x]
                    if c:
                        v = off[s] + x * M.dims[s] + q
                        row[v] = row.get(v, F.zero) + c
                for y in range(M.dims[t]):
                    c = Ma[y][q]
                    if c:
                        v = off[t] + p * M.dims[t] + y
                        row[v] = row.get(v, F.zero) - c
                row = {v: c for v, c in row.items() if c}
                if row:
                    dense = [F.zero] * nvars
                    for v, c in row.items():
                        dense[v] = c
                    rows.append(dense)
    basis = nullspace(rows, nvars, F) if rows else [
        [F.one if j == v else F.zero for j in range(nvars)] for v in range(nvars)]
    out = []
    for vec in basis:
        mats = []
        for i in range(A.n):
            r, c = N.dims[i], M.dims[i]
            mats.append([vec[off[i] + p * c:off[i] + (p + 1) * c] for p in range(r)])
        out.append(tuple(mats))
    return out


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


# --------------------------------------------------------- tops and covers


def radical_span(M: Representation) -> list:
    """Per vertex, an echelon basis of ``(M rad) e_j``."""
    A = M.algebra
    F = A.field
    spans = [EchelonBasis(F) for _ in range(A.n)]
    for a in range(len(A.quiver.arrows)):
        t = A._arrow_tgt[a]
        m = M.maps[a]
        for c in range(M.dims[A._arrow_src[a]]):
            v = {r: m[r][c] for r in range(M.dims[t]) if m[r][c]}
            if v:
                spans[t].add(v)
    return spans


def top_generators(M: Representation, vectors=None) -> list:
    """Per vertex, vectors spanning a complement of the radical (greedy in basis order).

    ``vectors[j]`` optionally restricts the candidates (default: unit vectors).
    """
    A = M.algebra
    F = A.field
    spans = radical_span(M)
    gens = []
    for j in range(A.n):
        cands = vectors[j] if vectors is not None else [
            {k: F.one} for k in range(M.dims[j])]
        chosen = []
        for v in cands:
            if spans[j].add(v):
                chosen.append(v)
        gens.append(chosen)
    return gens


def top_dims(M: Representation) -> tuple:
    return tuple(len(g) for g in top_generators(M))


def _cover_map(M: Representation, gens):
    """Projective cover data for ``M`` generated by ``gens`` (per-vertex lists)."""
    A = M.algebra
    F = A.field
    verts = [j for j in range(A.n) for _ in gens[j]]
    gvecs = [g for j in range(A.n) for g in gens[j]]
    P, labels = free_module(A, verts)
    pis = []
    for j in range(A.n):
        mat = _zeros(M.dims[j], len(labels[j]), F)
        for k, (r, b) in enumerate(labels[j]):
            g = gvecs[r]
            dense = [g.get(x, F.zero) for x in range(M.dims[verts[r]])]
            col = M.act(dense, b)
            for x, c in enumerate(col):
                mat[x][k] = c
        pis.append(mat)
    return verts, P, labels, pis


@dataclass(frozen=True)
class ProjectivePresentation:
    """``P1 -> P0 -> M -> 0``; ``diff[(r, c)]`` is an element of ``e_{p0[r]} A e_{p1[c]}``."""

    p1: tuple
    p0: tuple
    diff: dict

    def g_vector(self, n: int) -> tuple:
        g = [0] * n
        for v in self.p0:
            g[v] += 1
        for v in self.p1:
            g[v] -= 1
        return tuple(g)


def min_proj_presentation(M: Representation) -> ProjectivePresentation:
    A = M.algebra
    F = A.field
    if M.is_zero():
        return ProjectivePresentation((), (), {})
    verts0, P0, labels0, pis = _cover_map(M, top_generators(M))
    # kernel of the cover, vertex by vertex
    kern = []
    for j in range(A.n):
        if not labels0[j]:
            kern.append([])
            continue
        if M.dims[j] == 0:
            basis = [[F.one if x == k else F.zero for x in range(len(labels0[j]))]
                     for k in range(len(labels0[j]))]
        else:
            basis = nullspace(pis[j], len(labels0[j]), F)
        kern.append([{k: c for k, c in enumerate(v) if c} for v in basis])
    K_rad = [EchelonBasis(F) for _ in range(A.n)]
    for a in range(len(A.quiver.arrows)):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        m = P0.maps[a]
        for v in kern[s]:
            img = {}
            for k, c in v.items():
                for r in range(len(m)):
                    if m[r][k]:
                        img[r] = F.norm(img.get(r, F.zero) + c * m[r][k])
            img = {r: c for r, c in img.items() if c}
            if img:
                K_rad[t].add(img)
    verts1, diff = [], {}
    for j in range(A.n):
        for v in kern[j]:
            if not K_rad[j].add(v):
                continue
            c = len(verts1)
            verts1.append(j)
            for k, x in v.items():
                r, b = labels0[j][k]
                d = diff.setdefault((r, c), {})
                d[b] = F.norm(d.get(b, F.zero) + x)
    diff = {k: {b: x for b, x in v.items() if x} for k, v in diff.items()}
    diff = {k: v for k, v in diff.items() if v}
    return ProjectivePresentation(tuple(verts1), tuple(verts0), diff)


def g_vector(M: Representation) -> tuple:
    return min_proj_presentation(M).g_vector(M.algebra.n)


def transpose_dual(A: BoundQuiverAlgebra, pres: ProjectivePresentation) -> Representation:
    """``D Tr`` of the cokernel of a minimal presentation."""
    F = A.field
    p1, p0, d = pres.p1, pres.p0, pres.diff
    spaces, comps, reducers = [], [], []
    for j in range(A.n):
        labels = [(c, b) for c, v in enumerate(p1) for b in A.block(j, v)]
        pos = {lab: k for k, lab in enumerate(labels)}
        ech = EchelonBasis(F)
        for r, w in enumerate(p0):
            for b in A.block(j, w):
                vec = {}
                for c in range(len(p1)):
                    u = d.get((r, c))
                    if not u:
                        continue
                    for bb, x in A.mul({b: F.one}, u).items():
                        k = pos[(c, bb)]
                        vec[k] = F.norm(vec.get(k, F.zero) + x)
                vec = {k: x for k, x in vec.items() if x}
                if vec:
                    ech.add(vec)
        free = [k for k in range(len(labels)) if k not in ech.rows]
        spaces.append(labels)
        comps.append(free)
        reducers.append((pos, ech, {k: t for t, k in enumerate(free)}))
    dims = tuple(len(f) for f in comps)
    maps = []
    for a, elem in enumerate(A.arrow_elements):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        # left multiplication by a: N e_t -> N e_s; dualised it goes s -> t
        m = _zeros(dims[t], dims[s], F)
        pos_s, ech_s, coord_s = reducers[s]
        for tt, k in enumerate(comps[t]):
            c, b = spaces[t][k]
            vec = {}
            for bb, x in A.mul(elem, {b: F.one}).items():
                kk = pos_s[(c, bb)]
                vec[kk] = F.norm(vec.get(kk, F.zero) + x)
            for kk, x in ech_s.reduce(vec).items():
                m[tt][coord_s[kk]] = x
        maps.append(m)
    return Representation(A, dims, tuple(maps))


def ar_translate(M: Representation) -> Representation:
    return transpose_dual(M.algebra, min_proj_presentation(M))


# ----------------------------------------------------------------- tau-rigid


def tau_rigid_check(M: Representation, P=()) -> bool:
    """``Hom(M, tau M) = 0`` and ``Hom(P, M) = 0`` for the projective ``P`` (vertex list)."""
    if any(M.dims[v] for v in P):
        return False
    if M.is_zero():
        return True
    return hom_dim(M, ar_translate(M)) == 0


def is_support_tau_tilting(M: Representation, P=()) -> bool:
    """tau-rigid pair whose number of non-isomorphic summands equals the vertex count."""
    if not tau_rigid_check(M, P):
        return False
    count = len(decompose_module(M)) + len(set(P))
    return count == M.algebra.n


def g_matrix(summands, support=()) -> list:
    """g-vectors of the indecomposable summands of a pair, sorted (canonical key)."""
    out = []
    for M in summands:
        out.append(g_vector(M))
    for v in support:
        n = summands[0].algebra.n if summands else None
        if n is None:
            raise ValueError("support-only pairs need the algebra: use g_matrix_for")
        out.append(tuple(-1 if i == v else 0 for i in range(n)))
    return sorted(out)


def g_matrix_for(A: BoundQuiverAlgebra, summands, support=()) -> list:
    out = [g_vector(M) for M in summands]
    out += [tuple(-1 if i == v else 0 for i in range(A.n)) for v in support]
    return sorted(out)


def fac_order_geq(M: Representation, N: Representation) -> bool:
    """True iff ``N`` is a quotient of a direct sum of copies of ``M``."""
    A = M.algebra
    F = A.field
    if N.is_zero():
        return True
    homs = hom_space(M, N)
    for i in range(A.n):
        if not N.dims[i]:
            continue
        cols = []
        for f in homs:
            for c in range(M.dims[i]):
                cols.append(_col(f[i], c))
        if not cols or rank(cols, N.dims[i], F) < N.dims[i]:
            return False
    return True


# -------------------------------------------------------------- decompose


def _hom_vector(f) -> list:
    return [x for mat in f for row in mat for x in row]


def _compose(g, f, F):
    """``g o f`` vertex by vertex."""
    return tuple(_mm(gi, fi, F) for gi, fi in zip(g, f))


def endomorphism_algebra(M: Representation):
    """End(M) as an abstract algebra on a basis of module maps.

    The product is composition ``x * y = x o y``, so the algebra acts on the
    left of ``M``.
    """
    from .presentation import AbstractAlgebra
    F = M.algebra.field
    basis = hom_space(M, M)
    d = len(basis)
    vecs = [_hom_vector(f) for f in basis]
    nv = len(vecs[0]) if vecs else 0
    cols = [[v[k] for v in vecs] for k in range(nv)]  # nv x d system
    rhs, keys = [], []
    for i in range(d):
        for j in range(d):
            rhs.append(_hom_vector(_compose(basis[i], basis[j], F)))
            keys.append((i, j))
    sols = solve_many(cols, rhs, d, F)
    table = {}
    for key, s in zip(keys, sols):
        if s is None:
            raise AlgebraError("composition left the endomorphism space")
        table[key] = {k: c for k, c in enumerate(s) if c}
    ident = tuple([[F.one if r == c else F.zero for c in range(M.dims[i])] for r in range(M.dims[i])]
                  for i in range(M.algebra.n))
    one = solve_many(cols, [_hom_vector(ident)], d, F)[0]
    E = AbstractAlgebra([f"f{k}" for k in range(d)], table, F, identity={k: c for k, c in enumerate(one) if c})
    return E, basis


def _combine(basis, x: dict, F):
    first = basis[0]
    out = tuple([[F.zero] * len(row) for row in mat] for mat in first)
    for k, c in x.items():
        for i, mat in enumerate(basis[k]):
            for r, row in enumerate(mat):
                for s, y in enumerate(row):
                    if y:
                        out[i][r][s] = F.norm(out[i][r][s] + c * y)
    return out


def image_module(M: Representation, e) -> Representation:
    """The submodule ``e(M)`` for an endomorphism ``e`` (used with idempotents)."""
    A = M.algebra
    F = A.field
    bases = []
    for i in range(A.n):
        cols = [_col(e[i], c) for c in range(M.dims[i])]
        ech = EchelonBasis(F)
        chosen = []
        for v in cols:
            if ech.add({k: x for k, x in enumerate(v) if x}):
                chosen.append(v)
        bases.append(chosen)
    maps = []
    for a in range(len(A.quiver.arrows)):
        s, t = A._arrow_src[a], A._arrow_tgt[a]
        imgs = [[F.norm(sum((x * y for x, y in zip(row, v) if x and y), F.zero)) for row in M.maps[a]]
                for v in bases[s]]
        if not bases[t]:
            maps.append(_zeros(0, len(bases[s]), F))
            continue
        system = [[v[k] for v in bases[t]] for k in range(M.dims[t])]
        sols = solve_many(system, imgs, len(bases[t]), F)
        m = _zeros(len(bases[t]), len(bases[s]), F)
        for c, sol in enumerate(sols):
            if sol is None:
                raise AlgebraError("image of an endomorphism is not a submodule")
            for r, x in enumerate(sol):
                m[r][c] = x
        maps.append(m)
    return Representation(A, tuple(len(b) for b in bases), tuple(maps))


def _trace(f) -> object:
    return sum((mat[i][i] for mat in f for i in range(len(mat))), 0)


def modules_isomorphic(M: Representation, N: Representation) -> bool:
    """Isomorphism test for indecomposable modules with End/rad = k."""
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    F = M.algebra.field
    fs, gs = hom_space(M, N), hom_space(N, M)
    for f in fs:
        for g in gs:
            if _trace(_compose(g, f, F)) != 0:
                return True
    return False


def decompose_module(M: Representation) -> list:
    """Indecomposable summands with multiplicities ``[(N, m), ...]`` (char 0)."""
    from .presentation import primitive_idempotents, radical_char0
    if M.is_zero():
        return []
    F = M.algebra.field
    E, basis = endomorphism_algebra(M)
    rad = radical_char0(E)
    if len(rad) == E.dim - 1:
        return [(M, 1)]
    idems = primitive_idempotents(E, rad, basic=False)
    parts = [image_module(M, _combine(basis, e, F)) for e in idems]
    groups = []
    for N in parts:
        for g in groups:
            if modules_isomorphic(g[0], N):
                g[1] += 1
                break
        else:
            groups.append([N, 1])
    return [(N, m) for N, m in groups]
