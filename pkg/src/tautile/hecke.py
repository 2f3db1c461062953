"""Coxeter data, the quiver Q_W, 0-Hecke algebras and 0-Schur truncations."""
from __future__ import annotations

import copy
import itertools
import re
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraError, Arrow, BoundQuiverAlgebra, Quiver, idempotent_truncation
from .kernels import hecke_product_table
from .linalg import QQ
from .presentation import AbstractAlgebra, present_with_idempotents, primitive_idempotents, radical_char0


class UnsupportedType(AlgebraError):
    pass


class InvalidCoxeterSpec(ValueError):
    pass


_SPEC_RE = re.compile(r"^\s*([ABDEFH])\s*(\d+)\s*$|^\s*I2\s*\(\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True)
class CoxeterSpec:
    """An irreducible finite Coxeter type, or an explicit Coxeter matrix."""

    letter: str | None = None
    rank: int = 0
    m: int | None = None
    matrix: tuple | None = None

    def __post_init__(self):
        if self.matrix is not None:
            mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
            object.__setattr__(self, "matrix", mat)
            _validate_matrix(mat)
            object.__setattr__(self, "rank", len(mat))
            return
        letter, n = self.letter, self.rank
        ok = {
            "A": n >= 1, "B": n >= 2, "D": n >= 4, "E": n in (6, 7, 8),
            "F": n == 4, "H": n in (3, 4), "I": n == 2 and (self.m or 0) >= 2,
        }.get(letter, False)
        if not ok:
            raise InvalidCoxeterSpec(f"{self} is not a finite irreducible Coxeter type")

    def __str__(self):
        if self.matrix is not None and self.letter is None:
            return "matrix" + str([list(r) for r in self.matrix])
        if self.letter == "I":
            return f"I2({self.m})"
        return f"{self.letter}{self.rank}"

    def coxeter_matrix(self) -> tuple:
        if self.matrix is not None:
            return self.matrix
        return _named_matrix(self.letter, self.rank, self.m)

    @property
    def is_dihedral(self) -> bool:
        mat = self.coxeter_matrix()
        return len(mat) == 2

    def has_element_model(self) -> bool:
        if self.letter == "A" and self.rank <= 6:
            return True
        return self.rank <= 2 and (self.letter in ("A", "B", "I") or self.matrix is not None)


def _validate_matrix(mat):
    n = len(mat)
    for i in range(n):
        if len(mat[i]) != n:
            raise InvalidCoxeterSpec("Coxeter matrix must be square")
        if mat[i][i] != 1:
            raise InvalidCoxeterSpec("diagonal entries of a Coxeter matrix are 1")
        for j in range(n):
            if i != j and (mat[i][j] != mat[j][i] or mat[i][j] < 2):
                raise InvalidCoxeterSpec("off-diagonal entries must be symmetric and >= 2")


def _named_matrix(letter: str, n: int, m: int | None) -> tuple:
    mat = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def edge(i, j, w=3):
        mat[i][j] = mat[j][i] = w

    if letter == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif letter == "B":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 2, n - 1, 4)
    elif letter == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif letter == "E":
        # Bourbaki labelling: 1-3-4-5-6-..., with 2 attached to 4
        edge(0, 2)
        edge(1, 3)
        for i in range(2, n - 1):
            edge(i, i + 1)
    elif letter == "F":
        edge(0, 1)
        edge(1, 2, 4)
        edge(2, 3)
    elif letter == "H":
        edge(0, 1, 5)
        for i in range(1, n - 1):
            edge(i, i + 1)
    elif letter == "I":
        edge(0, 1, m)
    return tuple(tuple(r) for r in mat)


def parse_coxeter(text: str) -> list:
    """Parse "A3", "B2", "I2(7)" or a product "A1xA2" into a list of specs."""
    parts = [p for p in re.split(r"[xX×*]", text.strip()) if p.strip()]
    if not parts:
        raise InvalidCoxeterSpec("empty Coxeter type")
    specs = []
    for part in parts:
        mt = _SPEC_RE.match(part)
        if not mt:
            raise InvalidCoxeterSpec(f"cannot parse Coxeter type {part!r}")
        if mt.group(3):
            m = int(mt.group(3))
            specs.append(CoxeterSpec("I", 2, m))
        else:
            specs.append(CoxeterSpec(mt.group(1), int(mt.group(2))))
    return specs


def block_matrix(specs) -> tuple:
    """Coxeter matrix of a product (block diagonal, 2 across blocks)."""
    mats = [s.coxeter_matrix() for s in specs]
    n = sum(len(m) for m in mats)
    out = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    off = 0
    for mat in mats:
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(mat)
    return tuple(tuple(r) for r in out)


# ------------------------------------------------------------------ Q_W


def subset_label(J) -> str:
    return "v{" + ",".join(str(j) for j in sorted(J)) + "}"


def all_subsets(n: int) -> list:
    """Subsets of {1..n} ordered by size, then lexicographically."""
    return [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]


def hecke_quiver(spec_or_matrix) -> Quiver:
    mat = _as_matrix(spec_or_matrix)
    n = len(mat)
    subsets = all_subsets(n)
    arrows = []
    for J in subsets:
        for K in subsets:
            if J <= K or K <= J:
                continue
            if all(mat[j - 1][k - 1] >= 3 for j in J - K for k in K - J):
                arrows.append(Arrow(f"{subset_label(J)}>{subset_label(K)}", subset_label(J), subset_label(K)))
    return Quiver(tuple(subset_label(J) for J in subsets), tuple(arrows))


def _as_matrix(x) -> tuple:
    if isinstance(x, CoxeterSpec):
        return x.coxeter_matrix()
    if isinstance(x, (list, tuple)) and x and isinstance(x[0], CoxeterSpec):
        return block_matrix(x)
    if isinstance(x, str):
        specs = parse_coxeter(x)
        return specs[0].coxeter_matrix() if len(specs) == 1 else block_matrix(specs)
    mat = tuple(tuple(int(v) for v in row) for row in x)
    _validate_matrix(mat)
    return mat


# ----------------------------------------------------------- group elements


@dataclass
class CoxeterGroupData:
    """Elements of a finite Coxeter group with left-multiplication tables."""

    n_gen: int
    elements: list        # opaque element keys, identity first
    left: np.ndarray      # left[g, w] = index of s_g w
    up: np.ndarray        # up[g, w] = l(s_g w) > l(w)
    words: np.ndarray     # reduced words, padded
    lengths: np.ndarray


def _bfs_group(n_gen, identity, act, length_of):
    elements = [identity]
    index = {identity: 0}
    words = {identity: ()}
    k = 0
    while k < len(elements):
        w = elements[k]
        for g in range(n_gen):
            x = act(g, w)
            if x not in index:
                index[x] = len(elements)
                elements.append(x)
                words[x] = (g,) + words[w]
        k += 1
    size = len(elements)
    left = np.empty((n_gen, size), np.int64)
    up = np.empty((n_gen, size), np.bool_)
    for w_i, w in enumerate(elements):
        lw = length_of(w)
        for g in range(n_gen):
            x = act(g, w)
            left[g, w_i] = index[x]
            up[g, w_i] = length_of(x) > lw
    maxlen = max(len(words[w]) for w in elements)
    word_arr = np.zeros((size, max(maxlen, 1)), np.int64)
    lengths = np.zeros(size, np.int64)
    for w_i, w in enumerate(elements):
        word_arr[w_i, :len(words[w])] = words[w]
        lengths[w_i] = len(words[w])
    return CoxeterGroupData(n_gen, elements, left, up, word_arr, lengths)


def symmetric_group_data(rank: int) -> CoxeterGroupData:
    """Type A_rank: permutations of rank+1 letters (one-line notation)."""
    if rank > 6:
        raise UnsupportedType("type A element model limited to rank <= 6")
    n = rank + 1

    def act(g, w):
        # s_g w: swap the values g and g+1 in the one-line notation
        return tuple(g + 1 if x == g else g if x == g + 1 else x for x in w)

    def length(w):
        return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])

    return _bfs_group(rank, tuple(range(n)), act, length)


def dihedral_group_data(m: int) -> CoxeterGroupData:
    """I2(m): elements as alternating reduced words (first letter, length)."""

    def act(g, w):
        first, ln = w
        if ln == 0:
            return (g, 1)
        if ln == m:
            return (1 - g, m - 1)
        if first == g:
            return (1 - g, ln - 1) if ln - 1 > 0 else (0, 0)
        if ln + 1 == m:
            return (0, m)  # the longest element has two reduced words
        return (g, ln + 1)

    return _bfs_group(2, (0, 0), act, lambda w: w[1])


def group_data(spec: CoxeterSpec) -> CoxeterGroupData:
    mat = spec.coxeter_matrix()
    if spec.letter == "A" and spec.matrix is None:
        return symmetric_group_data(spec.rank)
    if len(mat) == 1:
        return symmetric_group_data(1)
    if len(mat) == 2:
        return dihedral_group_data(mat[0][1])
    raise UnsupportedType(f"no element model for type {spec}; only A_n (n <= 6) and rank-2 types")


# ------------------------------------------------------------ 0-Hecke algebra


def hecke_algebra(spec: CoxeterSpec) -> AbstractAlgebra:
    """H_0(W) on the basis {T_w} with T_s^2 = -T_s."""
    data = group_data(spec)
    prod, sign = hecke_product_table(data.left, data.up, data.words, data.lengths)
    size = len(data.elements)
    table = {}
    for x in range(size):
        for y in range(size):
            table[(x, y)] = {int(prod[x, y]): QQ.elem(int(sign[x, y]))}
    labels = ["T[" + "".join(str(g + 1) for g in data.words[w, :data.lengths[w]]) + "]" for w in range(size)]
    A = AbstractAlgebra(labels, table, QQ, identity={0: QQ.one})
    A.group = data
    return A


def character_value(A: AbstractAlgebra, J, x: dict):
    """chi_J(x) for chi_J(T_s) = -1 if s in J else 0 (generators 1-based)."""
    data = A.group
    total = QQ.zero
    for w, c in x.items():
        letters = data.words[w, :data.lengths[w]]
        if all(int(g) + 1 in J for g in letters):
            total += c * (-1) ** int(data.lengths[w])
    return total


def label_idempotents(A: AbstractAlgebra, idems: list) -> list:
    n = A.group.n_gen
    labels = []
    for e in idems:
        hits = [J for J in all_subsets(n) if character_value(A, J, e) != 0]
        if len(hits) != 1:
            raise AlgebraError("idempotent does not match exactly one one-dimensional character")
        labels.append(hits[0])
    return labels


@dataclass
class HeckePresentation:
    abstract: AbstractAlgebra
    radical: list
    idempotents: list
    subsets: list
    algebra: BoundQuiverAlgebra


_PRESENTATION_CACHE: dict = {}


def basic_hecke(spec: CoxeterSpec) -> HeckePresentation:
    """Radical, labelled primitive idempotents and bound quiver presentation of H_0(W)."""
    key = str(spec)
    if key in _PRESENTATION_CACHE:
        return _PRESENTATION_CACHE[key]
    A = hecke_algebra(spec)
    rad = radical_char0(A)
    idems = primitive_idempotents(A, rad)
    subsets = label_idempotents(A, idems)
    order = sorted(range(len(idems)), key=lambda k: (len(subsets[k]), sorted(subsets[k])))
    idems = [idems[k] for k in order]
    subsets = [subsets[k] for k in order]
    B = present_with_idempotents(A, idems, rad, [subset_label(J) for J in subsets], cap=A.dim)
    B.name = f"H0({spec})"
    out = HeckePresentation(A, rad, idems, subsets, B)
    _PRESENTATION_CACHE[key] = out
    return out


def schur_truncation(r: int, n: int) -> list:
    """Subsets J of {1..r-1} with |J| <= n-1."""
    if n < 1 or r < 1:
        raise InvalidCoxeterSpec("n and r must be positive")
    return [J for J in all_subsets(r - 1) if len(J) <= n - 1]


def schur_algebra(n: int, r: int) -> BoundQuiverAlgebra:
    """Basic algebra of the truncation e[n] H_0(S_r) e[n]."""
    if r > 7:
        raise UnsupportedType("0-Schur algebras are limited to r <= 7")
    keep = schur_truncation(r, n)
    if r == 1:
        from .families import path_algebra
        return path_algebra(Quiver((subset_label(frozenset()),), ()), name=f"S0({n},{r})")
    hp = basic_hecke(CoxeterSpec("A", r - 1))
    sel = [k for k, J in enumerate(hp.subsets) if J in set(keep)]
    if len(sel) == len(hp.subsets):
        B = copy.copy(hp.algebra)  # keep the cached presentation's name intact
    else:
        B = idempotent_truncation(hp.algebra, [subset_label(hp.subsets[k]) for k in sel])
    B.name = f"S0({n},{r})"
    return B


# ------------------------------------------------------------ classifiers


def _as_specs(spec) -> list:
    if isinstance(spec, str):
        return parse_coxeter(spec)
    if isinstance(spec, CoxeterSpec):
        return [spec]
    return list(spec)


def _spec_name(specs) -> str:
    return "x".join(str(s) for s in specs)


def classify_hecke(spec, config=None):
    """Tau-tilting finiteness of H_0(W) for an irreducible type or a product list.

    The Delta detector runs on Q_W first.  Otherwise each factor with an
    element model is presented and enumerated; a product of one such factor
    with copies of A1 is a direct product of copies of it, so the counts
    multiply.
    """
    from .obstructions import detect_delta
    from .verdict import INCONCLUSIVE, Report, Verdict, VerdictConfig, finite, infinite, verdict

    config = config or VerdictConfig()
    specs = _as_specs(spec)
    name = _spec_name(specs)
    fp = f"coxeter:{name}"
    q = hecke_quiver(specs if len(specs) > 1 else specs[0])
    cert = detect_delta(q)
    cap = config.cap
    if cert is not None:
        return Report(fp, infinite(cert), cap, notes={"quiver": "Q_W"})
    if len(specs) == 1:
        s = specs[0]
        if not s.has_element_model():
            return Report(fp, Verdict(INCONCLUSIVE), cap, notes={"reason": "no element model"})
        hp = basic_hecke(s)
        rep = verdict(hp.algebra, config)
        rep.notes["dimension"] = hp.abstract.dim
        return rep
    trivial = [s for s in specs if len(s.coxeter_matrix()) == 1]
    rest = [s for s in specs if len(s.coxeter_matrix()) > 1]
    if len(rest) > 1 or any(not s.has_element_model() for s in rest):
        return Report(fp, Verdict(INCONCLUSIVE), cap, notes={"reason": "no route for this product"})
    # H_0(A1) = k x k, so tensoring with it doubles the number of blocks
    copies = 2 ** len(trivial)
    if rest:
        inner = classify_hecke(rest[0], config)
        if inner.verdict.kind != "finite":
            return Report(fp, inner.verdict, cap, notes={"factor": str(rest[0])})
        base = inner.verdict.count
    else:
        base = 2  # the field k has exactly two: k and 0
    return Report(fp, finite(base ** copies), cap,
                  notes={"product_rule": f"{base}^{copies}", "factor_count": base})


def singleton_blocks(A: BoundQuiverAlgebra) -> tuple:
    """Vertices of ``A`` that form one-vertex blocks, and the remaining vertices."""
    from .algebra import gabriel_quiver

    q = gabriel_quiver(A)
    touched = {a.source for a in q.arrows} | {a.target for a in q.arrows}
    single = tuple(v for v in q.vertices if v not in touched)
    return single, tuple(v for v in q.vertices if v in touched)


def classify_schur(n: int, r: int, config=None):
    """Tau-tilting finiteness of S_0(n, r) through its basic truncation.

    For n = 2 the count without the one-vertex blocks is compared with r!,
    the count for the preprojective algebra of type A_{r-1}; the outcome is
    recorded in ``notes`` rather than enforced.
    """
    from math import factorial

    from .enumerate import enumerate_exchange_graph
    from .verdict import VerdictConfig, verdict

    if n < 1 or r < 1:
        raise InvalidCoxeterSpec("0-Schur parameters must be positive")
    config = config or VerdictConfig()
    S = schur_algebra(n, r)
    rep = verdict(S, config)
    rep.notes["dimension"] = S.dim
    if n == 2 and r >= 2 and rep.verdict.kind == "finite":
        single, rest = singleton_blocks(S)
        if rest:
            main = enumerate_exchange_graph(idempotent_truncation(S, rest), cap=config.cap)
            block = main.count if main.complete else None
        else:
            block = 1
        expected = factorial(r)
        rep.notes["singleton_blocks"] = len(single)
        rep.notes["block_count"] = block
        rep.notes["preprojective_count"] = expected
        rep.notes["total_matches_preprojective"] = rep.verdict.count == expected
        rep.notes["block_matches_preprojective"] = block == expected
    return rep
