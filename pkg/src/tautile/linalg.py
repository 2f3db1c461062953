"""Exact linear algebra over Q (gmpy2 rationals) and prime fields.

Rows are plain Python lists.  Over Q the entries are ``gmpy2.mpq``; over
F_p they are ints in ``range(p)``.  Dense elimination goes through the
fraction-free integer kernel in :mod:`tautile.kernels`; the sparse
:class:`EchelonBasis` is used for large incremental span computations.
"""
from __future__ import annotations

import heapq

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from . import kernels


class LinalgError(ValueError):
    pass


class NonSquare(LinalgError):
    pass


class NotSymmetric(LinalgError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


@dataclass(frozen=True)
class ScalarField:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= 2**31:
            raise ValueError("prime fields are limited to p < 2**31")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"

    def elem(self, x):
        """Coerce ints, strings like ``"-3/4"``, Fractions and mpq."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return mpq(0) if self.p == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.p == 0 else 1

    def norm(self, x):
        return x if self.p == 0 else x % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / x
        return pow(int(x), -1, self.p)

    def to_json(self):
        return "Q" if self.p == 0 else {"prime": self.p}


QQ = ScalarField()


def GF(p: int) -> ScalarField:
    return ScalarField(p)


# ---------------------------------------------------------------- dense core


def _clear_denominators(rows):
    out = []
    for row in rows:
        den = mpz(1)
        for x in row:
            d = x.denominator
            if d != 1:
                den = gmpy2.lcm(den, d)
        out.append([int(x * den) for x in row])
    return out


def rref(rows: Sequence[Sequence], ncols: int, F: ScalarField = QQ):
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    rows = [list(r) for r in rows]
    if not rows or ncols == 0:
        return [], []
    if F.p:
        out, piv = kernels.rref_mod_p([[int(x) for x in r] for r in rows], F.p)
        return [[int(x) for x in out[i]] for i in range(len(piv))], piv
    ints = _clear_denominators(rows)
    out, piv, _ = kernels.fraction_free_rref(ints)
    if not piv:
        return [], []
    d = mpz(int(out[0, piv[0]]))
    result = []
    for i in range(len(piv)):
        result.append([mpq(int(x), d) if x else mpq(0) for x in out[i]])
    return result, piv


def rank(rows, ncols: int, F: ScalarField = QQ) -> int:
    return len(rref(rows, ncols, F)[1])


def nullspace_from_rref(R, pivots, ncols: int, F: ScalarField = QQ):
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for i, c in enumerate(pivots):
            v[c] = F.norm(-R[i][free])
        basis.append(v)
    return basis


def nullspace(rows, ncols: int, F: ScalarField = QQ):
    """Basis of ``{v : rows . v = 0}``, one vector per free column."""
    R, piv = rref(rows, ncols, F)
    return nullspace_from_rref(R, piv, ncols, F)


def solve(rows, rhs, ncols: int, F: ScalarField = QQ):
    """One solution of ``rows . x = rhs`` (free variables zero) or ``None``."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [F.zero] * ncols
    R, piv = rref(aug, ncols + 1, F)
    if piv and piv[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for i, c in enumerate(piv):
        x[c] = R[i][ncols]
    return x


def solve_many(rows, rhs_columns, ncols: int, F: ScalarField = QQ):
    """Solve ``rows . x = b`` for several right-hand sides in one elimination.

    Returns a list with one solution (or ``None``) per right-hand side.
    """
    k = len(rhs_columns)
    if k == 0:
        return []
    m = len(rows)
    if m == 0:
        return [[F.zero] * ncols for _ in range(k)]
    aug = [list(rows[i]) + [b[i] for b in rhs_columns] for i in range(m)]
    R, piv = rref(aug, ncols + k, F)
    bad = {c - ncols for c in piv if c >= ncols}
    main = [(i, c) for i, c in enumerate(piv) if c < ncols]
    out = []
    for j in range(k):
        if j in bad:
            out.append(None)
            continue
        x = [F.zero] * ncols
        for i, c in main:
            x[c] = R[i][ncols + j]
        out.append(x)
    return out


def independent_columns(cols, nrows: int, F: ScalarField = QQ):
    """Indices of a maximal independent subset of ``cols`` (greedy, in order)."""
    if not cols:
        return []
    rows = [[c[i] for c in cols] for i in range(nrows)]
    return rref(rows, len(cols), F)[1]


def matmul(A, B, F: ScalarField = QQ):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [F.zero] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(ncols):
                    b = brow[j]
                    if b:
                        acc[j] += a * b
        if F.p:
            acc = [x % F.p for x in acc]
        out.append(acc)
    return out


def matvec(A, v, F: ScalarField = QQ):
    return [F.norm(sum((a * x for a, x in zip(row, v) if a and x), F.zero)) for row in A]


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def identity(n: int, F: ScalarField = QQ):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def inverse(A, F: ScalarField = QQ):
    n = len(A)
    aug = [list(A[i]) + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    R, piv = rref(aug, 2 * n, F)
    if piv != list(range(n)):
        raise LinalgError("matrix is singular")
    return [row[n:] for row in R]


# ---------------------------------------------------------------- ExactMatrix


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable exact matrix; entries stored row-major."""

    rows: int
    cols: int
    entries: tuple
    field: ScalarField = dc_field(default=QQ)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows, F: ScalarField = QQ, ncols: int | None = None):
        rows = [list(r) for r in rows]
        n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(F.elem(x) for r in rows for x in r)
        return cls(len(rows), n, flat, F)

    @classmethod
    def identity(cls, n: int, F: ScalarField = QQ):
        return cls.from_rows(identity(n, F), F, n)

    @classmethod
    def zeros(cls, m: int, n: int, F: ScalarField = QQ):
        return cls(m, n, tuple([F.zero] * (m * n)), F)

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return ExactMatrix.from_rows(matmul(self.to_rows(), other.to_rows(), self.field), self.field, other.cols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(transpose(self.to_rows(), self.rows), self.field, self.rows)

    def is_integral(self) -> bool:
        if self.field.p:
            return True
        return all(x.denominator == 1 for x in self.entries)

    def to_int_rows(self) -> list:
        return [[int(x) for x in r] for r in self.to_rows()]

    def __str__(self):
        rows = [[str(x) for x in r] for r in self.to_rows()]
        width = max((len(s) for r in rows for s in r), default=1)
        return "\n".join("[" + " ".join(s.rjust(width) for s in r) + "]" for r in rows)


@dataclass(frozen=True)
class Reduction:
    rref: ExactMatrix
    rank: int
    pivot_columns: tuple
    nullspace_basis: tuple


def solve_and_reduce(m: ExactMatrix) -> Reduction:
    F = m.field
    R, piv = rref(m.to_rows(), m.cols, F)
    full = R + [[F.zero] * m.cols for _ in range(m.rows - len(R))]
    null = nullspace_from_rref(R, piv, m.cols, F)
    return Reduction(
        ExactMatrix.from_rows(full, F, m.cols),
        len(piv),
        tuple(piv),
        tuple(tuple(v) for v in null),
    )


def integer_determinant(m) -> int:
    """Exact determinant of a square integer matrix (ExactMatrix or rows)."""
    rows = m.to_int_rows() if isinstance(m, ExactMatrix) else [[int(x) for x in r] for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare(f"expected a square matrix, got {n} rows of lengths {sorted({len(r) for r in rows})}")
    if n == 0:
        return 1
    out, piv, swaps = kernels.fraction_free_rref(rows)
    if len(piv) < n:
        return 0
    d = int(out[n - 1, n - 1])
    return -d if swaps % 2 else d


@dataclass(frozen=True)
class Definiteness:
    kind: str  # PositiveDefinite | PositiveSemidefinite | Indefinite
    radical_rank: int = 0

    def __str__(self):
        if self.kind == "PositiveSemidefinite":
            return f"PositiveSemidefinite(radical_rank={self.radical_rank})"
        return self.kind


def definiteness(m) -> Definiteness:
    """Classify a symmetric integer form by congruence diagonalisation."""
    rows = m.to_rows() if isinstance(m, ExactMatrix) else [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("definiteness needs a square matrix")
    a = [[mpq(x) for x in r] for r in rows]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
    active = list(range(n))
    while active:
        diag = [a[i][i] for i in active]
        if any(x < 0 for x in diag):
            return Definiteness("Indefinite")
        k = next((i for i in active if a[i][i] > 0), None)
        if k is None:
            if any(a[i][j] != 0 for i in active for j in active):
                return Definiteness("Indefinite")
            return Definiteness("PositiveSemidefinite", len(active))
        active.remove(k)
        pk = a[k][k]
        for i in active:
            f = a[i][k] / pk
            if f:
                for j in active:
                    a[i][j] -= f * a[k][j]
    return Definiteness("PositiveDefinite")


def leading_minors(m) -> list:
    rows = m.to_int_rows() if isinstance(m, ExactMatrix) else [[int(x) for x in r] for r in m]
    return [integer_determinant([r[:k] for r in rows[:k]]) for k in range(1, len(rows) + 1)]


# ---------------------------------------------------------------- sparse span


class EchelonBasis:
    """Incrementally maintained fully reduced sparse echelon basis.

    Vectors are dicts ``{column: value}``.  The pivot of each stored vector
    is its *largest* column, so reduction modulo the span rewrites a vector
    in terms of smaller columns; this is exactly the normal-form convention
    used for path bases.
    """

    def __init__(self, F: ScalarField = QQ):
        self.F = F
        self._rows: dict = {}  # pivot column -> vector (pivot coefficient 1)
        self._tidy = True

    def __len__(self):
        return len(self._rows)

    @property
    def rows(self) -> dict:
        """Stored vectors, fully reduced against each other."""
        if not self._tidy:
            # ascending pivots: each row only meets rows that are already tidy
            for piv in sorted(self._rows):
                row = self._rows[piv]
                rest = self._reduce({c: x for c, x in row.items() if c != piv})
                rest[piv] = row[piv]
                self._rows[piv] = rest
            self._tidy = True
        return self._rows

    def _reduce(self, v: dict) -> dict:
        F = self.F
        rows = self._rows
        # largest pivot first; subtracting a row only touches smaller columns
        heap = [-c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = -heapq.heappop(heap)
            f = v.pop(c, None)
            if not f:
                continue
            for cc, x in rows[c].items():
                if cc == c:
                    continue
                old = v.get(cc)
                nv = F.norm((F.zero if old is None else old) - f * x)
                if nv:
                    v[cc] = nv
                    if old is None and cc in rows:
                        heapq.heappush(heap, -cc)
                else:
                    v.pop(cc, None)
        return v

    def reduce(self, vec: dict) -> dict:
        return self._reduce({c: x for c, x in vec.items() if x})

    def add(self, vec: dict) -> bool:
        """Add a vector to the span; returns False when it was dependent."""
        F = self.F
        v = self.reduce(vec)
        if not v:
            return False
        piv = max(v)
        s = F.inv(v[piv])
        self._rows[piv] = {c: F.norm(x * s) for c, x in v.items()}
        self._tidy = False
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> set:
        return set(self._rows)


def span_basis(vectors: Iterable[Sequence], F: ScalarField = QQ, ncols: int | None = None):
    """Row-reduced basis (dense lists) of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    n = ncols if ncols is not None else len(vectors[0])
    return rref(vectors, n, F)[0]


def as_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))
