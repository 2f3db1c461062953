"""Hot inner loops: fraction-free elimination and 0-Hecke product tables.

Each kernel exists twice: an ``@njit`` version working on ``int64`` arrays
and a pure-numpy version.  The integer elimination kernel refuses to run
once an entry could overflow 64 bits and the dispatcher then falls back to
the numpy path on Python integers, so results are exact either way.
"""
import numpy as np

from ._accel import njit, using_numba

# |x|, |y| <= _SAFE guarantees p*x - f*y fits into int64.
_SAFE = 2**31 - 1


@njit
def _ff_rref_i64(a):
    m, n = a.shape
    pivots = np.full(m, -1, np.int64)
    prev = np.int64(1)
    r = 0
    swaps = 0
    for c in range(n):
        if r == m:
            break
        i = r
        while i < m and a[i, c] == 0:
            i += 1
        if i == m:
            continue
        if i != r:
            for j in range(n):
                tmp = a[i, j]
                a[i, j] = a[r, j]
                a[r, j] = tmp
            swaps += 1
        p = a[r, c]
        if p > _SAFE or p < -_SAFE:
            return a, pivots, r, swaps, False
        for j in range(n):
            v = a[r, j]
            if v > _SAFE or v < -_SAFE:
                return a, pivots, r, swaps, False
        for ii in range(m):
            if ii == r:
                continue
            f = a[ii, c]
            if f > _SAFE or f < -_SAFE:
                return a, pivots, r, swaps, False
            for j in range(n):
                x = a[ii, j]
                if x > _SAFE or x < -_SAFE:
                    return a, pivots, r, swaps, False
                a[ii, j] = (p * x - f * a[r, j]) // prev
        prev = p
        pivots[r] = c
        r += 1
    return a, pivots, r, swaps, True


def _ff_rref_object(a):
    a = np.array(a, dtype=object)
    m, n = a.shape
    pivots = []
    prev = 1
    r = 0
    swaps = 0
    for c in range(n):
        if r == m:
            break
        nz = [i for i in range(r, m) if a[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            a[[i, r]] = a[[r, i]]
            swaps += 1
        p = a[r, c]
        pivot_row = a[r].copy()
        col = a[:, c].copy()
        a = (p * a - np.outer(col, pivot_row)) // prev
        a[r] = pivot_row
        prev = p
        pivots.append(c)
        r += 1
    return a, pivots, swaps


def fraction_free_rref(a):
    """Integer-preserving Gauss-Jordan elimination.

    ``a`` is a 2-d array of Python or numpy integers.  Returns
    ``(R, pivots, swaps)`` where every pivot entry of ``R`` equals the same
    integer ``d`` and ``R / d`` is the reduced row echelon form.  When the
    matrix is square and nonsingular ``d * (-1)**swaps`` is its determinant.
    """
    a = np.asarray(a, dtype=object)
    m, n = a.shape
    if m == 0 or n == 0:
        return a.copy(), [], 0
    if using_numba():
        small = all(-_SAFE <= int(x) <= _SAFE for x in a.flat)
        if small:
            out, piv, rank, swaps, ok = _ff_rref_i64(a.astype(np.int64))
            if ok:
                return out.astype(object), [int(c) for c in piv[:rank]], int(swaps)
    out, piv, swaps = _ff_rref_object(a)
    return out, piv, swaps


@njit
def _rref_mod_p_i64(a, p):
    m, n = a.shape
    pivots = np.full(m, -1, np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        i = r
        while i < m and a[i, c] % p == 0:
            i += 1
        if i == m:
            continue
        if i != r:
            for j in range(n):
                tmp = a[i, j]
                a[i, j] = a[r, j]
                a[r, j] = tmp
        inv = 1
        base = a[r, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(n):
            a[r, j] = (a[r, j] * inv) % p
        for ii in range(m):
            if ii == r:
                continue
            f = a[ii, c] % p
            if f != 0:
                for j in range(n):
                    a[ii, j] = (a[ii, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    for ii in range(m):
        for j in range(n):
            a[ii, j] = a[ii, j] % p
    return a, pivots, r


def _rref_mod_p_numpy(a, p):
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[i, r]] = a[[r, i]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref_mod_p(a, p: int):
    """Reduced row echelon form over the prime field F_p (``p < 2**31``)."""
    a = np.asarray(a, dtype=np.int64) % p
    if a.size == 0:
        return a.copy(), []
    if using_numba():
        out, piv, rank = _rref_mod_p_i64(a.copy(), np.int64(p))
        return out, [int(c) for c in piv[:rank]]
    return _rref_mod_p_numpy(a, p)


@njit
def _hecke_table_i64(left, up, words, lengths):
    n_gen, size = left.shape
    prod = np.empty((size, size), np.int64)
    sign = np.empty((size, size), np.int64)
    for x in range(size):
        for y in range(size):
            w = y
            s = 1
            for t in range(lengths[x] - 1, -1, -1):
                g = words[x, t]
                if up[g, w]:
                    w = left[g, w]
                else:
                    s = -s
            prod[x, y] = w
            sign[x, y] = s
    return prod, sign


def _hecke_table_numpy(left, up, words, lengths):
    size = left.shape[1]
    prod = np.empty((size, size), np.int64)
    sign = np.empty((size, size), np.int64)
    ys = np.arange(size)
    for x in range(size):
        w = ys.copy()
        s = np.ones(size, np.int64)
        for t in range(lengths[x] - 1, -1, -1):
            g = words[x, t]
            rises = up[g, w]
            w = np.where(rises, left[g, w], w)
            s = np.where(rises, s, -s)
        prod[x] = w
        sign[x] = s
    return prod, sign


def hecke_product_table(left, up, words, lengths):
    """Structure constants of a 0-Hecke algebra on its ``T_w`` basis.

    ``left[g, w]`` is the index of ``s_g w``, ``up[g, w]`` tells whether that
    product is longer than ``w``, and ``words[x, :lengths[x]]`` is a reduced
    word for ``x``.  Returns ``(prod, sign)`` with
    ``T_x T_y = sign[x, y] * T_{prod[x, y]}``.
    """
    left = np.ascontiguousarray(left, dtype=np.int64)
    up = np.ascontiguousarray(up, dtype=np.bool_)
    words = np.ascontiguousarray(words, dtype=np.int64)
    lengths = np.ascontiguousarray(lengths, dtype=np.int64)
    if using_numba():
        return _hecke_table_i64(left, up, words, lengths)
    return _hecke_table_numpy(left, up, words, lengths)


def warm_up():
    """Compile (or load from cache) every numba kernel on tiny inputs.

    Timed callers use this so that one-time JIT cost is not charged to the
    first real computation.  A no-op in numpy mode.
    """
    if not using_numba():
        return
    a = np.array([[2, 1], [1, 1]], dtype=np.int64)
    _ff_rref_i64(a.copy())
    _rref_mod_p_i64(a.copy(), 7)
    one = np.zeros((1, 1), dtype=np.int64)
    hecke_product_table(one, one, one, np.zeros(1, dtype=np.int64))
