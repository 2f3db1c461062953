import numpy as np
from hypothesis import given, settings, strategies as st

from tautile import _accel
from tautile.hecke import CoxeterSpec, group_data
from tautile.kernels import fraction_free_rref, hecke_product_table, rref_mod_p, warm_up


def both(fn, *args):
    prev = _accel.set_numba(True)
    a = fn(*args)
    _accel.set_numba(False)
    b = fn(*args)
    _accel.set_numba(prev)
    return a, b


def test_env_flag_is_respected(monkeypatch):
    monkeypatch.setenv("TAUTILE_NO_NUMBA", "1")
    assert _accel._env_disabled()
    monkeypatch.setenv("TAUTILE_NO_NUMBA", "0")
    assert not _accel._env_disabled()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=5))
def test_fraction_free_backends_agree(rows):
    (ra, pa, sa), (rb, pb, sb) = both(fraction_free_rref, rows)
    assert pa == pb and sa == sb
    assert np.array_equal(ra.astype(object), rb.astype(object))


def test_fraction_free_overflow_falls_back():
    big = [[10**15, 1], [1, 10**15]]
    out, piv, swaps = fraction_free_rref(big)
    assert piv == [0, 1]
    assert int(out[1, 1]) == 10**30 - 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 50), min_size=5, max_size=5), min_size=1, max_size=6),
       st.sampled_from([2, 7, 10007]))
def test_mod_p_backends_agree(rows, p):
    (ra, pa), (rb, pb) = both(rref_mod_p, rows, p)
    assert pa == pb
    assert np.array_equal(ra, rb)


def test_hecke_table_backends_agree():
    g = group_data(CoxeterSpec("A", 3))
    (pa, sa), (pb, sb) = both(hecke_product_table, g.left, g.up, g.words, g.lengths)
    assert np.array_equal(pa, pb) and np.array_equal(sa, sb)


def test_hecke_table_quadratic_relation():
    # T_s T_s = -T_s at q = 0
    g = group_data(CoxeterSpec("A", 2))
    prod, sign = hecke_product_table(g.left, g.up, g.words, g.lengths)
    for s in range(2):
        w = int(g.left[s, 0])
        assert prod[w, w] == w and sign[w, w] == -1


def test_warm_up_runs_in_both_modes():
    previous = _accel.set_numba(True)
    try:
        warm_up()
        _accel.set_numba(False)
        warm_up()
    finally:
        _accel.set_numba(previous)
