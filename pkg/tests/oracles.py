"""Brute-force support tau-tilting counts, independent of the mutation engine."""
import itertools

from tautile.modules import direct_sum, tau_rigid_check, zero_module


def brute_force_pairs(A, indecomposables):
    """All support tau-tilting pairs (M, P) built from the given indecomposables.

    ``indecomposables`` must list every indecomposable module up to
    isomorphism; the count is then exact for representation-finite ``A``.
    """
    n = A.n
    found = []
    for k in range(n + 1):
        for mods in itertools.combinations(range(len(indecomposables)), k):
            for P in itertools.combinations(range(n), n - k):
                M = direct_sum(*[indecomposables[i] for i in mods]) if mods else zero_module(A)
                if tau_rigid_check(M, P):
                    found.append((mods, P))
    return found
