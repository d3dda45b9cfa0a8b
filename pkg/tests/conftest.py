"""Shared helpers for the test suite."""

import itertools
from fractions import Fraction


def jacobi_scan(alg):
    """Count violations of antisymmetry (all index pairs) and the Jacobi
    identity (all strictly increasing index triples).

    Bilinearity extends both checks to arbitrary triples: a triple with a
    repeated index satisfies Jacobi automatically once antisymmetry
    holds, and permutations only flip signs.
    """
    one = Fraction(1)
    defects = 0
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            fwd = alg.bracket_indices(i, j)
            back = alg.bracket_indices(j, i)
            if fwd != {k: -v for k, v in back.items()}:
                defects += 1
    for i, j, k in itertools.combinations(range(alg.dim), 3):
        acc = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = alg.bracket_indices(b, c)
            if not inner:
                continue
            for idx, v in alg.bracket({a: one}, inner).items():
                cur = acc.get(idx, 0) + v
                if cur:
                    acc[idx] = cur
                else:
                    acc.pop(idx, None)
        if acc:
            defects += 1
    return defects


def loop_bracket(alg, x, y):
    """[x t^a, y t^b] = [x, y] t^{a+b} on sparse loop elements."""
    out = {}
    for (i, k), xv in x.items():
        for (j, l), yv in y.items():
            for idx, c in alg.bracket_indices(i, j).items():
                key = (idx, k + l)
                cur = out.get(key, 0) + xv * yv * c
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
    return out
