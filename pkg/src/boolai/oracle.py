"""Brute-force reference computations for small n.

Nothing here uses the Moebius transform or linear algebra. Monomials are
evaluated point by point, every nonzero ANF of degree <= d is enumerated as
an XOR combination of monomial tables, and products are tested directly.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import BooleanFunction

BRUTE_FORCE_MAX_N = 4


def monomial_table(n: int, vars_: tuple) -> int:
    t = 0
    for x in range(1 << n):
        if all(x >> i & 1 for i in vars_):
            t |= 1 << x
    return t


def anf_tables(n: int, d: int) -> np.ndarray:
    """Truth tables of every nonzero ANF with degree <= d, as ints in an object-free uint64 array."""
    mons = [monomial_table(n, c) for k in range(d + 1) for c in combinations(range(n), k)]
    tables = np.zeros(1, dtype=np.uint64)
    for m in mons:
        tables = np.concatenate((tables, tables ^ np.uint64(m)))
    return tables[1:]


def brute_force_ai(f: BooleanFunction) -> int:
    """Smallest d such that some nonzero g of degree <= d has g*f = 0 or g*(1+f) = 0."""
    n = f.n
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    top = (1 << (1 << n)) - 1
    for d in range(n + 1):
        for g in anf_tables(n, d):
            g = int(g)
            if g & f.table == 0 or g & (top ^ f.table) == 0:
                return d
    raise AssertionError("unreachable: g = 1 + f annihilates f")


def brute_force_ai_all(n: int) -> np.ndarray:
    """AI of every n-variable function, indexed by truth table."""
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    size = 1 << (1 << n)
    top = np.uint64(size - 1)
    f = np.arange(size, dtype=np.uint64)
    ai = np.full(size, -1, dtype=np.int64)
    for d in range(n + 1):
        g = anf_tables(n, d)
        todo = np.flatnonzero(ai < 0)
        if todo.size == 0:
            break
        hit = np.zeros(todo.size, dtype=bool)
        step = max(1, (1 << 22) // g.size)
        for s in range(0, todo.size, step):
            ff = f[todo[s : s + step], None]
            hit[s : s + step] = np.any((g[None, :] & ff) == 0, axis=1) | np.any(
                (g[None, :] & (top ^ ff)) == 0, axis=1
            )
        ai[todo[hit]] = d
    return ai


def naive_nonlinearity(f: BooleanFunction) -> int:
    """Minimum distance to all 2**(n+1) affine functions, each built point by point."""
    n = f.n
    best = None
    for a in range(1 << n):
        lin = 0
        for x in range(1 << n):
            if bin(a & x).count("1") & 1:
                lin |= 1 << x
        for c in (0, (1 << (1 << n)) - 1):
            dist = bin(f.table ^ lin ^ c).count("1")
            best = dist if best is None else min(best, dist)
    return best


def naive_autocorrelation(f: BooleanFunction) -> list[int]:
    n = f.n
    vals = [f.table >> x & 1 for x in range(1 << n)]
    return [sum(1 - 2 * (vals[x] ^ vals[x ^ a]) for x in range(1 << n)) for a in range(1 << n)]


def naive_walsh(f: BooleanFunction) -> list[int]:
    n = f.n
    out = []
    for a in range(1 << n):
        s = 0
        for x in range(1 << n):
            s += 1 - 2 * ((f.table >> x & 1) ^ (bin(a & x).count("1") & 1))
        out.append(s)
    return out


def naive_nonlinearity_all(n: int) -> np.ndarray:
    """Nonlinearity of every n-variable function by direct distance to all affine tables."""
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    size = 1 << (1 << n)
    top = size - 1
    affine = []
    for a in range(1 << n):
        lin = sum(1 << x for x in range(1 << n) if bin(a & x).count("1") & 1)
        affine += [lin, lin ^ top]
    f = np.arange(size, dtype=np.uint64)
    best = np.full(size, 1 << n, dtype=np.int64)
    for t in affine:
        np.minimum(best, np.bitwise_count(f ^ np.uint64(t)).astype(np.int64), out=best)
    return best
