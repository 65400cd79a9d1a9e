"""Independent reference implementations used by the tests."""

import itertools
from fractions import Fraction

from birchzero.polytope import hull


def _solve_exact(cols, rhs):
    """Solve sum_k x_k cols[k] = rhs with independent cols; None if inconsistent."""
    m = [[Fraction(c[i]) for c in cols] + [Fraction(rhs[i])] for i in range(len(rhs))]
    k = len(cols)
    row = 0
    piv = []
    for col in range(k):
        r = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if r is None:
            return None
        m[row], m[r] = m[r], m[row]
        m[row] = [x / m[row][col] for x in m[row]]
        for rr in range(len(m)):
            if rr != row and m[rr][col] != 0:
                f = m[rr][col]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[row])]
        piv.append(col)
        row += 1
    if any(m[r][k] != 0 for r in range(row, len(m))):
        return None
    return [m[i][k] for i in range(k)]


def _rank(cols):
    m = [list(map(Fraction, c)) for c in cols]
    rank = 0
    ncol = len(m[0]) if m else 0
    for col in range(ncol):
        r = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if r is None:
            continue
        m[rank], m[r] = m[r], m[rank]
        for rr in range(len(m)):
            if rr != rank and m[rr][col] != 0:
                f = m[rr][col] / m[rank][col]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[rank])]
        rank += 1
    return rank


def in_convex_hull(p, others):
    """Exact membership by Caratheodory: p in conv of some affinely independent subset."""
    n = len(p)
    for k in range(1, n + 2):
        for sub in itertools.combinations(others, k):
            cols = [[*q, 1] for q in sub]
            if _rank(cols) != k:
                continue
            lam = _solve_exact(cols, [*p, 1])
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def is_interior_bruteforce(p, points):
    """Exact interior test: p +- eps e_i all lie in conv(points).

    ``eps`` is below the lattice distance of an interior integer point from
    any facet, given integer facet normals bounded by a Hadamard-type bound.
    """
    import math

    n = len(p)
    C = max(abs(x) for q in points for x in q) + max(abs(x) for x in p) + 1
    eps = Fraction(1, math.factorial(n) * (2 * C) ** (n - 1) + 1)
    pts = [tuple(q) for q in points]
    for i in range(n):
        for s in (1, -1):
            q = [Fraction(x) for x in p]
            q[i] += s * eps
            if not in_convex_hull(q, pts):
                return False
    return True


def hull_vertices(points):
    pts = sorted(set(map(tuple, points)))
    return {p for p in pts if not in_convex_hull(p, [q for q in pts if q != p])}


def grid_values(f, axes):
    """Float values of a polynomial on the tensor grid spanned by ``axes``."""
    import numpy as np

    mesh = np.meshgrid(*axes, indexing="ij")
    total = np.zeros_like(mesh[0], dtype=float)
    for e, c in f.terms.items():
        term = np.full_like(total, float(c))
        for X, k in zip(mesh, e):
            term = term * X**k
        total += term
    return total


def check_normalization(f, a0, t, g):
    """Independent re-check of the normalization postconditions."""
    n = f.nvars
    H = hull(f.support)
    _, nbrs = H.is_simple_at(a0)
    assert set(H.vertices) == hull_vertices(f.support)
    for i, nb in enumerate(nbrs):
        assert t.image(nb) == tuple(2 * t.mu * int(i == j) for j in range(n))
    g_support = list(g.support)
    for e, c in f.terms.items():
        img = t.image(e)
        assert all(x.denominator == 1 for x in img)
        if c > 0:
            assert all(x >= 0 and x % 2 == 0 for x in img)
        else:
            assert all(x >= 0 for x in img) and is_interior_bruteforce(img, g_support)
    assert t.image(a0) == (0,) * n
