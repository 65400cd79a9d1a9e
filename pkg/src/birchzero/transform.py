"""Monomial transforms of exponent lattices.

A transform maps every exponent ``alpha`` to ``T (alpha - a0)`` for a
rational invertible matrix ``T`` and a base point ``a0``. In exponential
coordinates this is a linear change of variables, so infima, minimizers and
zeros over the positive orthant correspond one-to-one
(:meth:`MonomialTransform.pullback_point` realizes the correspondence).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import _linalg as la
from .poly import Exponent, Polynomial
from .polytope import hull

__all__ = ["MonomialTransform", "normalize_at_vertex", "random_unimodular"]


@dataclass(frozen=True)
class MonomialTransform:
    matrix: tuple[tuple[Fraction, ...], ...]
    base: tuple[Fraction, ...]
    mu: int = 1
    axis_degrees: tuple[int, ...] = ()

    @classmethod
    def linear(cls, matrix: Sequence[Sequence], base: Sequence | None = None) -> "MonomialTransform":
        m = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        n = len(m)
        if la.det(m) == 0:
            raise ValueError("transform matrix is singular")
        b = tuple(Fraction(x) for x in base) if base is not None else (Fraction(0),) * n
        return cls(m, b)

    @classmethod
    def identity(cls, n: int) -> "MonomialTransform":
        return cls.linear([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    def image(self, alpha: Sequence) -> tuple[Fraction, ...]:
        shifted = [Fraction(a) - b for a, b in zip(alpha, self.base)]
        return tuple(la.matvec(self.matrix, shifted))

    def apply(self, f: Polynomial) -> Polynomial:
        """``f`` with every exponent replaced by its image; coefficients unchanged."""
        pairs = []
        for exp, c in f.terms.items():
            img = self.image(exp)
            if any(x.denominator != 1 for x in img):
                raise ValueError(f"exponent {exp} maps to non-integral {tuple(str(x) for x in img)}")
            pairs.append((tuple(int(x) for x in img), c))
        return Polynomial(pairs, f.nvars)

    def compose(self, first: "MonomialTransform") -> "MonomialTransform":
        """The transform equal to applying ``first`` and then ``self``."""
        m = la.matmul(self.matrix, first.matrix)
        # alpha -> S(R(alpha - r0) - s0) = SR(alpha - (r0 + R^{-1} s0))
        rinv = la.inverse(first.matrix)
        base = [a + b for a, b in zip(first.base, la.matvec(rinv, self.base))]
        return MonomialTransform(tuple(tuple(r) for r in m), tuple(base))

    def _float_matrix(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix])

    def pullback_point(self, y: Sequence[float]) -> np.ndarray:
        """Map a point of the transformed side back: ``x = exp(T^t log y)``.

        With base ``a0`` the correspondence reads ``f(x) / x^a0 = f^T(y)``.
        """
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0):
            raise ValueError("pullback needs a strictly positive point")
        return np.exp(self._float_matrix().T @ np.log(y))

    def forward_point(self, x: Sequence[float]) -> np.ndarray:
        """Inverse of :meth:`pullback_point`: ``y = exp(T^{-t} log x)``."""
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("forward map needs a strictly positive point")
        return np.exp(np.linalg.solve(self._float_matrix().T, np.log(x)))


def _even_nonneg(e: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 and x >= 0 and int(x) % 2 == 0 for x in e)


def normalize_at_vertex(f: Polynomial, a0: Sequence[int]) -> tuple[MonomialTransform, Polynomial]:
    """Move a simple vertex ``a0`` of New(f) to the origin and straighten its edges.

    The edge neighbors ``a_1..a_n`` of ``a0`` are sent to ``2 mu e_i``; every
    positive-coefficient exponent lands in (2N)^n and every
    negative-coefficient exponent in the interior of the new Newton polytope,
    on the nonnegative lattice. All three facts are checked exactly.
    """
    a0 = tuple(a0)
    n = f.nvars
    P = hull(f.support)
    if not P.full_dimensional:
        raise ValueError(f"Newton polytope has dimension {P.dim} < {n}")
    if a0 not in P.vertices:
        raise ValueError(f"{a0} is not a vertex of the Newton polytope")
    simple, neighbors = P.is_simple_at(a0)
    if not simple:
        raise ValueError(f"Newton polytope is not simple at {a0} ({len(neighbors)} edges)")
    inner = [e for e, c in f.terms.items() if c < 0]
    for b in inner:
        if not P.is_interior(b):
            raise ValueError(f"negative term {b} is not interior to the Newton polytope")

    cols = [[Fraction(a - b) for a, b in zip(nb, a0)] for nb in neighbors]
    M = la.transpose(cols)
    Tp = la.inverse(M)
    images = [la.matvec(Tp, [a - b for a, b in zip(e, a0)]) for e in f.support]
    mu = lcm(*(x.denominator for img in images for x in img))
    T = [[2 * mu * x for x in row] for row in Tp]
    t = MonomialTransform(tuple(tuple(r) for r in T), tuple(Fraction(x) for x in a0), mu, (mu,) * n)
    g = t.apply(f)

    for i, nb in enumerate(neighbors):
        expect = tuple(2 * mu * int(i == j) for j in range(n))
        if t.image(nb) != expect:
            raise AssertionError(f"edge neighbor {nb} maps to {t.image(nb)}, not {expect}")
    G = hull(g.support)
    for e, c in f.terms.items():
        img = t.image(e)
        if c > 0 and not _even_nonneg(img):
            raise AssertionError(f"outer exponent {e} maps to {img}, not in (2N)^n")
        if c < 0 and not (all(x >= 0 for x in img) and G.is_interior(img)):
            raise AssertionError(f"inner exponent {e} maps to {img}, not interior")
    return t, g


def random_unimodular(n: int, rng: np.random.Generator, max_factors: int = 6, bound: int = 2) -> list[list[int]]:
    """Product of at most ``max_factors`` integer shears ``I + k E_ij``, ``|k| <= bound``."""
    m = np.eye(n, dtype=np.int64)
    if n == 1:
        return [[int(rng.choice([-1, 1]))]]
    for _ in range(int(rng.integers(1, max_factors + 1))):
        i, j = rng.choice(n, size=2, replace=False)
        k = int(rng.integers(-bound, bound + 1))
        e = np.eye(n, dtype=np.int64)
        e[i, j] = k
        m = e @ m
    return m.tolist()
