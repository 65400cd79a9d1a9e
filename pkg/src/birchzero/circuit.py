"""Circuit polynomials and their AM-GM nonnegativity criterion.

A circuit polynomial is ``sum_a c_a x^a - d x^beta`` where the outer
exponents ``a`` are the vertices of a simplex, every ``c_a > 0`` and ``beta``
lies in the relative interior of that simplex. Writing ``beta`` in barycentric
coordinates ``lambda_a``, the circuit number is
``prod_a (c_a / lambda_a) ** lambda_a`` and nonnegativity is decided by
comparing ``d`` against it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import mpmath

from .poly import Exponent, Polynomial, glex_key
from .polytope import affine_rank, barycentric, hull

__all__ = [
    "CircuitCover",
    "CircuitPolynomial",
    "CoverError",
    "NotCircuitError",
    "THETA_GUARD",
    "compare_to_theta",
    "cover_decompose",
    "is_nonnegative",
    "is_nonnegative_on_orthant",
    "recognize",
]

logger = logging.getLogger(__name__)

THETA_GUARD = 1e-12
_PREC = 128


class NotCircuitError(ValueError):
    """The polynomial is not a circuit polynomial; ``condition`` names why."""

    def __init__(self, condition: str, message: str):
        self.condition = condition
        super().__init__(f"{condition}: {message}")


class CoverError(ValueError):
    pass


def _is_even(e: Sequence[int]) -> bool:
    return all(k % 2 == 0 and k >= 0 for k in e)


@dataclass(frozen=True)
class CircuitPolynomial:
    outer: tuple[tuple[Exponent, Fraction], ...]
    inner: tuple[Exponent, Fraction]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(c <= 0 for _, c in self.outer):
            raise NotCircuitError("positive outer coefficients", "some outer coefficient is not positive")
        if any(w <= 0 for w in self.weights) or sum(self.weights) != 1:
            raise NotCircuitError("interior inner exponent", "weights are not strictly positive convex weights")
        beta = self.inner[0]
        recon = [sum((w * a[j] for w, (a, _) in zip(self.weights, self.outer)), Fraction(0)) for j in range(len(beta))]
        if recon != list(beta):
            raise NotCircuitError("interior inner exponent", "weights do not reproduce the inner exponent")

    @property
    def nvars(self) -> int:
        return len(self.inner[0])

    @property
    def d(self) -> Fraction:
        return self.inner[1]

    def log_circuit_number(self) -> mpmath.mpf:
        with mpmath.workprec(_PREC):
            total = mpmath.mpf(0)
            for (_, c), lam in zip(self.outer, self.weights):
                total += mpmath.mpf(lam.numerator) / lam.denominator * (
                    mpmath.log(mpmath.mpf(c.numerator) / c.denominator)
                    - mpmath.log(mpmath.mpf(lam.numerator) / lam.denominator)
                )
            return +total

    @property
    def circuit_number(self) -> float:
        with mpmath.workprec(_PREC):
            return float(mpmath.exp(self.log_circuit_number()))

    @property
    def outer_even(self) -> bool:
        return all(_is_even(a) for a, _ in self.outer)

    def to_polynomial(self) -> Polynomial:
        terms = [(a, c) for a, c in self.outer] + [(self.inner[0], -self.inner[1])]
        return Polynomial(terms, self.nvars)


def compare_to_theta(value: Fraction, circuit: CircuitPolynomial) -> int:
    """Sign of ``value - Theta``: -1 below, 0 within the guard band, +1 above.

    ``value`` must be positive. The comparison is made on logarithms at
    128-bit precision; values within ``THETA_GUARD`` (relative) of the
    circuit number count as equal.
    """
    if value <= 0:
        raise ValueError("value must be positive")
    with mpmath.workprec(_PREC):
        diff = mpmath.log(mpmath.mpf(value.numerator) / value.denominator) - circuit.log_circuit_number()
        if abs(diff) <= THETA_GUARD:
            return 0
        return 1 if diff > 0 else -1


def recognize(f: Polynomial, require_even: bool = True) -> CircuitPolynomial:
    """Recognize ``f`` as a circuit polynomial.

    The outer terms are the vertices of New(f); there must be exactly one
    further term, lying in the relative interior of the simplex they span.
    With ``require_even`` the outer exponents must also lie in (2N)^n.
    """
    if len(f) < 2:
        raise NotCircuitError("simplex support", "fewer than two terms")
    P = hull(f.support)
    verts = list(P.vertices)
    if affine_rank(verts) != len(verts) - 1:
        raise NotCircuitError("simplex support", "the Newton polytope is not a simplex")
    rest = [e for e in f.support if e not in set(verts)]
    if len(rest) != 1:
        if not rest:
            raise NotCircuitError("interior inner exponent", "beta not interior: every term is a vertex")
        raise NotCircuitError("interior inner exponent", f"{len(rest)} non-vertex terms, expected one")
    beta = rest[0]
    outer = tuple((a, f.coefficient(a)) for a in sorted(verts, key=glex_key))
    if any(c <= 0 for _, c in outer):
        raise NotCircuitError("positive outer coefficients", "a vertex coefficient is not positive")
    if require_even and not all(_is_even(a) for a, _ in outer):
        raise NotCircuitError("even outer exponents", "outer exponents are not all in (2N)^n")
    lam, interior = barycentric([a for a, _ in outer], beta)
    if not interior:
        raise NotCircuitError("interior inner exponent", f"beta {beta} is not interior to the simplex")
    return CircuitPolynomial(outer, (beta, -f.coefficient(beta)), tuple(lam))


def is_nonnegative(c: CircuitPolynomial) -> bool:
    """Nonnegativity over R^n.

    For even ``beta`` the test is ``d <= Theta``; otherwise ``|d| <= Theta``.
    """
    if not c.outer_even:
        raise ValueError("nonnegativity over R^n needs even outer exponents")
    d = c.d
    if _is_even(c.inner[0]):
        if d <= 0:
            return True
        return compare_to_theta(d, c) <= 0
    if d == 0:
        return True
    return compare_to_theta(abs(d), c) <= 0


def is_nonnegative_on_orthant(c: CircuitPolynomial) -> bool:
    """Nonnegativity over the open positive orthant: ``d <= Theta``."""
    if c.d <= 0:
        return True
    return compare_to_theta(c.d, c) <= 0


@dataclass(frozen=True)
class CircuitCover:
    circuits: tuple[CircuitPolynomial, ...]
    leftover: Polynomial

    def reconstruct(self) -> Polynomial:
        total = self.leftover
        for c in self.circuits:
            total = total + c.to_polynomial()
        return total

    def all_nonnegative_on_orthant(self) -> bool:
        return all(c.d <= 0 or is_nonnegative_on_orthant(c) for c in self.circuits) and all(
            v > 0 for v in self.leftover.terms.values()
        )


def _covering_subset(outer_exps: list[Exponent], beta: Exponent, gamma: Exponent | None):
    n = len(beta)
    max_size = n if gamma is not None else n + 1
    min_size = 1 if gamma is not None else 2
    for size in range(min_size, max_size + 1):
        for subset in combinations(outer_exps, size):
            verts = list(subset) + ([gamma] if gamma is not None else [])
            if affine_rank(verts) != len(verts) - 1:
                continue
            try:
                lam, interior = barycentric(verts, beta)
            except ValueError:
                continue
            if interior:
                return list(subset), lam
    return None


def cover_decompose(
    outer: Sequence[tuple[Sequence[int], Fraction]],
    inner: Sequence[tuple[Sequence[int], Fraction]],
    gamma: Sequence[int] | None = None,
    gamma_coef: Fraction | int | None = None,
) -> CircuitCover:
    """Split ``sum c_a x^a [+ g x^gamma] - sum d_b x^b`` into circuits.

    Each inner exponent ``b`` gets the first simplex (in graded-lex order of
    subsets of the outer exponents, joined with ``gamma`` when given) that
    holds ``b`` in its relative interior. An outer coefficient shared by ``m``
    of these simplices is split into ``m`` equal parts; the ``gamma``
    coefficient is split evenly over all circuits. Outer terms used by no
    simplex are returned as ``leftover``.
    """
    outer = [(tuple(a), Fraction(c)) for a, c in outer]
    inner = [(tuple(b), Fraction(d)) for b, d in inner]
    if gamma is not None:
        gamma = tuple(gamma)
        gamma_coef = Fraction(gamma_coef if gamma_coef is not None else 0)
        if gamma_coef <= 0 and inner:
            raise CoverError("the gamma coefficient must be positive")
    nvars = len((outer or inner or [(gamma, 0)])[0][0])
    if any(c <= 0 for _, c in outer):
        raise CoverError("outer coefficients must be positive")
    coef = dict(outer)
    exps = sorted(coef, key=glex_key)

    choices = []
    for b, d in inner:
        found = _covering_subset(exps, b, gamma)
        if found is None:
            raise CoverError(f"no covering simplex for inner exponent {b}")
        choices.append((b, d, *found))

    mult: dict[Exponent, int] = {}
    for _, _, subset, _ in choices:
        for a in subset:
            mult[a] = mult.get(a, 0) + 1

    circuits = []
    share = gamma_coef / len(choices) if (gamma is not None and choices) else None
    for b, d, subset, lam in choices:
        out = [(a, coef[a] / mult[a]) for a in subset]
        if gamma is not None:
            out.append((gamma, share))
        circuits.append(CircuitPolynomial(tuple(out), (b, d), tuple(lam)))

    left = [(a, c) for a, c in coef.items() if a not in mult]
    if gamma is not None and not choices and gamma_coef:
        left.append((gamma, gamma_coef))
    return CircuitCover(tuple(circuits), Polynomial(left, nvars))
