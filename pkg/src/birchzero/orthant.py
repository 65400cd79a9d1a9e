"""Semi-decision of nonnegativity over the open positive orthant.

Both definite answers come with exact evidence: a circuit cover that sums
back to the input for ``Nonnegative``, a rational point with an exactly
negative value for ``Negative``. When neither can be produced the answer is
``Unknown``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction

from .circuit import CircuitCover, CoverError, cover_decompose
from .numeric import minimize_orthant, snap_point
from .poly import Exponent, Polynomial
from .polytope import hull

__all__ = ["OrthantVerdict", "Status", "decide", "SNAP_DENOMINATORS"]

logger = logging.getLogger(__name__)

SNAP_DENOMINATORS = (10**6, 10**7, 10**8, 10**9)


class Status(str, enum.Enum):
    NONNEGATIVE = "Nonnegative"
    NEGATIVE = "Negative"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class OrthantVerdict:
    status: Status
    method: str
    cover: CircuitCover | None = None
    witness: tuple[Fraction, ...] | None = None
    witness_value: Fraction | None = None

    def evidence(self) -> dict:
        out: dict = {"status": self.status.value, "method": self.method}
        if self.cover is not None:
            out["circuits"] = [
                {
                    "outer": [{"exp": list(a), "c": str(c)} for a, c in circ.outer],
                    "inner": {"exp": list(circ.inner[0]), "d": str(circ.inner[1])},
                    "weights": [str(w) for w in circ.weights],
                    "circuit_number": circ.circuit_number,
                }
                for circ in self.cover.circuits
            ]
            out["leftover"] = [{"exp": list(e), "c": str(c)} for e, c in self.cover.leftover.sorted_terms()]
        if self.witness is not None:
            out["witness"] = [str(x) for x in self.witness]
            out["value"] = str(self.witness_value)
        return out


def _vertex_witness(f: Polynomial) -> tuple[tuple[Fraction, ...], Fraction] | None:
    # a negative vertex term dominates along any direction in its normal cone
    P = hull(f.support)
    if not P.full_dimensional:
        return None
    for v in P.vertices:
        if f.coefficient(v) >= 0:
            continue
        normals = [w for w, b in P.facets if sum(x * y for x, y in zip(w, v)) == b]
        w = [int(sum(col)) for col in zip(*normals)]  # facet normals are primitive integer vectors
        for k in (1, 2, 4, 8, 16, 32, 64):
            point = tuple(Fraction(2) ** (k * wi) for wi in w)
            value = f.evaluate(point)
            if value < 0:
                return point, value
    return None


def _snap_negative(f: Polynomial, candidates) -> tuple[tuple[Fraction, ...], Fraction] | None:
    for r in candidates:
        if r.value_or_residual >= 0:
            continue
        for den in SNAP_DENOMINATORS:
            p = snap_point(r.point, den)
            if any(x <= 0 for x in p):
                continue
            value = f.evaluate(p)
            if value < 0:
                return p, value
    return None


def decide(f: Polynomial, budget: int = 10_000, seed: int = 0, starts: int = 32, rounds: int = 3) -> OrthantVerdict:
    """Decide (soundly, incompletely) whether ``f >= 0`` on the positive orthant.

    Tries, in order: all coefficients nonnegative; a circuit cover of the
    negative terms by simplices of positive terms whose circuits all pass the
    AM-GM test; a negative vertex coefficient; multistart minimization in
    exponential coordinates with rational snapping of negative minima.
    ``budget`` caps gradient-descent iterations per round.
    """
    neg = [(e, -c) for e, c in f.terms.items() if c < 0]
    pos = [(e, c) for e, c in f.terms.items() if c > 0]
    if not neg:
        return OrthantVerdict(Status.NONNEGATIVE, "nonnegative coefficients", CircuitCover((), f))

    try:
        cover = cover_decompose(pos, neg)
    except CoverError:
        cover = None
    if cover is not None:
        if cover.reconstruct() != f:
            raise AssertionError("circuit cover does not reconstruct the polynomial")
        if cover.all_nonnegative_on_orthant():
            return OrthantVerdict(Status.NONNEGATIVE, "circuit cover", cover)

    found = _vertex_witness(f)
    if found is not None:
        return OrthantVerdict(Status.NEGATIVE, "negative vertex term", witness=found[0], witness_value=found[1])

    for r in range(rounds):
        results = minimize_orthant(f, starts=starts, seed=seed + r, max_iter=budget, return_all=True)
        results.sort(key=lambda res: (res.value_or_residual, res.start_index))
        found = _snap_negative(f, results)
        if found is not None:
            return OrthantVerdict(Status.NEGATIVE, "numeric minimization", witness=found[0], witness_value=found[1])
        if results and results[0].value_or_residual >= 0:
            break
    return OrthantVerdict(Status.UNKNOWN, "no certificate or witness found")
