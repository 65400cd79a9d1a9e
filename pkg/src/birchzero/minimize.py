"""Global minimizers in the positive orthant.

For ``f = sum_A c_a x^a - sum_B d_b x^b`` with even ``A``, ``B`` interior to
New(f), ``dim New(f) = n`` and ``Conv(A + {0})`` simple at the origin, either
the origin is a global minimizer or ``f`` attains its global minimum at a
point with positive coordinates. The second case is established by an exact
rational point ``p > 0`` with ``f(p) < f(0)``; the minimizer itself is then
located numerically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .numeric import NumericResult, minimize_orthant, snap_point
from .orthant import Status, decide
from .poly import Polynomial, glex_key
from .polytope import hull

__all__ = ["Conclusion", "MinimizeReport", "check_and_minimize"]


class Conclusion(str, enum.Enum):
    HAS_MINIMIZER = "HasGlobalMinimizerInOrthant"
    ORIGIN = "OriginIsMinimizer"
    NOT_APPLICABLE = "NotApplicable"
    UNKNOWN = "Unknown"


@dataclass
class MinimizeReport:
    hypotheses: list[tuple[str, str, dict]]
    conclusion: Conclusion
    minimizer: np.ndarray | None = None
    value: float | None = None
    gradient_norm: float | None = None
    witness: tuple[Fraction, ...] | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "conclusion": self.conclusion.value,
            "hypotheses": [{"name": n, "status": s, "evidence": e} for n, s, e in self.hypotheses],
            "minimizer": None if self.minimizer is None else [float(x) for x in self.minimizer],
            "value": self.value,
            "gradient_norm": self.gradient_norm,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
        }


def _grad_norm(f: Polynomial, x) -> float:
    return float(np.linalg.norm([g.evaluate([float(v) for v in x]) for g in f.gradient()]))


def check_and_minimize(f: Polynomial, budget: int = 10_000, seed: int = 0, starts: int = 32) -> MinimizeReport:
    n = f.nvars
    A = [e for e, c in f.terms.items() if c > 0]
    B = [e for e, c in f.terms.items() if c < 0]
    origin = (0,) * n
    hyps: list[tuple[str, str, dict]] = []

    even = all(k % 2 == 0 for a in A for k in a)
    hyps.append(("A in (2N)^n", "pass" if even else "fail", {"odd": [list(a) for a in A if any(k % 2 for k in a)]}))
    if not even:
        return MinimizeReport(hyps, Conclusion.NOT_APPLICABLE)
    if not B:
        # every term is a nonnegative even monomial, so f >= f(0)
        hyps.append(("B empty", "pass", {}))
        return MinimizeReport(hyps, Conclusion.ORIGIN, np.zeros(n), float(f.constant_term))

    P = hull(f.support)
    full = P.full_dimensional
    hyps.append(("dim(New(f)) = n", "pass" if full else "fail", {"dim": P.dim}))
    inner_ok = full and all(P.is_interior(b) for b in B)
    hyps.append(("B in interior of New(f)", "pass" if inner_ok else "fail", {}))
    H = hull(A + [origin])
    if H.full_dimensional and origin in H.vertices:
        simple, nbrs = H.is_simple_at(origin)
    else:
        simple, nbrs = False, []
    hyps.append(("Conv(A + {0}) simple at 0", "pass" if simple else "fail", {"neighbors": [list(v) for v in sorted(nbrs, key=glex_key)]}))

    f0 = f.constant_term
    ov = decide(f - f0, budget=budget, seed=seed)
    status = {Status.NEGATIVE: "pass", Status.NONNEGATIVE: "fail", Status.UNKNOWN: "unknown"}[ov.status]
    hyps.append(("origin is not a global minimizer", status, ov.evidence()))

    if ov.status == Status.NONNEGATIVE:
        # f(|x|) <= f(x) for even A, and f - f(0) >= 0 on the closed orthant
        return MinimizeReport(hyps, Conclusion.ORIGIN, np.zeros(n), float(f0))
    if ov.status == Status.UNKNOWN:
        return MinimizeReport(hyps, Conclusion.UNKNOWN)
    if not (full and inner_ok and simple):
        return MinimizeReport(hyps, Conclusion.NOT_APPLICABLE, witness=ov.witness)

    best: NumericResult | None = minimize_orthant(f, starts=starts, seed=seed, max_iter=budget)
    witness = ov.witness
    if best is not None:
        for den in (10**6, 10**9):
            p = snap_point(best.point, den)
            if all(x > 0 for x in p) and f.evaluate(p) < f0:
                witness = p
                break
    point = None if best is None else best.point
    return MinimizeReport(
        hyps,
        Conclusion.HAS_MINIMIZER,
        point,
        None if best is None else float(best.value_or_residual),
        None if best is None else _grad_norm(f, best.point),
        witness,
    )
