"""Existence certificates for positive zeros of Birch-type systems.

A Birch-type system in ``n`` variables is::

    sum_{a in A} c_a (a - gamma) x^a - sum_{b in B} d_b (b - gamma) x^b = 0

with ``c_a, d_b > 0``. :func:`recognize` recovers ``(A, c, B, d, gamma)``
from the equations, :func:`certify` checks which existence result applies
(all geometric hypotheses exactly, orthant sign by :func:`orthant.decide`),
and :func:`validate` locates a zero numerically.

Route names: ``P4.1`` (gamma a simple vertex, A/B part negative somewhere),
``P4.5`` (simple vertex a0 != gamma, A/B part negative somewhere), ``T4.6``
(either of those), ``T4.8`` (gamma interior, A/B part nonnegative),
``T4.10`` (gamma interior, no sign condition) and ``Birch`` (B empty, gamma
interior; exactly one zero).
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .numeric import scaled_residual, solve_system
from .orthant import OrthantVerdict, Status, decide
from .poly import Exponent, Polynomial, glex_key
from .polytope import hull

__all__ = [
    "BirchSystem",
    "Certificate",
    "Hypothesis",
    "RecognitionError",
    "Verdict",
    "certify",
    "recognize",
    "validate",
]

logger = logging.getLogger(__name__)


class RecognitionError(ValueError):
    pass


class Verdict(str, enum.Enum):
    EXISTS = "ExistsPositiveZero"
    EXACTLY_ONE = "ExactlyOnePositiveZero"
    NOT_APPLICABLE = "NotApplicable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class BirchSystem:
    nvars: int
    A: tuple[tuple[Exponent, Fraction], ...]
    B: tuple[tuple[Exponent, Fraction], ...]
    gamma: Exponent

    def __post_init__(self):
        a_exps = {a for a, _ in self.A}
        b_exps = {b for b, _ in self.B}
        if a_exps & b_exps or self.gamma in a_exps | b_exps:
            raise ValueError("A, B and gamma must be pairwise disjoint")
        if any(c <= 0 for _, c in self.A) or any(d <= 0 for _, d in self.B):
            raise ValueError("coefficients c and d must be positive")

    def equations(self) -> list[Polynomial]:
        n = self.nvars
        eqs = []
        for i in range(n):
            terms = [(a, c * (a[i] - self.gamma[i])) for a, c in self.A]
            terms += [(b, -d * (b[i] - self.gamma[i])) for b, d in self.B]
            eqs.append(Polynomial(terms, n))
        return eqs

    def ab_part(self) -> Polynomial:
        """``sum c_a x^a - sum d_b x^b``."""
        return Polynomial([(a, c) for a, c in self.A] + [(b, -d) for b, d in self.B], self.nvars)

    def scaled(self, t: Fraction) -> "BirchSystem":
        t = Fraction(t)
        return BirchSystem(self.nvars, tuple((a, c * t) for a, c in self.A), tuple((b, d * t) for b, d in self.B), self.gamma)


def _scalar(v: Sequence[Fraction], alpha: Exponent, gamma: Sequence[Fraction]) -> Fraction | None:
    # s with v = s (alpha - gamma), or None
    diff = [Fraction(a) - g for a, g in zip(alpha, gamma)]
    k = next((i for i, x in enumerate(diff) if x != 0), None)
    if k is None:
        return None
    s = v[k] / diff[k]
    if s == 0 or any(v[i] != s * diff[i] for i in range(len(v))):
        return None
    return s


def _assemble(n: int, vecs: dict[Exponent, list[Fraction]], gamma: Sequence[Fraction]) -> BirchSystem | None:
    if any(g.denominator != 1 or g < 0 for g in gamma):
        return None
    A, B = [], []
    for alpha in sorted(vecs, key=glex_key):
        s = _scalar(vecs[alpha], alpha, gamma)
        if s is None:
            return None
        (A if s > 0 else B).append((alpha, abs(s)))
    return BirchSystem(n, tuple(A), tuple(B), tuple(int(g) for g in gamma))


def recognize(system: Sequence[Polynomial]) -> BirchSystem:
    """Recover the Birch structure ``(A, c, B, d, gamma)`` of a system.

    Every monomial's coefficient vector across the equations must be a
    nonzero multiple ``s (alpha - gamma)`` of its exponent offset from a
    common ``gamma``; positive ``s`` puts ``alpha`` in A, negative in B.
    """
    system = list(system)
    if not system:
        raise RecognitionError("empty system")
    n = system[0].nvars
    if len(system) != n or any(p.nvars != n for p in system):
        raise RecognitionError(f"need {n} equations in {n} variables")
    exps = sorted({e for p in system for e in p.support}, key=glex_key)
    if not exps:
        raise RecognitionError("all equations are zero")
    vecs = {e: [p.coefficient(e) for p in system] for e in exps}

    # v_j gamma_i - v_i gamma_j = v_j alpha_i - v_i alpha_j for i < j
    rows, rhs = [], []
    for alpha, v in vecs.items():
        for i, j in itertools.combinations(range(n), 2):
            row = [Fraction(0)] * n
            row[i] += v[j]
            row[j] -= v[i]
            if any(row):
                rows.append(row)
                rhs.append(v[j] * alpha[i] - v[i] * alpha[j])
            elif v[j] * alpha[i] - v[i] * alpha[j] != 0:
                raise RecognitionError("inconsistent: no gamma exists")
    if rows:
        gamma, nullity = la.solve_any(rows, rhs)
        if gamma is None:
            raise RecognitionError("inconsistent: no gamma exists")
    else:
        gamma, nullity = None, n

    if nullity == 0:
        if any(g.denominator != 1 for g in gamma):
            raise RecognitionError(f"gamma {[str(g) for g in gamma]} is not integral")
        if any(g < 0 for g in gamma):
            raise RecognitionError(f"gamma {[str(g) for g in gamma]} is not nonnegative")
        bs = _assemble(n, vecs, gamma)
        if bs is None:
            raise RecognitionError("some monomial's coefficient vector is not a nonzero multiple of its offset from gamma")
        return bs

    # underdetermined: search integral gamma in the lattice box of the support
    lo = [min(e[i] for e in exps) for i in range(n)]
    hi = [max(e[i] for e in exps) for i in range(n)]
    box = sorted(itertools.product(*[range(l, h + 1) for l, h in zip(lo, hi)]), key=glex_key)
    for cand in box:
        g = [Fraction(x) for x in cand]
        if any(sum((r * x for r, x in zip(row, g)), Fraction(0)) != b for row, b in zip(rows, rhs)):
            continue
        bs = _assemble(n, vecs, g)
        if bs is not None:
            return bs
    raise RecognitionError("no integral gamma in the support's lattice box")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: str  # pass | fail | unknown
    evidence: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "evidence": self.evidence}


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    theorem: str | None
    system: BirchSystem
    hypotheses: tuple[Hypothesis, ...]
    routes: tuple[str, ...] = ()
    witness: dict | None = None
    orthant: OrthantVerdict | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        bs = self.system
        return {
            "verdict": self.verdict.value,
            "theorem": self.theorem,
            "gamma": list(bs.gamma),
            "A": [{"exp": list(a), "c": str(c)} for a, c in bs.A],
            "B": [{"exp": list(b), "d": str(d)} for b, d in bs.B],
            "hypotheses": [h.as_dict() for h in self.hypotheses],
            "witness": self.witness,
        }


def _pf(ok: bool) -> str:
    return "pass" if ok else "fail"


def _exps(xs) -> list[list[int]]:
    return [list(x) for x in sorted(xs, key=glex_key)]


def certify(bs: BirchSystem, budget: int = 10_000, seed: int = 0) -> Certificate:
    """Apply the strongest existence result whose hypotheses hold."""
    n = bs.nvars
    a_exps = [a for a, _ in bs.A]
    b_exps = [b for b, _ in bs.B]
    gamma = bs.gamma

    if not a_exps:
        h = Hypothesis("A nonempty", "fail", {})
        return Certificate(Verdict.NOT_APPLICABLE, None, bs, (h,))

    delta = hull(a_exps + [gamma])
    conv_a = hull(a_exps)
    full = delta.full_dimensional
    dim_h = Hypothesis("dim(Delta) = n", _pf(full), {"dim": delta.dim, "n": n, "Delta_vertices": _exps(delta.vertices)})

    if gamma in delta.vertices:
        position = "vertex"
    elif conv_a.full_dimensional and conv_a.is_interior(gamma):
        position = "interior"
    else:
        position = "boundary"
    gamma_vertex = Hypothesis("gamma is a vertex of Delta", _pf(position == "vertex"), {"position": position})
    gamma_interior = Hypothesis("gamma in interior of Conv(A)", _pf(position == "interior"), {"position": position})

    if full:
        outside = [b for b in b_exps if not delta.is_interior(b)]
    else:
        outside = list(b_exps)
    b_h = Hypothesis("B in interior of Delta", _pf(not outside), {"not_interior": _exps(outside)})

    simple = delta.simple_vertices() if full else []
    simple_h = Hypothesis("Delta simple at some vertex", _pf(bool(simple)), {"simple_vertices": _exps(simple)})
    simple_gamma = gamma in simple
    simple_other = [v for v in simple if v != gamma and v in a_exps]

    # Birch: no B, gamma interior to Conv(A), full dimension
    if not b_exps and conv_a.full_dimensional and position == "interior":
        hyps = (
            Hypothesis("B empty", "pass", {}),
            Hypothesis("dim(Conv(A)) = n", "pass", {"dim": conv_a.dim}),
            gamma_interior,
        )
        return Certificate(Verdict.EXACTLY_ONE, "Birch", bs, hyps, ("Birch",))

    structural = full and not outside and bool(simple)
    ov = decide(bs.ab_part(), budget=budget, seed=seed) if structural else None
    if ov is not None:
        status = {Status.NEGATIVE: "pass", Status.NONNEGATIVE: "fail", Status.UNKNOWN: "unknown"}[ov.status]
        neg_h = Hypothesis("A/B part not nonnegative on the orthant", status, ov.evidence())
        nonneg_h = Hypothesis(
            "A/B part nonnegative on the orthant",
            {"pass": "fail", "fail": "pass", "unknown": "unknown"}[status],
            ov.evidence(),
        )
    else:
        neg_h = nonneg_h = None

    routes: list[str] = []
    negative = ov is not None and ov.status == Status.NEGATIVE
    nonnegative = ov is not None and ov.status == Status.NONNEGATIVE
    if structural and negative and position == "vertex" and simple_gamma:
        routes.append("P4.1")
    if structural and negative and simple_other:
        routes.append("P4.5")
    if structural and negative:
        routes.append("T4.6")
    if structural and position == "interior" and nonnegative:
        routes.append("T4.8")
    if structural and position == "interior":
        routes.append("T4.10")

    routes_ev = {"applicable_routes": routes}
    base = (replace(dim_h, evidence={**dim_h.evidence, **routes_ev}), b_h)
    if "P4.1" in routes:
        s_h = Hypothesis("Delta simple at gamma", "pass", {"neighbors": _exps(delta.is_simple_at(gamma)[1])})
        hyps = base + (gamma_vertex, s_h, neg_h)
        return Certificate(Verdict.EXISTS, "P4.1", bs, hyps, tuple(routes), orthant=ov)
    if "P4.5" in routes:
        a0 = simple_other[0]
        s_h = Hypothesis("Delta simple at a vertex a0 != gamma", "pass", {"a0": list(a0), "neighbors": _exps(delta.is_simple_at(a0)[1])})
        hyps = base + (s_h, neg_h)
        return Certificate(Verdict.EXISTS, "P4.5", bs, hyps, tuple(routes), orthant=ov)
    if "T4.6" in routes:
        hyps = base + (simple_h, neg_h)
        return Certificate(Verdict.EXISTS, "T4.6", bs, hyps, tuple(routes), orthant=ov)
    if "T4.8" in routes:
        hyps = base + (gamma_interior, simple_h, nonneg_h)
        return Certificate(Verdict.EXISTS, "T4.8", bs, hyps, tuple(routes), orthant=ov)
    if "T4.10" in routes:
        hyps = base + (gamma_interior, simple_h)
        return Certificate(Verdict.EXISTS, "T4.10", bs, hyps, tuple(routes), orthant=ov)

    hyps = [replace(dim_h, evidence={**dim_h.evidence, **routes_ev}), b_h, gamma_vertex, gamma_interior, simple_h]
    if neg_h is not None:
        hyps.append(neg_h)
    if structural and ov.status == Status.UNKNOWN:
        return Certificate(Verdict.UNKNOWN, "T4.6", bs, tuple(hyps), (), orthant=ov)
    return Certificate(Verdict.NOT_APPLICABLE, None, bs, tuple(hyps), (), orthant=ov)


def validate(bs: BirchSystem, cert: Certificate, starts: int = 64, seed: int = 0) -> Certificate:
    """Attach a numerically located positive zero to a positive certificate.

    Failing to find one leaves the verdict in place; the witness is then
    ``None``.
    """
    if cert.verdict not in (Verdict.EXISTS, Verdict.EXACTLY_ONE):
        return cert
    eqs = bs.equations()
    roots = solve_system(eqs, starts=starts, seed=seed)
    if not roots:
        logger.info("no positive zero found in %d starts; certificate left unvalidated", starts)
        return cert
    r = roots[0]
    witness = {"point": [float(x) for x in r.point], "residual": scaled_residual(eqs, r.point)}
    return replace(cert, witness=witness)
