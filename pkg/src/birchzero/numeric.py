"""Floating-point search over the positive orthant.

Everything here works in exponential coordinates ``x = exp(u)``: a polynomial
``sum c_a x^a`` becomes ``sum c_a exp(<a, u>)`` on all of R^n, so the orthant
constraint disappears. Results are floats; exact verification happens in the
callers (snap with :func:`snap_point`, then evaluate rationally).
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import Exponent, Polynomial

__all__ = [
    "ExpForm",
    "Mode",
    "NumericResult",
    "ThresholdError",
    "ThresholdQuery",
    "ThresholdResult",
    "estimate_threshold",
    "minimize_orthant",
    "scaled_residual",
    "snap_point",
    "solve_system",
]

logger = logging.getLogger(__name__)

ARMIJO_C = 1e-4
SHRINK = 0.5


@dataclass
class NumericResult:
    point: np.ndarray
    value_or_residual: float
    iterations: int
    converged: bool
    start_index: int = -1

    def as_dict(self) -> dict:
        return {
            "point": [float(v) for v in self.point],
            "value": float(self.value_or_residual),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


class ExpForm:
    """A polynomial (or system) compiled to ``C @ exp(A u)``."""

    def __init__(self, polys: Sequence[Polynomial] | Polynomial):
        if isinstance(polys, Polynomial):
            polys = [polys]
        self.nvars = polys[0].nvars
        exps: list[Exponent] = sorted({e for p in polys for e in p.support})
        index = {e: j for j, e in enumerate(exps)}
        self.A = np.array(exps, dtype=float).reshape(len(exps), self.nvars)
        self.C = np.zeros((len(polys), len(exps)))
        for i, p in enumerate(polys):
            for e, c in p.terms.items():
                self.C[i, index[e]] = float(c)

    def _exp(self, U: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(U @ self.A.T)

    def terms(self, U: np.ndarray) -> np.ndarray:
        """Per-equation term values, shape ``(..., neq, nterms)``."""
        E = self._exp(U)
        return E[..., None, :] * self.C

    def value(self, U: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            return self._exp(U) @ self.C.T

    def grad(self, U: np.ndarray) -> np.ndarray:
        """Gradient of the first row in ``u``; shape like ``U``."""
        with np.errstate(over="ignore", invalid="ignore"):
            return (self._exp(U) * self.C[0]) @ self.A

    def hess(self, u: np.ndarray) -> np.ndarray:
        w = self._exp(u) * self.C[0]
        return (self.A * w[:, None]).T @ self.A

    def jac(self, u: np.ndarray) -> np.ndarray:
        """Jacobian of the system in ``u`` at one point."""
        return self.C @ (self._exp(u)[:, None] * self.A)


def snap_point(x: Sequence[float], max_den: int) -> tuple[Fraction, ...]:
    """Nearby rationals with bounded denominators (continued fractions)."""
    return tuple(Fraction(float(v)).limit_denominator(max_den) for v in x)


def scaled_residual(system: Sequence[Polynomial], x: Sequence[float]) -> float:
    """``max_i |F_i(x)| / (1 + max_j |term_ij(x)|)``."""
    form = ExpForm(system)
    u = np.log(np.asarray(x, dtype=float))
    T = form.terms(u)
    F = T.sum(axis=-1)
    scale = 1.0 + np.abs(T).max(axis=-1)
    return float(np.max(np.abs(F) / scale))


# -- minimization -----------------------------------------------------------------


def _newton_polish(form: ExpForm, u: np.ndarray, max_iter: int = 60) -> tuple[np.ndarray, float, int]:
    f = float(form.value(u)[0])
    g = form.grad(u)
    it = 0
    for it in range(1, max_iter + 1):
        gn = np.linalg.norm(g)
        if not np.isfinite(gn) or gn < 1e-15 * max(1.0, abs(f)):
            break
        H = form.hess(u)
        try:
            p = -np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            break
        slope = float(g @ p)
        if not np.isfinite(slope) or slope >= 0:
            break
        t = 1.0
        accepted = False
        for _ in range(40):
            un = u + t * p
            fn = float(form.value(un)[0])
            if np.isfinite(fn):
                gnew = form.grad(un)
                if fn <= f + ARMIJO_C * t * slope or (
                    fn <= f + 8 * np.finfo(float).eps * max(1.0, abs(f)) and np.linalg.norm(gnew) < gn
                ):
                    accepted = True
                    break
            t *= SHRINK
        if not accepted:
            break
        u, f, g = un, fn, gnew
    return u, f, it


def minimize_orthant(
    f: Polynomial,
    starts: int = 32,
    seed: int = 0,
    max_iter: int = 10_000,
    gtol: float = 1e-8,
    stop_below: float | None = None,
    start_scale: float = 2.0,
    return_all: bool = False,
):
    """Multistart minimization of ``f`` over the positive orthant.

    Gradient descent with Armijo backtracking (all starts advance together),
    followed by a damped Newton polish of each start. Starts are drawn from
    ``N(0, start_scale^2)`` in exponential coordinates. With ``stop_below``,
    the search returns as soon as any start reaches a value below it.

    Returns the best :class:`NumericResult` (or all of them with
    ``return_all``). ``converged`` means the exp-coordinate gradient norm is
    below ``gtol``.
    """
    form = ExpForm(f)
    n = f.nvars
    rng = np.random.default_rng(seed)
    U = rng.normal(0.0, start_scale, size=(starts, n))
    vals = form.value(U)[:, 0]
    G = form.grad(U)
    step = np.ones(starts)
    Uprev = U.copy()
    Gprev = G.copy()
    active = np.isfinite(vals)
    iters = np.zeros(starts, dtype=int)
    gd_tol = 1e-6

    def hit(v):
        return stop_below is not None and np.any(v < stop_below)

    it = 0
    while it < max_iter and not hit(vals):
        gn2 = np.einsum("ij,ij->i", G, G)
        active &= np.isfinite(gn2) & (gn2 > gd_tol**2)
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        # Barzilai-Borwein trial step, then Armijo backtracking
        t = np.minimum(step[idx] * 2.0, 1e8)
        sv = U[idx] - Uprev[idx]
        yv = G[idx] - Gprev[idx]
        sy = np.einsum("ij,ij->i", sv, yv)
        ss = np.einsum("ij,ij->i", sv, sv)
        bb = (sy > 0) & np.isfinite(sy)
        t[bb] = np.clip(ss[bb] / sy[bb], 1e-12, 1e8)
        pending = np.ones(idx.size, dtype=bool)
        Unew = U[idx].copy()
        vnew = vals[idx].copy()
        for _ in range(80):
            if not pending.any():
                break
            p = np.flatnonzero(pending)
            trial = U[idx[p]] - t[p, None] * G[idx[p]]
            tv = form.value(trial)[:, 0]
            ok = np.isfinite(tv) & (tv <= vals[idx[p]] - ARMIJO_C * t[p] * gn2[idx[p]])
            Unew[p[ok]] = trial[ok]
            vnew[p[ok]] = tv[ok]
            pending[p[ok]] = False
            t[p[~ok]] *= SHRINK
        moved = ~pending
        stalled = idx[pending]
        active[stalled] = False
        mi = idx[moved]
        # stagnating starts (flat valleys, escape toward the boundary) stop early
        tiny = vals[mi] - vnew[moved] <= 1e-14 * (1.0 + np.abs(vals[mi]))
        active[mi[tiny]] = False
        Uprev[mi] = U[mi]
        Gprev[mi] = G[mi]
        U[mi] = Unew[moved]
        vals[mi] = vnew[moved]
        step[mi] = t[moved]
        G[mi] = form.grad(U[mi])
        iters[mi] += 1
        it += 1

    results = []
    for i in range(starts):
        if not np.isfinite(vals[i]):
            continue
        u, v, k = U[i], float(vals[i]), int(iters[i])
        if not hit(vals):
            u, v, extra = _newton_polish(form, U[i])
            k += extra
        g = form.grad(u)
        gn = float(np.linalg.norm(g))
        with np.errstate(over="ignore"):
            x = np.exp(u)
        if not np.all(np.isfinite(x)) or np.any(x <= 0):
            continue
        results.append(NumericResult(x, v, k, gn < gtol, i))
    if return_all:
        return results
    if not results:
        return None
    return min(results, key=lambda r: (r.value_or_residual, r.start_index))


# -- root finding ------------------------------------------------------------------


def _newton_root(form: ExpForm, u: np.ndarray, max_iter: int, index: int) -> NumericResult:
    F = form.value(u)
    norm = float(np.linalg.norm(F))
    it = 0
    for it in range(1, max_iter + 1):
        if not np.isfinite(norm):
            break
        T = np.abs(form.terms(u))
        res = float(np.max(np.abs(F) / (1.0 + T.max(axis=-1))))
        if res < 1e-14:
            break
        J = form.jac(u)
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            break
        t = 1.0
        improved = False
        for _ in range(40):
            un = u + t * step
            Fn = form.value(un)
            nn = float(np.linalg.norm(Fn))
            if np.isfinite(nn) and nn < norm:
                improved = True
                break
            t *= SHRINK
        if not improved or np.max(np.abs(t * step)) < 1e-14:
            if improved:
                u, F, norm = un, Fn, nn
            break
        u, F, norm = un, Fn, nn
    with np.errstate(over="ignore"):
        x = np.exp(u)
    T = np.abs(form.terms(u))
    with np.errstate(invalid="ignore"):
        res = float(np.max(np.abs(F) / (1.0 + T.max(axis=-1))))
    ok = bool(np.isfinite(res) and res < 1e-9 and np.all(np.isfinite(x)) and np.all(x > 0))
    return NumericResult(x, res, it, ok, index)


def solve_system(
    system: Sequence[Polynomial], starts: int = 64, seed: int = 0, max_iter: int = 200, dedupe_tol: float = 1e-6
) -> list[NumericResult]:
    """Positive zeros of a square polynomial system by multistart damped Newton.

    Starts are uniform in ``[-3, 3]^n`` in exponential coordinates. Only
    converged roots (scaled residual below 1e-9) are returned, deduplicated
    at ``dedupe_tol`` in max-norm, in order of first discovery.
    """
    system = list(system)
    n = system[0].nvars
    if len(system) != n:
        raise ValueError(f"{len(system)} equations in {n} variables")
    form = ExpForm(system)
    rng = np.random.default_rng(seed)
    U0 = rng.uniform(-3.0, 3.0, size=(starts, n))
    found: list[NumericResult] = []
    for i in range(starts):
        r = _newton_root(form, U0[i], max_iter, i)
        if not r.converged:
            continue
        if any(np.max(np.abs(r.point - q.point)) < dedupe_tol for q in found):
            continue
        found.append(r)
    return found


# -- thresholds ----------------------------------------------------------------------


class Mode(str, enum.Enum):
    INF = "inf"
    SUP = "sup"


class ThresholdError(RuntimeError):
    def __init__(self, message: str, bracket: tuple[float, float | None]):
        self.bracket = bracket
        super().__init__(f"{message}; partial bracket {bracket}")


@dataclass(frozen=True)
class ThresholdQuery:
    """``f_d`` built from positive terms, subtracted terms and a ``gamma`` term.

    In ``INF`` mode ``f_d = sum c x^a + d x^gamma - sum d_b x^b``; in ``SUP``
    mode ``f_d = sum c x^a - sum d_b x^b - d x^gamma``.
    """

    outer: tuple[tuple[Exponent, Fraction], ...]
    inner: tuple[tuple[Exponent, Fraction], ...]
    gamma: Exponent
    mode: Mode

    @property
    def nvars(self) -> int:
        return len(self.gamma)

    def base(self) -> Polynomial:
        return Polynomial([(a, c) for a, c in self.outer] + [(b, -d) for b, d in self.inner], self.nvars)

    def f_d(self, d) -> Polynomial:
        sign = 1 if self.mode == Mode.INF else -1
        return self.base() + Polynomial({self.gamma: sign * Fraction(d)}, self.nvars)


@dataclass
class ThresholdResult:
    lo: float
    hi: float
    evaluations: int
    minimizer: NumericResult | None = field(default=None, repr=False)


def estimate_threshold(
    q: ThresholdQuery,
    tol: float = 1e-4,
    starts: int = 32,
    seed: int = 0,
    max_iter: int = 10_000,
    cap: float = 2.0**30,
) -> ThresholdResult:
    """Bracket the critical ``gamma`` weight ``d*`` by bisection.

    The oracle is the sign of the numeric orthant infimum of ``f_d``;
    ``f_d`` is pointwise monotone in ``d`` so the oracle is monotone too.
    Returns an interval of width at most ``tol``; a minimizer of ``f_d`` at
    the nonnegative end is attached, where the infimum is close to zero.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    coef_scale = max([abs(float(c)) for _, c in q.outer] + [abs(float(c)) for _, c in q.inner] + [1.0])
    eps = 1e-12 * coef_scale
    calls = 0

    def nonneg(d: float) -> bool:
        nonlocal calls
        calls += 1
        fd = q.f_d(Fraction(d))
        r = minimize_orthant(fd, starts=starts, seed=seed, max_iter=max_iter, stop_below=-eps)
        return r is None or r.value_or_residual >= -eps

    if q.mode == Mode.INF:
        if nonneg(0.0):
            return ThresholdResult(0.0, 0.0, calls)
        lo, hi = 0.0, 1.0
        while not nonneg(hi):
            lo, hi = hi, hi * 2
            if hi > cap:
                raise ThresholdError("no nonnegative weight found below the cap", (lo, None))
        good_is_hi = True
    else:
        if not nonneg(0.0):
            raise ThresholdError("f_0 is not nonnegative on the orthant", (0.0, None))
        lo, hi = 0.0, 1.0
        while nonneg(hi):
            lo, hi = hi, hi * 2
            if hi > cap:
                raise ThresholdError("no negative weight found below the cap", (lo, None))
        good_is_hi = False

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        ok = nonneg(mid)
        if ok == good_is_hi:
            hi = mid
        else:
            lo = mid

    good = hi if good_is_hi else lo
    bad = lo if good_is_hi else hi
    if not nonneg(good) or nonneg(bad):
        raise ThresholdError("oracle signs inconsistent at the bracket ends", (lo, hi))
    best = minimize_orthant(q.f_d(Fraction(good)), starts=starts, seed=seed, max_iter=max_iter)
    return ThresholdResult(lo, hi, calls, best)
