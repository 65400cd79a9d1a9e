"""Coercivity certificates from Newton polytope data.

The necessary conditions (even vertices, positive vertex coefficients, an
axis vertex ``2k e_i`` for every coordinate) and the sufficient condition
(positive coefficients on every non-vertex support point lying on a face away
from the origin) are both exact checks on the support. Between them lies a
gap, which :func:`report` returns as ``Verdict.UNKNOWN``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .poly import Exponent, Polynomial, glex_key
from .polytope import hull

__all__ = ["CoercivityReport", "NecessaryConditions", "Verdict", "check_necessary", "check_sufficient", "compute_D", "report"]


class Verdict(str, enum.Enum):
    COERCIVE = "Coercive"
    NOT_COERCIVE = "NotCoercive"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class NecessaryConditions:
    even_vertices: bool
    positive_vertex_coefficients: bool
    axis_vertices: bool

    def all(self) -> bool:
        return self.even_vertices and self.positive_vertex_coefficients and self.axis_vertices


@dataclass(frozen=True)
class CoercivityReport:
    necessary: NecessaryConditions
    D_set: tuple[Exponent, ...]
    sufficient_ok: bool
    verdict: Verdict
    shifted_constant: bool = False


def _require_constant(f: Polynomial):
    if f.constant_term <= 0:
        raise ValueError("needs a positive constant term")


def check_necessary(f: Polynomial) -> NecessaryConditions:
    _require_constant(f)
    P = hull(f.support)
    verts = P.vertices
    even = all(k % 2 == 0 for v in verts for k in v)
    positive = all(f.coefficient(v) > 0 for v in verts)
    axis = True
    for i in range(f.nvars):
        if not any(v[i] > 0 and v[i] % 2 == 0 and all(v[j] == 0 for j in range(f.nvars) if j != i) for v in verts):
            axis = False
            break
    return NecessaryConditions(even, positive, axis)


def compute_D(f: Polynomial) -> list[Exponent]:
    """Non-vertex support points lying on some face of New(f) that misses the origin."""
    origin = (0,) * f.nvars
    if origin not in f.support:
        raise ValueError("origin is not in the support")
    P = hull(f.support)
    verts = set(P.vertices)
    out = set()
    for face in P.faces_avoiding_origin():
        out.update(p for p in face.points if p not in verts)
    return sorted(out, key=glex_key)


def check_sufficient(f: Polynomial) -> bool:
    if not check_necessary(f).all():
        raise ValueError("the necessary coercivity conditions fail")
    return all(f.coefficient(a) > 0 for a in compute_D(f))


def report(f: Polynomial) -> CoercivityReport:
    """Three-valued coercivity verdict.

    Without a positive constant term the checks run on ``f`` with its
    constant replaced by 1 (constants do not affect coercivity), and
    ``NotCoercive`` is then never claimed.
    """
    shifted = f.constant_term <= 0
    g = f - f.constant_term + 1 if shifted else f
    nec = check_necessary(g)
    D = tuple(compute_D(g))
    suff = nec.all() and all(g.coefficient(a) > 0 for a in D)
    if suff:
        verdict = Verdict.COERCIVE
    elif not nec.all() and not shifted:
        verdict = Verdict.NOT_COERCIVE
    else:
        verdict = Verdict.UNKNOWN
    return CoercivityReport(nec, D, suff, verdict, shifted)
