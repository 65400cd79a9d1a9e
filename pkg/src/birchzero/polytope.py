"""Exact convex hulls of small lattice point sets.

Hulls are computed in the affine span of the points, so lower-dimensional
point sets (segments in the plane, say) are handled too. Facets come from
exhaustive hyperplane candidates through ``dim`` affinely independent points,
each checked against every point; this is fine for the handful of points a
Newton polytope of a sparse polynomial has, and keeps everything rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import _linalg as la
from .poly import Exponent, glex_key

__all__ = ["Face", "NewtonPolytope", "barycentric", "hull", "affine_rank"]


def affine_rank(points: Sequence[Sequence]) -> int:
    """Affine dimension of a point set."""
    points = list(points)
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return la.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


@dataclass(frozen=True)
class Face:
    """A face given by its vertices and all input points lying on it."""

    vertices: frozenset
    points: frozenset
    dim: int

    def sorted_vertices(self) -> list[Exponent]:
        return sorted(self.vertices, key=glex_key)


@dataclass(frozen=True, eq=False)
class NewtonPolytope:
    """Convex hull of a finite set of integer points.

    ``facets`` holds ``(normal, offset)`` pairs with the hull equal to
    ``{x : normal . x <= offset}``; they are only populated when the hull is
    full dimensional (``dim == nvars``).
    """

    nvars: int
    points: tuple
    vertices: tuple
    facets: tuple
    dim: int
    _origin: tuple = field(repr=False)
    _pivots: tuple = field(repr=False)
    _local_facets: tuple = field(repr=False)
    _faces: tuple = field(repr=False)

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.nvars

    def _local(self, p: Sequence) -> list[Fraction] | None:
        diff = [Fraction(a) - b for a, b in zip(p, self._origin)]
        coords = [diff[c] for c in self._pivots]
        # reconstruct to check p lies in the affine span
        if self.dim < self.nvars:
            basis = self._basis
            recon = [sum((t * row[j] for t, row in zip(coords, basis)), Fraction(0)) for j in range(self.nvars)]
            if recon != diff:
                return None
        return coords

    @property
    def _basis(self):
        diffs = [[Fraction(a) - b for a, b in zip(p, self._origin)] for p in self.points]
        m, piv = la.rref(diffs)
        return m[: len(piv)]

    def contains(self, p: Sequence) -> bool:
        """Membership in the (closed) hull."""
        t = self._local(p)
        if t is None:
            return False
        return all(la.dot(w, t) <= b for w, b in self._local_facets) if self.dim else t == []

    def in_relative_interior(self, p: Sequence) -> bool:
        t = self._local(p)
        if t is None:
            return False
        if self.dim == 0:
            return True
        return all(la.dot(w, t) < b for w, b in self._local_facets)

    def is_interior(self, p: Sequence) -> bool:
        """True iff ``p`` satisfies every facet inequality strictly."""
        if not self.full_dimensional:
            raise ValueError(f"interior test needs a full-dimensional hull (dim {self.dim} < {self.nvars})")
        return all(la.dot(w, p) < b for w, b in self.facets)

    def faces(self) -> tuple[Face, ...]:
        """All nonempty proper faces, ordered by dimension."""
        return self._faces

    def edges(self) -> list[tuple[Exponent, Exponent]]:
        if self.dim == 1:
            return [tuple(self.vertices)]
        return [tuple(f.sorted_vertices()) for f in self._faces if f.dim == 1]

    def is_simple_at(self, v: Sequence[int]) -> tuple[bool, list[Exponent]]:
        """Whether exactly ``dim`` edges meet at vertex ``v``, and the edge neighbors."""
        v = tuple(v)
        if not self.full_dimensional:
            raise ValueError(f"simplicity query needs a full-dimensional hull (dim {self.dim} < {self.nvars})")
        if v not in self.vertices:
            raise ValueError(f"{v} is not a vertex")
        neighbors = []
        for a, b in self.edges():
            if a == v:
                neighbors.append(b)
            elif b == v:
                neighbors.append(a)
        neighbors.sort(key=glex_key)
        return len(neighbors) == self.dim, neighbors

    def simple_vertices(self) -> list[Exponent]:
        return [v for v in self.vertices if self.is_simple_at(v)[0]]

    def faces_avoiding_origin(self) -> list[Face]:
        origin = (0,) * self.nvars
        if origin not in self.points:
            raise ValueError("origin is not one of the points")
        return [f for f in self._faces if origin not in f.points]


def _facet_candidates(local: list[list[Fraction]], d: int):
    if d == 1:
        for t in local:
            yield [Fraction(1)], t
        return
    for combo in combinations(range(len(local)), d):
        base = local[combo[0]]
        diffs = [[a - b for a, b in zip(local[i], base)] for i in combo[1:]]
        ns = la.nullspace(diffs)
        if len(ns) != 1:
            continue
        yield ns[0], base


def hull(points: Iterable[Sequence[int]]) -> NewtonPolytope:
    """Exact convex hull of a nonempty set of integer points."""
    pts = sorted({tuple(int(x) for x in p) for p in points}, key=glex_key)
    if not pts:
        raise ValueError("hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points have mixed dimensions")
    origin = pts[0]
    diffs = [[Fraction(a - b) for a, b in zip(p, origin)] for p in pts]
    _, pivots = la.rref(diffs)
    d = len(pivots)
    local = [[row[c] for c in pivots] for row in diffs]

    local_facets: list[tuple[list[Fraction], Fraction]] = []
    seen = set()
    if d >= 1:
        for w, base in _facet_candidates(local, d):
            b = la.dot(w, base)
            vals = [la.dot(w, t) for t in local]
            for sign in (1, -1):
                if all(sign * v <= sign * b for v in vals):
                    sw = [sign * x for x in w]
                    normal = la.primitive_integer(sw)
                    k = next(i for i, x in enumerate(sw) if x)
                    key = (normal, sign * b * Fraction(normal[k]) / sw[k])
                    if key not in seen:
                        seen.add(key)
                        local_facets.append(([Fraction(x) for x in normal], key[1]))

    # point sets on each facet
    facet_sets = []
    for w, b in local_facets:
        facet_sets.append(frozenset(i for i, t in enumerate(local) if la.dot(w, t) == b))

    if d == 0:
        vertex_idx = [0]
    else:
        vertex_idx = []
        for i in range(len(pts)):
            normals = [local_facets[k][0] for k, s in enumerate(facet_sets) if i in s]
            if normals and la.rank(normals) == d:
                vertex_idx.append(i)
    vertex_set = set(vertex_idx)

    # face lattice as the intersection closure of facets
    closure = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in closure:
                    new.add(c)
        closure |= new
        frontier = new
    faces = []
    for s in closure:
        fpts = frozenset(pts[i] for i in s)
        fverts = frozenset(pts[i] for i in s if i in vertex_set)
        faces.append(Face(fverts, fpts, affine_rank(sorted(fverts, key=glex_key))))
    faces.sort(key=lambda f: (f.dim, [glex_key(v) for v in f.sorted_vertices()]))

    ambient_facets = ()
    if d == n:
        ambient = []
        for w, b in local_facets:
            # pivots == range(n) here, so local coordinates are ambient differences
            ambient.append((tuple(w), b + la.dot(w, origin)))
        ambient_facets = tuple(ambient)

    return NewtonPolytope(
        nvars=n,
        points=tuple(pts),
        vertices=tuple(pts[i] for i in vertex_idx),
        facets=ambient_facets,
        dim=d,
        _origin=origin,
        _pivots=tuple(pivots),
        _local_facets=tuple((tuple(w), b) for w, b in local_facets),
        _faces=tuple(faces),
    )


def barycentric(simplex_vertices: Sequence[Sequence[int]], p: Sequence) -> tuple[list[Fraction], bool]:
    """Barycentric coordinates of ``p`` with respect to a simplex.

    Returns the exact weights and whether all of them are strictly positive.
    Raises ``ValueError`` for affinely dependent vertices or a point outside
    their affine span.
    """
    verts = [tuple(v) for v in simplex_vertices]
    if affine_rank(verts) != len(verts) - 1:
        raise ValueError("simplex vertices are affinely dependent")
    n = len(p)
    rows = [[Fraction(v[j]) for v in verts] for j in range(n)] + [[Fraction(1)] * len(verts)]
    rhs = [Fraction(x) for x in p] + [Fraction(1)]
    lam, nullity = la.solve_any(rows, rhs)
    if lam is None:
        raise ValueError(f"{tuple(p)} is outside the affine span of the simplex")
    return lam, all(x > 0 for x in lam)
