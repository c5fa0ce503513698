"""Star-area vectors and the secondary polytope of a convex polygon.

For a strictly convex m-gon Q (rational coordinates, counterclockwise) and a
triangulation t, the star-area vector has entry i equal to the total area of
the triangles of t at vertex i; the secondary polytope is the convex hull of
these vectors over all triangulations.  It is an (m-3)-dimensional
associahedron sitting in R^m with a 3-dimensional lineality space spanned by
the values of the affine functionals 1, x, y on Q's vertices.

Facet normals come from one-sided piecewise-linear lifts: for a diagonal d,
the lift is zero on one side of the line through d and grows linearly on the
other.  Any positive rescaling of the per-vertex "height above the line"
works, so twice the signed triangle area replaces the Euclidean distance and
everything stays rational.  The positive side is the one away from vertex 0
(away from vertex 1 when d touches 0).  These lifts are inner normals
(minimized exactly on the triangulations using d); rays of the quotient fan
are their negatives, so that fans are outward-normal fans across the whole
package.

The canonical test polygon puts vertex k at (k, k^2): strictly convex,
counterclockwise, and every area in sight is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactlin import QMatrix, QVector, Rat, primitive_vector, rat
from .polygon import (
    Diagonal,
    Triangulation,
    all_diagonals,
    check_diagonal,
    enumerate_triangulations,
    triangles_of,
)
from .realization import HPolytope, LabeledFan, RealizationError, default_projection

Point = tuple[Rat, Rat]


@dataclass(frozen=True)
class PlanarConfig:
    """Vertices of a strictly convex polygon, counterclockwise, no 3 collinear."""

    points: tuple[Point, ...]

    def __init__(self, points: Iterable[tuple]):
        pts = tuple((rat(x), rat(y)) for x, y in points)
        if len(pts) < 3:
            raise RealizationError("a polygon needs at least 3 vertices")
        m = len(pts)
        for k in range(m):
            a, b, c = pts[k], pts[(k + 1) % m], pts[(k + 2) % m]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross <= 0:
                raise RealizationError(
                    "points must be strictly convex in counterclockwise order"
                )
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return self.m - 3


def parabola_config(m: int) -> PlanarConfig:
    """The canonical rational test polygon: vertex k at (k, k^2)."""
    return PlanarConfig((k, k * k) for k in range(m))


def twice_area(q: PlanarConfig, a: int, b: int, c: int) -> Rat:
    """Signed doubled triangle area (positive for counterclockwise triples)."""
    (ax, ay), (bx, by), (cx, cy) = q.points[a], q.points[b], q.points[c]
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def gkz_vector(q: PlanarConfig, t: Triangulation) -> QVector:
    """Per-vertex star areas of a triangulation (entry sum is 3 * area)."""
    if t.m != q.m:
        raise RealizationError("triangulation does not match the polygon")
    star = [Fraction(0)] * q.m
    for a, b, c in triangles_of(t):
        area2 = twice_area(q, a, b, c)
        if area2 <= 0:
            raise RealizationError("degenerate triangle in star-area computation")
        area = area2 / 2
        star[a] += area
        star[b] += area
        star[c] += area
    return QVector(star)


def lineality_basis(q: PlanarConfig) -> QMatrix:
    """Values of the affine functionals 1, x, y on the vertices (lineality rows)."""
    ones = QVector([Fraction(1)] * q.m)
    xs = QVector([p[0] for p in q.points])
    ys = QVector([p[1] for p in q.points])
    return QMatrix([ones, xs, ys])


def gkz_polytope(
    q: PlanarConfig,
) -> tuple[dict[Triangulation, QVector], QMatrix]:
    """All star-area vectors plus the lineality rows of their common fan."""
    vertex_map = {t: gkz_vector(q, t) for t in enumerate_triangulations(q.m)}
    return vertex_map, lineality_basis(q)


def gkz_facet_normal(q: PlanarConfig, d: Diagonal) -> QVector:
    """One-sided lift for a diagonal: 0 on/below the line through d, area above.

    The positive side is the one not containing vertex 0 (vertex 1 when d is
    incident to 0).  This is an inner normal of the secondary polytope: its
    pairing with star-area vectors is minimal exactly on the triangulations
    containing d.
    """
    check_diagonal(d, q.m)
    a, b = d
    ref = 0 if 0 not in d else 1
    if ref in d:
        raise RealizationError("no reference vertex available")
    ref_side = twice_area(q, a, b, ref)
    if ref_side == 0:
        raise RealizationError("reference vertex is collinear with the diagonal")
    sign = -1 if ref_side > 0 else 1
    values = []
    for i in range(q.m):
        h = sign * twice_area(q, a, b, i)
        values.append(h if h > 0 else Fraction(0))
    return QVector(values)


def gkz_quotient_fan(q: PlanarConfig) -> LabeledFan:
    """Outward-normal fan of the secondary polytope in the 3-codim quotient.

    Rays are the primitivized quotient images of the negated one-sided
    lifts; the cone of every triangulation is checked to be simplicial.
    """
    proj = default_projection(q.m, list(lineality_basis(q).rows))
    rays = {}
    for d in all_diagonals(q.m):
        rays[d] = primitive_vector(proj.apply(-gkz_facet_normal(q, d)))
    fan = LabeledFan(q.n, q.m, rays)
    fan.validate_simplicial()
    return fan


def gkz_hrep(q: PlanarConfig) -> HPolytope:
    """H-representation of the secondary polytope in R^m.

    Inequalities are the negated one-sided lifts with right-hand sides read
    off any triangulation containing the diagonal; the three equalities pin
    the affine hull (values of 1, x, y pairings, constant across vertices).
    """
    vertex_map, lin = gkz_polytope(q)
    some_vertex = next(iter(vertex_map.values()))
    by_diag: dict[Diagonal, QVector] = {}
    for t, v in vertex_map.items():
        for d in t.diagonals:
            by_diag.setdefault(d, v)
    ineqs = []
    for d in all_diagonals(q.m):
        omega = gkz_facet_normal(q, d)
        rhs = -omega.dot(by_diag[d])
        ineqs.append((d, -omega, rhs))
    eqs = tuple((row, row.dot(some_vertex)) for row in lin.rows)
    proj = default_projection(q.m, list(lin.rows))
    return HPolytope(q.m, q.m, tuple(ineqs), eqs, proj)


def crossing_pair_nonaffine(q: PlanarConfig, d1: Diagonal, d2: Diagonal) -> bool:
    """No nonzero combination of the two lifts is affine-linear (rank test).

    For crossing diagonals this is the algebraic content of the no-parallel-
    facets theorem: the lifts of d1 and d2 stay independent modulo the
    lineality space, so their facets can never be parallel.
    """
    rows = list(lineality_basis(q).rows)
    base_rank = QMatrix(rows).rank()
    full_rank = QMatrix(
        rows + [gkz_facet_normal(q, d1), gkz_facet_normal(q, d2)]
    ).rank()
    return full_rank == base_rank + 2
