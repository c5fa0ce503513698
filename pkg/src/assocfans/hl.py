"""The sign-sequence family of realizations on the two-chain polygon.

A sequence sigma in {+,-}^(n-1) is extended to signs (+, -, sigma, -, +) on
x-ordered vertices 0..n+2; positive vertices sit on an upper parabola arc,
negative ones on a lower arc (x-coordinate of vertex i is i).  For each
diagonal, the set R of vertices strictly below the full line through its
endpoints, with 0 replaced by the left endpoint and n+2 by the right one,
gives a subset S of {1..n+1} and the facet
sum_{i in S} x_i >= |S|(|S|+1)/2; together with sum x_i = (n+1)(n+2)/2 these
cut out an n-dimensional associahedron.

Labeling convention: the x-order of the vertices is NOT their cyclic order
around the polygon (the cyclic order is lower chain ascending, then upper
chain descending).  Facets are labeled by diagonals of the standard
0..m-1-counterclockwise polygon via this cyclic order, so all fans in the
package live on one combinatorial m-gon.

Vertex rule: the sign convention and additive constant of the combinatorial
coordinate rule are pinned against the facet-solving oracle on n in {2,3}
(and exhaustively in tests):

    x_i = (l_i+1)(r_i+1)            for negative vertices,
    x_i = (n+2) - (l_i+1)(r_i+1)    for positive vertices,

where l_i, r_i count polygon vertices in the two arcs cut off by the sides
of the x-spanning triangle at i.  hl_vertex_rule self-checks against the
oracle and refuses to return a mismatching value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactlin import QVector, Rat
from .genperm import _difference_projection
from .polygon import (
    Diagonal,
    SignSequence,
    Triangulation,
    all_diagonals,
    triangles_of,
)
from .realization import (
    HPolytope,
    LabeledFan,
    RealizationError,
    vertex_of_triangulation,
)

Point = tuple[Fraction, Fraction]


class ConventionError(RealizationError):
    """The combinatorial vertex rule disagreed with the facet-solving oracle."""


def extend_signs(sigma: SignSequence) -> tuple[int, ...]:
    """Extended sign vector (+, -, sigma, -, +) on x-labels 0..n+2."""
    return (1, -1, *sigma, -1, 1)


@dataclass(frozen=True)
class SignedPolygon:
    """Canonical embedding of the two-chain polygon for an extended sign vector."""

    extended: tuple[int, ...]  # sign of x-label i
    coords: tuple[Point, ...]  # coords[i] = embedding of x-label i
    cyclic: tuple[int, ...]  # cyclic[k] = x-label at counterclockwise position k

    @property
    def m(self) -> int:
        return len(self.extended)

    @property
    def n(self) -> int:
        return self.m - 3

    def position(self, xlabel: int) -> int:
        return self.cyclic.index(xlabel)

    def to_xpair(self, d: Diagonal) -> tuple[int, int]:
        """Standard diagonal -> x-label pair (sorted ascending)."""
        u, v = self.cyclic[d[0]], self.cyclic[d[1]]
        return (u, v) if u < v else (v, u)

    def to_diagonal(self, xpair: tuple[int, int]) -> Diagonal:
        """x-label pair -> standard diagonal."""
        a, b = sorted(self.position(x) for x in xpair)
        return (a, b)


def embed_extended(extended: tuple[int, ...]) -> SignedPolygon:
    """Place x-label i at x=i on the upper/lower parabola arc per its sign.

    Heights are K - (i-c)^2 above and (i-c)^2 - K below with c = (n+2)/2 and
    K = 2(n+2)^2, which keeps the polygon strictly convex (asserted).
    """
    m = len(extended)
    n = m - 3
    c = Fraction(n + 2, 2)
    k = 2 * Fraction((n + 2) ** 2)
    coords = []
    for i, s in enumerate(extended):
        h = k - (i - c) ** 2
        coords.append((Fraction(i), h if s > 0 else -h))
    lowers = [i for i, s in enumerate(extended) if s < 0]
    uppers = [i for i, s in enumerate(extended) if s > 0]
    order = lowers + uppers[::-1]
    start = order.index(0)  # counterclockwise positions, anchored at x-label 0
    cyclic = tuple(order[start:] + order[:start])
    poly = SignedPolygon(tuple(extended), tuple(coords), cyclic)
    _assert_convex(poly)
    return poly


def _assert_convex(poly: SignedPolygon) -> None:
    m = poly.m
    for k in range(m):
        a = poly.coords[poly.cyclic[k]]
        b = poly.coords[poly.cyclic[(k + 1) % m]]
        c = poly.coords[poly.cyclic[(k + 2) % m]]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross <= 0:
            raise RealizationError("embedding is not strictly convex")


def hl_embed(sigma: SignSequence) -> SignedPolygon:
    return embed_extended(extend_signs(sigma))


def hl_S(poly: SignedPolygon, d: Diagonal) -> frozenset[int]:
    """The subset of {1..n+1} attached to a standard diagonal.

    Vertices strictly below the full line through the diagonal's endpoints,
    with x-label 0 replaced by the left endpoint and n+2 by the right one.
    """
    i, j = poly.to_xpair(d)
    ax, ay = poly.coords[i]
    bx, by = poly.coords[j]
    below = set()
    for w in range(poly.m):
        if w in (i, j):
            continue
        wx, wy = poly.coords[w]
        cross = (bx - ax) * (wy - ay) - (by - ay) * (wx - ax)
        if cross < 0:  # right of the left-to-right direction: strictly below
            below.add(w)
    if 0 in below:
        below.discard(0)
        below.add(i)
    if poly.m - 1 in below:
        below.discard(poly.m - 1)
        below.add(j)
    if not below <= set(range(1, poly.m - 1)):
        raise RealizationError("side-of-line sets left the coordinate range")
    return frozenset(below)


def hl_hrep_from_polygon(poly: SignedPolygon) -> HPolytope:
    """H-polytope of an embedded sign polygon (internal; takes raw extended signs)."""
    n = poly.n
    m = poly.m
    dim = n + 1
    ineqs = []
    seen = set()
    for d in all_diagonals(m):
        s = hl_S(poly, d)
        if not s or s == set(range(1, n + 2)) or s in seen:
            raise RealizationError(f"degenerate facet subset for {d}")
        seen.add(s)
        size = len(s)
        normal = QVector(
            [Fraction(-1) if i in s else Fraction(0) for i in range(1, dim + 1)]
        )
        ineqs.append((d, normal, -Fraction(size * (size + 1), 2)))
    eq = (QVector([Fraction(1)] * dim), Fraction((n + 1) * (n + 2), 2))
    return HPolytope(dim, m, tuple(ineqs), (eq,), _difference_projection(n, dim))


def hl_hrep(sigma: SignSequence) -> HPolytope:
    """Facet system of the sign-sequence realization, one inequality per diagonal."""
    return hl_hrep_from_polygon(hl_embed(sigma))


def hl_fan(sigma: SignSequence) -> LabeledFan:
    """Normal fan straight from the subsets (rays live in {0,+1,-1}^n)."""
    poly = hl_embed(sigma)
    n = poly.n
    rays = {}
    for d in all_diagonals(poly.m):
        s = hl_S(poly, d)
        # outward normal -e_S, written in the prefix-sum basis
        entries = [
            Fraction(int(j + 1 in s) - int(j in s)) for j in range(1, n + 1)
        ]
        rays[d] = QVector(entries)
    return LabeledFan(n, poly.m, rays)


def _arc_count(poly: SignedPolygon, frm: int, to: int, avoid: int) -> int:
    """Vertices strictly between two x-labels on the cyclic arc missing `avoid`."""
    m = poly.m
    pa, pb, pc = poly.position(frm), poly.position(to), poly.position(avoid)
    fwd = (pb - pa - 1) % m
    if (pc - pa) % m < (pb - pa) % m:  # forward arc contains the avoided vertex
        return (pa - pb - 1) % m
    return fwd


def hl_vertex_rule(
    sigma: SignSequence,
    t: Triangulation,
    h: Optional[HPolytope] = None,
) -> QVector:
    """Combinatorial vertex coordinates; self-checked against the solved vertex.

    For each interior x-label i, the unique triangle whose x-span contains i
    strictly determines counts l_i, r_i of vertices beyond its two slanted
    sides; the coordinate is (l+1)(r+1) for negative i and n+2 minus that for
    positive i (the oracle-pinned convention, see module docstring).
    """
    poly = hl_embed(sigma)
    n = poly.n
    coords: dict[int, Rat] = {}
    for tri in triangles_of(t):
        xs = sorted(poly.cyclic[v] for v in tri)
        a, i, b = xs
        if i in coords:
            raise RealizationError("two triangles claim one interior vertex")
        l = _arc_count(poly, a, i, b)
        r = _arc_count(poly, i, b, a)
        prod = (l + 1) * (r + 1)
        coords[i] = Fraction(prod) if poly.extended[i] < 0 else Fraction(n + 2 - prod)
    if sorted(coords) != list(range(1, n + 2)):
        raise RealizationError("interior vertices not covered exactly once")
    x = QVector([coords[i] for i in range(1, n + 2)])
    oracle = vertex_of_triangulation(h or hl_hrep(sigma), t)
    if x != oracle:
        raise ConventionError(
            f"vertex rule {x} disagrees with solved vertex {oracle} at {t.serialize()}"
        )
    return x


def hl_parallel_pairs(sigma: SignSequence) -> set[tuple[Diagonal, Diagonal]]:
    """The n closed-form parallel facet pairs, as standard diagonal pairs.

    For j = 1..n take i = max{r < j : sign(r) != sign(j)} and
    k = min{r > j+1 : sign(r) != sign(j+1)}; the crossing diagonals of the
    quadrilateral {i, j, j+1, k} bound the parallel facets.
    """
    poly = hl_embed(sigma)
    ext = poly.extended
    n = poly.n
    pairs = set()
    for j in range(1, n + 1):
        i = max(r for r in range(j) if ext[r] * ext[j] < 0)
        k = min(r for r in range(j + 2, n + 3) if ext[r] * ext[j + 1] < 0)
        corners = sorted(poly.position(x) for x in (i, j, j + 1, k))
        d1 = (corners[0], corners[2])
        d2 = (corners[1], corners[3])
        pairs.add(tuple(sorted((d1, d2))))
    if len(pairs) != n:
        raise RealizationError("closed-form parallel pairs collided")
    return pairs


def sign_canonical(sigma: SignSequence) -> SignSequence:
    """Lexicographic minimum of sigma under negation and reversal."""
    sigma = tuple(sigma)
    rev = sigma[::-1]
    neg = tuple(-s for s in sigma)
    negrev = neg[::-1]
    return min(sigma, rev, neg, negrev)
