"""The seed-triangulation family: one realization per triangulation of the m-gon.

Fix a seed triangulation T0 of the (n+3)-gon and order its diagonals
delta_1..delta_n.  Every diagonal d of the polygon gets a vector

    v(delta_i) = -e_i,      v(d) = sum of e_i over the delta_i crossed by d,

so the vectors of every triangulation span a simplicial cone and together
the cones form a complete fan (the seed cone is the negative orthant).  For
any two triangulations that differ by a flip, the unique linear dependence
among the involved vectors falls into one of four configurations of the
flip quadrilateral relative to T0, listed in flip_dependence; positivity of
lambda . omega over all of them certifies that weights omega make
{ <v(d), x> <= omega(d) } a polytope with this fan as its normal fan.

Weights: omega = 2 on T0 and 1 + eps*(j-i)(n+3+i-j) elsewhere, with eps
starting at 1/(4(n+3)^3) and halved until the exhaustive certification over
all quadrilaterals passes (it passes at the first value; the loop is a
guard, not a tuning knob).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .exactlin import QVector, Rat, unit_vector, zero_vector
from .polygon import (
    Diagonal,
    Triangulation,
    all_diagonals,
    chords_cross,
    dual_tree,
    flip,
    triangles_of,
)
from .realization import HPolytope, LabeledFan, RealizationError


class DependenceError(RealizationError):
    """A flip quadrilateral failed to classify into exactly one configuration."""


@dataclass(frozen=True)
class SeedFrame:
    """A seed triangulation with a fixed ordering of its diagonals."""

    triangulation: Triangulation
    delta_order: tuple[Diagonal, ...]

    def __post_init__(self):
        if sorted(self.delta_order) != list(self.triangulation.diagonals):
            raise RealizationError("delta_order must enumerate the seed diagonals")

    @property
    def m(self) -> int:
        return self.triangulation.m

    @property
    def n(self) -> int:
        return self.triangulation.n


def make_seed_frame(
    t0: Triangulation, delta_order: Optional[Sequence[Diagonal]] = None
) -> SeedFrame:
    """Default ordering: along the dual path for path seeds, else sorted.

    The path ordering matters for the root-system reading of path seeds
    (consecutive index sums); ties between the two path directions are broken
    by the lexicographically smaller end triangle.
    """
    if delta_order is not None:
        return SeedFrame(t0, tuple(tuple(d) for d in delta_order))
    tree = dual_tree(t0)
    if not tree.is_path or t0.n < 1:
        return SeedFrame(t0, tuple(t0.diagonals))
    adj = tree.adjacency()
    ends = [i for i, nbrs in enumerate(adj) if len(nbrs) <= 1]
    start = min(ends, key=lambda i: tree.triangles[i])
    order_nodes = [start]
    prev = -1
    while len(order_nodes) < len(tree.triangles):
        cur = order_nodes[-1]
        nxt = next(w for w in adj[cur] if w != prev)
        prev = cur
        order_nodes.append(nxt)
    edge_of = {frozenset((i, j)): d for d, i, j in tree.edges}
    order = tuple(
        edge_of[frozenset((order_nodes[k], order_nodes[k + 1]))]
        for k in range(len(order_nodes) - 1)
    )
    return SeedFrame(t0, order)


def santos_vectors(frame: SeedFrame) -> dict[Diagonal, QVector]:
    """The full map diagonal -> vector for a seed frame."""
    n = frame.n
    index = {d: i for i, d in enumerate(frame.delta_order)}
    out: dict[Diagonal, QVector] = {}
    for d in all_diagonals(frame.m):
        if d in index:
            out[d] = -unit_vector(n, index[d])
        else:
            vec = zero_vector(n)
            for delta, i in index.items():
                if chords_cross(d, delta):
                    vec = vec + unit_vector(n, i)
            if vec.is_zero():
                raise RealizationError("non-seed diagonal crosses no seed diagonal")
            out[d] = vec
    return out


def _norm(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def flip_dependence(
    frame: SeedFrame, quad: tuple[int, int, int, int]
) -> tuple[str, dict[Diagonal, Rat]]:
    """Classify a flip quadrilateral and return the signed dependence.

    For cyclically ordered corners p < q < r < s the crossing chords pr and
    qs are the diagonals exchanged by a flip; exactly one of four
    configurations of the seed relative to the quadrilateral holds:

    (a) a seed diagonal crosses two opposite sides: v_pr + v_qs = v_pq + v_rs
        (or the rotated variant for the other side pair);
    (b) pr (or qs) is itself in the seed: v_pr + v_qs = w_a + w_b, where each
        w term is 0 or the vector of the side cut off by the neighbouring
        seed-triangle apex on that side;
    (c) a seed triangle has one corner on the quadrilateral and its opposite
        edge crosses the two non-incident sides: 2*v_pr + v_qs = v_qr + v_rs
        (rotated per the corner);
    (d) a seed triangle shares a side with the quadrilateral and the opposite
        side crosses its two other edges: v_pr + v_qs = v_rs (rotated per the
        shared side).

    The returned coefficients are positive on pr and qs; the identity
    sum(lambda_d * v(d)) = 0 is verified before returning.
    """
    p, q, r, s = quad
    if not (0 <= p < q < r < s < frame.m):
        raise DependenceError("quad corners must be cyclically sorted")
    t0 = set(frame.triangulation.diagonals)
    one = Fraction(1)
    matches: list[tuple[str, dict[Diagonal, Rat]]] = []

    # (b): a quad diagonal is a seed diagonal
    for d_in, rotate in (((p, r), False), ((q, s), True)):
        if d_in in t0:
            matches.append(("b", _case_b(frame, (p, q, r, s), rotate)))

    # (a): a seed diagonal crosses two opposite sides
    if any(chords_cross(d, (p, q)) and chords_cross(d, (r, s)) for d in t0):
        matches.append(
            ("a", {_norm(p, r): one, _norm(q, s): one,
                   _norm(p, q): -one, _norm(r, s): -one})
        )
    if any(chords_cross(d, (q, r)) and chords_cross(d, (p, s)) for d in t0):
        matches.append(
            ("a", {_norm(p, r): one, _norm(q, s): one,
                   _norm(q, r): -one, _norm(p, s): -one})
        )

    corners = (p, q, r, s)
    sides = [(p, q), (q, r), (r, s), (s, p)]
    for tri in triangles_of(frame.triangulation):
        inside = [v for v in tri if v in corners]
        if len(inside) == 1:
            # (c): opposite edge must cross both sides not incident to the corner
            w = inside[0]
            u1, u2 = (v for v in tri if v != w)
            idx = corners.index(w)
            s1, s2 = sides[(idx + 1) % 4], sides[(idx + 2) % 4]
            if chords_cross((u1, u2), s1) and chords_cross((u1, u2), s2):
                lam = {_norm(p, r): one, _norm(q, s): one,
                       _norm(*s1): -one, _norm(*s2): -one}
                heavy = _norm(p, r) if w in (p, r) else _norm(q, s)
                lam[heavy] = Fraction(2)
                matches.append(("c", lam))
        elif len(inside) == 2:
            # (d): the two corners must be a side; the opposite side must
            # cross the triangle's two other edges
            pair = tuple(sorted(inside))
            side_idx = next(
                (k for k, sd in enumerate(sides) if _norm(*sd) == pair), None
            )
            if side_idx is None:
                continue
            c = next(v for v in tri if v not in corners)
            opposite = sides[(side_idx + 2) % 4]
            if chords_cross(opposite, (pair[0], c)) and chords_cross(
                opposite, (pair[1], c)
            ):
                matches.append(
                    ("d", {_norm(p, r): one, _norm(q, s): one,
                           _norm(*opposite): -one})
                )

    if len(matches) != 1:
        raise DependenceError(
            f"quad {quad} matched {len(matches)} configurations: "
            f"{[tag for tag, _ in matches]}"
        )
    tag, lam = matches[0]
    vectors = santos_vectors(frame)
    total = zero_vector(frame.n)
    for d, coeff in lam.items():
        total = total + vectors[d].scale(coeff)
    if not total.is_zero():
        raise DependenceError(f"dependence for {quad} does not annihilate")
    if lam[_norm(p, r)] <= 0 or lam[_norm(q, s)] <= 0:
        raise DependenceError("exchanged diagonals must get positive coefficients")
    return tag, lam


def _case_b(
    frame: SeedFrame, quad: tuple[int, int, int, int], rotated: bool
) -> dict[Diagonal, Rat]:
    """Dependence when a quad diagonal lies in the seed.

    For pr in the seed, the two seed triangles on pr have apexes a (q side)
    and b (s side); each contributes 0 or the side chord it is trapped
    behind.  The rotated flag handles qs in the seed via the corner rotation
    p->q->r->s->p.
    """
    p, q, r, s = quad
    if rotated:
        p, q, r, s = q, r, s, p
    d_in = _norm(p, r)
    apexes = [
        v
        for tri in triangles_of(frame.triangulation)
        if set(_pair_tuple(d_in)) <= set(tri)
        for v in tri
        if v not in d_in
    ]
    if len(apexes) != 2:
        raise DependenceError("seed diagonal not flanked by two triangles")
    q_side = [v for v in apexes if _strictly_between(p, v, r, frame.m)]
    s_side = [v for v in apexes if not _strictly_between(p, v, r, frame.m)]
    if len(q_side) != 1 or len(s_side) != 1:
        raise DependenceError("seed triangle apexes straddle the diagonal oddly")
    a, b = q_side[0], s_side[0]
    one = Fraction(1)
    lam: dict[Diagonal, Rat] = {_norm(p, r): one, _norm(q, s): one}
    # w_a: 0 / v_pq / v_qr depending on where the q-side apex sits
    if a != q:
        lam[_norm(p, q) if _strictly_between(p, a, q, frame.m) else _norm(q, r)] = -one
    # w_b: 0 / v_ps / v_rs depending on where the s-side apex sits
    if b != s:
        lam[_norm(r, s) if _strictly_between(r, b, s, frame.m) else _norm(p, s)] = -one
    return lam


def _pair_tuple(d: Diagonal) -> tuple[int, int]:
    return (d[0], d[1])


def _strictly_between(lo: int, v: int, hi: int, m: int) -> bool:
    """Whether v lies strictly inside the counterclockwise arc lo -> hi."""
    return (v - lo) % m < (hi - lo) % m and v != lo and v != hi


@dataclass(frozen=True)
class WeightVector:
    """Certified right-hand sides for a seed frame."""

    omega: dict[Diagonal, Rat]
    epsilon: Rat
    dependences_checked: int


def perturbation_weight(i: int, j: int, m: int) -> int:
    """The strictly supermodular perturbation (j-i)(m+i-j) on chord lengths."""
    return (j - i) * (m + i - j)


def santos_weights(frame: SeedFrame) -> WeightVector:
    """Weights 2 on the seed and 1 + eps*g elsewhere, certified exhaustively.

    Certification checks lambda . omega > 0 for the dependence of every
    quadrilateral; eps halves on failure (64 halvings before giving up, which
    the construction's margins make unreachable).
    """
    m = frame.m
    t0 = set(frame.triangulation.diagonals)
    deps = [flip_dependence(frame, quad) for quad in combinations(range(m), 4)]
    eps = Fraction(1, 4 * (m**3))
    for _ in range(64):
        omega: dict[Diagonal, Rat] = {}
        for d in all_diagonals(m):
            if d in t0:
                omega[d] = Fraction(2)
            else:
                omega[d] = 1 + eps * perturbation_weight(d[0], d[1], m)
        if all(
            sum((coeff * omega[d] for d, coeff in lam.items()), Fraction(0)) > 0
            for _, lam in deps
        ):
            return WeightVector(omega, eps, len(deps))
        eps /= 2
    raise RealizationError("weight certification failed after 64 halvings")


def santos_hrep(frame: SeedFrame, weights: Optional[WeightVector] = None) -> HPolytope:
    """Full-dimensional H-polytope { <v(d), x> <= omega(d) } of a seed frame."""
    w = weights or santos_weights(frame)
    vectors = santos_vectors(frame)
    ineqs = tuple((d, vectors[d], w.omega[d]) for d in all_diagonals(frame.m))
    return HPolytope(frame.n, frame.m, ineqs, ())


def santos_fan(frame: SeedFrame) -> LabeledFan:
    """The complete simplicial fan of the seed frame (rays are the v-vectors)."""
    return LabeledFan(frame.n, frame.m, santos_vectors(frame))


def b_set(t: Triangulation) -> frozenset[Diagonal]:
    """The 2n diagonals of t together with their flip partners."""
    out = set(t.diagonals)
    for d in t.diagonals:
        _, new_d = flip(t, d)
        out.add(new_d)
    if len(out) != 2 * t.n:
        raise RealizationError("flip partners collided")
    return frozenset(out)


def dual_tree_normal_equiv(t1: Triangulation, t2: Triangulation) -> bool:
    """Whether two seeds give linearly equivalent vector sets (dual-tree test)."""
    if t1.m != t2.m:
        raise RealizationError("triangulations live on different polygons")
    return dual_tree(t1).canonical_code() == dual_tree(t2).canonical_code()


def almost_positive_roots(n: int) -> set[tuple[int, ...]]:
    """Negative unit vectors plus consecutive-ones vectors, as coordinate tuples."""
    roots = set()
    for i in range(n):
        vec = [0] * n
        vec[i] = -1
        roots.add(tuple(vec))
    for i in range(n):
        for j in range(i, n):
            vec = [0] * n
            for k in range(i, j + 1):
                vec[k] = 1
            roots.add(tuple(vec))
    return roots
