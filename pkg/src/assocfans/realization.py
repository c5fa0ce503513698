"""Verification engine for polytopes whose facets are labeled by diagonals.

An HPolytope is an inequality system ``<normal, x> <= rhs`` with one facet
per diagonal of an (n+3)-gon, plus optional equality constraints (so the
ambient dimension may exceed n).  The engine solves for the vertex of every
triangulation, certifies that the system really is a simple associahedron,
extracts the (outward) normal fan in an n-dimensional quotient, finds
parallel facets, and decides linear isomorphism of labeled fans.

Fans are compared per the classification strategy backed by the polygon's
dihedral symmetries: every face-lattice automorphism of the associahedron is
induced by one of the 2(n+3) rotation-reflections, so the isomorphism search
only has to try those relabelings.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (
    ExactLinError,
    QMatrix,
    QVector,
    Rat,
    primitive_vector,
    solve_linear,
)
from .polygon import (
    Diagonal,
    Triangulation,
    all_diagonals,
    dihedral_diagonal_maps,
    enumerate_triangulations,
    flip,
)


class RealizationError(ValueError):
    """Raised when an inequality system fails a hard structural requirement."""


@dataclass(frozen=True)
class HPolytope:
    """Inequality system with diagonal-labeled facets plus equality constraints.

    ``inequalities`` holds (label, normal, rhs) meaning <normal, x> <= rhs;
    ``equalities`` holds (normal, rhs) meaning <normal, x> = rhs.
    ``projection`` is an n x dim matrix with the equality normals in its
    kernel; it maps facet normals to the n-dimensional quotient where the
    normal fan lives.  When omitted, a deterministic one is computed.
    """

    dim: int
    m: int
    inequalities: tuple[tuple[Diagonal, QVector, Rat], ...]
    equalities: tuple[tuple[QVector, Rat], ...]
    projection: Optional[QMatrix] = None

    def __post_init__(self):
        n = self.m - 3
        labels = [label for label, _, _ in self.inequalities]
        if sorted(labels) != all_diagonals(self.m):
            raise RealizationError("facet labels must biject with the diagonals")
        eq_rank = (
            QMatrix([v for v, _ in self.equalities]).rank() if self.equalities else 0
        )
        if self.dim - eq_rank != n:
            raise RealizationError(
                f"dim {self.dim} minus equality rank {eq_rank} must be {n}"
            )
        proj = self.projection or default_projection(
            self.dim, [v for v, _ in self.equalities]
        )
        if proj.ncols != self.dim or proj.nrows != n:
            raise RealizationError("projection must be n x dim")
        for v, _ in self.equalities:
            if not proj.apply(v).is_zero():
                raise RealizationError("projection must kill the equality normals")
        if proj.rank() != n:
            raise RealizationError("projection must be surjective")
        object.__setattr__(self, "projection", proj)

    @property
    def n(self) -> int:
        return self.m - 3

    def normal(self, d: Diagonal) -> QVector:
        return self._by_label()[d][0]

    def rhs(self, d: Diagonal) -> Rat:
        return self._by_label()[d][1]

    def _by_label(self) -> dict[Diagonal, tuple[QVector, Rat]]:
        cache = getattr(self, "_label_cache", None)
        if cache is None:
            cache = {label: (v, r) for label, v, r in self.inequalities}
            object.__setattr__(self, "_label_cache", cache)
        return cache


def default_projection(dim: int, eq_normals: Sequence[QVector]) -> QMatrix:
    """Quotient map killing span(eq_normals): reduce, then keep non-pivot coords.

    Row-reduce the equality normals; subtracting the pivot-clearing
    combination from u and reading off the non-pivot coordinates is a linear
    map with exactly the right kernel, and it is deterministic.
    """
    if not eq_normals:
        return QMatrix.identity(dim)
    rows = [list(v.entries) for v in eq_normals]
    from .exactlin import _rref

    red, pivots = _rref(rows)
    red = red[: len(pivots)]
    non_pivots = [c for c in range(dim) if c not in pivots]
    proj_rows = []
    for c in non_pivots:
        # image of e_c under "clear pivot coordinates": e_c itself (c non-pivot)
        # so the map picks coordinate u_c - sum_t red[t][c] * u_{pivot_t}
        row = [Fraction(0)] * dim
        row[c] = Fraction(1)
        for t, p in enumerate(pivots):
            row[p] = -red[t][c]
        proj_rows.append(QVector(row))
    return QMatrix(proj_rows)


@dataclass(frozen=True)
class LabeledFan:
    """Complete simplicial fan with one primitive ray per diagonal.

    Rays are outward facet normals expressed in the n-dimensional quotient;
    the maximal cones are spanned by the rays of each triangulation.
    """

    n: int
    m: int
    rays: dict[Diagonal, QVector]

    def __post_init__(self):
        if sorted(self.rays) != all_diagonals(self.m):
            raise RealizationError("fan rays must biject with the diagonals")
        for d, v in self.rays.items():
            if v.dim != self.n or v.is_zero():
                raise RealizationError(f"bad ray for {d}")

    def validate_simplicial(self) -> None:
        """Check every triangulation spans an independent ray set."""
        for t in enumerate_triangulations(self.m):
            if QMatrix([self.rays[d] for d in t.diagonals]).rank() != self.n:
                raise RealizationError(f"dependent cone at {t.serialize()}")

    def ray_matrix(self, t: Triangulation) -> QMatrix:
        return QMatrix.from_columns([self.rays[d] for d in t.diagonals])

    def _memo(self, key, compute):
        cache = getattr(self, "_memo_cache", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_memo_cache", cache)
        if key not in cache:
            cache[key] = compute()
        return cache[key]


@dataclass
class RealizationReport:
    """Outcome of verifying an HPolytope as a simple associahedron."""

    is_simple_associahedron: bool
    vertex_map: dict[Triangulation, QVector]
    failures: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        payload = {
            "is_simple_associahedron": self.is_simple_associahedron,
            "vertex_count": len(self.vertex_map),
            "vertices": {
                t.serialize(): [str(c) for c in v]
                for t, v in sorted(self.vertex_map.items())
            },
            "failures": list(self.failures),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def vertex_of_triangulation(
    h: HPolytope, t: Triangulation, check: bool = True
) -> QVector:
    """Solve the square tight system of a triangulation; optionally check slack.

    Raises RealizationError when the system is singular ("not a simple
    realization at T") or when another facet is tight or violated at the
    solution ("degenerate vertex" / "infeasible vertex").
    """
    if t.m != h.m:
        raise RealizationError("triangulation polygon does not match the polytope")
    rows = [h.normal(d) for d in t.diagonals] + [v for v, _ in h.equalities]
    rhs = [h.rhs(d) for d in t.diagonals] + [r for _, r in h.equalities]
    if len(rows) != h.dim:
        raise RealizationError("tight system is not square")
    x = solve_linear(QMatrix(rows), QVector(rhs))
    if x is None:
        raise RealizationError(f"not a simple realization at {t.serialize()}")
    if check:
        for d, v, r in h.inequalities:
            if d in t:
                continue
            val = v.dot(x)
            if val > r:
                raise RealizationError(
                    f"infeasible vertex: facet {d} violated at {t.serialize()}"
                )
            if val == r:
                raise RealizationError(
                    f"degenerate vertex: facet {d} tight at {t.serialize()}"
                )
    return x


def verify_realization(h: HPolytope) -> RealizationReport:
    """Solve all triangulations and certify the simple associahedron structure.

    Checks, per triangulation: the tight system has a unique solution, every
    non-incident facet has strictly positive slack, and flip-adjacent
    vertices differ while sharing exactly n-1 tight facets.  Failures are
    reported in-band instead of raised.
    """
    failures: list[str] = []
    vertex_map: dict[Triangulation, QVector] = {}
    for t in enumerate_triangulations(h.m):
        try:
            vertex_map[t] = vertex_of_triangulation(h, t, check=True)
        except RealizationError as exc:
            failures.append(str(exc))
    if not failures:
        for t, x in vertex_map.items():
            for d in t.diagonals:
                t2, d2 = flip(t, d)
                x2 = vertex_map[t2]
                if x == x2:
                    failures.append(
                        f"flip-degenerate edge: {t.serialize()} / {t2.serialize()}"
                    )
                shared = set(t.diagonals) & set(t2.diagonals)
                if len(shared) != h.n - 1:
                    failures.append(
                        f"flip pair does not share n-1 facets at {t.serialize()}"
                    )
    return RealizationReport(not failures, vertex_map, failures)


def normal_fan(h: HPolytope, skip_verify: bool = False) -> LabeledFan:
    """Outward facet normals in the quotient, primitivized and labeled.

    The realization is verified first (unless the caller certifies it was).
    """
    if not skip_verify:
        report = verify_realization(h)
        if not report.is_simple_associahedron:
            raise RealizationError(
                "verification failed: " + "; ".join(report.failures[:3])
            )
    proj = h.projection
    rays = {
        d: primitive_vector(proj.apply(v)) for d, v, _ in h.inequalities
    }
    fan = LabeledFan(h.n, h.m, rays)
    fan.validate_simplicial()
    return fan


def parallel_pairs(fan: LabeledFan) -> set[tuple[Diagonal, Diagonal]]:
    """All unordered label pairs whose rays are opposite (primitive u = -v)."""

    def compute():
        by_entries: dict[tuple, list[Diagonal]] = {}
        for d in sorted(fan.rays):
            by_entries.setdefault(fan.rays[d].entries, []).append(d)
        out = set()
        for d in sorted(fan.rays):
            for d2 in by_entries.get((-fan.rays[d]).entries, []):
                if d < d2:
                    out.add((d, d2))
        return out

    return fan._memo("parallel_pairs", compute)


# ---------------------------------------------------------------------------
# linear isomorphism of labeled fans


def _base_triangulation(m: int) -> Triangulation:
    """The vertex-0 fan triangulation, used as the deterministic basis cone."""
    return Triangulation(m, [(0, k) for k in range(2, m - 1)])


def _coords_in_basis(
    fan: LabeledFan, basis: Sequence[Diagonal]
) -> Optional[dict[Diagonal, QVector]]:
    mat = QMatrix.from_columns([fan.rays[d] for d in basis])
    coords = {}
    for d in sorted(fan.rays):
        c = solve_linear(mat, fan.rays[d])
        if c is None:
            return None
        coords[d] = c
    return coords


def fans_linearly_isomorphic(
    f1: LabeledFan, f2: LabeledFan
) -> Optional[tuple[dict[Diagonal, Diagonal], QMatrix]]:
    """Search for a linear isomorphism carrying cones of f1 onto cones of f2.

    For each of the 2m dihedral diagonal relabelings phi (rotations first):
    a linear map L with L(ray1(d)) a positive multiple of ray2(phi(d)) for
    every diagonal d maps cones to cones, and every fan isomorphism arises
    this way.  L is pinned on a base triangulation up to one positive scale
    per ray; the scales must satisfy ratio constraints coming from the
    coordinates of every other ray in the base cone, which are propagated by
    a weighted union-find.  Returns the first (phi, L) found, else None.
    """
    if f1.n != f2.n or f1.m != f2.m:
        return None
    m = f1.m
    base = _base_triangulation(m).diagonals
    coords1 = f1._memo("base_coords", lambda: _coords_in_basis(f1, base))
    if coords1 is None:
        raise RealizationError("base cone of f1 is not simplicial")
    pp1 = parallel_pairs(f1)
    pp2 = parallel_pairs(f2)

    for phi in dihedral_diagonal_maps(m):
        mapped_pairs = {
            tuple(sorted((phi[a], phi[b]))) for a, b in pp1
        }
        if mapped_pairs != pp2:
            continue
        basis2 = tuple(phi[d] for d in base)
        key = tuple(sorted(basis2))
        coords2_raw = f2._memo(
            ("coords", key), lambda: _coords_in_basis(f2, key)
        )
        if coords2_raw is None:
            continue
        # reorder f2 coords to the phi-image basis order
        order = {d: i for i, d in enumerate(sorted(basis2))}
        perm = [order[d] for d in basis2]
        lam = _solve_scale_constraints(
            base, coords1, {d: coords2_raw[phi[d]] for d in coords1}, perm
        )
        if lam is None:
            continue
        cols1 = [f1.rays[d] for d in base]
        cols2 = [f2.rays[phi[d]].scale(lam[i]) for i, d in enumerate(base)]
        m1 = QMatrix.from_columns(cols1)
        m2 = QMatrix.from_columns(cols2)
        inv1 = _invert(m1)
        lmap = m2.matmul(inv1)
        if _witness_ok(f1, f2, phi, lmap):
            return phi, lmap
    return None


def _solve_scale_constraints(base, coords1, coords2_by_d, perm):
    """Positive scales lam_d with lam_d*c_d proportional (positively) to c'_d.

    coords2_by_d[gamma] is in sorted-basis order; perm maps base position ->
    sorted position.  Returns the scale list or None when inconsistent.
    """
    k = len(base)
    parent = list(range(k))
    weight = [Fraction(1)] * k  # lam_i = weight[i] * lam_root(i)

    def find(i):
        if parent[i] == i:
            return i, Fraction(1)
        root, w = find(parent[i])
        parent[i] = root
        weight[i] = weight[i] * w
        return root, weight[i]

    def union(i, j, ratio):  # lam_i = ratio * lam_j
        ri, wi = find(i)
        rj, wj = find(j)
        if ri == rj:
            return wi == ratio * wj
        parent[ri] = rj
        weight[ri] = ratio * wj / wi
        return True

    for gamma, c1 in coords1.items():
        c2 = coords2_by_d[gamma]
        ratios = []
        for pos in range(k):
            a = c1[pos]
            b = c2[perm[pos]]
            if (a == 0) != (b == 0):
                return None
            if a != 0:
                r = b / a
                if r <= 0:
                    return None
                ratios.append((pos, r))
        i0, r0 = ratios[0]
        for i, r in ratios[1:]:
            if not union(i, i0, r / r0):
                return None
    lam = []
    for i in range(k):
        _, w = find(i)
        lam.append(w)
    return lam


def _invert(mat: QMatrix) -> QMatrix:
    n = mat.nrows
    if mat.ncols != n:
        raise ExactLinError("only square matrices invert")
    from .exactlin import _rref

    aug = [
        list(mat.rows[i].entries) + [Fraction(int(i == j)) for j in range(n)]
        for i in range(n)
    ]
    red, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ExactLinError("singular matrix")
    return QMatrix([row[n:] for row in red])


def _witness_ok(f1, f2, phi, lmap) -> bool:
    for d, ray in f1.rays.items():
        image = lmap.apply(ray)
        target = f2.rays[phi[d]]
        coeff = None
        for a, b in zip(image.entries, target.entries):
            if (a == 0) != (b == 0):
                return False
            if b != 0:
                c = a / b
                if coeff is None:
                    coeff = c
                elif coeff != c:
                    return False
        if coeff is None or coeff <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# fan completeness sampling


@dataclass(frozen=True)
class CompletenessReport:
    points_checked: int
    resampled: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


def sample_completeness(
    fan: LabeledFan,
    num_points: int = 1000,
    seed: int = 20240601,
    denominator: int = 100,
) -> CompletenessReport:
    """Check that fixed-seed rational points each lie in exactly one open cone.

    Points have coordinates k/denominator with k in [-10*denominator,
    10*denominator].  A point on a cone boundary (some zero coefficient) is
    resampled, per the sampling contract.  Membership is decided from the
    integer adjugate systems of the cone bases; a numpy int64 fast path is
    used when certified overflow-free, otherwise exact Python integers.
    """
    triangulations = enumerate_triangulations(fan.m)
    adjugates = []
    max_adj = 0
    for t in triangulations:
        mat = fan.ray_matrix(t)
        det, adj = _integer_adjugate(mat)
        sign = 1 if det > 0 else -1
        adj_rows = [[sign * a for a in row] for row in adj]
        max_adj = max(max_adj, max(abs(a) for row in adj_rows for a in row))
        adjugates.append(adj_rows)

    rng = random.Random(seed)
    lo, hi = -10 * denominator, 10 * denominator
    n = fan.n
    checked = 0
    resampled = 0
    failures = 0
    use_numpy = max_adj * 10 * denominator * n < 2**62
    while checked < num_points:
        want = min(num_points - checked, 512)
        batch: list[list[int]] = []
        while len(batch) < want:
            point = [rng.randint(lo, hi) for _ in range(n)]
            if any(v != 0 for v in point):
                batch.append(point)
        kept, re_n, fail_n = _classify_batch(adjugates, batch, use_numpy)
        checked += kept
        resampled += re_n
        failures += fail_n
    return CompletenessReport(checked, resampled, failures)


def _classify_batch(adjugates, points, use_numpy):
    """Count containing/strict cones per point; returns (kept, resampled, failed)."""
    if use_numpy:
        import numpy as np

        a = np.array(adjugates, dtype=np.int64)  # (cones, n, n)
        x = np.array(points, dtype=np.int64).T  # (n, pts)
        y = a @ x  # (cones, n, pts)
        nonneg = (y >= 0).all(axis=1)
        strict = (y > 0).all(axis=1)
        contain = nonneg.sum(axis=0)
        interior = strict.sum(axis=0)
        kept = resampled = failed = 0
        for c, s in zip(contain.tolist(), interior.tolist()):
            if c == 0:
                failed += 1  # not covered: completeness violated
                kept += 1
            elif c != s:
                resampled += 1  # boundary point, try again
            else:
                kept += 1
                if c != 1:
                    failed += 1
        return kept, resampled, failed
    kept = resampled = failed = 0
    for point in points:
        contain = interior = 0
        boundary = False
        for adj in adjugates:
            vals = [sum(a * p for a, p in zip(row, point)) for row in adj]
            if all(v >= 0 for v in vals):
                contain += 1
                if all(v > 0 for v in vals):
                    interior += 1
                else:
                    boundary = True
        if contain == 0:
            failed += 1
            kept += 1
        elif boundary:
            resampled += 1
        else:
            kept += 1
            if contain != 1:
                failed += 1
    return kept, resampled, failed


def _integer_adjugate(mat: QMatrix) -> tuple[int, list[list[int]]]:
    """(det, adjugate) of an integer matrix, via the exact inverse."""
    n = mat.nrows
    det = _determinant(mat)
    if det == 0:
        raise RealizationError("singular cone basis")
    inv = _invert(mat)
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            val = inv.rows[i][j] * det
            if val.denominator != 1:
                raise RealizationError("adjugate of a non-integer matrix")
            row.append(int(val))
        adj.append(row)
    return int(det), adj


def _determinant(mat: QMatrix) -> Rat:
    n = mat.nrows
    rows = [list(r.entries) for r in mat.rows]
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det
