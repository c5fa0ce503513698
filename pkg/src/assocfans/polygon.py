"""Combinatorics of the convex m-gon: diagonals, triangulations, flips.

Conventions used everywhere in this package:

* polygon vertices are labeled 0..m-1 counterclockwise (no other module
  relabels them);
* a diagonal is an ordered pair ``(a, b)`` with ``a < b``, ``b - a >= 2``
  and ``(a, b) != (0, m-1)`` (the remaining pairs are boundary edges);
* a triangulation of the m-gon is a maximal non-crossing set of m-3
  diagonals, stored sorted.

Triangulations serialize as ``"m: a-b, c-d, ..."`` with diagonals sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Optional, Sequence

Diagonal = tuple[int, int]
VertexMap = tuple[int, ...]  # image of vertex i is map[i]
SignSequence = tuple[int, ...]  # entries +1 / -1


class PolygonError(ValueError):
    """Contract violation in polygon combinatorics."""


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def is_diagonal(d: Diagonal, m: int) -> bool:
    a, b = d
    return 0 <= a < b <= m - 1 and b - a >= 2 and (a, b) != (0, m - 1)


def check_diagonal(d: Diagonal, m: int) -> None:
    if not is_diagonal(d, m):
        raise PolygonError(f"{d} is not a diagonal of the {m}-gon")


def all_diagonals(m: int) -> list[Diagonal]:
    return [
        (a, b)
        for a in range(m)
        for b in range(a + 2, m)
        if (a, b) != (0, m - 1)
    ]


def chords_cross(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    """Strict interleaving test for arbitrary vertex pairs (edges never cross)."""
    a, b = min(c1), max(c1)
    inside = (a < c2[0] < b) + (a < c2[1] < b)
    return inside == 1 and not set(c1) & set(c2)


def crossing(d1: Diagonal, d2: Diagonal, m: int) -> bool:
    """Whether two diagonals of the m-gon cross in the interior."""
    check_diagonal(d1, m)
    check_diagonal(d2, m)
    return chords_cross(d1, d2)


@dataclass(frozen=True, order=True)
class Triangulation:
    """A triangulation of the convex m-gon, as a sorted diagonal tuple."""

    m: int
    diagonals: tuple[Diagonal, ...]

    def __init__(self, m: int, diagonals: Sequence[Diagonal]):
        diags = tuple(sorted(tuple(d) for d in diagonals))
        if m < 3:
            raise PolygonError("polygon needs at least 3 vertices")
        if len(diags) != m - 3 or len(set(diags)) != m - 3:
            raise PolygonError(f"a {m}-gon triangulation has exactly {m - 3} diagonals")
        for d in diags:
            check_diagonal(d, m)
        for i, d1 in enumerate(diags):
            for d2 in diags[i + 1:]:
                if chords_cross(d1, d2):
                    raise PolygonError(f"diagonals {d1} and {d2} cross")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "diagonals", diags)

    @property
    def n(self) -> int:
        return self.m - 3

    def __contains__(self, d: Diagonal) -> bool:
        return tuple(d) in self.diagonals

    def __iter__(self) -> Iterator[Diagonal]:
        return iter(self.diagonals)

    def serialize(self) -> str:
        body = ", ".join(f"{a}-{b}" for a, b in self.diagonals)
        return f"{self.m}: {body}"

    def __repr__(self) -> str:
        return f"Triangulation({self.serialize()!r})"


def parse_triangulation(text: str) -> Triangulation:
    head, _, body = text.partition(":")
    m = int(head.strip())
    diags = []
    body = body.strip()
    if body:
        for part in body.split(","):
            a, _, b = part.strip().partition("-")
            diags.append((int(a), int(b)))
    return Triangulation(m, diags)


def _interval_triangulations(i: int, j: int) -> Iterator[tuple[Diagonal, ...]]:
    """Triangulations of the sub-polygon on consecutive vertices i..j."""
    if j - i < 2:
        yield ()
        return
    for k in range(i + 1, j):
        extra = []
        if k - i >= 2:
            extra.append((i, k))
        if j - k >= 2:
            extra.append((k, j))
        extra_t = tuple(extra)
        for left in _interval_triangulations(i, k):
            for right in _interval_triangulations(k, j):
                yield left + extra_t + right


def iter_triangulation_tuples(m: int) -> Iterator[tuple[Diagonal, ...]]:
    """Stream all triangulations of the m-gon as sorted diagonal tuples."""
    if m < 3:
        raise PolygonError("polygon needs at least 3 vertices")
    for diags in _interval_triangulations(0, m - 1):
        yield tuple(sorted(diags))


@lru_cache(maxsize=16)
def enumerate_triangulations(m: int) -> tuple[Triangulation, ...]:
    """All Catalan(m-2) triangulations, sorted (deterministic canonical order)."""
    return tuple(
        Triangulation(m, diags) for diags in sorted(iter_triangulation_tuples(m))
    )


def triangles_of(t: Triangulation) -> list[tuple[int, int, int]]:
    """The m-2 triangles of a triangulation, as sorted vertex triples.

    In a convex polygon the triangles are exactly the mutually adjacent
    vertex triples of the edge-plus-diagonal graph.
    """
    m = t.m
    adj: list[set[int]] = [set() for _ in range(m)]
    for v in range(m):
        adj[v].add((v + 1) % m)
        adj[(v + 1) % m].add(v)
    for a, b in t.diagonals:
        adj[a].add(b)
        adj[b].add(a)
    tris = []
    for a in range(m):
        for b in sorted(adj[a]):
            if b <= a:
                continue
            for c in sorted(adj[a] & adj[b]):
                if c > b:
                    tris.append((a, b, c))
    if len(tris) != m - 2:
        raise PolygonError("inconsistent triangle count")
    return tris


def _apexes(t: Triangulation, d: Diagonal) -> list[int]:
    """The third vertices of the (at most two) triangles containing chord d."""
    return [tri_v for tri in triangles_of(t) if set(d) <= set(tri)
            for tri_v in tri if tri_v not in d]


def flip(t: Triangulation, d: Diagonal) -> tuple[Triangulation, Diagonal]:
    """Exchange d for the opposite diagonal of its quadrilateral."""
    d = tuple(d)
    if d not in t:
        raise PolygonError(f"{d} is not in the triangulation")
    c1, c2 = sorted(_apexes(t, d))
    new_d: Diagonal = (c1, c2)
    new_diags = tuple(x for x in t.diagonals if x != d) + (new_d,)
    return Triangulation(t.m, new_diags), new_d


def flip_quadrilateral(t: Triangulation, d: Diagonal) -> tuple[int, int, int, int]:
    """Cyclically sorted corner labels of the quadrilateral flipped at d."""
    c1, c2 = _apexes(t, d)
    return tuple(sorted((*d, c1, c2)))  # type: ignore[return-value]


@dataclass(frozen=True)
class DualTree:
    """Adjacency tree of a triangulation's triangles; edges carry diagonals."""

    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[Diagonal, int, int], ...]  # (diagonal, node index, node index)
    is_path: bool

    def degrees(self) -> list[int]:
        deg = [0] * len(self.triangles)
        for _, i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.triangles]
        for _, i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def canonical_code(self):
        """Isomorphism-invariant code (AHU rooted at the tree center)."""
        n_nodes = len(self.triangles)
        if n_nodes == 1:
            return ((),)
        adj = self.adjacency()

        def rooted(v: int, parent: int):
            return tuple(sorted(rooted(w, v) for w in adj[v] if w != parent))

        # peel leaves until the 1- or 2-vertex center remains
        alive = set(range(n_nodes))
        degree = [len(a) for a in adj]
        while len(alive) > 2:
            leaves = [v for v in alive if degree[v] <= 1]
            for v in leaves:
                alive.discard(v)
                for w in adj[v]:
                    if w in alive:
                        degree[w] -= 1
        return tuple(sorted(rooted(c, -1) for c in alive))


def dual_tree(t: Triangulation) -> DualTree:
    tris = triangles_of(t)
    index = {tri: i for i, tri in enumerate(tris)}
    edges = []
    for d in t.diagonals:
        touching = [index[tri] for tri in tris if set(d) <= set(tri)]
        if len(touching) != 2:
            raise PolygonError("diagonal not shared by exactly two triangles")
        edges.append((d, touching[0], touching[1]))
    tree = DualTree(tuple(tris), tuple(edges), False)
    is_path = max(tree.degrees(), default=0) <= 2
    return DualTree(tuple(tris), tuple(edges), is_path)


# ---------------------------------------------------------------------------
# dihedral symmetry


def dihedral_vertex_maps(m: int) -> list[VertexMap]:
    """The 2m rotation/reflection maps on vertex labels, rotations first."""
    maps = [tuple((v + k) % m for v in range(m)) for k in range(m)]
    maps += [tuple((c - v) % m for v in range(m)) for c in range(m)]
    return maps


def map_diagonal(f: VertexMap, d: Diagonal) -> Diagonal:
    a, b = f[d[0]], f[d[1]]
    return (a, b) if a < b else (b, a)


def map_triangulation_tuple(
    f: VertexMap, diags: Sequence[Diagonal]
) -> tuple[Diagonal, ...]:
    return tuple(sorted(map_diagonal(f, d) for d in diags))


def canonical_triangulation(t: Triangulation) -> Triangulation:
    """Lexicographically minimal dihedral image; equal iff dihedrally equivalent."""
    best = min(
        map_triangulation_tuple(f, t.diagonals) for f in dihedral_vertex_maps(t.m)
    )
    return Triangulation(t.m, best)


@lru_cache(maxsize=16)
def dihedral_diagonal_maps(m: int) -> tuple[dict[Diagonal, Diagonal], ...]:
    """Diagonal permutations induced by the 2m polygon symmetries (rotations first)."""
    diags = all_diagonals(m)
    return tuple(
        {d: map_diagonal(f, d) for d in diags} for f in dihedral_vertex_maps(m)
    )


def diagonal_automorphism_group(m: int) -> list[dict[Diagonal, Diagonal]]:
    """All crossing-preserving bijections of the diagonal set (order exactly 2m).

    For m <= 9 the group is found by exhaustive backtracking over diagonal
    bijections; for larger m it is generated from the polygon symmetries.
    Either way the order is asserted to be 2m.
    """
    if m < 5:
        raise PolygonError("diagonal automorphisms need m >= 5")
    dihedral = {frozenset(g.items()): g for g in dihedral_diagonal_maps(m)}
    if m <= 9:
        found = _crossing_preserving_bijections(m)
        if {frozenset(g.items()) for g in found} != set(dihedral):
            raise PolygonError("crossing-preserving maps are not the dihedral images")
        group = found
    else:
        group = list(dihedral.values())
    if len({frozenset(g.items()) for g in group}) != 2 * m:
        raise PolygonError("automorphism group does not have order 2m")
    return group


def _crossing_preserving_bijections(m: int) -> list[dict[Diagonal, Diagonal]]:
    diags = all_diagonals(m)
    n_d = len(diags)
    cross = {
        (d1, d2): chords_cross(d1, d2) for d1 in diags for d2 in diags
    }
    found: list[dict[Diagonal, Diagonal]] = []
    image: list[Optional[Diagonal]] = [None] * n_d
    used: set[Diagonal] = set()

    def extend(i: int) -> None:
        if i == n_d:
            found.append({diags[j]: image[j] for j in range(n_d)})
            return
        for cand in diags:
            if cand in used:
                continue
            if all(
                cross[(diags[i], diags[j])] == cross[(cand, image[j])]
                for j in range(i)
            ):
                image[i] = cand
                used.add(cand)
                extend(i + 1)
                used.discard(cand)
        image[i] = None

    extend(0)
    return found


# ---------------------------------------------------------------------------
# sign sequences and path triangulations


def parse_signs(text: str) -> SignSequence:
    out = []
    for ch in text:
        if ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        elif not ch.isspace():
            raise PolygonError(f"bad sign character {ch!r}")
    return tuple(out)


def format_signs(signs: SignSequence) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def alternating_signs(n: int) -> SignSequence:
    """The alternating sequence (+,-,+,...) of length n-1."""
    return tuple(1 if i % 2 == 0 else -1 for i in range(n - 1))


def path_triangulation_from_signs(c: SignSequence) -> Triangulation:
    """The path triangulation encoded by a turn sequence of length n-1.

    The dual path starts at the ear on vertices (0, 1, m-1); each sign grows
    the path across the current chord, consuming the next vertex of the lower
    chain for ``+`` and of the upper chain for ``-``.  The alternating
    sequence yields the snake triangulation.
    """
    n = len(c) + 1
    m = n + 3
    lo, hi = 1, m - 1
    diags: list[Diagonal] = [(lo, hi)]
    for s in c:
        if s > 0:
            lo += 1
        else:
            hi -= 1
        diags.append((lo, hi))
    t = Triangulation(m, diags)
    if not dual_tree(t).is_path:
        raise PolygonError("path triangulation construction broke")
    return t


def snake_triangulation(n: int) -> Triangulation:
    """The zigzag path triangulation of the (n+3)-gon (alternating turns)."""
    return path_triangulation_from_signs(alternating_signs(n))


def flip_graph_edges(m: int) -> list[tuple[Triangulation, Triangulation]]:
    """All flip-adjacent triangulation pairs (each unordered pair once)."""
    seen = set()
    edges = []
    for t in enumerate_triangulations(m):
        for d in t.diagonals:
            t2, _ = flip(t, d)
            key = frozenset((t.diagonals, t2.diagonals))
            if key not in seen:
                seen.add(key)
                edges.append((t, t2))
    return edges
