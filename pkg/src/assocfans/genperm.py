"""Minkowski-weight and difference-constraint realizations, and the map between them.

Two classical inequality systems share the permutahedron's normal directions:

* ``post_hrep(a)``: for positive weights a_{ij} (1 <= i <= j <= n+1), the
  facet for diagonal (p, q) of the (n+3)-gon reads
  sum_{p < i < q} x_i >= f_{p,q}, with f_{p,q} = sum_{p < i <= j < q} a_{ij},
  plus the equality sum x_i = f_{0,n+2}.  a = 1 gives the classical polytope
  with vertex coordinates made of left/right leaf products.

* ``rss_hrep(g)``: y_j - y_i >= g_{ij} for 0 <= i < j <= n+1 with y_0 = 0
  and y_{n+1} = g_{0,n+1}; the facet (i, j) is labeled by diagonal (i, j+1).
  Validity of g is the pair of strict families
  g_{il} + g_{jk} > g_{ik} + g_{jl} (i < j <= k < l) and
  g_{il} > g_{ik} + g_{kl} (i < k < l).  g0: g_{ij} = i(i-j) is the classical
  special case.

The affine map y_k = sum_{i<=k} (x_i - i) carries the first family onto the
second with g_{ij} = f_{i,j+1}(a) - (i+j+1)(j-i)/2; the minus sign on the
correction term is forced by the pentagon vertex coordinates of the two
specializations (a = 1 maps exactly onto g0) and is pinned by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactlin import QMatrix, QVector, Rat, rat, unit_vector
from .polygon import all_diagonals
from .realization import HPolytope, RealizationError


@dataclass(frozen=True)
class MinkowskiWeights:
    """Positive weights a_{ij} on intervals [i..j] of [n+1]."""

    n: int
    a: Mapping[tuple[int, int], Rat]

    def __post_init__(self):
        pairs = {(i, j) for i in range(1, self.n + 2) for j in range(i, self.n + 2)}
        if set(self.a) != pairs:
            raise RealizationError("weights must cover 1 <= i <= j <= n+1")
        if any(v <= 0 for v in self.a.values()):
            raise RealizationError("weights must be strictly positive")

    def __getitem__(self, key: tuple[int, int]) -> Rat:
        return self.a[key]


def uniform_weights(n: int, value=1) -> MinkowskiWeights:
    v = rat(value)
    return MinkowskiWeights(
        n, {(i, j): v for i in range(1, n + 2) for j in range(i, n + 2)}
    )


def post_f(a: MinkowskiWeights, p: int, q: int) -> Rat:
    """Right-hand side f_{p,q} = sum of a_{ij} over p < i <= j < q."""
    return sum(
        (a[(i, j)] for i in range(p + 1, q) for j in range(i, q)),
        Fraction(0),
    )


def _difference_projection(n: int, dim: int) -> QMatrix:
    """Quotient map u -> (u_1 - u_2, ..., u_n - u_{n+1}) killing (1,..,1).

    This is the coordinate expression in the prefix-sum basis, the basis in
    which all the facet normals of these polytopes have entries in {0,+1,-1}.
    """
    rows = []
    for j in range(n):
        row = [Fraction(0)] * dim
        row[j] = Fraction(1)
        row[j + 1] = Fraction(-1)
        rows.append(QVector(row))
    return QMatrix(rows)


def post_hrep(a: MinkowskiWeights) -> HPolytope:
    """Inequality system of the Minkowski-weight polytope, facets labeled by diagonals."""
    n = a.n
    m = n + 3
    dim = n + 1
    ineqs = []
    for p, q in all_diagonals(m):
        support = range(p + 1, q)  # indices are within 1..n+1 for every diagonal
        normal = QVector(
            [Fraction(-1) if p < i < q else Fraction(0) for i in range(1, dim + 1)]
        )
        ineqs.append(((p, q), normal, -post_f(a, p, q)))
        assert all(1 <= i <= n + 1 for i in support)
    total = post_f(a, 0, n + 2)
    eq = (QVector([Fraction(1)] * dim), total)
    return HPolytope(dim, m, tuple(ineqs), (eq,), _difference_projection(n, dim))


@dataclass(frozen=True)
class RssParams:
    """Difference-constraint parameters g_{ij} on 0 <= i < j <= n+1."""

    n: int
    g: Mapping[tuple[int, int], Rat]

    def __post_init__(self):
        pairs = {(i, j) for i in range(self.n + 2) for j in range(i + 1, self.n + 2)}
        if set(self.g) != pairs:
            raise RealizationError("parameters must cover 0 <= i < j <= n+1")

    def __getitem__(self, key: tuple[int, int]) -> Rat:
        return self.g[key]


def g0_params(n: int) -> RssParams:
    """The classical valid parameters g_{ij} = i(i-j)."""
    return RssParams(
        n,
        {
            (i, j): Fraction(i * (i - j))
            for i in range(n + 2)
            for j in range(i + 1, n + 2)
        },
    )


def rss_violations(g: RssParams) -> list[str]:
    """All violated validity inequalities (empty iff g is valid)."""
    n = g.n

    def gg(i: int, j: int) -> Rat:
        return Fraction(0) if i == j else g[(i, j)]

    bad = []
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            for k in range(j, n + 2):  # j == k degenerates to the second family
                for l in range(k + 1, n + 2):
                    if not g[(i, l)] + gg(j, k) > g[(i, k)] + gg(j, l):
                        bad.append(f"supermodularity fails at {(i, j, k, l)}")
    for i in range(n + 2):
        for k in range(i + 1, n + 2):
            for l in range(k + 1, n + 2):
                if not g[(i, l)] > g[(i, k)] + g[(k, l)]:
                    bad.append(f"strict superadditivity fails at {(i, k, l)}")
    return bad


def rss_validate(g: RssParams) -> bool:
    return not rss_violations(g)


def rss_hrep(g: RssParams) -> HPolytope:
    """Difference-constraint H-polytope; facet (i,j) is labeled by diagonal (i, j+1)."""
    bad = rss_violations(g)
    if bad:
        raise RealizationError(f"invalid parameters: {bad[0]}")
    n = g.n
    m = n + 3
    dim = n + 2  # coordinates y_0 .. y_{n+1}
    ineqs = []
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            if (i, j) == (0, n + 1):
                continue  # implied by the two equalities; label (0, n+2) is an edge
            normal = unit_vector(dim, i) - unit_vector(dim, j)
            ineqs.append(((i, j + 1), normal, -g[(i, j)]))
    eqs = (
        (unit_vector(dim, 0), Fraction(0)),
        (unit_vector(dim, n + 1), g[(0, n + 1)]),
    )
    proj = QMatrix([unit_vector(dim, i) for i in range(1, n + 1)])
    return HPolytope(dim, m, tuple(ineqs), eqs, proj)


def phi_map(x: QVector) -> QVector:
    """Prefix-sum affine map (x_1..x_{n+1}) -> (y_1..y_n), y_k = sum_{i<=k}(x_i - i)."""
    n = x.dim - 1
    out = []
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += x[k - 1] - k
        out.append(acc)
    return QVector(out)


def phi_transport(a: MinkowskiWeights) -> RssParams:
    """Parameters g with RSS(g) = phi(Post(a)): g_{ij} = f_{i,j+1} - (i+j+1)(j-i)/2."""
    n = a.n
    g = {}
    for i in range(n + 2):
        for j in range(i + 1, n + 2):
            g[(i, j)] = post_f(a, i, j + 1) - Fraction((i + j + 1) * (j - i), 2)
    return RssParams(n, g)


def post_parallel_diagonals(n: int) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """The n closed-form parallel facet pairs {(0, i+1), (i, n+2)}."""
    return {((0, i + 1), (i, n + 2)) for i in range(1, n + 1)}
