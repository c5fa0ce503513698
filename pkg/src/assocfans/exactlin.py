"""Exact rational linear algebra.

Every scalar in this package is a ``fractions.Fraction`` (kept in lowest
terms with positive denominator by the stdlib), so all geometry downstream
is exact: no floats, no epsilons.  Vectors and matrices are thin immutable
wrappers around tuples of Fractions; solvers are plain fraction Gaussian
elimination, which is plenty fast at the dimensions this package works in
(systems stay below ~15 unknowns).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction
RatLike = Union[Rat, int, str]


class ExactLinError(ValueError):
    """Contract violation in an exact linear algebra operation."""


class NotSimplicialError(ExactLinError):
    """Cone membership was asked for a dependent generator set."""


def rat(x: RatLike) -> Rat:
    """Coerce an int/str/Fraction to an exact rational."""
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QVector:
    """Immutable dense vector over the rationals."""

    entries: tuple[Rat, ...]

    def __init__(self, entries: Iterable[RatLike]):
        object.__setattr__(self, "entries", tuple(rat(e) for e in entries))
        if not self.entries:
            raise ExactLinError("QVector needs at least one entry")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Rat:
        return self.entries[i]

    def __add__(self, other: "QVector") -> "QVector":
        self._check_dim(other)
        return QVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "QVector") -> "QVector":
        self._check_dim(other)
        return QVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "QVector":
        return QVector(-a for a in self.entries)

    def scale(self, c: RatLike) -> "QVector":
        c = rat(c)
        return QVector(c * a for a in self.entries)

    def dot(self, other: "QVector") -> Rat:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check_dim(self, other: "QVector") -> None:
        if self.dim != other.dim:
            raise ExactLinError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.entries) + ")"


def qvec(*entries: RatLike) -> QVector:
    return QVector(entries)


def zero_vector(dim: int) -> QVector:
    return QVector([0] * dim)


def unit_vector(dim: int, i: int) -> QVector:
    e = [Fraction(0)] * dim
    e[i] = Fraction(1)
    return QVector(e)


@dataclass(frozen=True)
class QMatrix:
    """Immutable rectangular matrix over the rationals (a tuple of row QVectors)."""

    rows: tuple[QVector, ...]

    def __init__(self, rows: Iterable[Union[QVector, Iterable[RatLike]]]):
        rs = tuple(r if isinstance(r, QVector) else QVector(r) for r in rows)
        if not rs:
            raise ExactLinError("QMatrix needs at least one row")
        if len({r.dim for r in rs}) != 1:
            raise ExactLinError("ragged rows")
        object.__setattr__(self, "rows", rs)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self.rows[0].dim

    @classmethod
    def from_columns(cls, cols: Sequence[QVector]) -> "QMatrix":
        return cls(zip(*(c.entries for c in cols)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(unit_vector(n, i) for i in range(n))

    def column(self, j: int) -> QVector:
        return QVector(r[j] for r in self.rows)

    def apply(self, x: QVector) -> QVector:
        if x.dim != self.ncols:
            raise ExactLinError(f"dimension mismatch: {self.ncols} vs {x.dim}")
        return QVector(r.dot(x) for r in self.rows)

    def transpose(self) -> "QMatrix":
        return QMatrix.from_columns(list(self.rows))

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise ExactLinError("shape mismatch in matmul")
        cols = [self.apply(other.column(j)) for j in range(other.ncols)]
        return QMatrix.from_columns(cols)

    def rank(self) -> int:
        _, pivots = _rref([list(r.entries) for r in self.rows])
        return len(pivots)

    def has_full_column_rank(self) -> bool:
        return self.rank() == self.ncols

    def __repr__(self) -> str:
        return "QMatrix[" + "; ".join(repr(r) for r in self.rows) + "]"


def _rref(rows: list[list[Rat]]) -> tuple[list[list[Rat]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pivot_row = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


@dataclass(frozen=True)
class RankReport:
    """Ranks of a system A·x = b, for diagnosing solve_linear outcomes."""

    rank_a: int
    rank_augmented: int
    ncols: int

    @property
    def consistent(self) -> bool:
        return self.rank_a == self.rank_augmented

    @property
    def unique(self) -> bool:
        return self.consistent and self.rank_a == self.ncols


def rank_report(a: QMatrix, b: Optional[QVector] = None) -> RankReport:
    rows = [list(r.entries) for r in a.rows]
    ra = len(_rref([row[:] for row in rows])[1])
    if b is None:
        return RankReport(ra, ra, a.ncols)
    if b.dim != a.nrows:
        raise ExactLinError("rhs length must equal row count")
    aug = [row + [be] for row, be in zip(rows, b.entries)]
    raug = len(_rref(aug)[1])
    return RankReport(ra, raug, a.ncols)


def solve_linear(a: QMatrix, b: QVector) -> Optional[QVector]:
    """Solve A·x = b exactly; returns the solution only when it is unique.

    Returns None both for inconsistent and for underdetermined systems; use
    rank_report to tell the two apart.
    """
    if b.dim != a.nrows:
        raise ExactLinError("rhs length must equal row count")
    aug = [list(r.entries) + [be] for r, be in zip(a.rows, b.entries)]
    rows, pivots = _rref(aug)
    nc = a.ncols
    if nc in pivots:  # pivot in the rhs column: inconsistent
        return None
    if len(pivots) < nc:  # consistent but not unique
        return None
    x = [Fraction(0)] * nc
    for i, c in enumerate(pivots):
        x[c] = rows[i][nc]
    return QVector(x)


def solve_unique(a: QMatrix, b: QVector) -> QVector:
    """Like solve_linear but raises when the solution is absent."""
    x = solve_linear(a, b)
    if x is None:
        raise ExactLinError("system has no unique solution")
    return x


def linear_dependence(vs: Sequence[QVector]) -> Optional[QVector]:
    """One nonzero lambda with sum(lambda_i * vs_i) = 0, or None if independent.

    Normalized so the first nonzero coefficient is +1.
    """
    if not vs:
        raise ExactLinError("linear_dependence of an empty family")
    dim = vs[0].dim
    if any(v.dim != dim for v in vs):
        raise ExactLinError("vectors must share one dimension")
    k = len(vs)
    rows = [[vs[j][i] for j in range(k)] for i in range(dim)]
    rows, pivots = _rref(rows)
    if len(pivots) == k:
        return None
    free = next(j for j in range(k) if j not in pivots)
    lam = [Fraction(0)] * k
    lam[free] = Fraction(1)
    for i, c in enumerate(pivots):
        lam[c] = -rows[i][free]
    first = next(a for a in lam if a != 0)
    lam = [a / first for a in lam]
    return QVector(lam)


@dataclass(frozen=True)
class ConeMembership:
    """Nonnegative coordinates of a point in a simplicial cone."""

    coeffs: QVector
    strict: tuple[bool, ...]  # per-generator strict positivity

    @property
    def interior(self) -> bool:
        return all(self.strict)


def in_cone(generators: Sequence[QVector], x: QVector) -> Optional[ConeMembership]:
    """Coordinates of x in the simplicial cone spanned by the generators.

    Returns None when x is outside the cone (including outside the span).
    Raises NotSimplicialError for a dependent generator set.
    """
    if not generators:
        raise ExactLinError("in_cone needs at least one generator")
    g = QMatrix.from_columns(list(generators))
    if not g.has_full_column_rank():
        raise NotSimplicialError("not simplicial: dependent generators")
    c = _solve_full_column_rank(g, x)
    if c is None:
        return None
    if any(ci < 0 for ci in c):
        return None
    return ConeMembership(c, tuple(ci > 0 for ci in c))


def _solve_full_column_rank(g: QMatrix, x: QVector) -> Optional[QVector]:
    """Unique solution of a full-column-rank system, or None if inconsistent."""
    aug = [list(r.entries) + [xe] for r, xe in zip(g.rows, x.entries)]
    rows, pivots = _rref(aug)
    nc = g.ncols
    if nc in pivots:
        return None
    c = [Fraction(0)] * nc
    for i, col in enumerate(pivots):
        c[col] = rows[i][nc]
    return QVector(c)


def primitive_vector(v: QVector) -> QVector:
    """Positive rescaling of v to a primitive integer vector (direction kept)."""
    if v.is_zero():
        raise ExactLinError("cannot primitivize the zero vector")
    mult = 1
    for e in v.entries:
        mult = mult * e.denominator // gcd(mult, e.denominator)
    ints = [int(e * mult) for e in v.entries]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return QVector(a // g for a in ints)


def nullspace_rank(vectors: Sequence[QVector]) -> int:
    """Rank of the family (as rows)."""
    return QMatrix(list(vectors)).rank()
