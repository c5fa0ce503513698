"""File formats: HREP v1 inequality systems, weight files, point files.

HREP v1 (bit-exact round trip; rationals print as p/q or plain integers):

    HREP v1
    dim <d>  polygon <m>
    E <k>
    n1 ... nd rhs            (k equality rows)
    I <t>
    a b n1 ... nd rhs        (t inequality rows, labeled by diagonal a-b)

Weight files are lines ``i j value``; point files are lines ``x y`` in
counterclockwise order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TextIO

from .exactlin import QVector
from .genperm import MinkowskiWeights, RssParams
from .realization import HPolytope, RealizationError
from .secondary import PlanarConfig


class FormatError(ValueError):
    """Malformed input file."""


def write_hrep(h: HPolytope, fh: TextIO) -> None:
    fh.write("HREP v1\n")
    fh.write(f"dim {h.dim}  polygon {h.m}\n")
    fh.write(f"E {len(h.equalities)}\n")
    for normal, rhs in h.equalities:
        fh.write(" ".join(str(c) for c in normal) + f" {rhs}\n")
    fh.write(f"I {len(h.inequalities)}\n")
    for (a, b), normal, rhs in sorted(h.inequalities):
        row = " ".join(str(c) for c in normal)
        fh.write(f"{a} {b} {row} {rhs}\n")


def read_hrep(fh: TextIO) -> HPolytope:
    lines = [ln.strip() for ln in fh if ln.strip()]
    try:
        if lines[0] != "HREP v1":
            raise FormatError("missing HREP v1 header")
        head = lines[1].split()
        if head[0] != "dim" or head[2] != "polygon":
            raise FormatError("bad dimension line")
        dim, m = int(head[1]), int(head[3])
        pos = 2
        if not lines[pos].startswith("E "):
            raise FormatError("missing equality count")
        n_eq = int(lines[pos].split()[1])
        pos += 1
        eqs = []
        for _ in range(n_eq):
            parts = lines[pos].split()
            pos += 1
            if len(parts) != dim + 1:
                raise FormatError("bad equality row width")
            eqs.append((QVector(Fraction(p) for p in parts[:dim]),
                        Fraction(parts[dim])))
        if not lines[pos].startswith("I "):
            raise FormatError("missing inequality count")
        n_in = int(lines[pos].split()[1])
        pos += 1
        ineqs = []
        for _ in range(n_in):
            parts = lines[pos].split()
            pos += 1
            if len(parts) != dim + 3:
                raise FormatError("bad inequality row width")
            label = (int(parts[0]), int(parts[1]))
            normal = QVector(Fraction(p) for p in parts[2:2 + dim])
            ineqs.append((label, normal, Fraction(parts[dim + 2])))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed HREP file: {exc}") from exc
    try:
        return HPolytope(dim, m, tuple(ineqs), tuple(eqs))
    except RealizationError as exc:
        raise FormatError(f"inconsistent HREP contents: {exc}") from exc


def read_minkowski_weights(fh: TextIO, n: int) -> MinkowskiWeights:
    """Lines ``i j value`` with 1 <= i <= j <= n+1."""
    weights = {}
    for ln in fh:
        if not ln.strip():
            continue
        i, j, value = ln.split()
        weights[(int(i), int(j))] = Fraction(value)
    try:
        return MinkowskiWeights(n, weights)
    except RealizationError as exc:
        raise FormatError(str(exc)) from exc


def read_rss_params(fh: TextIO, n: int) -> RssParams:
    """Lines ``i j value`` with 0 <= i < j <= n+1."""
    params = {}
    for ln in fh:
        if not ln.strip():
            continue
        i, j, value = ln.split()
        params[(int(i), int(j))] = Fraction(value)
    try:
        return RssParams(n, params)
    except RealizationError as exc:
        raise FormatError(str(exc)) from exc


def read_points(fh: TextIO) -> PlanarConfig:
    """Lines ``x y`` (rationals), counterclockwise convex position."""
    pts = []
    for ln in fh:
        if not ln.strip():
            continue
        x, y = ln.split()
        pts.append((Fraction(x), Fraction(y)))
    try:
        return PlanarConfig(pts)
    except RealizationError as exc:
        raise FormatError(str(exc)) from exc
