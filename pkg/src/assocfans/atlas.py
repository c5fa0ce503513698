"""Cross-family classification, counting formulas, and the intersection theorem.

Class counts (reproduced by enumeration up to n = 12 and by closed form):

* sign-sequence family: sequences in {+,-}^(n-1) modulo negation and
  reversal; 2^(n-3) + 2^floor((n-3)/2) classes for n >= 3, and 1 for
  n in {0, 1, 2} (the closed form starts at n = 3; small values are pinned
  to the enumerated table).
* seed-triangulation family: triangulations of the (n+3)-gon modulo the
  dihedral group; C_{n+1}/(2(n+3)) + C_{(n+1)/2}/4 + C_{floor((n+1)/2)}/2
  + C_{n/3}/3, with C_x = 0 for non-integer x.

The intersection report certifies that, as normal fans, the two families
meet in exactly one class - alternating sign sequence on one side, snake
seed on the other - and that the secondary-polytope fan never matches
either (its facet normals admit no opposite pairs, while both families
carry exactly n of them).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .hl import hl_fan, sign_canonical
from .polygon import (
    SignSequence,
    Triangulation,
    all_diagonals,
    alternating_signs,
    canonical_triangulation,
    catalan,
    dihedral_vertex_maps,
    format_signs,
    iter_triangulation_tuples,
    map_diagonal,
    snake_triangulation,
)
from .realization import LabeledFan, fans_linearly_isomorphic, parallel_pairs
from .santos import make_seed_frame, santos_fan
from .secondary import gkz_quotient_fan, parabola_config


def catalan_term(index2: Fraction, weight: Fraction) -> Fraction:
    """weight * C_{index2} with C_x = 0 for non-integer x."""
    if index2.denominator != 1 or index2 < 0:
        return Fraction(0)
    return weight * catalan(int(index2))


def count_formulas(n: int) -> tuple[int, int]:
    """Closed-form class counts (type I, type II) for dimension n."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    if n >= 3:
        type1 = 2 ** (n - 3) + 2 ** ((n - 3) // 2)
    else:
        type1 = 1  # printed table values; the closed form starts at n = 3
    type2 = (
        catalan_term(Fraction(n + 1), Fraction(1, 2 * (n + 3)))
        + catalan_term(Fraction(n + 1, 2), Fraction(1, 4))
        + catalan_term(Fraction((n + 1) // 2), Fraction(1, 2))
        + catalan_term(Fraction(n, 3), Fraction(1, 3))
    )
    if type2.denominator != 1:
        raise ValueError("type II count did not come out integral")
    return type1, int(type2)


def sign_classes(n: int) -> list[SignSequence]:
    """Canonical representatives of {+,-}^(n-1) modulo negation/reversal."""
    if n < 1:
        raise ValueError("sign classes need n >= 1")
    reps = set()
    for bits in range(2 ** (n - 1)):
        sigma = tuple(1 if bits >> i & 1 else -1 for i in range(n - 1))
        reps.add(sign_canonical(sigma))
    return sorted(reps)


def _diagonal_code_tables(m: int) -> list[list[int]]:
    """Per symmetry: permutation of diagonal codes (code = a*m + b)."""
    diags = all_diagonals(m)
    code = {d: d[0] * m + d[1] for d in diags}
    tables = []
    for f in dihedral_vertex_maps(m):
        table = [0] * (m * m)
        for d in diags:
            table[code[d]] = code[map_diagonal(f, d)]
        tables.append(table)
    return tables


def iter_seed_class_codes(m: int) -> Iterator[tuple[int, ...]]:
    """Stream canonical code tuples, one per seen triangulation (with repeats)."""
    tables = _diagonal_code_tables(m)
    for diags in iter_triangulation_tuples(m):
        codes = [a * m + b for a, b in diags]
        yield min(tuple(sorted(t[c] for c in codes)) for t in tables)


def seed_classes(n: int) -> list[Triangulation]:
    """Canonical representatives of the (n+3)-gon triangulations mod dihedral."""
    m = n + 3
    reps = set(iter_seed_class_codes(m))
    return sorted(
        Triangulation(m, [divmod(c, m) for c in codes]) for codes in reps
    )


def count_seed_classes(n: int) -> int:
    """Dihedral triangulation classes by streaming enumeration (no fan builds)."""
    return len(set(iter_seed_class_codes(n + 3)))


@dataclass(frozen=True)
class EquivClass:
    """One normal-isomorphism class of a family, keyed by its canonical parameter."""

    family: str  # gkz | post | rss | hl | santos
    key: str  # canonical parameter, serialized
    parameter: object

    def build_fan(self) -> LabeledFan:
        if self.family == "hl":
            return hl_fan(self.parameter)
        if self.family == "santos":
            return santos_fan(make_seed_frame(self.parameter))
        if self.family == "gkz":
            return gkz_quotient_fan(self.parameter)
        if self.family in ("post", "rss"):
            # fixed fan regardless of weights: same as the all-minus sign class
            n = self.parameter
            return hl_fan(tuple([-1] * (n - 1)))
        raise ValueError(f"unknown family {self.family}")


def classify_family(family: str, n: int, cross_validate: bool = False) -> list[EquivClass]:
    """Normal-isomorphism classes of one family in dimension n.

    With cross_validate (intended for n <= 5), the canonical-form partition
    is checked against pairwise fan isomorphism of the representatives:
    distinct classes must be non-isomorphic.
    """
    if family == "hl":
        classes = [
            EquivClass("hl", format_signs(sig) or "()", sig)
            for sig in sign_classes(n)
        ]
    elif family == "santos":
        classes = [
            EquivClass("santos", t.serialize(), t) for t in seed_classes(n)
        ]
    elif family == "gkz":
        classes = [EquivClass("gkz", f"parabola-{n + 3}", parabola_config(n + 3))]
    elif family in ("post", "rss"):
        classes = [EquivClass(family, f"standard-{n}", n)]
    else:
        raise ValueError(f"unknown family {family}")
    if cross_validate and len(classes) > 1:
        fans = [c.build_fan() for c in classes]
        for i in range(len(fans)):
            for j in range(i + 1, len(fans)):
                if fans_linearly_isomorphic(fans[i], fans[j]) is not None:
                    raise ValueError(
                        f"classes {classes[i].key} and {classes[j].key} merged"
                    )
    return classes


TABLE_TYPE1 = [1, 1, 1, 2, 3, 6, 10, 20, 36, 72, 136, 272, 528, 1056, 2080, 4160]
TABLE_TYPE2 = [1, 1, 1, 3, 4, 12, 27, 82, 228, 733, 2282, 7528, 24834,
               83898, 285357, 983244]


def count_table(n_max: int, enumerate_counts: bool = True) -> list[dict]:
    """Rows n = 0..n_max of the class-count table.

    With enumerate_counts the type II column is recomputed by streaming
    canonical forms (and type I by explicit sign-class enumeration for
    n >= 1); closed forms are always included.
    """
    rows = []
    for n in range(n_max + 1):
        t1, t2 = count_formulas(n)
        row = {"n": n, "type1": t1, "type2": t2}
        if enumerate_counts:
            row["type1_enumerated"] = len(sign_classes(n)) if n >= 1 else 1
            row["type2_enumerated"] = count_seed_classes(n)
        rows.append(row)
    return rows


@dataclass
class AtlasReport:
    """Cross-family isomorphism matrix over class representatives."""

    n: int
    class_counts: dict[str, int]
    classes: list[EquivClass]
    matrix: dict[tuple[str, str], bool]
    common_pairs: list[tuple[str, str]]
    notes: list[str] = field(default_factory=list)

    def union_class_count(self, families: tuple[str, ...] = ("hl", "santos")) -> int:
        keys = [c for c in self.classes if c.family in families]
        count = 0
        seen: list[EquivClass] = []
        for c in keys:
            if not any(
                self.matrix[_mkey(c, prev)] for prev in seen
            ):
                count += 1
            seen.append(c)
        return count

    def to_text(self) -> str:
        payload = {
            "n": self.n,
            "class_counts": dict(sorted(self.class_counts.items())),
            "common_pairs": sorted(self.common_pairs),
            "matrix": {
                f"{k[0]} | {k[1]}": v for k, v in sorted(self.matrix.items())
            },
            "notes": list(self.notes),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _mkey(c1: EquivClass, c2: EquivClass) -> tuple[str, str]:
    a = f"{c1.family}:{c1.key}"
    b = f"{c2.family}:{c2.key}"
    return (a, b) if a <= b else (b, a)


def intersection_report(n: int) -> AtlasReport:
    """Full pairwise isomorphism matrix over hl + santos + gkz classes.

    Asserts the intersection theorem at this dimension: exactly one
    (hl, santos) class pair is isomorphic and it is (alternating, snake);
    the gkz fan matches nothing (no parallel facets versus n pairs).
    """
    if n < 2:
        raise ValueError("intersection report needs n >= 2")
    classes = (
        classify_family("hl", n)
        + classify_family("santos", n)
        + classify_family("gkz", n)
    )
    fans = {id(c): c.build_fan() for c in classes}
    matrix: dict[tuple[str, str], bool] = {}
    witnesses = {}
    for i, c1 in enumerate(classes):
        for c2 in classes[i:]:
            if c1 is c2:
                matrix[_mkey(c1, c2)] = True
                continue
            res = fans_linearly_isomorphic(fans[id(c1)], fans[id(c2)])
            matrix[_mkey(c1, c2)] = res is not None
            if res is not None:
                witnesses[_mkey(c1, c2)] = res
    common = [
        _mkey(c1, c2)
        for c1 in classes
        if c1.family == "hl"
        for c2 in classes
        if c2.family == "santos" and matrix[_mkey(c1, c2)]
    ]
    notes = []
    alt_key = format_signs(sign_canonical(alternating_signs(n))) or "()"
    snake_key = canonical_triangulation(snake_triangulation(n)).serialize()
    expected = _mkey(
        EquivClass("hl", alt_key, None), EquivClass("santos", snake_key, None)
    )
    if common != [expected]:
        raise ValueError(
            f"intersection is {common}, expected exactly {[expected]}"
        )
    notes.append(f"unique common class: {expected[0]} ~ {expected[1]}")
    for c in classes:
        fan = fans[id(c)]
        n_pairs = len(parallel_pairs(fan))
        if c.family == "gkz":
            if n_pairs != 0:
                raise ValueError("secondary-polytope fan grew parallel facets")
            if any(
                matrix[_mkey(c, other)] for other in classes if other is not c
            ):
                raise ValueError("secondary-polytope fan matched another family")
        elif n_pairs != n:
            raise ValueError(f"{c.family}:{c.key} has {n_pairs} parallel pairs")
    notes.append("gkz fan: 0 parallel pairs; all other classes: n pairs")
    counts = {
        fam: sum(1 for c in classes if c.family == fam)
        for fam in ("hl", "santos", "gkz")
    }
    return AtlasReport(n, counts, classes, matrix, common, notes)
