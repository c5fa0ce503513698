from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from assocfans.exactlin import (
    ConeMembership,
    ExactLinError,
    NotSimplicialError,
    QMatrix,
    QVector,
    in_cone,
    linear_dependence,
    primitive_vector,
    qvec,
    rank_report,
    solve_linear,
)


def test_solve_identity():
    a = QMatrix([[1, 0], [0, 1]])
    assert solve_linear(a, qvec(3, 5)) == qvec(3, 5)


def test_solve_hand_elimination():
    a = QMatrix([[1, 1], [1, -1]])
    assert solve_linear(a, qvec(2, 0)) == qvec(1, 1)


def test_solve_inconsistent_rows():
    a = QMatrix([[1, 1], [2, 2]])
    assert solve_linear(a, qvec(1, 3)) is None
    rep = rank_report(a, qvec(1, 3))
    assert not rep.consistent


def test_solve_underdetermined_vs_inconsistent():
    a = QMatrix([[1, 1], [2, 2]])
    assert solve_linear(a, qvec(1, 2)) is None
    rep = rank_report(a, qvec(1, 2))
    assert rep.consistent and not rep.unique


def test_solve_dimension_mismatch():
    with pytest.raises(ExactLinError):
        solve_linear(QMatrix([[1, 0]]), qvec(1, 2))


def test_dependence_independent_basis():
    assert linear_dependence([qvec(1, 0), qvec(0, 1)]) is None


def test_dependence_forced():
    assert linear_dependence([qvec(1, 0), qvec(0, 1), qvec(1, 1)]) == qvec(1, 1, -1)


def test_dependence_flip_instance():
    # v-vectors of one flip quadrilateral in the hexagon running example
    vs = [qvec(0, 1, 0), qvec(0, 0, 1), qvec(0, 1, 1)]
    assert linear_dependence(vs) == qvec(1, 1, -1)


def test_dependence_empty_raises():
    with pytest.raises(ExactLinError):
        linear_dependence([])


def test_in_cone_first_orthant():
    res = in_cone([qvec(1, 0), qvec(0, 1)], qvec(2, 3))
    assert res == ConeMembership(qvec(2, 3), (True, True))


def test_in_cone_outside():
    assert in_cone([qvec(1, 0), qvec(0, 1)], qvec(-1, 1)) is None


def test_in_cone_negative_orthant():
    gens = [qvec(-1, 0, 0), qvec(0, -1, 0), qvec(0, 0, -1)]
    res = in_cone(gens, qvec(-1, -2, -3))
    assert res is not None and res.coeffs == qvec(1, 2, 3)
    assert res.interior


def test_in_cone_boundary_strictness():
    res = in_cone([qvec(1, 0), qvec(0, 1)], qvec(2, 0))
    assert res is not None and res.strict == (True, False)


def test_in_cone_rejects_dependent_generators():
    with pytest.raises(NotSimplicialError):
        in_cone([qvec(1, 0), qvec(2, 0)], qvec(1, 0))


def test_primitive_vector():
    assert primitive_vector(qvec(Fraction(1, 2), Fraction(3, 2))) == qvec(1, 3)
    assert primitive_vector(qvec(-4, 6)) == qvec(-2, 3)
    with pytest.raises(ExactLinError):
        primitive_vector(qvec(0, 0))


small_int = st.integers(min_value=-6, max_value=6)


@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=n, max_size=n),
            st.lists(small_int, min_size=n, max_size=n),
        )
    )
)
@settings(max_examples=200, deadline=None)
def test_solve_exactness(data):
    rows, b = data
    a = QMatrix(rows)
    x = solve_linear(a, QVector(b))
    if x is not None:
        assert a.apply(x) == QVector(b)  # no tolerance anywhere


@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.lists(
            st.lists(small_int, min_size=n, max_size=n), min_size=1, max_size=n + 2
        )
    )
)
@settings(max_examples=200, deadline=None)
def test_dependence_annihilates(rows):
    vs = [QVector(r) for r in rows]
    lam = linear_dependence(vs)
    if lam is not None:
        assert not lam.is_zero()
        assert lam[next(i for i in range(lam.dim) if lam[i] != 0)] == 1
        total = vs[0].scale(lam[0])
        for c, v in zip(lam.entries[1:], vs[1:]):
            total = total + v.scale(c)
        assert total.is_zero()
    else:
        assert QMatrix.from_columns(vs).rank() == len(vs)


@given(
    st.lists(
        st.fractions(min_value=0, max_value=8, max_denominator=6),
        min_size=2,
        max_size=2,
    )
)
@settings(max_examples=100, deadline=None)
def test_in_cone_round_trip(coeffs):
    gens = [qvec(2, 1), qvec(-1, 3)]
    x = gens[0].scale(coeffs[0]) + gens[1].scale(coeffs[1])
    res = in_cone(gens, x)
    assert res is not None and res.coeffs == QVector(coeffs)
