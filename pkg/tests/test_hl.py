from itertools import product

import pytest

from assocfans.genperm import post_hrep, uniform_weights
from assocfans.hl import (
    ConventionError,
    embed_extended,
    extend_signs,
    hl_S,
    hl_embed,
    hl_fan,
    hl_hrep,
    hl_hrep_from_polygon,
    hl_parallel_pairs,
    hl_vertex_rule,
    sign_canonical,
)
from assocfans.polygon import (
    all_diagonals,
    alternating_signs,
    chords_cross,
    enumerate_triangulations,
    snake_triangulation,
)
from assocfans.realization import (
    fans_linearly_isomorphic,
    normal_fan,
    parallel_pairs,
    verify_realization,
)
from assocfans.santos import make_seed_frame, santos_fan


def all_sigmas(n):
    return list(product((1, -1), repeat=n - 1))


def test_embedding_example_signs():
    poly = hl_embed((1, -1, 1))  # n = 4
    assert poly.extended == (1, -1, 1, -1, 1, -1, 1)
    xs = [poly.coords[i][0] for i in range(7)]
    assert xs == sorted(xs)  # x-coordinates increase with label


def test_all_minus_vertex_placement():
    poly = hl_embed((-1, -1, -1))
    assert poly.extended[0] == poly.extended[-1] == 1
    assert all(poly.extended[i] == -1 for i in range(1, poly.m - 1))
    assert all(poly.coords[i][1] < 0 for i in range(1, poly.m - 1))
    assert poly.coords[0][1] > 0 and poly.coords[poly.m - 1][1] > 0


def test_embedding_convex_for_all_sigmas():
    for n in range(1, 11):
        for sigma in all_sigmas(n):
            hl_embed(sigma)  # convexity asserted inside


def test_all_minus_subsets_match_interval_rule():
    for n in (2, 3, 4):
        poly = hl_embed(tuple([-1] * (n - 1)))
        assert poly.cyclic == tuple(range(n + 3))  # labels = x-order here
        for p, q in all_diagonals(n + 3):
            if 0 < p:
                assert hl_S(poly, (p, q)) == frozenset(range(p + 1, q))


def test_all_minus_equals_uniform_weight_system():
    for n in (1, 2, 3, 4, 5):
        h1 = hl_hrep(tuple([-1] * (n - 1)))
        h2 = post_hrep(uniform_weights(n))
        assert sorted(
            (d, tuple(v.entries), r) for d, v, r in h1.inequalities
        ) == sorted((d, tuple(v.entries), r) for d, v, r in h2.inequalities)
        assert h1.equalities[0][1] == h2.equalities[0][1]


def test_subset_fixture_plus_minus_plus():
    # frozen from the side-of-line computation on the canonical embedding
    poly = hl_embed((1, -1, 1))
    d = poly.to_diagonal((1, 4))
    assert d == (1, 5)
    assert hl_S(poly, d) == frozenset({3, 4, 5})


def test_parallel_pair_subsets_are_complementary():
    for n in (2, 3, 4, 5):
        for sigma in all_sigmas(n):
            poly = hl_embed(sigma)
            for d1, d2 in hl_parallel_pairs(sigma):
                s1, s2 = hl_S(poly, d1), hl_S(poly, d2)
                assert len(s1) + len(s2) == n + 1
                assert s1 | s2 == set(range(1, n + 2))


def test_verify_all_sigmas():
    for n in range(1, 6):
        for sigma in all_sigmas(n):
            rep = verify_realization(hl_hrep(sigma))
            assert rep.is_simple_associahedron, (sigma, rep.failures[:2])


def test_first_two_sign_interchange_keeps_system():
    for sigma in [(-1,), (1, -1), (1, 1, -1), (-1, 1, 1)]:
        ext = list(extend_signs(sigma))
        ext[0], ext[1] = ext[1], ext[0]
        h1 = hl_hrep(sigma)
        h2 = hl_hrep_from_polygon(embed_extended(tuple(ext)))
        unlabeled = lambda h: sorted(
            (tuple(v.entries), r) for _, v, r in h.inequalities
        )
        assert unlabeled(h1) == unlabeled(h2)


def test_last_two_sign_interchange_keeps_system():
    for sigma in [(1, -1), (-1, 1, -1)]:
        ext = list(extend_signs(sigma))
        ext[-1], ext[-2] = ext[-2], ext[-1]
        h1 = hl_hrep(sigma)
        h2 = hl_hrep_from_polygon(embed_extended(tuple(ext)))
        unlabeled = lambda h: sorted(
            (tuple(v.entries), r) for _, v, r in h.inequalities
        )
        assert unlabeled(h1) == unlabeled(h2)


def test_vertex_rule_loday_pentagon():
    sigma = (-1,)
    h = hl_hrep(sigma)
    vertices = {
        tuple(hl_vertex_rule(sigma, t, h).entries)
        for t in enumerate_triangulations(5)
    }
    assert vertices == {(3, 2, 1), (1, 4, 1), (1, 2, 3), (2, 1, 3), (3, 1, 2)}


def test_vertex_rule_agrees_with_oracle():
    for n in (2, 3, 4, 5):
        for sigma in all_sigmas(n):
            h = hl_hrep(sigma)
            for t in enumerate_triangulations(n + 3):
                x = hl_vertex_rule(sigma, t, h)  # raises on mismatch
                total = sum(x.entries)
                assert total == (n + 1) * (n + 2) // 2


def test_vertex_rule_detects_wrong_convention():
    # feeding the rule a mismatched system must hard-fail
    sigma = (1, -1)
    other = hl_hrep((-1, -1))
    with pytest.raises(ConventionError):
        hl_vertex_rule(sigma, enumerate_triangulations(6)[0], other)


def test_parallel_pairs_all_minus_pattern():
    for n in (2, 3, 4):
        pairs = hl_parallel_pairs(tuple([-1] * (n - 1)))
        assert pairs == {((0, i + 1), (i, n + 2)) for i in range(1, n + 1)}


def test_parallel_pairs_match_normal_fan():
    for n in (2, 3, 4, 5):
        for sigma in all_sigmas(n):
            assert hl_parallel_pairs(sigma) == parallel_pairs(hl_fan(sigma))


def test_parallel_pairs_are_crossing():
    for n in (2, 3, 4):
        for sigma in all_sigmas(n):
            for d1, d2 in hl_parallel_pairs(sigma):
                assert chords_cross(d1, d2)


def test_fan_rays_are_0_pm1_and_contain_axes():
    for n in (2, 3, 4, 5, 6):
        for sigma in all_sigmas(n):
            fan = hl_fan(sigma)
            entries = {e for v in fan.rays.values() for e in v.entries}
            assert entries <= {-1, 0, 1}
            rays = {tuple(v.entries) for v in fan.rays.values()}
            for i in range(n):
                axis = tuple(1 if j == i else 0 for j in range(n))
                neg = tuple(-a for a in axis)
                assert axis in rays and neg in rays


def test_fan_matches_hrep_fan():
    for sigma in [(-1,), (1, -1), (1, 1)]:
        assert hl_fan(sigma).rays == normal_fan(hl_hrep(sigma)).rays


def test_sign_canonical_basics():
    assert sign_canonical((1, -1, 1)) == sign_canonical((-1, 1, -1))
    assert sign_canonical(()) == ()
    assert sign_canonical((1,)) == (-1,)


def test_sign_class_counts():
    from assocfans.atlas import sign_classes

    assert len(sign_classes(5)) == 6
    for n in range(3, 16):
        assert len(sign_classes(n)) == 2 ** (n - 3) + 2 ** ((n - 3) // 2)


def test_classification_iff_canonical_n4():
    n = 4
    fans = {sigma: hl_fan(sigma) for sigma in all_sigmas(n)}
    sigmas = list(fans)
    for i, s1 in enumerate(sigmas):
        for s2 in sigmas[i:]:
            iso = fans_linearly_isomorphic(fans[s1], fans[s2]) is not None
            assert iso == (sign_canonical(s1) == sign_canonical(s2)), (s1, s2)


def test_alternating_matches_snake_seed():
    for n in (2, 3, 4):
        f1 = hl_fan(alternating_signs(n))
        f2 = santos_fan(make_seed_frame(snake_triangulation(n)))
        assert fans_linearly_isomorphic(f1, f2) is not None
