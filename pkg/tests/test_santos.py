from fractions import Fraction
from itertools import combinations

import pytest

from assocfans.exactlin import in_cone, linear_dependence, qvec, zero_vector
from assocfans.polygon import (
    Triangulation,
    canonical_triangulation,
    dual_tree,
    enumerate_triangulations,
    flip,
    snake_triangulation,
)
from assocfans.realization import (
    RealizationError,
    normal_fan,
    parallel_pairs,
    sample_completeness,
    verify_realization,
)
from assocfans.santos import (
    DependenceError,
    SeedFrame,
    almost_positive_roots,
    b_set,
    dual_tree_normal_equiv,
    flip_dependence,
    make_seed_frame,
    perturbation_weight,
    santos_fan,
    santos_hrep,
    santos_vectors,
    santos_weights,
)

HEXAGON_STAR = Triangulation(6, [(0, 2), (2, 4), (0, 4)])


def canonical_seed_frames(m):
    return [
        make_seed_frame(t)
        for t in sorted(
            {canonical_triangulation(t) for t in enumerate_triangulations(m)}
        )
    ]


def test_running_example_vectors():
    # the worked hexagon example, all labels shifted down by one
    frame = SeedFrame(HEXAGON_STAR, ((0, 2), (2, 4), (0, 4)))
    v = santos_vectors(frame)
    expected = {
        (0, 2): (-1, 0, 0), (2, 4): (0, -1, 0), (0, 4): (0, 0, -1),
        (1, 4): (1, 0, 0), (0, 3): (0, 1, 0), (2, 5): (0, 0, 1),
        (3, 5): (0, 1, 1), (1, 5): (1, 0, 1), (1, 3): (1, 1, 0),
    }
    assert len(v) == 9
    for d, entries in expected.items():
        assert tuple(v[d].entries) == entries


def test_seed_cone_is_negative_orthant():
    frame = make_seed_frame(snake_triangulation(3))
    v = santos_vectors(frame)
    gens = [v[d] for d in frame.delta_order]
    res = in_cone(gens, qvec(-2, -1, -5))
    assert res is not None and res.interior
    assert in_cone(gens, qvec(1, -1, -1)) is None


def test_snake_vectors_are_almost_positive_roots():
    for n in (2, 3, 4, 5):
        frame = make_seed_frame(snake_triangulation(n))
        vs = {
            tuple(int(e) for e in v.entries)
            for v in santos_vectors(frame).values()
        }
        assert vs == almost_positive_roots(n)


def test_every_path_seed_gives_almost_positive_roots():
    # with path-ordered deltas the diagonal -> vector map is a bijection onto
    # the almost positive roots, so cones realize the compatibility complex
    from itertools import product

    from assocfans.polygon import path_triangulation_from_signs

    for n in (2, 3, 4, 5, 6):
        for c in product((1, -1), repeat=n - 1):
            frame = make_seed_frame(path_triangulation_from_signs(c))
            vectors = santos_vectors(frame)
            as_tuples = [tuple(int(e) for e in v.entries) for v in vectors.values()]
            assert len(set(as_tuples)) == len(as_tuples)  # injective
            assert set(as_tuples) == almost_positive_roots(n)


def test_path_seed_ordering_follows_dual_path():
    frame = make_seed_frame(snake_triangulation(4))
    tree = dual_tree(frame.triangulation)
    edge_nodes = {d: (i, j) for d, i, j in tree.edges}
    # consecutive deltas share a triangle
    for d1, d2 in zip(frame.delta_order, frame.delta_order[1:]):
        assert set(edge_nodes[d1]) & set(edge_nodes[d2])


def test_flip_dependence_case_d_running_example():
    frame = SeedFrame(HEXAGON_STAR, ((0, 2), (2, 4), (0, 4)))
    tag, lam = flip_dependence(frame, (0, 2, 3, 5))
    assert tag == "d"
    assert lam == {(0, 3): 1, (2, 5): 1, (3, 5): -1}


def test_flip_dependence_case_b_rule():
    frame = SeedFrame(HEXAGON_STAR, ((0, 2), (2, 4), (0, 4)))
    tag, lam = flip_dependence(frame, (0, 1, 2, 4))
    assert tag == "b"
    # both apexes coincide with quad corners here: w_a = w_b = 0
    assert lam == {(0, 2): 1, (1, 4): 1}


def test_flip_dependence_rejects_unsorted_quad():
    frame = make_seed_frame(HEXAGON_STAR)
    with pytest.raises(DependenceError):
        flip_dependence(frame, (2, 0, 3, 5))


def test_flip_dependence_exhaustive_unique_and_annihilating():
    # classification exactness and agreement with the generic nullspace oracle
    for m in (5, 6, 7, 8):
        for frame in canonical_seed_frames(m):
            vectors = santos_vectors(frame)
            for quad in combinations(range(m), 4):
                tag, lam = flip_dependence(frame, quad)
                assert tag in "abcd"
                involved = sorted(lam)
                oracle = linear_dependence([vectors[d] for d in involved])
                assert oracle is not None
                first = next(lam[d] for d in involved if lam[d] != 0)
                normalized = [lam[d] / first for d in involved]
                assert list(oracle.entries) == normalized, (quad, lam)


def test_flip_dependence_positive_on_exchanged_pair():
    for m in (5, 6, 7):
        for frame in canonical_seed_frames(m):
            for quad in combinations(range(m), 4):
                p, q, r, s = quad
                _, lam = flip_dependence(frame, quad)
                assert lam[(p, r)] > 0 and lam[(q, s)] > 0
                union_ok = set(lam) <= set(
                    [(p, r), (q, s)]
                    + [tuple(sorted(x)) for x in ((p, q), (q, r), (r, s), (p, s))]
                )
                assert union_ok


def test_path_seeds_never_hit_case_c():
    # sharpened form of the path-seed observation: configuration (c) would
    # force a dual-tree node of degree three, so it cannot occur; (d) does
    # occur, but only through a seed triangle whose shared quadrilateral side
    # is a boundary edge of the polygon (see the case-(d) witness test below)
    for m in (5, 6, 7, 8, 9, 10):
        for frame in canonical_seed_frames(m):
            if not dual_tree(frame.triangulation).is_path:
                continue
            for quad in combinations(range(m), 4):
                tag, lam = flip_dependence(frame, quad)
                assert tag != "c", (frame.triangulation, quad)
                if tag == "d":
                    p, q, r, s = quad
                    sides = [
                        tuple(sorted(x))
                        for x in ((p, q), (q, r), (r, s), (s, p))
                    ]
                    opp = next(d for d, c in lam.items() if c < 0)
                    shared = sides[(sides.index(opp) + 2) % 4]
                    a, b = shared
                    assert b - a == 1 or (a, b) == (0, m - 1)


def test_snake_seed_has_case_d_quad():
    # witness that configuration (d) does occur for a path seed (the snake
    # itself); only (c) is ruled out on dual paths, since a (c)-triangle has
    # three diagonal sides and would be a degree-three node
    frame = make_seed_frame(snake_triangulation(3))
    tag, lam = flip_dependence(frame, (0, 1, 2, 3))
    assert tag == "d"
    vectors = santos_vectors(frame)
    total = zero_vector(3)
    for d, c in lam.items():
        total = total + vectors[d].scale(c)
    assert total.is_zero()


def test_weights_certify_at_initial_epsilon():
    for m in (4, 5, 6, 7):
        for frame in canonical_seed_frames(m):
            w = santos_weights(frame)
            assert w.epsilon == Fraction(1, 4 * m**3)
            assert w.dependences_checked == len(list(combinations(range(m), 4)))


def test_case_a_margin_formula():
    for frame in canonical_seed_frames(7):
        w = santos_weights(frame)
        for quad in combinations(range(7), 4):
            tag, lam = flip_dependence(frame, quad)
            if tag != "a":
                continue
            margin = sum(
                (c * w.omega[d] for d, c in lam.items()), Fraction(0)
            )
            g_margin = sum(
                (c * perturbation_weight(d[0], d[1], 7) for d, c in lam.items()),
                Fraction(0),
            )
            assert margin == w.epsilon * g_margin and g_margin > 0


def test_case_b_margin_without_perturbation():
    # with flat weights (2 on the seed, 1 elsewhere) configuration (b) keeps
    # a margin of at least one: the exchanged side contributes three
    for frame in canonical_seed_frames(6):
        flat = {
            d: Fraction(2) if d in frame.triangulation else Fraction(1)
            for d in santos_vectors(frame)
        }
        for quad in combinations(range(6), 4):
            tag, lam = flip_dependence(frame, quad)
            if tag == "b":
                margin = sum((c * flat[d] for d, c in lam.items()), Fraction(0))
                assert margin >= 1


def test_hrep_verifies_and_fan_matches():
    for m in (4, 5, 6, 7):
        for frame in canonical_seed_frames(m):
            h = santos_hrep(frame)
            rep = verify_realization(h)
            assert rep.is_simple_associahedron, rep.failures[:2]
            assert normal_fan(h, skip_verify=True).rays == santos_fan(frame).rays


def test_parallel_pairs_are_flip_pairs():
    for m in (5, 6, 7):
        for frame in canonical_seed_frames(m):
            t0 = frame.triangulation
            expected = {
                tuple(sorted((d, flip(t0, d)[1]))) for d in t0.diagonals
            }
            assert parallel_pairs(santos_fan(frame)) == expected


def test_three_seed_classes_pairwise_distinct_n3():
    frames = canonical_seed_frames(6)
    assert len(frames) == 3
    from assocfans.realization import fans_linearly_isomorphic

    fans = [santos_fan(f) for f in frames]
    for i in range(3):
        for j in range(i + 1, 3):
            assert fans_linearly_isomorphic(fans[i], fans[j]) is None


def test_completeness_sampling():
    for frame in canonical_seed_frames(6):
        report = sample_completeness(santos_fan(frame), num_points=500)
        assert report.ok


def test_b_set_pentagon():
    t = Triangulation(5, [(0, 2), (0, 3)])
    assert len(b_set(t)) == 4


def test_b_set_injective():
    for m in (5, 6, 7, 8, 9):
        tris = enumerate_triangulations(m)
        assert len({b_set(t) for t in tris}) == len(tris)


def test_b_set_with_pairing_determines_triangulation():
    # the bare set contains several triangulations (parallel-flip variants);
    # adding the flip pairing - the parallel-pair structure of the fan -
    # pins the seed uniquely
    for m in (5, 6, 7, 8):
        for t in enumerate_triangulations(m):
            bt = b_set(t)
            pairing = {tuple(sorted((d, flip(t, d)[1]))) for d in t.diagonals}
            matches = [
                t2
                for t2 in enumerate_triangulations(m)
                if set(t2.diagonals) <= bt
                and {
                    tuple(sorted((d, flip(t2, d)[1]))) for d in t2.diagonals
                } == pairing
            ]
            assert matches == [t]


def test_dual_tree_equivalence_examples():
    path1 = Triangulation(6, [(0, 2), (0, 3), (0, 4)])
    path2 = Triangulation(6, [(0, 2), (0, 3), (3, 5)])
    assert dual_tree_normal_equiv(path1, path2)
    assert not dual_tree_normal_equiv(HEXAGON_STAR, path2)


def test_dual_tree_equivalence_matches_vector_sets():
    # tree-isomorphic seeds have the same vector multiset up to a coordinate
    # permutation, and non-isomorphic ones never do
    from itertools import permutations

    for m in (5, 6, 7, 8):
        tris = list(enumerate_triangulations(m))
        n = m - 3

        def vecset_invariant(t):
            vs = [
                tuple(int(e) for e in v.entries)
                for v in santos_vectors(make_seed_frame(t)).values()
            ]
            best = None
            for perm in permutations(range(n)):
                cand = tuple(
                    sorted(tuple(v[perm[i]] for i in range(n)) for v in vs)
                )
                best = cand if best is None or cand < best else best
            return best

        invariants = {t: vecset_invariant(t) for t in tris}
        codes = {t: dual_tree(t).canonical_code() for t in tris}
        for i, t1 in enumerate(tris):
            for t2 in tris[i + 1:]:
                same_tree = codes[t1] == codes[t2]
                assert same_tree == (invariants[t1] == invariants[t2]), (t1, t2)


def test_seed_frame_validates_order():
    with pytest.raises(RealizationError):
        SeedFrame(HEXAGON_STAR, ((0, 2), (2, 4)))
