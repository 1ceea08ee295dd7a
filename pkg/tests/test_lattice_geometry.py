import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fanocox.lattice_geometry import (
    NotPointed, LatticePolytope, ZERO_CONE, cone_contains, cone_hull, cone_intersect, det2,
    elementary_divisors, fiber_points, generates_group, interior_count, is_dolgachev,
    lattice_index, positive_functional, ray, wedge,
)

from oracles import box_fiber, ehrhart_at, generates_by_minors, simplex_counts

small = st.integers(-4, 4)
vec = st.tuples(small, small)


def test_det2_examples():
    assert det2((1, 0), (0, 1)) == 1
    assert det2((1, 1), (2, 3)) == 1
    assert det2((2, 1), (4, 2)) == 0


def test_generates_group_examples():
    assert generates_group([(1, 0), (0, 1)])
    assert not generates_group([(2, 0), (0, 1)])
    assert generates_group([(1, 1), (1, -1), (1, 0)])
    assert lattice_index([(2, 0), (0, 1)]) == 2
    assert elementary_divisors([[1, 1, 1], [1, -1, 0]]) == [1, 1]


@given(st.lists(vec, min_size=1, max_size=5))
def test_generates_group_matches_minors(vs):
    assert generates_group(vs) == generates_by_minors(vs)


def test_cone_hull_examples():
    assert cone_hull([(1, 0), (1, 1), (0, 1)]) == wedge((1, 0), (0, 1))
    assert cone_hull([]) == ZERO_CONE
    with pytest.raises(NotPointed):
        cone_hull([(1, 0), (-1, 0)])
    assert cone_hull([(2, 4)]) == ray((1, 2))


def test_cone_operations_examples():
    assert cone_intersect(wedge((1, 0), (1, 1)), wedge((1, 1), (0, 1))) == ray((1, 1))
    assert cone_contains(wedge((1, 0), (0, 1)), (1, 1), strict=True)
    assert cone_contains(ray((1, 0)), (2, 0), strict=True)
    assert not cone_contains(ray((1, 0)), (0, 0), strict=True)
    assert cone_contains(ray((1, 0)), (0, 0))
    assert not cone_contains(wedge((1, 0), (0, 1)), (1, 0), strict=True)


def _salient(vs):
    try:
        cone_hull(vs)
        return True
    except NotPointed:
        return False


@given(st.lists(vec, min_size=1, max_size=5), st.randoms())
def test_cone_hull_idempotent_and_order_free(vs, rnd):
    if not _salient(vs):
        return
    c = cone_hull(vs)
    assert cone_hull(list(c.generators)) == c
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    assert cone_hull(shuffled) == c
    for v in vs:
        assert cone_contains(c, v)


@given(vec, vec, vec, vec, vec, vec)
def test_cone_intersect_laws(a, b, c, d, e, f):
    cones = []
    for u, v in ((a, b), (c, d), (e, f)):
        if not _salient([u, v]):
            return
        cones.append(cone_hull([u, v]))
    x, y, z = cones
    assert cone_intersect(x, y) == cone_intersect(y, x)
    assert cone_intersect(cone_intersect(x, y), z) == cone_intersect(x, cone_intersect(y, z))
    assert cone_intersect(x, cone_hull(list(x.generators))) == x
    # absorbed by containment
    xy = cone_intersect(x, y)
    assert cone_intersect(xy, x) == xy


# ---------------------------------------------------------------------------
# fiber points

def test_fiber_points_examples(ref):
    assert len(fiber_points(ref.row(1).data.Q, (1, 1))) == 12
    assert len(fiber_points(ref.row(9).data.Q, (2, 1))) == 40
    zero = fiber_points(ref.row(9).data.Q, (0, 0))
    assert zero.tolist() == [[0] * 7]


def test_fiber_points_not_pointed():
    with pytest.raises(NotPointed):
        fiber_points(np.array([[1, -1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 1]]), (0, 1))


@pytest.mark.parametrize("k", [1, 9, 16, 47, 58])
def test_fiber_points_match_box_scan_on_rows(ref, k):
    d = ref.row(k).data
    kappa = positive_functional(d.columns)
    for w in [d.mu, d.anticanonical, (d.mu[0] + d.anticanonical[0], d.mu[1] + d.anticanonical[1])]:
        got = sorted(map(tuple, fiber_points(d.Q, w).tolist()))
        assert got == sorted(box_fiber(d.columns, w, kappa))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 3), st.integers(1, 3)), min_size=3, max_size=5),
       st.tuples(st.integers(-3, 6), st.integers(0, 6)))
def test_fiber_points_match_box_scan(cols, w):
    cols = [(1, 0)] + cols
    Q = np.array([[c[0] for c in cols], [c[1] for c in cols]])
    kappa = positive_functional(cols)
    got = sorted(map(tuple, fiber_points(Q, w).tolist()))
    assert got == sorted(box_fiber(cols, w, kappa))


# ---------------------------------------------------------------------------
# interior points and Ehrhart reciprocity

def test_interior_count_examples():
    square = LatticePolytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert interior_count(square, 1) == 0
    assert interior_count(square, 3) == 4
    tri = LatticePolytope.from_points([(0, 0), (1, 0), (0, 1)])
    assert interior_count(tri, 3) == 1
    # counted in the lattice of the affine hull
    seg = LatticePolytope.from_points([(0, 0, 1), (2, 2, 1)])
    assert interior_count(seg, 1) == 1
    assert interior_count(seg, 3) == 5


def _random_simplex(rng, dim):
    while True:
        pts = [tuple(rng.randint(-2, 3) for _ in range(dim)) for _ in range(dim + 1)]
        M = [[p[i] - pts[0][i] for i in range(dim)] for p in pts[1:]]
        if round(abs(np.linalg.det(np.array(M, dtype=float)))) > 0:
            return pts


@pytest.mark.parametrize("seed", range(12))
def test_ehrhart_reciprocity(seed):
    rng = random.Random(seed)
    dim = 2 + seed % 2
    pts = _random_simplex(rng, dim)
    P = LatticePolytope.from_points(pts)
    counts = [simplex_counts(pts, t)[0] for t in range(dim + 1)]
    assert [P.count(t) for t in range(1, dim + 1)] == counts[1:]
    for j in (1, 2, 3):
        expected = (-1) ** dim * ehrhart_at(counts, -j)
        assert interior_count(P, j) == expected == simplex_counts(pts, j)[1]


# ---------------------------------------------------------------------------
# Dolgachev polytopes

def test_dolgachev_examples(ref):
    d12 = ref.row(12).data
    assert is_dolgachev(fiber_points(d12.Q, (1, 2)))
    cube = [p + (0, 0, 0, 0) for p in itertools.product((0, 1), repeat=3)]
    assert not is_dolgachev(np.array(cube))


def test_dolgachev_row1(ref):
    # product of a 3-simplex and a 2-simplex: smooth normal fan, hits every hyperplane
    assert is_dolgachev(fiber_points(ref.row(1).data.Q, (1, 1)))


# ---------------------------------------------------------------------------
# two lattice lemmas, exhaustively on a box

BOX = [v for v in itertools.product(range(-3, 4), repeat=2) if v != (0, 0)]
PRIM = [v for v in BOX if np.gcd(*v) == 1]


def test_two_multiples_of_one_vector():
    for u in BOX:
        for w in PRIM:
            for a1, a2 in itertools.product(range(-3, 4), repeat=2):
                vs = [u, (a1 * w[0], a1 * w[1]), (a2 * w[0], a2 * w[1])]
                if generates_group(vs):
                    assert abs(det2(u, w)) == 1
                    assert np.gcd(*u) == 1


def test_four_unit_determinants():
    box = [v for v in itertools.product(range(-2, 3), repeat=2) if v != (0, 0)]
    ones = {(a, b) for a in box for b in box if det2(a, b) == 1}
    for w1, w3 in ones:
        for w4 in box:
            if (w1, w4) not in ones:
                continue
            for w2 in box:
                if (w2, w3) in ones and (w2, w4) in ones:
                    assert w1 == w2 or w3 == w4
