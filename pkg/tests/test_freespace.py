import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frechet_range import Curve, Interval, cell_boundaries, decide_standard, lb_frechet, propagate_cell
from frechet_range.freespace import CellBoundaries, distance_upper_bound, estimate_distance
from frechet_range.fuzz import corpus, tent_pair
from frechet_range.geometry import EMPTY

from oracles import cell_reach_grid, discrete_frechet, max_edge, subdivide

small = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
pt = st.tuples(small, small)
short_curves = st.lists(pt, min_size=2, max_size=6)


# cell_boundaries

def test_cell_of_identical_segments_at_zero():
    seg = Curve([(0, 0), (1, 0)])
    cb = cell_boundaries(seg, seg, 1, 1, 0)
    assert cb == CellBoundaries(Interval(0, 0), Interval(0, 0), Interval(1, 1), Interval(1, 1))


def test_cell_of_distant_segments_is_empty():
    cb = cell_boundaries(Curve([(0, 0), (1, 0)]), Curve([(0, 5), (1, 5)]), 1, 1, 1)
    assert all(side.is_empty for side in (cb.left, cb.bottom, cb.right, cb.top))


def test_parallel_offset_segments_touch_only_at_corners():
    # the segments are 1 apart only at vertically aligned points, so a side with
    # a fixed vertex is free at a single parameter
    pi = Curve([(0, 0), (2, 0)])
    sigma = Curve([(0, 1), (2, 1)])
    cb = cell_boundaries(pi, sigma, 1, 1, 1.0)
    assert cb.left == Interval(0, 0)
    assert cb.bottom == Interval(0, 0)
    assert cb.right == Interval(1, 1)
    assert cb.top == Interval(1, 1)
    # predicate at the endpoints of the free points and just inside the sides
    assert math.dist((0, 0), (0, 1)) <= 1 and math.dist((2, 0), (2, 1)) <= 1
    assert math.dist((0.02, 0), (0, 1)) > 1


def test_cell_sides_orientation():
    # left/right: sigma vertex fixed, pi edge varies; bottom/top: the reverse
    pi = Curve([(0, 0), (4, 0)])
    sigma = Curve([(1, 0), (1, 10)])
    cb = cell_boundaries(pi, sigma, 1, 1, 1.0)
    assert cb.left == Interval(0, 0.5)          # pi against sigma_1 = (1, 0)
    assert cb.right.is_empty                    # pi against sigma_2 = (1, 10)
    assert cb.bottom == Interval(0, 0)          # sigma grazes pi_1 = (0, 0)
    assert cb.top.is_empty                      # sigma against pi_2 = (4, 0)


@pytest.mark.parametrize("i,j", [(0, 1), (2, 1), (1, 0), (1, 3)])
def test_cell_index_out_of_range(i, j):
    with pytest.raises(IndexError):
        cell_boundaries(Curve([(0, 0), (1, 0)]), Curve([(0, 0), (1, 0), (2, 0)]), i, j, 1)


@settings(max_examples=200)
@given(short_curves, short_curves, st.floats(0, 10), st.data())
def test_cell_sides_satisfy_predicate(a, b, delta, data):
    pi, sigma = Curve(a), Curve(b)
    i = data.draw(st.integers(1, len(pi) - 1))
    j = data.draw(st.integers(1, len(sigma) - 1))
    cb = cell_boundaries(pi, sigma, i, j, delta)
    p0, p1 = np.array(pi.vertex(i)), np.array(pi.vertex(i + 1))
    s0, s1 = np.array(sigma.vertex(j)), np.array(sigma.vertex(j + 1))
    sides = [(cb.left, p0, p1, s0), (cb.right, p0, p1, s1),
             (cb.bottom, s0, s1, p0), (cb.top, s0, s1, p1)]
    for iv, a0, a1, c in sides:
        if iv.is_empty:
            continue
        for lam in (iv.lo, iv.hi):
            assert np.hypot(*((1 - lam) * a0 + lam * a1 - c)) <= delta + 1e-9


# propagate_cell

FULLISH = CellBoundaries(Interval(0, 1), Interval(0, 1), Interval(0.3, 0.9), Interval(0.1, 0.7))


def test_propagate_nothing_reachable():
    assert propagate_cell(EMPTY, EMPTY, FULLISH) == (EMPTY, EMPTY)


def test_propagate_bottom_entry_unlocks_right():
    right, _ = propagate_cell(EMPTY, Interval(0, 1), FULLISH)
    assert right == Interval(0.3, 0.9)


def test_propagate_left_entry_is_monotone():
    bounds = CellBoundaries(Interval(0.4, 0.9), EMPTY, Interval(0.2, 0.6), EMPTY)
    right, top = propagate_cell(Interval(0.5, 0.8), EMPTY, bounds)
    assert right == Interval(0.5, 0.6)
    assert top.is_empty


def test_propagate_left_entry_above_right_is_dead():
    bounds = CellBoundaries(Interval(0.7, 0.9), EMPTY, Interval(0.2, 0.6), EMPTY)
    right, _ = propagate_cell(Interval(0.7, 0.8), EMPTY, bounds)
    assert right.is_empty


def _cell(a0, a1, b0, b1):
    return Curve([a0, a1]), Curve([b0, b1])


def _check_against_grid(a0, a1, b0, b1, delta, left, bottom, res=401):
    pi, sigma = _cell(a0, a1, b0, b1)
    cb = cell_boundaries(pi, sigma, 1, 1, delta)
    reach_left = Interval(max(left[0], cb.left.lo), min(left[1], cb.left.hi)) if left else EMPTY
    reach_bottom = Interval(max(bottom[0], cb.bottom.lo), min(bottom[1], cb.bottom.hi)) if bottom else EMPTY
    if reach_left.is_empty:
        reach_left = EMPTY
    if reach_bottom.is_empty:
        reach_bottom = EMPTY
    right, top = propagate_cell(reach_left, reach_bottom, cb)
    g_right, g_top = cell_reach_grid(a0, a1, b0, b1, delta, left, bottom, res)
    h = 1.0 / (res - 1)
    for iv, grid in ((right, g_right), (top, g_top)):
        if len(grid):
            assert not iv.is_empty
            assert iv.lo <= grid.min() + 1e-9 and grid.max() <= iv.hi + 1e-9
        fat = all(r.is_empty or r.hi - r.lo > 4 * h for r in (reach_left, reach_bottom))
        if fat and not iv.is_empty and iv.hi - iv.lo > 4 * h:
            # a grid this fine must see a clearly reachable interval
            assert len(grid) and grid.min() <= iv.lo + 2 * h and grid.max() >= iv.hi - 2 * h
    return right, top


def test_propagate_left_entry_matches_grid_search():
    # free sides: left [0.5, 0.9], right [0.2, 0.6]; entering on [0.5, 0.8]
    pi, sigma = _cell((0, 0), (0, 10), (1.5, 7), (1.5, 4))
    cb = cell_boundaries(pi, sigma, 1, 1, 2.5)
    assert (cb.left.lo, cb.left.hi) == pytest.approx((0.5, 0.9))
    assert (cb.right.lo, cb.right.hi) == pytest.approx((0.2, 0.6))
    right, _ = _check_against_grid((0, 0), (0, 10), (1.5, 7), (1.5, 4), 2.5, (0.5, 0.8), None)
    assert (right.lo, right.hi) == pytest.approx((0.5, 0.6))


@settings(max_examples=60, deadline=None)
@given(pt, pt, pt, pt, st.floats(0.1, 15),
       st.one_of(st.none(), st.tuples(st.floats(0, 1), st.floats(0, 1)).map(sorted)),
       st.one_of(st.none(), st.tuples(st.floats(0, 1), st.floats(0, 1)).map(sorted)))
def test_propagate_matches_grid_search(a0, a1, b0, b1, delta, left, bottom):
    _check_against_grid(a0, a1, b0, b1, delta, left, bottom, res=201)


@given(short_curves, short_curves, st.floats(0, 10), st.floats(0, 1), st.floats(0, 1), st.data())
def test_propagate_outputs_are_subsets(a, b, delta, x, y, data):
    pi, sigma = Curve(a), Curve(b)
    cb = cell_boundaries(pi, sigma, 1, 1, delta)
    rl = cb.left if data.draw(st.booleans()) else EMPTY
    rb = Interval(max(cb.bottom.lo, min(x, y)), cb.bottom.hi) if data.draw(st.booleans()) else EMPTY
    if rb.is_empty:
        rb = EMPTY
    right, top = propagate_cell(rl, rb, cb)
    assert right.issubset(cb.right) and top.issubset(cb.top)


# decide_standard

def test_identical_curves_at_zero(backend):
    c = Curve([(0, 0), (1, 2), (3, 1), (3, 1), (0, 5)])
    assert decide_standard(c, c, 0, backend)


def test_tent_at_apex_height(backend):
    seg, tent = tent_pair(0.3)
    assert decide_standard(seg, tent, 0.3, backend)
    assert not decide_standard(seg, tent, 0.29, backend)


def test_tent_against_discrete_brute_force():
    seg, tent = tent_pair(0.3)
    p = subdivide(list(zip(seg.xs, seg.ys)), 1000)
    q = subdivide(list(zip(tent.xs, tent.ys)), 1000)
    d = discrete_frechet(p, q)
    slack = max(max_edge(p), max_edge(q))
    assert 0.3 <= d + 1e-12 <= 0.3 + slack + 1e-12
    assert estimate_distance(seg, tent) == pytest.approx(d, abs=slack)


def test_start_points_too_far(backend):
    pi = Curve([(0, 0), (5, 5)])
    sigma = Curve([(1, 0), (5, 5)])
    assert not decide_standard(pi, sigma, 0.99, backend)


def test_end_points_too_far(backend):
    assert not decide_standard(Curve([(0, 0), (5, 5)]), Curve([(0, 0), (5, 6)]), 0.99, backend)


def test_collinear_and_blocked(backend):
    # collinear curves match at zero; bending pi's end puts it out of reach
    pi = Curve([(0, 0), (4, 0), (4.5, 0)])
    sigma = Curve([(0, 0), (4.5, 0)])
    assert decide_standard(pi, sigma, 0.0, backend)
    assert decide_standard(Curve([(0, 0), (4, 0), (4.5, 1)]), sigma, 0.5, backend) is False


def test_backtracking_costs_half_the_detour(backend):
    # going forward to 2 and back to 1 forces a leash of 0.5
    pi = Curve([(0, 0), (2, 0), (1, 0), (3, 0)])
    sigma = Curve([(0, 0), (3, 0)])
    assert decide_standard(pi, sigma, 0.5, backend)
    assert not decide_standard(pi, sigma, 0.4999, backend)


def _random_curves(rng, k, max_vertices=8):
    n = int(rng.integers(2, max_vertices + 1))
    return rng.uniform(0, 10, size=(n, 2)) if k % 2 else rng.normal(size=(n, 2)).cumsum(axis=0)


def test_against_subdivided_discrete_distance():
    rng = np.random.default_rng(7)
    for k in range(40):
        a, b = _random_curves(rng, k), _random_curves(rng, k + 1)
        pi, sigma = Curve(a), Curve(b)
        est = estimate_distance(pi, sigma)
        p, q = subdivide(a, 200), subdivide(b, 200)
        d = discrete_frechet(p, q)
        slack = max(max_edge(p), max_edge(q))
        assert est <= d + 1e-9
        assert d <= est + slack + 1e-9


@settings(max_examples=80, deadline=None)
@given(short_curves, short_curves, st.floats(0, 30), st.floats(0, 30))
def test_monotone_in_delta(a, b, d1, d2):
    pi, sigma = Curve(a), Curve(b)
    lo, hi = sorted((d1, d2))
    if decide_standard(pi, sigma, lo):
        assert decide_standard(pi, sigma, hi)


def test_symmetry_and_lower_bound_on_corpus(backend):
    for t in corpus(3, 150):
        fwd = decide_standard(t.pi, t.sigma, t.delta, backend)
        assert fwd == decide_standard(t.sigma, t.pi, t.delta, backend)
        if fwd:
            assert lb_frechet(t.pi.summary, t.sigma.summary) <= t.delta


def test_reversal_invariance():
    rng = np.random.default_rng(11)
    for _ in range(100):
        pi = Curve(rng.normal(size=(int(rng.integers(2, 12)), 2)).cumsum(axis=0))
        sigma = Curve(rng.normal(size=(int(rng.integers(2, 12)), 2)).cumsum(axis=0))
        d = estimate_distance(pi, sigma)
        for f in (0.99, 1.01):
            assert decide_standard(pi, sigma, f * d) == decide_standard(
                pi.reversed(), sigma.reversed(), f * d)


def test_upper_bound_is_accepted():
    rng = np.random.default_rng(5)
    for _ in range(50):
        pi = Curve(rng.uniform(-5, 5, size=(6, 2)))
        sigma = Curve(rng.uniform(-5, 5, size=(9, 2)))
        assert decide_standard(pi, sigma, distance_upper_bound(pi, sigma))


@pytest.mark.parametrize("h", [0.1, 0.3, 1.0, 7.5])
def test_tent_distance_estimate(h):
    seg, tent = tent_pair(h)
    assert estimate_distance(seg, tent) == pytest.approx(h, rel=1e-6)
