import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rrtldv.geometry import (
    HyperRect,
    World,
    obstacle_distance,
    point_free,
    ray_cast,
    segment_free,
    segments_free,
)

from oracles import dense_segment_free, march_ray, random_free_point, random_world

SQRT2 = math.sqrt(2.0)


@pytest.mark.parametrize("q, expected", [((1, 1), True), ((6, 5), False), ((5, 2), False)])
def test_point_free_examples(w1, q, expected):
    assert point_free(q, w1) is expected


def test_point_free_outside_bounds(w1):
    assert not point_free((-0.1, 5), w1)
    assert point_free((0, 0), w1)


def test_point_free_dimension_mismatch(w1):
    with pytest.raises(ValueError, match="dimension"):
        point_free((1, 1, 1), w1)


@pytest.mark.parametrize(
    "a, b, expected",
    [((2, 5), (4, 5), True), ((2, 5), (8, 5), False), ((4, 1), (8, 1), True)],
)
def test_segment_free_examples(w1, a, b, expected):
    assert segment_free(a, b, w1) is expected


def test_segment_touching_face_is_blocked(w1):
    # closed obstacles: grazing the x=5 face counts
    assert not segment_free((3, 8), (5, 8), w1)
    assert not segment_free((4, 1), (6, 3), w1)  # passes exactly through corner (5, 2)


def test_segments_free_matches_scalar(w1):
    starts = np.array([[2, 5], [4, 1], [9, 9], [4.9, 2.5]])
    b = np.array([8.0, 5.0])
    expect = [segment_free(a, b, w1) for a in starts]
    assert segments_free(starts, b, w1).tolist() == expect


def test_ray_cast_examples(w1):
    assert ray_cast((2, 5), (1, 0), w1) == (3.0, True)
    assert ray_cast((2, 5), (-1, 0), w1) == (2.0, False)
    d, hit = ray_cast((4, 2.5), np.array([1, 1]) / SQRT2, w1)
    assert hit and d == pytest.approx(SQRT2, abs=1e-12)
    # marching oracle agrees within 2e-3
    assert abs(march_ray((4, 2.5), np.array([1, 1]) / SQRT2, w1)[0] - d) <= 2e-3


def test_ray_cast_errors(w1):
    with pytest.raises(ValueError, match="zero"):
        ray_cast((2, 5), (0, 0), w1)
    with pytest.raises(ValueError, match="collision"):
        ray_cast((6, 5), (1, 0), w1)
    with pytest.raises(ValueError, match="collision"):
        ray_cast((11, 5), (1, 0), w1)
    with pytest.raises(ValueError, match="unit"):
        ray_cast((2, 5), (2, 0), w1)


def test_obstacle_distance_examples(w1):
    assert obstacle_distance((4, 5), w1) == 1.0
    assert obstacle_distance((6, 5), w1) == 0.0
    # nearest point is the corner (5, 2); dense boundary sampling gives 1.41421356
    assert obstacle_distance((4, 1), w1) == pytest.approx(1.4142135623730951, abs=1e-12)


def test_obstacle_distance_empty_world():
    w = World(HyperRect([0, 0], [3, 4]))
    assert obstacle_distance((1, 1), w) == 10.0


def test_degenerate_box_rejected():
    with pytest.raises(ValueError, match="degenerate"):
        HyperRect([1, 0], [1, 2])


def test_world_diag(w1):
    assert w1.diag == pytest.approx(10 * SQRT2)


def test_ray_cast_matches_marching_oracle():
    rng = np.random.default_rng(11)
    for _ in range(3):
        w = random_world(rng, dim=3)
        for _ in range(30):
            o = random_free_point(rng, w)
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            d, hit = ray_cast(o, u, w)
            dm, hm = march_ray(o, u, w)
            assert abs(d - dm) <= 2e-3
            if abs(d - dm) < 1e-3:
                assert hit == hm or d < 2e-3


# property tests over random worlds ---------------------------------------------------

worlds = st.integers(0, 2**31 - 1).map(lambda s: np.random.default_rng(s))


@settings(max_examples=60, deadline=None)
@given(worlds)
def test_ray_translation_invariance(rng):
    w = random_world(rng)
    o = random_free_point(rng, w)
    u = rng.normal(size=2)
    u /= np.linalg.norm(u)
    d, hit = ray_cast(o, u, w)
    t = rng.uniform(0.05, 0.95) * d
    d2, hit2 = ray_cast(o + t * u, u, w)
    assert abs(d2 - (d - t)) <= 1e-9
    assert hit2 == hit


@settings(max_examples=60, deadline=None)
@given(worlds)
def test_segment_ray_consistency(rng):
    w = random_world(rng)
    a = random_free_point(rng, w)
    b = rng.uniform(w.bounds.lo, w.bounds.hi)
    length = float(np.linalg.norm(b - a))
    d, hit = ray_cast(a, (b - a) / length, w)
    assert segment_free(a, b, w) == (not (hit and d <= length))


@settings(max_examples=100, deadline=None)
@given(worlds)
def test_point_free_vs_obstacle_distance(rng):
    w = random_world(rng)
    q = rng.uniform(w.bounds.lo, w.bounds.hi)
    if point_free(q, w):
        assert obstacle_distance(q, w) > 0
    else:
        assert obstacle_distance(q, w) == 0


def test_segment_free_matches_dense_sampling():
    rng = np.random.default_rng(5)
    w = random_world(rng)
    for _ in range(100):
        a = rng.uniform(0, 10, 2)
        b = a + rng.normal(scale=2.0, size=2)
        b = np.clip(b, 0, 10)
        assert segment_free(a, b, w) == dense_segment_free(a, b, w)
