"""Independent reference implementations used by the test-suite.

None of these call the slab code, the incremental bookkeeping or the
vectorised scans they check.
"""
import math

import numpy as np

from rrtldv.geometry import HyperRect, World


def inside_box(p, lo, hi):
    return all(l <= x <= h for x, l, h in zip(p, lo, hi))


def free_by_membership(p, w: World):
    if not inside_box(p, w.bounds.lo, w.bounds.hi):
        return False
    return not any(inside_box(p, b.lo, b.hi) for b in w.obstacles)


def march_ray(origin, u, w: World, step=1e-3, chunk=2048):
    """First marched distance at which the ray leaves free space, and whether
    that is an obstacle (vs the bounds)."""
    origin = np.asarray(origin, float)
    u = np.asarray(u, float)
    k0 = 1
    while True:
        ts = step * np.arange(k0, k0 + chunk)
        pts = origin + ts[:, None] * u
        out = np.any((pts < w.bounds.lo) | (pts > w.bounds.hi), axis=1)
        hit = np.zeros(len(ts), dtype=bool)
        for b in w.obstacles:
            hit |= np.all((pts >= b.lo) & (pts <= b.hi), axis=1)
        stop = np.flatnonzero(out | hit)
        if stop.size:
            k = stop[0]
            return float(ts[k]), bool(hit[k])
        k0 += chunk


def dense_segment_free(a, b, w: World, step=1e-3):
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    length = float(np.linalg.norm(b - a))
    n = max(2, int(math.ceil(length / step)) + 1)
    s = np.linspace(0.0, 1.0, n)
    pts = a + s[:, None] * (b - a)
    for box in w.obstacles:
        if np.all((pts >= box.lo) & (pts <= box.hi), axis=1).any():
            return False
    return True


def linear_nearest(configs, q):
    best, best_d = None, math.inf
    for i, c in enumerate(configs):
        d = math.dist(c, q)
        if d < best_d:
            best, best_d = i, d
    return best


def linear_near(configs, q, r):
    return [i for i, c in enumerate(configs) if math.dist(c, q) <= r]


def brute_importances(fail_configs, node_configs, node_vis, r_f, m, v_max):
    """Importance of every fail node from scratch (full distance matrix)."""
    f = np.asarray(fail_configs, float).reshape(len(fail_configs), -1)
    x = np.asarray(node_configs, float)
    vis = np.asarray(node_vis, float)
    dist = np.linalg.norm(f[:, None, :] - x[None, :, :], axis=2)
    out = []
    for row in dist <= r_f:
        k = int(row.sum())
        mean = vis[row].sum() / k if k else v_max
        out.append(mean / (k + 1) ** m)
    return out


def random_world(rng: np.random.Generator, dim=2, n_obs=(2, 6), size=10.0) -> World:
    lo = np.zeros(dim)
    hi = np.full(dim, size)
    boxes = []
    for _ in range(rng.integers(*n_obs, endpoint=True)):
        c = rng.uniform(0, size, dim)
        half = rng.uniform(0.3, 1.8, dim)
        boxes.append(HyperRect(np.maximum(c - half, -0.5), np.minimum(c + half, size + 0.5)))
    return World(HyperRect(lo, hi), tuple(boxes))


def random_free_point(rng, w: World, margin=0.0):
    while True:
        q = rng.uniform(w.bounds.lo + margin, w.bounds.hi - margin)
        if free_by_membership(q, w):
            return q


def audit_planner(p, tol=1e-9):
    """Full-state audit after an iteration; raises AssertionError on the first violation."""
    from rrtldv.geometry import obstacle_distance, point_free, ray_cast

    t, w = p.tree, p.world
    n = len(t)
    # one root, every node reached exactly once from it, children mirror parents
    assert t.parent(0) is None
    seen, stack = set(), [0]
    while stack:
        i = stack.pop()
        assert i not in seen, "cycle"
        seen.add(i)
        for c in t.children[i]:
            assert t.parent(c) == i, f"children/parent mismatch at {c}"
            stack.append(c)
    assert len(seen) == n, "unreachable nodes"
    assert sum(len(c) for c in t.children) == n - 1

    for i in range(1, n):
        par = t.parent(i)
        edge = math.dist(t.config(i), t.config(par))
        assert abs(t.cost(i) - (t.cost(par) + edge)) <= tol, f"cost recursion broken at {i}"
        u = (t.config(i) - t.config(par)) / edge
        assert np.allclose(t.direction(i), u, atol=tol, rtol=0), f"dir stale at {i}"
        if p.ldv:
            vis, _ = ray_cast(t.config(i), u, w)
            assert abs(t.vis[i] - vis) <= tol, f"vis stale at {i}"
    assert t.vis[0] == p.v_max

    if p.ldv and len(p.fail_set):
        fs = p.fail_set
        c = fs.configs
        for k in range(len(c)):
            assert point_free(c[k], w), "fail node in collision"
            assert obstacle_distance(c[k], w) <= p.params.eta + tol
            for j in range(k):
                assert math.dist(c[k], c[j]) >= fs.rho_fail - tol, "fail set too dense"
        expect = brute_importances(c, t.configs, t.vis, p.sp.r_f, p.sp.m, p.v_max)
        got = fs.importances
        assert np.allclose(got, expect, atol=tol, rtol=0), "stored importance differs from recompute"


def audit_local_optimality(p, tol=1e-9):
    """No single swap between x_new and this iteration's neighbours helps by more than tol."""
    from rrtldv.geometry import segment_free

    if p.last_new is None:
        return
    t, new = p.tree, p.last_new
    for c in p.last_near:
        if t.parent(c) == new or not segment_free(t.config(c), t.config(new), p.world):
            continue
        d = math.dist(t.config(c), t.config(new))
        assert t.cost(new) + d >= t.cost(c) - tol, f"missed rewire of {c}"
        assert t.cost(c) + d >= t.cost(new) - tol, f"better parent {c} for x_new"
