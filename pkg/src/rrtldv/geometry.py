"""Exact collision and ray queries against axis-aligned box obstacles.

Obstacles are closed boxes, so a point on an obstacle face is in collision.
Everything is analytic (slab method); nothing here samples along segments.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def as_config(q, dim: int | None = None) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.ndim != 1:
        raise ValueError(f"configuration must be a flat vector, got shape {q.shape}")
    if dim is not None and q.shape[0] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {q.shape[0]}")
    if not np.all(np.isfinite(q)):
        raise ValueError("configuration has non-finite coordinates")
    return q


@dataclass(frozen=True)
class HyperRect:
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = as_config(self.lo)
        hi = as_config(self.hi, lo.shape[0])
        if np.any(lo >= hi):
            axis = int(np.argmax(lo >= hi))
            raise ValueError(f"degenerate obstacle: lo >= hi on axis {axis}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return self.lo.shape[0]

    def contains(self, q) -> bool:
        q = np.asarray(q, dtype=float)
        return bool(np.all(q >= self.lo) and np.all(q <= self.hi))


@dataclass(frozen=True)
class World:
    """Bounded workspace with box obstacles.

    Obstacle corners are stacked into ``(k, d)`` arrays so every query is a
    single vectorised pass over all boxes.
    """

    bounds: HyperRect
    obstacles: tuple[HyperRect, ...] = ()
    _lo: np.ndarray = field(init=False, repr=False, compare=False)
    _hi: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        obstacles = tuple(self.obstacles)
        d = self.bounds.dim
        for k, box in enumerate(obstacles):
            if box.dim != d:
                raise ValueError(f"obstacle {k}: dimension mismatch ({box.dim} != {d})")
            if np.any(np.maximum(box.lo, self.bounds.lo) > np.minimum(box.hi, self.bounds.hi)):
                raise ValueError(f"obstacle {k} lies entirely outside the bounds")
        object.__setattr__(self, "obstacles", obstacles)
        if obstacles:
            lo = np.stack([b.lo for b in obstacles])
            hi = np.stack([b.hi for b in obstacles])
        else:
            lo = np.empty((0, d))
            hi = np.empty((0, d))
        object.__setattr__(self, "_lo", lo)
        object.__setattr__(self, "_hi", hi)

    @property
    def dim(self) -> int:
        return self.bounds.dim

    @property
    def diag(self) -> float:
        return float(np.linalg.norm(self.bounds.hi - self.bounds.lo))

    def in_bounds(self, q: np.ndarray) -> bool:
        return bool(np.all(q >= self.bounds.lo) and np.all(q <= self.bounds.hi))


def point_free(q, w: World) -> bool:
    q = as_config(q, w.dim)
    if not w.in_bounds(q):
        return False
    if len(w.obstacles) == 0:
        return True
    inside = np.all((q >= w._lo) & (q <= w._hi), axis=1)
    return not bool(inside.any())


def _slab(origin: np.ndarray, delta: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """Parametric entry/exit of the line ``origin + t*delta`` for each box.

    Returns ``(t_enter, t_exit)`` per box. Axes with ``delta == 0`` either
    contribute an unbounded slab or an empty one (``t_enter = inf``).
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / delta
        t0 = (lo - origin) * inv
        t1 = (hi - origin) * inv
    tmin = np.minimum(t0, t1)
    tmax = np.maximum(t0, t1)
    parallel = delta == 0.0
    if parallel.any():
        inside = (origin >= lo) & (origin <= hi)
        tmin = np.where(parallel, np.where(inside, -np.inf, np.inf), tmin)
        tmax = np.where(parallel, np.where(inside, np.inf, -np.inf), tmax)
    return tmin.max(axis=-1), tmax.min(axis=-1)


def segment_free(a, b, w: World) -> bool:
    a = as_config(a, w.dim)
    b = as_config(b, w.dim)
    if len(w.obstacles) == 0:
        return True
    t_in, t_out = _slab(a, b - a, w._lo, w._hi)
    hit = np.maximum(t_in, 0.0) <= np.minimum(t_out, 1.0)
    return not bool(hit.any())


def segments_free(starts: np.ndarray, b, w: World) -> np.ndarray:
    """Vectorised ``segment_free`` for many segments ending at the same point."""
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    b = as_config(b, w.dim)
    if len(w.obstacles) == 0 or starts.shape[0] == 0:
        return np.ones(starts.shape[0], dtype=bool)
    delta = (b - starts)[:, None, :]
    t_in, t_out = _slab(starts[:, None, :], delta, w._lo[None], w._hi[None])
    hit = np.maximum(t_in, 0.0) <= np.minimum(t_out, 1.0)
    return ~hit.any(axis=1)


def _bounds_exit(origin: np.ndarray, u: np.ndarray, w: World) -> float:
    with np.errstate(divide="ignore", invalid="ignore"):
        t_hi = (w.bounds.hi - origin) / u
        t_lo = (w.bounds.lo - origin) / u
    t = np.where(u > 0, t_hi, np.where(u < 0, t_lo, np.inf))
    return float(max(t.min(), 0.0))


def ray_cast(origin, direction, w: World) -> tuple[float, bool]:
    """Distance along a unit ray until it enters an obstacle or leaves the bounds.

    Returns ``(distance, hit_obstacle)``. When an obstacle face coincides
    with the bounds exit the obstacle wins.
    """
    o = as_config(origin, w.dim)
    u = as_config(direction, w.dim)
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise ValueError("zero direction vector")
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"direction must be a unit vector (norm {norm})")
    if not point_free(o, w):
        raise ValueError("ray origin is in collision or out of bounds")
    t_exit = _bounds_exit(o, u, w)
    if len(w.obstacles):
        t_in, t_out = _slab(o, u, w._lo, w._hi)
        valid = (t_in <= t_out) & (t_out >= 0.0)
        if valid.any():
            t_hit = float(t_in[valid].min())
            if t_hit <= t_exit:
                return t_hit, True
    return t_exit, False


def obstacle_distance(q, w: World) -> float:
    q = as_config(q, w.dim)
    if len(w.obstacles) == 0:
        return 2.0 * w.diag
    closest = np.clip(q, w._lo, w._hi)
    return float(np.sqrt(((q - closest) ** 2).sum(axis=1)).min())


def unit(v: np.ndarray) -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ValueError("cannot normalise a zero vector")
    return v / n
