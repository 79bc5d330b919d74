"""Directional visibility, near-obstacle node harvesting and the biased sampler.

Every node carries the distance it can "see" along the direction of its
incoming edge. Rays cast while steering leave behind fail nodes just short
of the obstacle they hit. Once a first solution exists the sampler spends a
fraction ``lambda_s`` of its draws in a cube around a fail node, preferring
(with probability ``lambda_i``) the one whose neighbourhood has high mean
visibility and few tree nodes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import World, ray_cast, unit
from .tree import Tree


class Rng:
    """Seeded stream with the two draw primitives the planner uses."""

    def __init__(self, seed: int):
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def uniform01(self) -> float:
        return float(self._gen.random())

    def uniform_in(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        # one draw per axis, axis order
        return self._gen.uniform(lo, hi)


@dataclass
class SamplerParams:
    lambda_s: float = 0.0
    lambda_i: float = 0.0
    goal_bias: float = 0.05
    eta: float = 0.5
    r_f: float = 0.75
    m: float = 1.0
    v_max: float = 1.0

    def __post_init__(self):
        for name in ("lambda_s", "lambda_i", "goal_bias"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        for name in ("eta", "r_f", "v_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.m < 0:
            raise ValueError("m must be non-negative")


@dataclass
class FailNode:
    config: np.ndarray
    importance: float = 0.0
    created_at: int = 0


@dataclass
class FailSet:
    rho_fail: float
    items: list[FailNode] = field(default_factory=list)
    _configs: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def configs(self) -> np.ndarray:
        if self._configs is None or self._configs.shape[0] != len(self.items):
            self._configs = np.array([f.config for f in self.items]).reshape(len(self.items), -1)
        return self._configs

    @property
    def importances(self) -> np.ndarray:
        return np.array([f.importance for f in self.items])


def compute_dir_vis(t: Tree, i: int, w: World) -> None:
    if i == 0:
        t.set_vis(0, t.v_max)
        return
    u = unit(t.config(i) - t.config(t.parent(i)))
    t._dirs[i] = u
    dist, _ = ray_cast(t.config(i), u, w)
    t.set_vis(i, min(dist, t.v_max))


def update_visibility(t: Tree, x_new: int, rewired: list[int], w: World) -> None:
    compute_dir_vis(t, x_new, w)
    for i in rewired:
        compute_dir_vis(t, i, w)


def get_xfail(x_nearest, x_new, w: World, eps_c: float) -> np.ndarray | None:
    """Last collision-free point before the steering ray hits an obstacle.

    Casting from ``x_nearest`` is equivalent to marching on from ``x_new``
    since both lie on the same ray. Rays that leave the workspace without
    touching an obstacle yield nothing.
    """
    x_nearest = np.asarray(x_nearest, dtype=float)
    u = unit(np.asarray(x_new, dtype=float) - x_nearest)
    dist, hit = ray_cast(x_nearest, u, w)
    if not hit or dist <= eps_c:
        return None
    return x_nearest + (dist - eps_c) * u


def add_xfail(candidate, fs: FailSet, created_at: int = 0) -> bool:
    candidate = np.asarray(candidate, dtype=float)
    if len(fs):
        d = np.sqrt(((fs.configs - candidate) ** 2).sum(axis=1)).min()
        if d < fs.rho_fail:
            return False
    fs.items.append(FailNode(candidate, 0.0, created_at))
    return True


def importance_of(f: FailNode, t: Tree, p: SamplerParams) -> float:
    dist = np.sqrt(((t.configs - f.config) ** 2).sum(axis=1))
    inside = dist <= p.r_f
    count = int(inside.sum())
    mean_vis = float(t.vis[inside].mean()) if count else p.v_max
    return mean_vis / (count + 1) ** p.m


def update_importance(fs: FailSet, x_new: int, rewired: list[int], t: Tree, p: SamplerParams) -> list[int]:
    """Refresh importance of fail nodes whose ball saw a node added or re-aimed.

    Returns the indices of the fail nodes that were recomputed.
    """
    if not len(fs):
        return []
    touched = t.configs[[x_new, *rewired]]
    d2 = ((fs.configs[:, None, :] - touched[None, :, :]) ** 2).sum(axis=2)
    hit = np.flatnonzero((np.sqrt(d2) <= p.r_f).any(axis=1)).tolist()
    for k in hit:
        fs.items[k].importance = importance_of(fs.items[k], t, p)
    return hit


def select_fail_node(fs: FailSet, rng: Rng, lambda_i: float) -> FailNode:
    if not len(fs):
        raise RuntimeError("cannot select from an empty fail set")
    coin = rng.uniform01()
    if coin < lambda_i:
        # argmax returns the earliest-added node on ties
        return fs.items[int(np.argmax(fs.importances))]
    k = min(int(rng.uniform01() * len(fs)), len(fs) - 1)
    return fs.items[k]


def sample_around_fail(f: FailNode, rng: Rng, eta: float, w: World) -> np.ndarray:
    lo = np.maximum(f.config - eta, w.bounds.lo)
    hi = np.minimum(f.config + eta, w.bounds.hi)
    return rng.uniform_in(lo, hi)


def draw_sample(first_found: bool, fs: FailSet, rng: Rng, p: SamplerParams, w: World, goal_center) -> np.ndarray:
    """Uniform (goal-biased) sampling until a solution exists, then mix in fail regions.

    The branch coin is drawn on every call after the first solution even when
    the fail set is empty, so the random stream does not depend on fail-set
    bookkeeping.
    """
    if first_found:
        coin = rng.uniform01()
        if coin < p.lambda_s and len(fs):
            f = select_fail_node(fs, rng, p.lambda_i)
            return sample_around_fail(f, rng, p.eta, w)
    if p.goal_bias > 0 and rng.uniform01() < p.goal_bias:
        return np.array(goal_center, dtype=float)
    return rng.uniform_in(w.bounds.lo, w.bounds.hi)
