"""RRT* and RRT*-LDV main loop.

Both modes share one code path. In ``rrt_star`` mode the fail set, the
visibility values and the importance scores are simply not maintained and
``lambda_s`` is forced to zero; sampling consumes the random stream in
exactly the same order, so an ``ldv`` run with ``lambda_s = 0`` grows the
same tree node for node.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from . import ldv
from .geometry import World, as_config, point_free, segment_free, segments_free
from .ldv import FailSet, Rng, SamplerParams
from .tree import Tree, neighbor_radius

Mode = Literal["rrt_star", "ldv"]

COINCIDENT_TOL = 1e-12
REWIRE_TOL = 1e-12


@dataclass(frozen=True)
class GoalRegion:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_config(self.center))
        if self.radius <= 0:
            raise ValueError("goal radius must be positive")

    def contains(self, q) -> bool:
        return float(np.linalg.norm(np.asarray(q) - self.center)) <= self.radius


@dataclass
class PlannerParams:
    eta: float = 0.5
    gamma: float = 40.0
    eps_c: float = 0.05
    max_iter: int = 1500
    seed: int = 0
    mode: Mode = "ldv"
    lambda_s: float = 0.9
    lambda_i: float = 0.5
    goal_bias: float = 0.05
    m: float = 1.0
    rho_fail: float | None = None  # defaults to eta
    r_f: float | None = None  # defaults to 1.5 * eta
    label: str | None = None

    def __post_init__(self):
        if self.mode not in ("rrt_star", "ldv"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.eta <= 0 or self.gamma <= 0 or self.eps_c <= 0:
            raise ValueError("eta, gamma and eps_c must be positive")
        if self.eps_c >= self.eta:
            raise ValueError("eps_c must be smaller than eta")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.rho_fail is None:
            self.rho_fail = self.eta
        if self.r_f is None:
            self.r_f = 1.5 * self.eta
        if self.rho_fail <= 0 or self.r_f <= 0:
            raise ValueError("rho_fail and r_f must be positive")
        if self.mode == "rrt_star":
            self.lambda_s = 0.0

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.mode == "rrt_star":
            return "rrt_star"
        return f"ldv(ls={self.lambda_s:g},li={self.lambda_i:g})"

    def sampler(self, v_max: float) -> SamplerParams:
        return SamplerParams(
            lambda_s=self.lambda_s,
            lambda_i=self.lambda_i,
            goal_bias=self.goal_bias,
            eta=self.eta,
            r_f=self.r_f,
            m=self.m,
            v_max=v_max,
        )

    def with_(self, **kw) -> "PlannerParams":
        return replace(self, **kw)


@dataclass
class TraceRow:
    iteration: int
    best_cost: float | None
    n_nodes: int
    n_xfail: int
    elapsed_ns: int


@dataclass
class PlanResult:
    tree: Tree
    fail_set: FailSet
    best_path: list[np.ndarray] | None
    best_cost: float | None
    first_solution_iter: int | None
    trace: list[TraceRow] = field(default_factory=list)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(self.tree.configs.tobytes())
        h.update(self.tree.parents.tobytes())
        h.update(self.tree.costs.tobytes())
        h.update(self.fail_set.configs.tobytes())
        for row in self.trace:
            h.update(repr((row.iteration, row.best_cost, row.n_nodes, row.n_xfail)).encode())
        return h.hexdigest()


def steer(x_nearest, x_rand, eta: float) -> np.ndarray:
    x_nearest = np.asarray(x_nearest, dtype=float)
    x_rand = np.asarray(x_rand, dtype=float)
    delta = x_rand - x_nearest
    dist = float(np.linalg.norm(delta))
    if dist == 0.0:
        raise ValueError("coincident steer inputs")
    if dist <= eta:
        return x_rand.copy()
    return x_nearest + (eta / dist) * delta


def best_parent(t: Tree, x_new, near: list[int], nearest: int, w: World) -> int:
    """Cheapest collision-free parent among ``near`` and ``nearest``; lowest id wins ties."""
    cands = sorted(set(near) | {nearest})
    pts = t.configs[cands]
    through = t.costs[cands] + np.sqrt(((pts - x_new) ** 2).sum(axis=1))
    free = segments_free(pts, x_new, w)
    through = np.where(free, through, np.inf)
    if not np.isfinite(through).any():
        return nearest
    return cands[int(np.argmin(through))]


def rewire(t: Tree, x_new: int, near: list[int], w: World) -> list[int]:
    if not near:
        return []
    q = t.config(x_new)
    pts = t.configs[near]
    lengths = np.sqrt(((pts - q) ** 2).sum(axis=1))
    free = segments_free(pts, q, w)
    rewired = []
    for k, c in enumerate(near):
        # costs are read live: an earlier rewire may already have lowered c
        if free[k] and t.cost(x_new) + lengths[k] < t.cost(c) - REWIRE_TOL:
            t.set_parent(c, x_new)
            rewired.append(c)
    return rewired


def extract_best_path(t: Tree, goal: GoalRegion, goal_ids: list[int] | None = None):
    """Minimum-cost node inside the goal ball and its root path, or None."""
    if goal_ids is None:
        d = np.sqrt(((t.configs - goal.center) ** 2).sum(axis=1))
        goal_ids = np.flatnonzero(d <= goal.radius).tolist()
    if not goal_ids:
        return None
    ids = sorted(goal_ids)
    best = ids[int(np.argmin(t.costs[ids]))]
    return t.path_to(best), t.cost(best)


class Planner:
    """Stateful RRT*/RRT*-LDV search that can be advanced in chunks."""

    def __init__(self, w: World, start, goal: GoalRegion, params: PlannerParams):
        start = as_config(start, w.dim)
        if not point_free(start, w):
            raise ValueError("start in collision")
        self.world = w
        self.goal = goal
        self.params = params
        self.v_max = w.diag
        self.sp = params.sampler(self.v_max)
        self.tree = Tree(start, self.v_max, capacity=params.max_iter + 1)
        self.fail_set = FailSet(params.rho_fail)
        self.rng = Rng(params.seed)
        self.first_found = False
        self.first_solution_iter: int | None = None
        self.goal_ids: list[int] = []
        self.iteration = 0
        self.trace: list[TraceRow] = []
        self.elapsed_ns = 0
        # per-iteration details kept for audits
        self.last_near: list[int] = []
        self.last_new: int | None = None
        self.last_rewired: list[int] = []
        if goal.contains(start):
            self._mark_goal(0)

    @property
    def ldv(self) -> bool:
        return self.params.mode == "ldv"

    def _mark_goal(self, i: int) -> None:
        self.goal_ids.append(i)
        if not self.first_found:
            self.first_found = True
            self.first_solution_iter = self.iteration

    def best_cost(self) -> float | None:
        if not self.goal_ids:
            return None
        return float(self.tree.costs[self.goal_ids].min())

    def iterate(self) -> None:
        """One pass of the loop body; rejected samples still count."""
        p, w, t = self.params, self.world, self.tree
        self.iteration += 1
        self.last_near, self.last_new, self.last_rewired = [], None, []

        x_rand = ldv.draw_sample(self.first_found, self.fail_set, self.rng, self.sp, w, self.goal.center)
        i_near = t.nearest(x_rand)
        x_nearest = t.config(i_near)
        if np.linalg.norm(x_rand - x_nearest) < COINCIDENT_TOL:
            return
        x_new = steer(x_nearest, x_rand, p.eta)

        if self.ldv:
            # harvested before the collision check so failed steers still count
            cand = ldv.get_xfail(x_nearest, x_new, w, p.eps_c)
            if cand is not None and ldv.add_xfail(cand, self.fail_set, self.iteration):
                f = self.fail_set.items[-1]
                f.importance = ldv.importance_of(f, t, self.sp)

        if not (point_free(x_new, w) and segment_free(x_nearest, x_new, w)):
            return

        r = neighbor_radius(len(t), w.dim, p.gamma, p.eta)
        near = t.near(x_new, r)
        parent = best_parent(t, x_new, near, i_near, w)
        new = t.insert(x_new, parent)
        near = [i for i in near if i != parent]
        rewired = rewire(t, new, near, w)
        if self.ldv:
            ldv.update_visibility(t, new, rewired, w)
            ldv.update_importance(self.fail_set, new, rewired, t, self.sp)
        if self.goal.contains(x_new):
            self._mark_goal(new)
        self.last_near, self.last_new, self.last_rewired = near, new, rewired

    def run(self, n_iter: int) -> None:
        for _ in range(n_iter):
            t0 = time.perf_counter_ns()
            self.iterate()
            self.elapsed_ns += time.perf_counter_ns() - t0
            self.trace.append(
                TraceRow(self.iteration, self.best_cost(), len(self.tree), len(self.fail_set), self.elapsed_ns)
            )

    def result(self) -> PlanResult:
        best = extract_best_path(self.tree, self.goal, self.goal_ids)
        path, cost = best if best is not None else (None, None)
        return PlanResult(self.tree, self.fail_set, path, cost, self.first_solution_iter, self.trace)


def plan(w: World, start, goal: GoalRegion, params: PlannerParams) -> PlanResult:
    planner = Planner(w, start, goal, params)
    planner.run(params.max_iter)
    return planner.result()
