"""Scenario files: JSON problem descriptions with optional parameter defaults."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .geometry import HyperRect, World, point_free
from .planner import GoalRegion

# keys accepted under "params"; they mirror the CLI flags
PARAM_KEYS = {
    "algo", "iters", "trials", "seed", "lambda_s", "lambda_i", "m", "rho_fail",
    "r_f", "eta", "gamma", "goal_bias", "eps_c",
}


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    name: str
    world: World
    start: np.ndarray
    goal: GoalRegion
    passage_regions: dict[str, HyperRect] = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.world.dim


def bundled_names() -> list[str]:
    root = resources.files("rrtldv") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve(ref: str | Path) -> Path:
    """Find a scenario by path, path without ``.json``, or bundled name."""
    p = Path(ref)
    for cand in (p, p.with_name(p.name + ".json")):
        if cand.is_file():
            return cand
    bundled = resources.files("rrtldv") / "scenarios" / (p.stem + ".json")
    if bundled.is_file():
        return Path(str(bundled))
    raise ScenarioError(f"scenario not found: {ref}")


def _vec(doc, key, dim, where):
    if key not in doc:
        raise ScenarioError(f"missing key '{where}{key}'")
    v = doc[key]
    if not isinstance(v, list) or not all(isinstance(x, (int, float)) for x in v):
        raise ScenarioError(f"'{where}{key}' must be an array of numbers")
    if len(v) != dim:
        raise ScenarioError(f"dimension mismatch in '{where}{key}': expected {dim}, got {len(v)}")
    return np.array(v, dtype=float)


def _box(doc, dim, where) -> HyperRect:
    lo = _vec(doc, "lo", dim, where)
    hi = _vec(doc, "hi", dim, where)
    bad = np.flatnonzero(lo >= hi)
    if bad.size:
        raise ScenarioError(f"degenerate obstacle at '{where}': lo >= hi on axis {bad[0]}")
    return HyperRect(lo, hi)


def parse(doc: dict) -> Scenario:
    for key in ("name", "dim", "bounds", "obstacles", "start", "goal"):
        if key not in doc:
            raise ScenarioError(f"missing key '{key}'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ScenarioError("'dim' must be a positive integer")
    bounds = _box(doc["bounds"], dim, "bounds.")
    obstacles = [_box(o, dim, f"obstacles[{k}].") for k, o in enumerate(doc["obstacles"])]
    try:
        world = World(bounds, tuple(obstacles))
    except ValueError as e:
        raise ScenarioError(str(e)) from None

    start = _vec(doc, "start", dim, "")
    if not point_free(start, world):
        raise ScenarioError("start in collision")
    goal_doc = doc["goal"]
    center = _vec(goal_doc, "center", dim, "goal.")
    if "radius" not in goal_doc:
        raise ScenarioError("missing key 'goal.radius'")
    radius = float(goal_doc["radius"])
    if radius <= 0:
        raise ScenarioError("'goal.radius' must be positive")
    if not point_free(center, world):
        raise ScenarioError("goal center in collision")

    regions = {}
    for k, r in enumerate(doc.get("passage_regions", [])):
        box = _box(r, dim, f"passage_regions[{k}].")
        if np.any(box.lo < bounds.lo) or np.any(box.hi > bounds.hi):
            raise ScenarioError(f"passage region '{r.get('name', k)}' leaves the bounds")
        regions[r.get("name", f"region{k}")] = box

    params = dict(doc.get("params", {}))
    unknown = set(params) - PARAM_KEYS
    if unknown:
        raise ScenarioError(f"unknown key(s) in 'params': {', '.join(sorted(unknown))}")
    return Scenario(str(doc["name"]), world, start, GoalRegion(center, radius), regions, params)


def load_scenario(ref: str | Path) -> Scenario:
    path = resolve(ref)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}: invalid JSON ({e})") from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    return parse(doc)
