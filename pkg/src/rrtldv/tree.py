"""Search tree with cost-to-come bookkeeping and brute-force proximity queries.

Node data lives in preallocated numpy arrays that double on demand, which
keeps ``nearest``/``near`` a single vectorised scan. Ids are dense and
assigned in insertion order; the root is id 0.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import as_config


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def neighbor_radius(n: int, d: int, gamma: float, eta: float) -> float:
    """Shrinking RRT* connection radius ``min((gamma/xi_d * ln n / n)^(1/d), eta)``.

    ``n`` is clamped to at least 2 so the radius is defined for a lone root.
    """
    if gamma <= 0 or eta <= 0:
        raise ValueError("gamma and eta must be positive")
    n = max(int(n), 2)
    r = (gamma / unit_ball_volume(d) * math.log(n) / n) ** (1.0 / d)
    return min(r, eta)


class Tree:
    def __init__(self, root, v_max: float, capacity: int = 1024):
        root = as_config(root)
        self.dim = root.shape[0]
        self.v_max = float(v_max)
        capacity = max(capacity, 1)
        self._configs = np.empty((capacity, self.dim))
        self._dirs = np.zeros((capacity, self.dim))
        self._costs = np.empty(capacity)
        self._vis = np.empty(capacity)
        self._parents = np.full(capacity, -1, dtype=np.int64)
        self.children: list[list[int]] = [[]]
        self._configs[0] = root
        self._costs[0] = 0.0
        self._vis[0] = self.v_max
        self._n = 1

    def __len__(self) -> int:
        return self._n

    # read-only views onto the live part of each array
    @property
    def configs(self) -> np.ndarray:
        return self._configs[: self._n]

    @property
    def costs(self) -> np.ndarray:
        return self._costs[: self._n]

    @property
    def vis(self) -> np.ndarray:
        return self._vis[: self._n]

    @property
    def dirs(self) -> np.ndarray:
        return self._dirs[: self._n]

    @property
    def parents(self) -> np.ndarray:
        return self._parents[: self._n]

    def config(self, i: int) -> np.ndarray:
        return self._configs[i]

    def cost(self, i: int) -> float:
        return float(self._costs[i])

    def parent(self, i: int) -> int | None:
        p = int(self._parents[i])
        return None if p < 0 else p

    def direction(self, i: int) -> np.ndarray | None:
        return None if i == 0 else self._dirs[i]

    def set_vis(self, i: int, value: float) -> None:
        self._vis[i] = value

    def _check_id(self, i: int) -> None:
        if not 0 <= i < self._n:
            raise ValueError(f"unknown node id {i}")

    def _grow(self) -> None:
        cap = 2 * self._configs.shape[0]
        for name in ("_configs", "_dirs", "_costs", "_vis", "_parents"):
            old = getattr(self, name)
            new = np.empty((cap,) + old.shape[1:], dtype=old.dtype)
            new[: self._n] = old[: self._n]
            setattr(self, name, new)

    def insert(self, config, parent: int) -> int:
        config = as_config(config, self.dim)
        self._check_id(parent)
        delta = config - self._configs[parent]
        length = float(np.linalg.norm(delta))
        if length == 0.0:
            raise ValueError("zero-length edge")
        if self._n == self._configs.shape[0]:
            self._grow()
        i = self._n
        self._configs[i] = config
        self._dirs[i] = delta / length
        self._costs[i] = self._costs[parent] + length
        self._vis[i] = self.v_max
        self._parents[i] = parent
        self.children.append([])
        self.children[parent].append(i)
        self._n += 1
        return i

    def nearest(self, q) -> int:
        q = as_config(q, self.dim)
        d2 = ((self.configs - q) ** 2).sum(axis=1)
        # argmin returns the first minimum, i.e. the lowest id on ties
        return int(np.argmin(d2))

    def near(self, q, r: float) -> list[int]:
        if r < 0:
            raise ValueError("radius must be non-negative")
        q = as_config(q, self.dim)
        dist = np.sqrt(((self.configs - q) ** 2).sum(axis=1))
        return np.flatnonzero(dist <= r).tolist()

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if ``a`` lies on the root path of ``b`` (or ``a == b``)."""
        i = b
        while i >= 0:
            if i == a:
                return True
            i = int(self._parents[i])
        return False

    def subtree(self, i: int) -> list[int]:
        out, stack = [], [i]
        while stack:
            j = stack.pop()
            out.append(j)
            stack.extend(reversed(self.children[j]))
        return out

    def set_parent(self, child: int, new_parent: int) -> None:
        """Reparent ``child`` and shift the cost of its whole subtree."""
        self._check_id(child)
        self._check_id(new_parent)
        if child == 0:
            raise RuntimeError("cannot reparent the root")
        if self.is_ancestor(child, new_parent):
            raise RuntimeError(f"reparenting {child} under {new_parent} would create a cycle")
        delta = self._configs[child] - self._configs[new_parent]
        length = float(np.linalg.norm(delta))
        if length == 0.0:
            raise ValueError("zero-length edge")
        old_parent = int(self._parents[child])
        self.children[old_parent].remove(child)
        self.children[new_parent].append(child)
        self._parents[child] = new_parent
        self._dirs[child] = delta / length
        shift = self._costs[new_parent] + length - self._costs[child]
        self._costs[self.subtree(child)] += shift

    def path_to(self, i: int) -> list[np.ndarray]:
        ids = []
        while i >= 0:
            ids.append(i)
            i = int(self._parents[i])
        return [self._configs[j].copy() for j in reversed(ids)]
