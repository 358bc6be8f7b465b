"""Monte Carlo Bernoulli percolation on finite boxes of the hypercubic lattice.

Boxes are L^d grids of cells with open (non-wrapped) boundaries.  The
crossing event joins the two opposite faces along axis 0.  In the site
flavor each cell is open with probability p and paths run through open
cells; in the bond flavor all cells are present and each nearest-neighbor
edge is open with probability p.

Randomness contract: every trial draws its uniforms from a counter-based
Philox stream keyed by (seed, trial index), with the cell or edge index
addressing into the stream.  Trials are therefore reproducible
independent streams, results do not depend on the thread count, and two
runs at p1 < p2 with the same seed are monotone-coupled (the open set at
p1 is a subset of the open set at p2).  Threshold bisection reuses the
same per-trial streams at every step, so its step comparisons inherit
that coupling: the estimate is the empirical median of the per-trial
crossing points, resolved to 2^-steps.

Clustering is a hand-rolled disjoint-set forest (path halving, union by
size) over the flat cell array plus two virtual face nodes; partitions
are exposed for oracle comparison in tests.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .lattice import check_dimension

FLAVORS = ("site", "bond")

MAX_CELLS = 1 << 26

_Z95 = 1.96  # two-sided 95% normal quantile, to the precision that matters here


@dataclass(frozen=True)
class PercConfig:
    """One Monte Carlo experiment: box geometry, flavor, parameter, and seed."""

    dimension: int
    side: int
    flavor: str
    probability: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        check_dimension(self.dimension)
        if self.side < 2:
            raise ValueError(f"box side must be at least 2, got {self.side}")
        if self.side**self.dimension > MAX_CELLS:
            raise ValueError(
                f"box of {self.side}^{self.dimension} cells exceeds the cap of 2^26"
            )
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")
        if not 0 <= self.probability <= 1:
            raise ValueError(f"probability must lie in [0, 1], got {self.probability}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def cells(self) -> int:
        return self.side**self.dimension

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.side,) * self.dimension

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "side": self.side,
            "flavor": self.flavor,
            "probability": self.probability,
            "trials": self.trials,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PercEstimate:
    """A Monte Carlo estimate with a 95% normal-approximation half width.

    For threshold estimates the half width combines the bisection window
    with the binomial noise of a single step, and ``trace`` records the
    (p, crossing fraction) pairs visited by the bisection.
    """

    quantity: str
    value: float
    half_width: float
    config: PercConfig
    trace: tuple[tuple[float, float], ...] = ()

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "d": self.config.dimension,
            "value": self.value,
            "direction": "estimate",
            "rigor": "monte-carlo",
            "half_width": self.half_width,
            "config": self.config.as_dict(),
            "trace": [list(point) for point in self.trace],
        }


class UnionFind:
    """Disjoint-set forest with path halving and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, count: int) -> None:
        self.parent = list(range(count))
        self.size = [1] * count

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def component_size(self, x: int) -> int:
        return self.size[self.find(x)]


def _trial_uniforms(seed: int, trial: int, count: int) -> np.ndarray:
    key = np.array([seed, trial], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key)).random(count)


def _axis_slices(shape: tuple[int, ...], axis: int) -> tuple[tuple[slice, ...], tuple[slice, ...]]:
    lo = [slice(None)] * len(shape)
    hi = [slice(None)] * len(shape)
    lo[axis] = slice(0, -1)
    hi[axis] = slice(1, None)
    return tuple(lo), tuple(hi)


def _site_union(cfg: PercConfig, trial: int) -> tuple[np.ndarray, UnionFind]:
    """Open-cell mask and the forest of open-cell adjacencies for one trial."""
    open_mask = _trial_uniforms(cfg.seed, trial, cfg.cells) < cfg.probability
    uf = UnionFind(cfg.cells + 2)
    grid = open_mask.reshape(cfg.shape)
    flat = np.arange(cfg.cells).reshape(cfg.shape)
    union = uf.union
    for axis in range(cfg.dimension):
        lo, hi = _axis_slices(cfg.shape, axis)
        both = grid[lo] & grid[hi]
        for a, b in zip(flat[lo][both].tolist(), flat[hi][both].tolist()):
            union(a, b)
    return open_mask, uf


def _bond_union(cfg: PercConfig, trial: int) -> UnionFind:
    """Forest of open-edge adjacencies for one trial (all cells present)."""
    uniforms = _trial_uniforms(cfg.seed, trial, cfg.dimension * cfg.cells)
    uf = UnionFind(cfg.cells + 2)
    flat = np.arange(cfg.cells).reshape(cfg.shape)
    union = uf.union
    for axis in range(cfg.dimension):
        block = uniforms[axis * cfg.cells : (axis + 1) * cfg.cells] < cfg.probability
        lo, hi = _axis_slices(cfg.shape, axis)
        open_edges = block.reshape(cfg.shape)[lo]
        for a, b in zip(flat[lo][open_edges].tolist(), flat[hi][open_edges].tolist()):
            union(a, b)
    return uf


def _face_indices(cfg: PercConfig) -> tuple[list[int], list[int]]:
    flat = np.arange(cfg.cells).reshape(cfg.shape)
    return flat[0].ravel().tolist(), flat[-1].ravel().tolist()


def _crossing_trial(cfg: PercConfig, trial: int) -> bool:
    top, bottom = cfg.cells, cfg.cells + 1
    first, last = _face_indices(cfg)
    if cfg.flavor == "site":
        open_mask, uf = _site_union(cfg, trial)
        flat_open = open_mask
        for cell in first:
            if flat_open[cell]:
                uf.union(top, cell)
        for cell in last:
            if flat_open[cell]:
                uf.union(bottom, cell)
    else:
        uf = _bond_union(cfg, trial)
        for cell in first:
            uf.union(top, cell)
        for cell in last:
            uf.union(bottom, cell)
    return uf.connected(top, bottom)


def _run_trials(worker, trials: int, threads: int) -> list:
    if threads <= 1:
        return [worker(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(trials)))


def _proportion_half_width(value: float, trials: int) -> float:
    return _Z95 * math.sqrt(value * (1.0 - value) / trials)


def crossing_probability(cfg: PercConfig, threads: int = 1) -> PercEstimate:
    """Fraction of trials whose open set joins the two faces along axis 0."""
    hits = _run_trials(lambda t: _crossing_trial(cfg, t), cfg.trials, threads)
    value = sum(hits) / cfg.trials
    return PercEstimate(
        quantity="crossing-probability",
        value=value,
        half_width=_proportion_half_width(value, cfg.trials),
        config=cfg,
    )


def estimate_threshold(
    dimension: int,
    side: int,
    flavor: str,
    trials: int,
    seed: int,
    threads: int = 1,
    steps: int = 12,
) -> PercEstimate:
    """Bisect the parameter to the point where the crossing fraction is 1/2.

    Runs a fixed number of bisection steps on [0, 1], each evaluating
    crossing_probability at the midpoint with the given trial count; the
    per-trial streams are shared across steps, so the comparisons are
    monotone-coupled.  The half width adds the final bisection window to
    the binomial noise of one step.
    """
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}")
    lo, hi = 0.0, 1.0
    trace = []
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        est = crossing_probability(
            PercConfig(dimension, side, flavor, mid, trials, seed), threads
        )
        trace.append((mid, est.value))
        if est.value < 0.5:
            lo = mid
        else:
            hi = mid
    value = 0.5 * (lo + hi)
    half_width = 0.5 * (hi - lo) + _Z95 * math.sqrt(0.25 / trials)
    return PercEstimate(
        quantity="threshold",
        value=value,
        half_width=half_width,
        config=PercConfig(dimension, side, flavor, value, trials, seed),
        trace=tuple(trace),
    )


def _center_index(cfg: PercConfig) -> int:
    index = 0
    for _ in range(cfg.dimension):
        index = index * cfg.side + cfg.side // 2
    return index


def cluster_tail(cfg: PercConfig, n: int, threads: int = 1) -> PercEstimate:
    """Estimate the probability that the central cell's open cluster has size >= n.

    In the site flavor a closed center has cluster size 0; in the bond
    flavor the center is always present, so the size is at least 1.
    """
    if n < 1:
        raise ValueError(f"cluster size threshold must be positive, got {n}")
    center = _center_index(cfg)

    def worker(trial: int) -> bool:
        if cfg.flavor == "site":
            open_mask, uf = _site_union(cfg, trial)
            if not open_mask[center]:
                return False
            return uf.component_size(center) >= n
        return _bond_union(cfg, trial).component_size(center) >= n

    hits = _run_trials(worker, cfg.trials, threads)
    value = sum(hits) / cfg.trials
    return PercEstimate(
        quantity="tail-mass",
        value=value,
        half_width=_proportion_half_width(value, cfg.trials),
        config=cfg,
    )


def cluster_partition(open_cells: Sequence[bool] | np.ndarray, shape: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Partition the open cells of a fixed configuration into components.

    Returns the components as sorted tuples of flat (row-major) cell
    indices, sorted by their smallest member.  This mirrors the forest
    used by the estimators and exists so tests can compare it against an
    independent connected-components oracle on hand-built grids.
    """
    cells = 1
    for extent in shape:
        cells *= extent
    mask = np.asarray(open_cells, dtype=bool).reshape(-1)
    if mask.size != cells:
        raise ValueError(f"expected {cells} cells for shape {shape}, got {mask.size}")
    grid = mask.reshape(shape)
    flat = np.arange(cells).reshape(shape)
    uf = UnionFind(cells)
    for axis in range(len(shape)):
        lo, hi = _axis_slices(shape, axis)
        both = grid[lo] & grid[hi]
        for a, b in zip(flat[lo][both].tolist(), flat[hi][both].tolist()):
            uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for cell in range(cells):
        if mask[cell]:
            groups.setdefault(uf.find(cell), []).append(cell)
    return tuple(tuple(sorted(group)) for group in sorted(groups.values(), key=min))
