"""Fast exact counting of lattice animals by untried-set enumeration.

The enumerator generalises the classic untried-set scheme for fixed
polyominoes.  Animals are rooted at their lexicographically smallest
vertex, so the search runs inside the cone of vertices >= origin:

* site kind: the origin is the first cell and every other cell is
  lexicographically greater;
* bond/tree kinds: every endpoint is >= origin and at least one edge
  leaves the origin in a + direction (those d edges seed the search).

Each node of the search tree is one animal, so the node budget is an exact
animal budget and the per-size tallies fall out of the traversal.  Counts
are Python ints (arbitrary precision).  Both rooting conventions are
tallied in one pass: the origin-containing count of a translation class
equals its vertex count (one translate per vertex moved onto the origin),
which degenerates to n per class for site animals.

Parallel runs split the search at a fixed depth into independent work
units (a snapshot of the untried list and forbidden set fully determines a
subtree) and sum the unit tallies; the result is identical to the serial
count by construction.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .animals import LatticeAnimal, boundary_stats, is_interface_2d
from .lattice import Edge, Vertex, check_dimension, incident_edges, neighbors, step, undirected

KINDS = ("site", "bond", "tree", "interface2d")
ROOTINGS = ("lexmin", "origin")


@dataclass(frozen=True)
class CountResult:
    """Per-size exact counts; ``counts[i]`` is the tally at size i+1."""

    dimension: int
    kind: str
    rooting: str
    counts: tuple[int, ...]
    nodes_visited: int
    complete: bool = True


class BudgetExceededError(RuntimeError):
    """Node budget exhausted; ``partial`` holds the flagged partial tallies."""

    def __init__(self, partial: CountResult):
        super().__init__(
            f"node budget exhausted after {partial.nodes_visited} animals; partial counts retained"
        )
        self.partial = partial


class _BudgetHit(Exception):
    pass


class _Budget:
    """Shared countdown of search-tree nodes; thread-safe."""

    def __init__(self, limit: int | None):
        self.limit = limit
        self.remaining = limit
        self._lock = threading.Lock()

    def spend(self) -> None:
        if self.limit is None:
            return
        with self._lock:
            if self.remaining <= 0:
                raise _BudgetHit
            self.remaining -= 1


def _validate_args(d: int, n_max: int, kind: str, rooting: str) -> None:
    check_dimension(d)
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if rooting not in ROOTINGS:
        raise ValueError(f"rooting must be one of {ROOTINGS}, got {rooting!r}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if kind == "interface2d" and d != 2:
        raise ValueError("interface2d counting is defined only for d=2")


# ---------------------------------------------------------------------------
# site animals
# ---------------------------------------------------------------------------

class _SiteCounter:
    """One untried-set traversal; tallies both rooting conventions."""

    def __init__(self, d: int, n_max: int, budget: _Budget):
        self.d = d
        self.n_max = n_max
        self.budget = budget
        self.origin = (0,) * d
        self.lex = [0] * (n_max + 1)
        self.org = [0] * (n_max + 1)
        self.nodes = 0

    def initial_state(self) -> tuple[list[Vertex], set[Vertex], int]:
        origin = self.origin
        self.budget.spend()
        self.nodes += 1
        self.lex[1] += 1
        self.org[1] += 1
        seeds = [w for w in neighbors(origin) if w > origin]
        seen = set(seeds)
        seen.add(origin)
        return seeds, seen, 1

    def run(self, untried: list[Vertex], seen: set[Vertex], size: int,
            capture_at: int | None = None, units: list | None = None) -> None:
        if size >= self.n_max:
            return
        origin = self.origin
        while untried:
            c = untried.pop()
            self.budget.spend()
            self.nodes += 1
            self.lex[size + 1] += 1
            self.org[size + 1] += size + 1
            if size + 1 < self.n_max:
                new = [w for w in neighbors(c) if w > origin and w not in seen]
                seen.update(new)
                if capture_at is not None and size + 1 == capture_at:
                    units.append((tuple(untried) + tuple(new), frozenset(seen), size + 1))
                else:
                    self.run(untried + new, seen, size + 1, capture_at, units)
                seen.difference_update(new)


# ---------------------------------------------------------------------------
# bond, tree, and 2D-interface animals
# ---------------------------------------------------------------------------

class _EdgeCounter:
    """Untried-set traversal over connected edge sets rooted at the origin."""

    def __init__(self, d: int, n_max: int, kind: str, budget: _Budget):
        self.d = d
        self.n_max = n_max
        self.kind = kind
        self.budget = budget
        self.origin = (0,) * d
        self.lex = [0] * (n_max + 1)
        self.org = [0] * (n_max + 1)
        self.nodes = 0

    def initial_state(self):
        origin = self.origin
        seeds = [undirected(origin, step(origin, axis, 1)) for axis in range(self.d)]
        return seeds, set(seeds), 0, {}, []

    def _frontier(self, e: Edge, seen: set[Edge]) -> list[Edge]:
        origin = self.origin
        new = []
        for w in e:
            for e2 in incident_edges(w):
                if e2 not in seen and e2[0] >= origin:
                    new.append(e2)
                    seen.add(e2)
        return new

    def run(self, untried: list[Edge], seen: set[Edge], size: int,
            degrees: dict[Vertex, int], stack: list[Edge],
            capture_at: int | None = None, units: list | None = None) -> None:
        trees_only = self.kind == "tree"
        interfaces = self.kind == "interface2d"
        while untried:
            e = untried.pop()
            u, v = e
            u_old = u in degrees
            v_old = v in degrees
            if trees_only and u_old and v_old:
                continue  # closes a cycle now and in every descendant animal
            self.budget.spend()
            self.nodes += 1
            n_vertices = len(degrees) + 2 - u_old - v_old
            if interfaces:
                stack.append(e)
                keep = is_interface_2d(
                    LatticeAnimal(self.d, "bond", edges=frozenset(stack))
                )
                stack.pop()
                if keep:
                    self.lex[size + 1] += 1
                    self.org[size + 1] += n_vertices
            else:
                self.lex[size + 1] += 1
                self.org[size + 1] += n_vertices
            if size + 1 < self.n_max:
                degrees[u] = degrees.get(u, 0) + 1
                degrees[v] = degrees.get(v, 0) + 1
                stack.append(e)
                new = self._frontier(e, seen)
                if capture_at is not None and size + 1 == capture_at:
                    units.append((
                        tuple(untried) + tuple(new),
                        frozenset(seen),
                        size + 1,
                        tuple(degrees.items()),
                        tuple(stack),
                    ))
                else:
                    self.run(untried + new, seen, size + 1, degrees, stack, capture_at, units)
                for x in new:
                    seen.discard(x)
                stack.pop()
                for w in (u, v):
                    degrees[w] -= 1
                    if degrees[w] == 0:
                        del degrees[w]


# ---------------------------------------------------------------------------
# public counting API
# ---------------------------------------------------------------------------

def count_animals(
    d: int,
    n_max: int,
    kind: str = "site",
    rooting: str = "lexmin",
    *,
    node_budget: int | None = None,
    threads: int = 1,
) -> CountResult:
    """Exact per-size animal counts for sizes 1..n_max.

    Parameters
    ----------
    d, n_max : lattice dimension and largest size to tally.
    kind : "site", "bond", "tree", or "interface2d" (d=2 only).
    rooting : "lexmin" counts translation classes; "origin" counts animals
        containing the origin (the class count weighted by vertices).
    node_budget : abort after this many search nodes, raising
        BudgetExceededError with the partial tallies attached.
    threads : worker threads; the tallies are identical for any value.
    """
    _validate_args(d, n_max, kind, rooting)
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if node_budget is not None and node_budget < 1:
        raise ValueError(f"node_budget must be >= 1, got {node_budget}")
    budget = _Budget(node_budget)
    if kind == "site":
        counter: _SiteCounter | _EdgeCounter = _SiteCounter(d, n_max, budget)
    else:
        counter = _EdgeCounter(d, n_max, kind, budget)

    try:
        if threads == 1:
            state = counter.initial_state()
            counter.run(*_as_mutable(state))
        else:
            _run_parallel(counter, threads)
    except _BudgetHit:
        partial = _result(counter, d, kind, rooting, complete=False)
        raise BudgetExceededError(partial) from None
    return _result(counter, d, kind, rooting, complete=True)


def _as_mutable(state):
    if len(state) == 3:
        untried, seen, size = state
        return list(untried), set(seen), size
    untried, seen, size, degrees, stack = state
    return list(untried), set(seen), size, dict(degrees), list(stack)


def _result(counter, d: int, kind: str, rooting: str, complete: bool) -> CountResult:
    tallies = counter.lex if rooting == "lexmin" else counter.org
    return CountResult(d, kind, rooting, tuple(tallies[1:]), counter.nodes, complete)


def _run_parallel(counter, threads: int) -> None:
    """Split the search at a fixed depth and run the subtrees on a pool."""
    d, n_max = counter.d, counter.n_max
    branching = max(2, 2 * d - 1)
    capture_at = 1 + math.ceil(math.log(max(4 * threads, 2)) / math.log(branching))
    if capture_at >= n_max:
        state = counter.initial_state()
        counter.run(*_as_mutable(state))
        return
    units: list = []
    state = counter.initial_state()
    counter.run(*_as_mutable(state), capture_at=capture_at, units=units)

    hits: list[_BudgetHit] = []
    lock = threading.Lock()

    def work(unit) -> None:
        local = _clone(counter)
        try:
            local.run(*_as_mutable(unit))
        except _BudgetHit as exc:
            hits.append(exc)
        with lock:
            for i, x in enumerate(local.lex):
                counter.lex[i] += x
            for i, x in enumerate(local.org):
                counter.org[i] += x
            counter.nodes += local.nodes

    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(work, units))
    if hits:
        raise _BudgetHit


def _clone(counter):
    if isinstance(counter, _SiteCounter):
        return _SiteCounter(counter.d, counter.n_max, counter.budget)
    return _EdgeCounter(counter.d, counter.n_max, counter.kind, counter.budget)


# ---------------------------------------------------------------------------
# iteration (used by the coding layer, histograms, and exhaustive tests)
# ---------------------------------------------------------------------------

def iter_site_animals(d: int, n: int) -> Iterator[frozenset[Vertex]]:
    """Yield every lexmin-rooted site animal of exactly n cells."""
    _validate_args(d, n, "site", "lexmin")
    origin = (0,) * d
    if n == 1:
        yield frozenset([origin])
        return
    seeds = [w for w in neighbors(origin) if w > origin]
    seen = set(seeds)
    seen.add(origin)
    animal = [origin]

    def rec(untried: list[Vertex], size: int) -> Iterator[frozenset[Vertex]]:
        while untried:
            c = untried.pop()
            animal.append(c)
            if size + 1 == n:
                yield frozenset(animal)
            else:
                new = [w for w in neighbors(c) if w > origin and w not in seen]
                seen.update(new)
                yield from rec(untried + new, size + 1)
                seen.difference_update(new)
            animal.pop()

    yield from rec(seeds, 1)


def iter_edge_animals(d: int, n: int, kind: str = "bond") -> Iterator[frozenset[Edge]]:
    """Yield every lexmin-rooted bond/tree/interface animal of exactly n edges."""
    if kind == "site":
        raise ValueError("iter_edge_animals handles edge kinds only")
    _validate_args(d, n, kind, "lexmin")
    origin = (0,) * d
    trees_only = kind == "tree"
    interfaces = kind == "interface2d"
    seeds = [undirected(origin, step(origin, axis, 1)) for axis in range(d)]
    seen = set(seeds)
    degrees: dict[Vertex, int] = {}
    stack: list[Edge] = []

    def rec(untried: list[Edge], size: int) -> Iterator[frozenset[Edge]]:
        while untried:
            e = untried.pop()
            u, v = e
            if trees_only and u in degrees and v in degrees:
                continue
            degrees[u] = degrees.get(u, 0) + 1
            degrees[v] = degrees.get(v, 0) + 1
            stack.append(e)
            if size + 1 == n:
                out = frozenset(stack)
                if not interfaces or is_interface_2d(LatticeAnimal(d, "bond", edges=out)):
                    yield out
            else:
                new = []
                for w in e:
                    for e2 in incident_edges(w):
                        if e2 not in seen and e2[0] >= origin:
                            new.append(e2)
                            seen.add(e2)
                yield from rec(untried + new, size + 1)
                for x in new:
                    seen.discard(x)
            stack.pop()
            for w in (u, v):
                degrees[w] -= 1
                if degrees[w] == 0:
                    del degrees[w]

    yield from rec(seeds, 0)


def iter_animals(d: int, n: int, kind: str = "site") -> Iterator[LatticeAnimal]:
    """Yield lexmin-rooted animals of size n wrapped as LatticeAnimal."""
    if kind == "site":
        for cells in iter_site_animals(d, n):
            yield LatticeAnimal(d, "site", cells=cells)
    else:
        wrapped_kind = "bond" if kind == "interface2d" else kind
        for edges in iter_edge_animals(d, n, kind):
            yield LatticeAnimal(d, wrapped_kind, edges=edges)


# ---------------------------------------------------------------------------
# boundary-ratio histograms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioHistogram:
    """Counts of size-n animals binned by boundary/size ratio.

    Bin k covers the half-open interval (k*eps, (k+1)*eps]: a ratio exactly
    on a bin edge belongs to the lower bin.  Ratios and epsilon are exact
    fractions, so tie-breaking is never a floating-point accident.
    """

    dimension: int
    kind: str
    size: int
    epsilon: Fraction
    rooting: str
    bins: tuple[tuple[int, int], ...]  # (bin index, count), sorted by index

    def interval(self, index: int) -> tuple[Fraction, Fraction]:
        return index * self.epsilon, (index + 1) * self.epsilon

    def as_dict(self) -> dict[int, int]:
        return dict(self.bins)


def ratio_bin_index(ratio: Fraction, epsilon: Fraction) -> int:
    """Index of the half-open bin (k*eps, (k+1)*eps] containing the ratio."""
    if ratio <= 0:
        raise ValueError(f"boundary ratio must be positive, got {ratio}")
    return math.ceil(ratio / epsilon) - 1


def _as_fraction(epsilon) -> Fraction:
    # floats go through str so 0.05 means the decimal 1/20, not its binary image
    if isinstance(epsilon, float):
        return Fraction(str(epsilon))
    return Fraction(epsilon)


def ratio_histogram(
    d: int,
    n: int,
    kind: str = "site",
    epsilon=Fraction(1, 20),
    rooting: str = "lexmin",
) -> RatioHistogram:
    """Histogram of boundary/size ratios over all animals of size n.

    Site animals are binned by vertex boundary over n; edge kinds by edge
    boundary over n.  With rooting="origin" each translation class is
    weighted by its number of translates containing the origin.
    """
    _validate_args(d, n, kind, rooting)
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {eps}")
    bins: dict[int, int] = {}
    for animal in iter_animals(d, n, kind):
        stats = boundary_stats(animal)
        boundary = stats.vertex_boundary if kind == "site" else stats.edge_boundary
        weight = 1
        if rooting == "origin":
            weight = n if kind == "site" else len(animal.vertices)
        index = ratio_bin_index(Fraction(boundary, n), eps)
        bins[index] = bins.get(index, 0) + weight
    return RatioHistogram(d, kind, n, eps, rooting, tuple(sorted(bins.items())))
