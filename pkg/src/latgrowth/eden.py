"""Canonical binary codes for site animals via a growth (Eden-style) replay.

A site animal X with n cells is encoded as a bit string of length
(2d-1)n - d + 1 containing exactly n - 1 ones.  The animal is first
translated so its lexicographically smallest cell u1 sits at the origin.
Vertices are then revealed one at a time and processed in revelation
order:

* u1 owns the first d bits, one per + direction in axis order (only those
  d neighbours can belong to X when u1 is the lexmin cell); bit 1 means
  the neighbour is in X and becomes the next revealed vertex.
* every later vertex owns 2d - 1 bits, one per direction in rank order
  excluding the direction pointing back at its tree parent; bit 1 means
  the neighbour is in X and not yet revealed, and reveals it.

Each non-root vertex is revealed by exactly one bit, so the revelation
edges form a spanning tree and the ones count is pinned at n - 1.  The
code is injective over lexmin-rooted animals and ``eden_decode`` replays
it back into the animal.

A tree edge u->v is a *turn* when u is not the root and the edge runs
along a different axis than the edge into u.  Fewer boundary vertices fit
around a tree with many turns: |vertex boundary| <= (2d-2)n - t + 2 where
t is the turn count.  ``ijq_upper_bound`` turns that into a closed-form
binomial bound on the number of lexmin-rooted animals with at most q
turns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .animals import LatticeAnimal, boundary_stats, canonical_cells
from .counting import iter_site_animals
from .lattice import Vertex, check_dimension, rank_to_axis_sign, step


class DecodeError(ValueError):
    """A code failed replay; ``bit_index`` names the offending bit if any."""

    def __init__(self, message: str, bit_index: int | None = None):
        if bit_index is not None:
            message = f"bit {bit_index}: {message}"
        super().__init__(message)
        self.bit_index = bit_index


def code_length(d: int, n: int) -> int:
    return (2 * d - 1) * n - d + 1


@dataclass(frozen=True)
class EdenCode:
    """A growth code; length must equal (2d-1)n - d + 1 for some n >= 1."""

    dimension: int
    bits: str

    def __post_init__(self) -> None:
        check_dimension(self.dimension)
        if not self.bits or set(self.bits) - {"0", "1"}:
            raise ValueError("bits must be a nonempty string of 0s and 1s")
        d = self.dimension
        length = len(self.bits)
        if (length + d - 1) % (2 * d - 1) != 0:
            raise ValueError(
                f"code length {length} does not match (2d-1)n - d + 1 for any n (d={d})"
            )

    @property
    def size(self) -> int:
        d = self.dimension
        return (len(self.bits) + d - 1) // (2 * d - 1)

    @property
    def ones_count(self) -> int:
        return self.bits.count("1")


@dataclass
class EdenTree:
    """Spanning tree produced by the growth replay, in revelation order."""

    root: Vertex
    order: tuple[Vertex, ...]
    parent: dict[Vertex, Vertex]
    turn_count: int


def _slot_ranks(d: int, parent_rank: int | None) -> list[int]:
    if parent_rank is None:  # root: only + directions can be occupied
        return [2 * axis for axis in range(d)]
    return [r for r in range(2 * d) if r != parent_rank]


def _axis_of(u: Vertex, v: Vertex) -> int:
    for axis, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return axis
    raise ValueError("identical vertices")


def _count_turns(order, parent) -> int:
    root = order[0]
    turns = 0
    for v in order[1:]:
        u = parent[v]
        if u == root:
            continue
        if _axis_of(u, v) != _axis_of(parent[u], u):
            turns += 1
    return turns


def eden_encode(animal: LatticeAnimal) -> tuple[EdenCode, EdenTree]:
    """Encode a site animal; the animal is lexmin-rooted internally."""
    if animal.kind != "site":
        raise ValueError("growth codes are defined for site animals")
    d = animal.dimension
    cells = canonical_cells(animal.cells)
    origin = (0,) * d
    order: list[Vertex] = [origin]
    parent: dict[Vertex, Vertex | None] = {origin: None}
    parent_rank: dict[Vertex, int] = {}
    bits: list[str] = []
    for k in range(len(cells)):
        u = order[k]
        for rank in _slot_ranks(d, parent_rank.get(u)):
            axis, sign = rank_to_axis_sign(rank, d)
            w = step(u, axis, sign)
            if w in cells and w not in parent:
                bits.append("1")
                parent[w] = u
                # the edge w->u points opposite to u->w
                parent_rank[w] = 2 * axis + (1 if sign > 0 else 0)
                order.append(w)
            else:
                bits.append("0")
    code = EdenCode(d, "".join(bits))
    del parent[origin]
    tree = EdenTree(origin, tuple(order), parent, _count_turns(order, parent))
    return code, tree


def eden_decode(code: EdenCode) -> tuple[LatticeAnimal, EdenTree]:
    """Replay a code back into its site animal.

    Raises DecodeError when the ones count is not n - 1, when a 1-bit
    points at an already revealed vertex, when a 1-bit sits in the block of
    a vertex that was never revealed, or when the replayed animal is not
    rooted at its lexicographic minimum (such codes are never produced by
    ``eden_encode``).
    """
    d = code.dimension
    n = code.size
    if code.ones_count != n - 1:
        raise DecodeError(f"code of size n={n} must contain {n - 1} ones, found {code.ones_count}")
    origin = (0,) * d
    order: list[Vertex] = [origin]
    parent: dict[Vertex, Vertex | None] = {origin: None}
    parent_rank: dict[Vertex, int] = {}
    pos = 0
    for k in range(n):
        if k >= len(order):
            # revelation stalled; any further 1-bit is unattached
            stray = code.bits.find("1", pos)
            raise DecodeError("1-bit in the block of a vertex that was never revealed", stray)
        u = order[k]
        for rank in _slot_ranks(d, parent_rank.get(u)):
            bit = code.bits[pos]
            if bit == "1":
                axis, sign = rank_to_axis_sign(rank, d)
                w = step(u, axis, sign)
                if w in parent:
                    raise DecodeError(f"vertex {w} revealed twice", pos)
                parent[w] = u
                parent_rank[w] = 2 * axis + (1 if sign > 0 else 0)
                order.append(w)
            pos += 1
    if min(order) != origin:
        raise DecodeError(f"replayed animal has lexicographic minimum {min(order)}, not the root")
    animal = LatticeAnimal(d, "site", cells=frozenset(order))
    del parent[origin]
    tree = EdenTree(origin, tuple(order), parent, _count_turns(order, parent))
    return animal, tree


# ---------------------------------------------------------------------------
# turn statistics and the binomial upper bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TurnBoundCheck:
    size: int
    vertex_boundary: int
    turn_count: int
    bound: int
    holds: bool


def check_turn_bound(animal: LatticeAnimal) -> TurnBoundCheck:
    """Verify |vertex boundary| <= (2d-2)n - t + 2 for one site animal."""
    code, tree = eden_encode(animal)
    stats = boundary_stats(animal)
    d = animal.dimension
    bound = (2 * d - 2) * stats.size - tree.turn_count + 2
    return TurnBoundCheck(
        stats.size, stats.vertex_boundary, tree.turn_count, bound,
        stats.vertex_boundary <= bound,
    )


def max_turns_observed(d: int, n: int) -> int:
    """Largest turn count over every lexmin-rooted site animal of size n."""
    best = 0
    for cells in iter_site_animals(d, n):
        _, tree = eden_encode(LatticeAnimal(d, "site", cells=cells))
        if tree.turn_count > best:
            best = tree.turn_count
    return best


def ijq_upper_bound(d: int, n: int, q: int) -> int:
    """Closed-form upper bound on lexmin-rooted site animals with <= q turns.

    Sums over i = number of root neighbours and j = number of turns:

        sum_{i=1}^{d} sum_{j=0}^{min(q, n-i)}
            C(d, i) * C((2d-1)(n-1), j) * C(n-1, n-i-j)

    with out-of-range binomials equal to zero.  Exact integer arithmetic.
    """
    check_dimension(d)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if q < 0:
        raise ValueError(f"q must be >= 0, got {q}")
    if n == 1:
        return 1
    total = 0
    slots = (2 * d - 1) * (n - 1)
    for i in range(1, d + 1):
        for j in range(0, min(q, n - i) + 1):
            rest = n - i - j
            if rest < 0 or rest > n - 1:
                continue
            total += math.comb(d, i) * math.comb(slots, j) * math.comb(n - 1, rest)
    return total
