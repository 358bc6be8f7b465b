"""Hypercubic-lattice primitives shared by the enumeration and coding modules.

Vertices of the d-dimensional integer lattice are plain int tuples.  Two
conventions are fixed here once and inherited everywhere else:

1. Vertex order is lexicographic, which for equal-length int tuples is
   exactly Python's tuple order.
2. The 2d directed edges out of a vertex are ranked axis by axis with the
   + direction before the - direction: for d=2 the order is +x, -x, +y, -y
   (ranks 0, 1, 2, 3).  ``neighbors`` lists heads in this rank order.

Undirected lattice edges are stored as a (tail, head) pair with
tail < head lexicographically, so edge sets compare and hash cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass

Vertex = tuple[int, ...]
Edge = tuple[Vertex, Vertex]


class DimensionMismatchError(ValueError):
    """Vertices of different dimension were combined."""


def check_dimension(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")


def lex_compare(u: Vertex, v: Vertex) -> int:
    """Compare vertices lexicographically: -1, 0, or +1.

    Raises DimensionMismatchError when the tuples have different lengths.
    """
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot compare {len(u)}-dim and {len(v)}-dim vertices")
    if u < v:
        return -1
    if u > v:
        return 1
    return 0


@dataclass(frozen=True)
class DirectedEdge:
    """Directed lattice edge: ``tail`` plus a unit step along ``axis``."""

    tail: Vertex
    axis: int
    sign: int  # +1 or -1

    def __post_init__(self) -> None:
        if not 0 <= self.axis < len(self.tail):
            raise ValueError(f"axis {self.axis} out of range for dimension {len(self.tail)}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def head(self) -> Vertex:
        return step(self.tail, self.axis, self.sign)


def directed_edge_rank(edge: DirectedEdge) -> int:
    """Rank of a directed edge among the 2d edges out of its tail.

    Rank 2*axis for the + direction, 2*axis + 1 for the - direction.
    """
    return 2 * edge.axis + (0 if edge.sign > 0 else 1)


def rank_to_axis_sign(rank: int, d: int) -> tuple[int, int]:
    """Inverse of ``directed_edge_rank`` for dimension d."""
    check_dimension(d)
    if not 0 <= rank < 2 * d:
        raise ValueError(f"rank {rank} out of range for dimension {d}")
    return rank // 2, (1 if rank % 2 == 0 else -1)


def step(v: Vertex, axis: int, sign: int) -> Vertex:
    """Unit step from v along an axis; sign is +1 or -1."""
    return v[:axis] + (v[axis] + sign,) + v[axis + 1 :]


def neighbors(v: Vertex) -> list[Vertex]:
    """The 2d lattice neighbours of v, listed in directed-edge rank order."""
    out = []
    for axis in range(len(v)):
        out.append(step(v, axis, 1))
        out.append(step(v, axis, -1))
    return out


def undirected(u: Vertex, v: Vertex) -> Edge:
    """Canonical form of the undirected edge {u, v}: endpoints sorted."""
    return (u, v) if u < v else (v, u)


def incident_edges(v: Vertex) -> list[Edge]:
    """The 2d undirected edges at v, in the rank order of their directions."""
    return [undirected(v, w) for w in neighbors(v)]


def edge_axis(edge: Edge) -> int:
    """Axis along which an undirected lattice edge runs."""
    u, v = edge
    for axis, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return axis
    raise ValueError(f"degenerate edge {edge!r}")


def is_lattice_edge(edge: Edge) -> bool:
    """True when the pair is a canonical unit lattice edge (tail < head)."""
    u, v = edge
    if len(u) != len(v):
        return False
    diffs = [b - a for a, b in zip(u, v)]
    nonzero = [x for x in diffs if x != 0]
    return len(nonzero) == 1 and nonzero[0] == 1


def translate(vertices, offset: Vertex):
    """Translate an iterable of vertices by ``offset``; preserves type via list."""
    return [tuple(c + o for c, o in zip(v, offset)) for v in vertices]
