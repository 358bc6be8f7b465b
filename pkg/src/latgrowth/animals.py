"""Lattice-animal domain types, boundary statistics, and 2D interface tests.

An animal is a finite connected subgraph of the hypercubic lattice.  Three
kinds are handled, differing in what is counted as the size n:

* ``site``:  a connected set of n vertices (the induced edges come free);
* ``bond``:  a connected set of n edges;
* ``tree``:  a bond animal without cycles (n edges, n+1 vertices).

Boundary statistics follow the subgraph picture.  The vertex boundary of S
is the set of lattice vertices outside S adjacent to S; the edge boundary
is the set of lattice edges meeting S that are not themselves part of S
(for a site animal every edge with both endpoints in S counts as part of S).

A 2D bond animal is an *interface* when every one of its edges touches the
unbounded face of its planar embedding.  That is decided by a flood fill
over unit cells: two side-adjacent cells communicate iff the lattice edge
between them is not in the animal, and a cell is exterior iff the fill
starting outside the animal's bounding box reaches it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .lattice import (
    Edge,
    Vertex,
    edge_axis,
    incident_edges,
    is_lattice_edge,
    neighbors,
    undirected,
)

KINDS = ("site", "bond", "tree")


class MalformedAnimalError(ValueError):
    """An animal failed structural validation; the message names the first violation."""


@dataclass(frozen=True)
class LatticeAnimal:
    """A lattice animal; ``cells`` is used by site kind, ``edges`` otherwise."""

    dimension: int
    kind: str
    cells: frozenset[Vertex] = field(default_factory=frozenset)
    edges: frozenset[Edge] = field(default_factory=frozenset)

    @property
    def size(self) -> int:
        return len(self.cells) if self.kind == "site" else len(self.edges)

    @property
    def vertices(self) -> frozenset[Vertex]:
        if self.kind == "site":
            return self.cells
        return frozenset(v for e in self.edges for v in e)


def site_animal(cells, dimension: int | None = None) -> LatticeAnimal:
    cells = frozenset(tuple(c) for c in cells)
    if not cells:
        raise MalformedAnimalError("animal must be nonempty")
    if dimension is None:
        dimension = len(next(iter(cells)))
    animal = LatticeAnimal(dimension, "site", cells=cells)
    validate(animal)
    return animal


def bond_animal(edges, dimension: int | None = None, kind: str = "bond") -> LatticeAnimal:
    edges = frozenset(undirected(tuple(u), tuple(v)) for u, v in edges)
    if not edges:
        raise MalformedAnimalError("animal must be nonempty")
    if dimension is None:
        dimension = len(next(iter(edges))[0])
    animal = LatticeAnimal(dimension, kind, edges=edges)
    validate(animal)
    return animal


def validate(animal: LatticeAnimal) -> None:
    """Raise MalformedAnimalError on the first structural violation found."""
    if animal.kind not in KINDS:
        raise MalformedAnimalError(f"unknown kind {animal.kind!r}")
    if animal.dimension < 1:
        raise MalformedAnimalError(f"dimension must be >= 1, got {animal.dimension}")
    if animal.kind == "site":
        if not animal.cells:
            raise MalformedAnimalError("site animal has no cells")
        for v in animal.cells:
            if len(v) != animal.dimension:
                raise MalformedAnimalError(f"cell {v} is not {animal.dimension}-dimensional")
        if not _cells_connected(animal.cells):
            raise MalformedAnimalError("site animal is not connected")
        return
    if not animal.edges:
        raise MalformedAnimalError(f"{animal.kind} animal has no edges")
    for e in animal.edges:
        if len(e[0]) != animal.dimension or len(e[1]) != animal.dimension:
            raise MalformedAnimalError(f"edge {e} is not {animal.dimension}-dimensional")
        if not is_lattice_edge(e):
            raise MalformedAnimalError(f"{e} is not a canonical unit lattice edge")
    if not _edges_connected(animal.edges):
        raise MalformedAnimalError(f"{animal.kind} animal is not connected")
    if animal.kind == "tree":
        if len(animal.vertices) != len(animal.edges) + 1:
            raise MalformedAnimalError("tree animal contains a cycle")


def _cells_connected(cells: frozenset[Vertex]) -> bool:
    start = next(iter(cells))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in neighbors(v):
            if w in cells and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(cells)


def _edges_connected(edges: frozenset[Edge]) -> bool:
    # connectivity of the subgraph spanned by the edge set
    adjacency: dict[Vertex, list[Vertex]] = {}
    for u, v in edges:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    start = next(iter(adjacency))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != len(adjacency):
        return False
    # every edge is automatically reachable once its endpoints are
    return True


# ---------------------------------------------------------------------------
# canonical (translation-normalised) forms
# ---------------------------------------------------------------------------

def canonical_cells(cells) -> frozenset[Vertex]:
    """Translate a cell set so its lexicographically smallest cell is the origin."""
    cells = [tuple(c) for c in cells]
    m = min(cells)
    return frozenset(tuple(c - o for c, o in zip(v, m)) for v in cells)


def canonical_edges(edges) -> frozenset[Edge]:
    """Translate an edge set so the lexmin endpoint is the origin."""
    edges = [undirected(tuple(u), tuple(v)) for u, v in edges]
    m = min(e[0] for e in edges)  # tails are the smaller endpoints
    out = []
    for u, v in edges:
        u2 = tuple(c - o for c, o in zip(u, m))
        v2 = tuple(c - o for c, o in zip(v, m))
        out.append((u2, v2))
    return frozenset(out)


def canonical_form(animal: LatticeAnimal) -> LatticeAnimal:
    """The lexmin-rooted translate of an animal."""
    if animal.kind == "site":
        return LatticeAnimal(animal.dimension, "site", cells=canonical_cells(animal.cells))
    return LatticeAnimal(animal.dimension, animal.kind, edges=canonical_edges(animal.edges))


# ---------------------------------------------------------------------------
# boundary statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryStats:
    size: int
    vertex_boundary: int
    edge_boundary: int


def boundary_stats(animal: LatticeAnimal) -> BoundaryStats:
    """Exact vertex- and edge-boundary sizes of an animal.

    For a site animal the edge boundary consists of the lattice edges with
    exactly one endpoint in the animal.  For a bond or tree animal it
    consists of every lattice edge that meets the animal's vertex set but
    is not one of the animal's own edges (chords across the vertex set
    therefore count as boundary).
    """
    if animal.kind == "site":
        cells = animal.cells
        vboundary: set[Vertex] = set()
        eboundary = 0
        for v in cells:
            for w in neighbors(v):
                if w not in cells:
                    vboundary.add(w)
                    eboundary += 1  # each boundary edge has exactly one end inside
        return BoundaryStats(len(cells), len(vboundary), eboundary)

    vertex_set = animal.vertices
    vboundary = set()
    touching: set[Edge] = set()
    for v in vertex_set:
        for w in neighbors(v):
            if w not in vertex_set:
                vboundary.add(w)
        touching.update(incident_edges(v))
    return BoundaryStats(len(animal.edges), len(vboundary), len(touching - animal.edges))


# ---------------------------------------------------------------------------
# 2D interfaces
# ---------------------------------------------------------------------------

def _exterior_cells(edges: frozenset[Edge]) -> set[tuple[int, int]]:
    """Unit cells reachable from outside the animal's padded bounding box.

    Cell (i, j) is the square [i, i+1] x [j, j+1].  Side-adjacent cells
    communicate iff the shared lattice edge is absent from the animal.
    """
    vertex_set = {v for e in edges for v in e}
    xs = [v[0] for v in vertex_set]
    ys = [v[1] for v in vertex_set]
    # cells touching the vertex box span [min-1, max]; pad one more ring
    x_lo, x_hi = min(xs) - 2, max(xs) + 1
    y_lo, y_hi = min(ys) - 2, max(ys) + 1
    start = (x_lo, y_lo)
    exterior = {start}
    queue = deque([start])
    while queue:
        i, j = queue.popleft()
        moves = (
            ((i + 1, j), ((i + 1, j), (i + 1, j + 1))),
            ((i - 1, j), ((i, j), (i, j + 1))),
            ((i, j + 1), ((i, j + 1), (i + 1, j + 1))),
            ((i, j - 1), ((i, j), (i + 1, j))),
        )
        for cell, shared in moves:
            ci, cj = cell
            if not (x_lo <= ci <= x_hi and y_lo <= cj <= y_hi):
                continue
            if cell in exterior or shared in edges:
                continue
            exterior.add(cell)
            queue.append(cell)
    return exterior


def _edge_side_cells(edge: Edge) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two unit cells separated by a 2D lattice edge."""
    (x, y), _ = edge
    if edge_axis(edge) == 1:  # vertical edge at x, from y to y+1
        return (x - 1, y), (x, y)
    return (x, y - 1), (x, y)  # horizontal edge from (x, y) to (x+1, y)


def is_interface_2d(animal: LatticeAnimal) -> bool:
    """True when every edge of a 2D bond animal touches the unbounded face."""
    if animal.dimension != 2 or animal.kind == "site":
        raise ValueError("interface test is defined for 2D bond/tree animals")
    exterior = _exterior_cells(animal.edges)
    for edge in animal.edges:
        c1, c2 = _edge_side_cells(edge)
        if c1 not in exterior and c2 not in exterior:
            return False
    return True


def interface_boundary_2d(animal: LatticeAnimal) -> frozenset[Edge]:
    """Edge-boundary edges of a 2D bond animal that touch the unbounded face.

    For animals whose every edge already touches the unbounded face this is
    the natural notion of the outer boundary; it is always a subset of the
    full edge boundary.
    """
    if animal.dimension != 2 or animal.kind == "site":
        raise ValueError("interface boundary is defined for 2D bond/tree animals")
    exterior = _exterior_cells(animal.edges)
    vertex_set = animal.vertices
    touching: set[Edge] = set()
    for v in vertex_set:
        touching.update(incident_edges(v))
    out = []
    for edge in touching - animal.edges:
        c1, c2 = _edge_side_cells(edge)
        if c1 in exterior or c2 in exterior:
            out.append(edge)
    return frozenset(out)
