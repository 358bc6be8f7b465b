"""Brute-force enumeration oracle for cross-checking the fast counters.

Deliberately naive and algorithm-independent from the untried-set path:
animals of size n are produced by growing every animal of size n-1 in
every possible way and deduplicating the translation-normalised results in
a set.  Memory and time are both proportional to the number of animals, so
the oracle refuses up front when a cheap a-priori estimate of the output
exceeds its cap, and bails out mid-flight if the cap is hit anyway.
"""

from __future__ import annotations

import math

from .animals import (
    LatticeAnimal,
    canonical_cells,
    canonical_edges,
    is_interface_2d,
)
from .counting import _validate_args
from .lattice import Edge, Vertex, incident_edges, neighbors


class OracleCapError(RuntimeError):
    """Predicted or actual oracle output exceeds the configured cap."""


DEFAULT_CAP = 2_000_000


def _precheck(d: int, n: int, kind: str, cap: int) -> None:
    # binary-code counting argument: a site animal of size n is pinned down
    # by which of its (2d-1)n - d + 1 growth slots fire, n - 1 of them; edge
    # kinds get the same shape of estimate one vertex larger.
    m = n if kind == "site" else n + 1
    predicted = math.comb(max((2 * d - 1) * m - d + 1, 0), max(m - 1, 0))
    if predicted > cap * 64:
        raise OracleCapError(
            f"refusing enumeration: predicted output for d={d} n={n} {kind} "
            f"may reach {predicted}, cap is {cap}"
        )


def enumerate_oracle(
    d: int,
    n: int,
    kind: str = "site",
    rooting: str = "lexmin",
    cap: int = DEFAULT_CAP,
) -> list[LatticeAnimal]:
    """Every animal of size exactly n, as an explicit list.

    With rooting="lexmin" one representative per translation class is
    returned (smallest vertex at the origin); with rooting="origin" every
    translate containing the origin is returned.
    """
    _validate_args(d, n, kind, rooting)
    _precheck(d, n, kind, cap)
    if kind == "site":
        classes = _site_level(d, n, cap)
        animals = [LatticeAnimal(d, "site", cells=c) for c in _rooted(classes, rooting, "site")]
        return animals
    level = _edge_level(d, n, cap)
    if kind == "tree":
        level = {e for e in level if _is_acyclic(e)}
    elif kind == "interface2d":
        level = {e for e in level if is_interface_2d(LatticeAnimal(2, "bond", edges=e))}
    wrapped = "bond" if kind == "interface2d" else kind
    return [LatticeAnimal(d, wrapped, edges=e) for e in _rooted(level, rooting, "edge")]


def oracle_counts(d: int, n_max: int, kind: str = "site", rooting: str = "lexmin",
                  cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Per-size counts 1..n_max computed purely by the oracle."""
    return tuple(len(enumerate_oracle(d, n, kind, rooting, cap)) for n in range(1, n_max + 1))


def _site_level(d: int, n: int, cap: int) -> set[frozenset[Vertex]]:
    level: set[frozenset[Vertex]] = {frozenset([(0,) * d])}
    for _ in range(n - 1):
        grown: set[frozenset[Vertex]] = set()
        for animal in level:
            for cell in animal:
                for nb in neighbors(cell):
                    if nb not in animal:
                        grown.add(canonical_cells(animal | {nb}))
                        if len(grown) > cap:
                            raise OracleCapError(f"oracle cap {cap} exceeded at d={d} site level")
        level = grown
    return level


def _edge_level(d: int, n: int, cap: int) -> set[frozenset[Edge]]:
    origin = (0,) * d
    level = {canonical_edges([e]) for e in incident_edges(origin)}
    for _ in range(n - 1):
        grown: set[frozenset[Edge]] = set()
        for animal in level:
            vertices = {v for e in animal for v in e}
            for v in vertices:
                for e in incident_edges(v):
                    if e not in animal:
                        grown.add(canonical_edges(animal | {e}))
                        if len(grown) > cap:
                            raise OracleCapError(f"oracle cap {cap} exceeded at d={d} edge level")
        level = grown
    return level


def _is_acyclic(edges: frozenset[Edge]) -> bool:
    vertices = {v for e in edges for v in e}
    return len(vertices) == len(edges) + 1  # connected, so acyclic iff a tree


def _rooted(classes, rooting: str, flavor: str):
    if rooting == "lexmin":
        return sorted(classes, key=sorted)
    out = []
    for cls in classes:
        if flavor == "site":
            for cell in cls:
                out.append(frozenset(tuple(c - o for c, o in zip(v, cell)) for v in cls))
        else:
            vertices = {v for e in cls for v in e}
            for w in vertices:
                moved = []
                for u, v in cls:
                    moved.append((
                        tuple(c - o for c, o in zip(u, w)),
                        tuple(c - o for c, o in zip(v, w)),
                    ))
                out.append(frozenset(moved))
    return sorted(out, key=sorted)
