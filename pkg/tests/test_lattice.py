"""Convention checks for the coordinate and edge-order layer.

Everything downstream (counting order, code bit layout) leans on two
choices fixed here: vertices compare in tuple lexicographic order, and
directed edges rank as 2*axis for the positive step, 2*axis + 1 for the
negative one.
"""

from __future__ import annotations

import pytest

from latgrowth.lattice import (
    DimensionMismatchError,
    DirectedEdge,
    check_dimension,
    directed_edge_rank,
    edge_axis,
    incident_edges,
    is_lattice_edge,
    lex_compare,
    neighbors,
    rank_to_axis_sign,
    step,
    translate,
    undirected,
)


def test_check_dimension_rejects_nonpositive():
    for bad in (0, -1, -7):
        with pytest.raises(ValueError):
            check_dimension(bad)
    check_dimension(1)
    check_dimension(9)


def test_lex_compare_rejects_mixed_dimensions():
    with pytest.raises(DimensionMismatchError):
        lex_compare((0, 0), (0, 0, 0))


def test_lex_compare_matches_tuple_order():
    assert lex_compare((0, 0), (1, 0)) < 0
    assert lex_compare((0, 1), (0, 0)) > 0
    assert lex_compare((2, 3), (2, 3)) == 0
    # first coordinate dominates
    assert lex_compare((0, 9), (1, -9)) < 0


def test_neighbor_order_is_rank_order_2d():
    assert neighbors((0, 0)) == [(1, 0), (-1, 0), (0, 1), (0, -1)]


def test_neighbor_order_is_rank_order_3d():
    assert neighbors((1, 2, 3)) == [
        (2, 2, 3),
        (0, 2, 3),
        (1, 3, 3),
        (1, 1, 3),
        (1, 2, 4),
        (1, 2, 2),
    ]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_rank_round_trip(d):
    for rank in range(2 * d):
        axis, sign = rank_to_axis_sign(rank, d)
        edge = DirectedEdge(tail=(0,) * d, axis=axis, sign=sign)
        assert directed_edge_rank(edge) == rank
    with pytest.raises(ValueError):
        rank_to_axis_sign(2 * d, d)
    with pytest.raises(ValueError):
        rank_to_axis_sign(-1, d)


def test_directed_edge_head():
    edge = DirectedEdge(tail=(3, -1), axis=1, sign=-1)
    assert edge.head == (3, -2)
    assert directed_edge_rank(edge) == 3


def test_step_and_undirected():
    assert step((0, 0, 0), 2, 1) == (0, 0, 1)
    assert undirected((1, 0), (0, 0)) == ((0, 0), (1, 0))
    assert undirected((0, 0), (1, 0)) == ((0, 0), (1, 0))


def test_incident_edges_are_canonical_and_rank_ordered():
    edges = incident_edges((0, 0))
    assert edges == [
        ((0, 0), (1, 0)),
        ((-1, 0), (0, 0)),
        ((0, 0), (0, 1)),
        ((0, -1), (0, 0)),
    ]
    assert all(e[0] <= e[1] for e in edges)


def test_edge_axis_and_validity():
    assert edge_axis(((0, 0), (1, 0))) == 0
    assert edge_axis(((2, 2), (2, 3))) == 1
    assert is_lattice_edge(((0, 0), (1, 0)))
    assert not is_lattice_edge(((0, 0), (1, 1)))  # diagonal
    assert not is_lattice_edge(((1, 0), (0, 0)))  # endpoints out of order
    assert not is_lattice_edge(((0, 0), (0, 0)))
    assert not is_lattice_edge(((0, 0), (2, 0)))  # distance two


def test_translate():
    moved = translate([(0, 0), (1, 2)], (-1, 1))
    assert set(moved) == {(-1, 1), (0, 3)}
