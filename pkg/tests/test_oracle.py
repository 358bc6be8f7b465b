"""Cross-checks between the fast counter and the naive reference enumerator.

The oracle builds animals by brute-force closure over subsets, with no
shared code or conventions beyond the lattice primitives, so agreement
here is meaningful.
"""

from __future__ import annotations

import pytest

from latgrowth.counting import count_animals
from latgrowth.oracle import OracleCapError, enumerate_oracle, oracle_counts


@pytest.mark.parametrize(
    "d,n_max,kind",
    [
        (2, 6, "site"),
        (2, 5, "bond"),
        (2, 5, "tree"),
        (2, 6, "interface2d"),
        (3, 4, "site"),
        (3, 4, "bond"),
        (3, 4, "tree"),
        (1, 4, "site"),
    ],
)
def test_fast_counter_matches_oracle_lexmin(d, n_max, kind):
    fast = count_animals(d, n_max, kind=kind)
    slow = oracle_counts(d, n_max, kind=kind)
    assert fast.counts == slow


@pytest.mark.parametrize("kind", ["site", "bond", "tree"])
def test_fast_counter_matches_oracle_origin(kind):
    fast = count_animals(2, 4, kind=kind, rooting="origin")
    slow = oracle_counts(2, 4, kind=kind, rooting="origin")
    assert fast.counts == slow


def test_enumerate_oracle_lists_canonical_forms():
    animals = enumerate_oracle(2, 3, kind="site")
    assert len(animals) == 6
    assert len(set(animals)) == 6
    for animal in animals:
        assert min(animal.cells) == (0, 0)


def test_enumerate_oracle_origin_lists_translates():
    animals = enumerate_oracle(2, 2, kind="site", rooting="origin")
    # each domino has 2 translates containing the origin
    assert len(animals) == 4
    for animal in animals:
        assert (0, 0) in animal.cells


def test_precheck_refuses_absurd_sizes():
    with pytest.raises(OracleCapError):
        oracle_counts(2, 40, kind="site")


def test_midflight_cap_triggers():
    # the subset precheck passes at this size but the walk exceeds the cap
    with pytest.raises(OracleCapError):
        enumerate_oracle(2, 3, kind="site", cap=3)


def test_explicit_cap_allows_small_runs():
    assert oracle_counts(2, 3, kind="site", cap=10_000) == (1, 2, 6)


def test_oracle_validates_arguments():
    with pytest.raises(ValueError):
        oracle_counts(0, 2)
    with pytest.raises(ValueError):
        enumerate_oracle(2, 0)
    with pytest.raises(ValueError):
        oracle_counts(2, 2, kind="blob")
