"""Growth-history codec: hand-worked codes, replay errors, turn bounds.

Hand cases use the d=2 direction order +x, -x, +y, -y.  The root block
has d bits (one per axis, ascending); every later block has 2d - 1 bits,
the direction back to the parent being skipped.
"""

from __future__ import annotations

import pytest

from latgrowth.animals import boundary_stats, site_animal
from latgrowth.counting import count_animals, iter_animals
from latgrowth.eden import (
    DecodeError,
    EdenCode,
    check_turn_bound,
    code_length,
    eden_decode,
    eden_encode,
    ijq_upper_bound,
    max_turns_observed,
)


def roundtrip(cells):
    code, tree = eden_encode(site_animal(cells))
    decoded, replay_tree = eden_decode(code)
    return code, tree, decoded, replay_tree


def test_single_vertex_code_is_all_zeros():
    code, tree = eden_encode(site_animal([(0, 0)]))
    assert code.bits == "00"
    assert tree.order == ((0, 0),)
    assert tree.turn_count == 0


def test_domino_codes_by_hand():
    horizontal, _ = eden_encode(site_animal([(0, 0), (1, 0)]))
    vertical, _ = eden_encode(site_animal([(0, 0), (0, 1)]))
    # root block fires +x or +y; the new vertex's block is all zeros
    assert horizontal.bits == "10" + "000"
    assert vertical.bits == "01" + "000"


def test_code_length_formula():
    assert code_length(2, 1) == 2
    assert code_length(2, 2) == 5
    assert code_length(3, 4) == 18
    for n in range(1, 7):
        cells = [(i, 0) for i in range(n)]
        code, _ = eden_encode(site_animal(cells))
        assert len(code.bits) == code_length(2, n) == 3 * n - 1
        assert code.bits.count("1") == n - 1


@pytest.mark.parametrize("d,n_max", [(2, 6), (3, 4)])
def test_roundtrip_is_identity_on_all_animals(d, n_max):
    seen_codes = set()
    for n in range(1, n_max + 1):
        for animal in iter_animals(d, n, "site"):
            code, tree = eden_encode(animal)
            decoded, replay = eden_decode(code)
            assert decoded.cells == animal.cells
            assert replay.order == tree.order
            assert len(code.bits) == code_length(d, n)
            assert code.bits.count("1") == n - 1
            seen_codes.add(code.bits)
    assert len(seen_codes) == sum(count_animals(d, n_max).counts)


def test_decode_rejects_wrong_alphabet_and_length():
    with pytest.raises(ValueError):
        EdenCode(2, "10a00")
    with pytest.raises(ValueError):
        EdenCode(2, "100")  # no n solves 3n - 1 = 3
    with pytest.raises(ValueError):
        EdenCode(0, "0")


def test_decode_rejects_wrong_ones_count():
    # length 8 means n = 3, so exactly 2 ones are required
    with pytest.raises(DecodeError):
        eden_decode(EdenCode(2, "10000000"))


def test_decode_rejects_stalled_growth():
    # nothing fires in the root block, yet a later bit claims a child
    with pytest.raises(DecodeError) as info:
        eden_decode(EdenCode(2, "00100"))
    assert info.value.bit_index == 2


def test_decode_rejects_revealing_an_occupied_vertex():
    # (0,0) grows +x and +y; (1,0) then fires +y onto the same vertex
    # that (0,1) later fires +x onto, a collision caught at reveal time
    with pytest.raises(DecodeError) as info:
        eden_decode(EdenCode(2, "11" + "010" + "100" + "000" + "000"))
    assert info.value.bit_index == 5


def test_decode_rejects_non_lexmin_root():
    # root grows +y, then (0,1) grows -x: the result contains (-1,1),
    # which precedes the root lexicographically
    with pytest.raises(DecodeError) as info:
        eden_decode(EdenCode(2, "01" + "010" + "000"))
    assert info.value.bit_index is None


def test_turn_bound_hand_cases():
    bent = check_turn_bound(site_animal([(0, 0), (1, 0), (1, 1)]))
    assert (bent.size, bent.vertex_boundary, bent.turn_count) == (3, 7, 1)
    assert bent.bound == 7 and bent.holds

    straight = check_turn_bound(site_animal([(0, 0), (1, 0), (2, 0)]))
    assert (straight.size, straight.vertex_boundary, straight.turn_count) == (3, 8, 0)
    assert straight.bound == 8 and straight.holds


@pytest.mark.parametrize("d,n_max", [(2, 6), (3, 4)])
def test_turn_bound_holds_exhaustively(d, n_max):
    for n in range(1, n_max + 1):
        for animal in iter_animals(d, n, "site"):
            check = check_turn_bound(animal)
            assert check.holds
            assert check.vertex_boundary <= check.bound
            assert check.bound == (2 * d - 2) * n - check.turn_count + 2


def test_max_turns_observed():
    assert max_turns_observed(2, 1) == 0
    assert max_turns_observed(2, 2) == 0
    assert max_turns_observed(2, 3) == 1
    assert max_turns_observed(2, 4) == 2


def test_ijq_bound_small_value_by_hand():
    # d=2, n=2, q=3: i=1 gives C(2,1) * sum_{j=0..1} C(3,j) = 2 * 4 = 8,
    # i=2 gives C(2,2) * C(3,0) = 1, total 9
    assert ijq_upper_bound(2, 2, 3) == 9


def test_ijq_bound_dominates_true_counts():
    counts = count_animals(2, 6).counts
    bounds = [ijq_upper_bound(2, n, max_turns_observed(2, n)) for n in range(1, 7)]
    assert bounds == [1, 3, 34, 338, 3210, 29847]
    for c, b in zip(counts, bounds):
        assert c <= b


def test_ijq_bound_validates_arguments():
    with pytest.raises(ValueError):
        ijq_upper_bound(2, 0, 1)
    with pytest.raises(ValueError):
        ijq_upper_bound(2, 3, -1)


def test_boundary_matches_codec_bookkeeping():
    # the codec's per-animal boundary agrees with the direct computation
    for animal in iter_animals(2, 5, "site"):
        check = check_turn_bound(animal)
        assert check.vertex_boundary == boundary_stats(animal).vertex_boundary
