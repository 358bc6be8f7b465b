"""Analytic machinery: extremal function, strata caps, certificates, series.

Float anchors in this file are frozen outputs of this implementation,
cross-checked by hand or against exact rationals where one exists.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from latgrowth.bounds import (
    Bound,
    cap_envelope,
    crude_growth_upper,
    evaluate_expansion,
    expansion_names,
    format_bound,
    growth_from_ratio,
    growth_lower_from_threshold_upper,
    kesten_certificate,
    kesten_growth_upper,
    probability_from_ratio,
    ratio_from_growth,
    ratio_from_probability,
    refined_growth_upper,
    refined_threshold_lower,
    stratum_growth_cap,
    threshold_lower_from_growth_upper,
)

BOND_D2_ORIGIN = (4, 18, 88, 439, 2224, 11342, 58168, 299287)


# ---------------------------------------------------------------------------
# the extremal function and its inverses
# ---------------------------------------------------------------------------

def test_growth_from_ratio_exact_anchors():
    assert growth_from_ratio(0.0) == 1.0
    assert growth_from_ratio(1.0) == 4.0
    assert growth_from_ratio(2.0) == 6.75


def test_growth_from_ratio_is_increasing_and_dominates_linear():
    grid = sorted([k / 64 for k in range(1, 2048)] + [10.0 ** k for k in range(2, 9)])
    prev = 1.0
    for r in grid:
        a = growth_from_ratio(r)
        assert a > prev
        assert a >= r + 1.0
        prev = a


def test_growth_from_ratio_rejects_negative():
    with pytest.raises(ValueError):
        growth_from_ratio(-0.5)


def test_ratio_from_growth_round_trip():
    for r in [0.0, 1e-6, 0.01, 0.5, 1.0, 2.0, 5.0, 17.3, 50.0, 100.0]:
        assert ratio_from_growth(growth_from_ratio(r)) == pytest.approx(r, abs=1e-10)


def test_ratio_from_growth_domain():
    assert ratio_from_growth(1.0) == 0.0
    with pytest.raises(ValueError):
        ratio_from_growth(0.999)


def test_odds_maps_are_mutually_inverse():
    for k in range(1, 99):
        p = k / 100
        assert probability_from_ratio(ratio_from_probability(p)) == pytest.approx(p, rel=1e-14)
    with pytest.raises(ValueError):
        ratio_from_probability(0.0)
    with pytest.raises(ValueError):
        ratio_from_probability(1.0)
    with pytest.raises(ValueError):
        probability_from_ratio(0.0)


# ---------------------------------------------------------------------------
# the growth <-> threshold translation
# ---------------------------------------------------------------------------

def test_threshold_from_growth_anchor():
    bound = threshold_lower_from_growth_upper(9.3835, flavor="site", dimension=3)
    assert bound.value == pytest.approx(0.25226535852531906, rel=1e-12)
    assert bound.direction == "lower"
    assert format_bound(bound.value, "lower", decimals=4) == "0.2522"


def test_growth_from_threshold_anchor():
    bound = growth_lower_from_threshold_upper(0.69704, flavor="site", dimension=2)
    assert bound.value == pytest.approx(2.410748499768744, rel=1e-12)
    assert format_bound(bound.value, "lower", sig_figs=5) == "2.4107"


def test_translation_round_trip():
    for a in [1.5, 2.0, 4.0, 6.75, 9.3835, 50.0]:
        thr = threshold_lower_from_growth_upper(a)
        back = growth_lower_from_threshold_upper(thr.value)
        assert back.value == pytest.approx(a, rel=1e-9)


def test_translation_rejects_vacuous_growth():
    with pytest.raises(ValueError):
        threshold_lower_from_growth_upper(1.0)
    with pytest.raises(ValueError):
        threshold_lower_from_growth_upper(0.5)


def test_translation_threads_bound_metadata():
    src = Bound("site-animal-growth", 3, 9.3835, "upper", "rigorous", ("counting",))
    out = threshold_lower_from_growth_upper(src)
    assert out.dimension == 3
    assert out.provenance[0] == "counting"
    assert out.quantity == "site-percolation-threshold"
    with pytest.raises(ValueError):
        threshold_lower_from_growth_upper(
            Bound("x", 2, 4.0, "lower", "rigorous", ("y",))
        )
    with pytest.raises(ValueError):
        threshold_lower_from_growth_upper(4.0, flavor="face")


def test_bound_validation_and_dict_shape():
    with pytest.raises(ValueError):
        Bound("q", 2, 1.0, "sideways", "rigorous", ("t",))
    with pytest.raises(ValueError):
        Bound("q", 2, 1.0, "upper", "rigorous", ())
    d = Bound("q", 2, 1.0, "upper", "rigorous", ("t",)).as_dict()
    assert sorted(d) == ["d", "direction", "provenance", "quantity", "rigor", "value"]


# ---------------------------------------------------------------------------
# stratum caps and the refined bounds
# ---------------------------------------------------------------------------

def test_stratum_cap_endpoint_identities():
    for d in range(2, 11):
        assert stratum_growth_cap(d, 0.0) == 1.0
        left = stratum_growth_cap(d, 1.0)
        right = 2.0 * growth_from_ratio(2 * d - 2)
        assert abs(left - right) <= 1e-13 * right


def test_stratum_cap_is_at_least_one_and_continuous_at_half():
    for d in range(2, 11):
        for k in range(0, 101):
            assert stratum_growth_cap(d, k / 100) >= 1.0
        below = stratum_growth_cap(d, 0.5 - 1e-9)
        above = stratum_growth_cap(d, 0.5 + 1e-9)
        assert abs(below - above) <= 1e-6 * above


def test_stratum_cap_domain():
    with pytest.raises(ValueError):
        stratum_growth_cap(1, 0.5)
    with pytest.raises(ValueError):
        stratum_growth_cap(2, -0.01)
    with pytest.raises(ValueError):
        stratum_growth_cap(2, 1.01)


def test_envelope_dominates_stratum_cap():
    for d in range(2, 13):
        for k in range(0, 201):
            x = k / 200
            assert cap_envelope(d, 2.0, x) >= stratum_growth_cap(d, x)


def test_envelope_validation():
    with pytest.raises(ValueError):
        cap_envelope(2, 0.0, 0.5)
    with pytest.raises(ValueError):
        cap_envelope(1, 2.0, 0.5)


def test_refined_growth_upper_small_dimension_is_flagged():
    ref = refined_growth_upper(3)
    assert not ref.applicable
    assert ref.cutoff == pytest.approx(-1.8853900817779268, rel=1e-12)
    assert ref.value == pytest.approx(17.33952855866429, rel=1e-12)
    with pytest.raises(ValueError):
        ref.bound()


def test_refined_threshold_lower_small_dimension_is_flagged():
    ref = refined_threshold_lower(3)
    assert not ref.applicable
    assert ref.value == pytest.approx(0.1452350539508987, rel=1e-12)
    with pytest.raises(ValueError):
        ref.bound()


def test_refined_bounds_kick_in_at_high_dimension():
    ref = refined_threshold_lower(29)
    assert ref.applicable
    assert ref.value == pytest.approx(0.017545798307897258, rel=1e-12)
    bound = ref.bound()
    assert bound.direction == "lower"
    # once applicable, the refinement beats the trivial 1/(2d - 1)
    assert bound.value > 1.0 / (2 * 29 - 1)
    growth = refined_growth_upper(29)
    assert growth.applicable
    assert growth.bound().value < crude_growth_upper(29).value


def test_refined_applicability_threshold_in_dimension():
    # cutoff > 0 requires log(2d - 2) > slack^2 = 4, i.e. 2d - 2 > e^4
    first = min(d for d in range(2, 60) if refined_growth_upper(d).applicable)
    assert first == 29
    assert not refined_growth_upper(28).applicable


def test_refined_validation():
    with pytest.raises(ValueError):
        refined_growth_upper(1)
    with pytest.raises(ValueError):
        refined_growth_upper(3, slack=0.0)
    with pytest.raises(ValueError):
        refined_threshold_lower(3, slack=-1.0)


# ---------------------------------------------------------------------------
# crude and certificate bounds
# ---------------------------------------------------------------------------

def test_crude_growth_upper_is_exact_rational_at_d3():
    bound = crude_growth_upper(3)
    assert bound.value == 12.20703125
    assert Fraction(bound.value) == Fraction(3125, 256)


def test_crude_equals_certificate_limit_for_all_dimensions():
    for d in range(2, 51):
        assert crude_growth_upper(d).value == kesten_growth_upper(d).value


def test_certificate_bound_validation():
    with pytest.raises(ValueError):
        kesten_growth_upper(1)
    with pytest.raises(ValueError):
        kesten_growth_upper(2, kind="tree")


def test_kesten_certificate_exact_weights():
    rows = kesten_certificate(BOND_D2_ORIGIN, dimension=2, p=Fraction(1, 3))
    assert rows[0].weight == Fraction(256, 2187)
    assert all(isinstance(row.weight, Fraction) for row in rows)
    assert all(row.holds for row in rows)
    assert max(row.weight for row in rows) < 1
    # the weights decay: each extra edge multiplies by at most
    # (count ratio) * p * (1-p)^2 which stays below 1 on this table
    assert rows[-1].weight < rows[0].weight


def test_kesten_certificate_rejects_bad_probability():
    with pytest.raises(ValueError):
        kesten_certificate((4,), p=Fraction(0))
    with pytest.raises(ValueError):
        kesten_certificate((4,), p=Fraction(3, 2))


def test_kesten_certificate_flags_violations():
    rows = kesten_certificate((10**9,), dimension=2, p=Fraction(1, 3))
    assert not rows[0].holds


# ---------------------------------------------------------------------------
# the expansion registry
# ---------------------------------------------------------------------------

def test_registry_contents():
    names = expansion_names()
    assert names == sorted(names)
    assert len(names) == 7
    assert "bond-threshold-series" in names
    assert "site-animal-growth-two-term" in names


def test_inverse_series_values_at_d3():
    assert evaluate_expansion("bond-threshold-series", 3) == pytest.approx(
        0.2106481481481481, rel=1e-14
    )
    assert evaluate_expansion("site-threshold-series", 3) == pytest.approx(
        0.27199074074074076, rel=1e-14
    )
    assert evaluate_expansion("site-threshold-series-sigma", 3) == pytest.approx(
        0.3232, rel=1e-14
    )


def test_affine_expansions_are_exact():
    assert evaluate_expansion("interface-growth-two-term", 5) == 8.5 * math.e
    assert evaluate_expansion("site-animal-growth-two-term", 5) == 7.0 * math.e


def test_tree_growth_sits_below_bond_animal_growth():
    for d in range(4, 12):
        tree = evaluate_expansion("tree-growth-series", d)
        bond = evaluate_expansion("bond-animal-growth-series", d)
        assert tree < bond


def test_expansion_errors():
    with pytest.raises(ValueError) as info:
        evaluate_expansion("nope", 3)
    assert "bond-threshold-series" in str(info.value)
    with pytest.raises(ValueError):
        evaluate_expansion("bond-threshold-series", 1)


# ---------------------------------------------------------------------------
# conservative formatting
# ---------------------------------------------------------------------------

def test_format_bound_truncates_toward_safety():
    assert format_bound(0.25226535852531906, "lower", decimals=4) == "0.2522"
    assert format_bound(0.25226535852531906, "upper", decimals=4) == "0.2523"
    assert format_bound(math.pi, "lower", sig_figs=4) == "3.141"
    assert format_bound(math.pi, "upper", sig_figs=4) == "3.142"


def test_format_bound_negative_and_carry_cases():
    assert format_bound(-0.005, "lower", decimals=2) == "-0.01"
    assert format_bound(0.995, "upper", decimals=2) == "1.00"
    assert format_bound(-1e-30, "upper", decimals=4) == "0.0000"


def test_format_bound_defaults_and_zero():
    assert format_bound(6.75, "lower") == "6.75000000000"
    assert format_bound(0.0, "upper") == "0"


def test_format_bound_argument_validation():
    with pytest.raises(ValueError):
        format_bound(1.0, "both")
    with pytest.raises(ValueError):
        format_bound(1.0, "lower", decimals=3, sig_figs=3)
