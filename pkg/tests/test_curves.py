"""Point counts of the collision curves against the double loop."""

from __future__ import annotations

import math

import pytest

from carlitz_rank.bounds import collision_count
from carlitz_rank.carlitz import CarlitzForm, FormClass, classify, enumerate_forms, normalize_last
from carlitz_rank.curves import (
    affine_count,
    curve_affine_count,
    curve_brute_counts,
    kummer_count,
    parabola_intersections,
)
from carlitz_rank.errors import ParameterOutOfRangeError, ZeroCoefficientError
from carlitz_rank.field import construct_field
from carlitz_rank.poly import Poly


def test_hand_counted_curve_over_gf5(gf5):
    # k = 1: y^2 = 1/x, with x = 1 dropped from the affine model
    assert affine_count(gf5, 1, 1, 1) == 2
    assert kummer_count(gf5, 1, 1, 1) == 4
    report = curve_affine_count(gf5, 1, 1, 1)
    assert report.m == 2 and report.genus == 0
    assert report.floor_applies and report.floor_holds
    assert not report.affine_floor_holds


@pytest.mark.parametrize("p, r", [(5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)])
def test_character_sums_match_the_double_loop(p, r):
    spec = construct_field(p, r)
    for k in range(1, spec.q - 1):
        for b, c in [(1, 1), (2 % spec.q or 1, 1), (1, spec.q - 1), (spec.q - 1, 2 % spec.q or 1)]:
            report = curve_affine_count(spec, k, b, c)
            assert (report.affine_count, report.kummer_count) == curve_brute_counts(spec, k, b, c)


def test_double_loop_slices(gf7):
    whole = curve_brute_counts(gf7, 2, 3, 5)
    halves = [curve_brute_counts(gf7, 2, 3, 5, xs) for xs in (range(0, 4), range(4, 7))]
    assert tuple(map(sum, zip(*halves))) == whole


@pytest.mark.parametrize("p, r", [(7, 1), (3, 2), (11, 1), (13, 1), (2, 4), (17, 1)])
def test_hasse_weil_floor_and_parabola_bound(p, r):
    spec = construct_field(p, r)
    for k in range(1, spec.q - 1):
        for b in range(1, spec.q):
            report = curve_affine_count(spec, k, b, 1)
            assert report.genus == (k - 1) * (math.gcd(k + 1, spec.q - 1) - 1) // 2
            assert report.parabola_count <= 3 * k + 1
            if report.floor_applies:
                assert report.floor_holds, report.floor.describe()


def test_curve_count_is_the_monomial_collision_count(gf7, gf9):
    for spec in (gf7, gf9):
        for n in (1, 2):
            for form in enumerate_forms(spec, n):
                if classify(form) is not FormClass.L1_AND_L2:
                    continue
                b = normalize_last(form).b
                for k in range(1, min(4, spec.q - 2) + 1):
                    for c in (1, spec.q - 1):
                        mu = collision_count(form, Poly.monomial(spec, k, c)).mu
                        assert mu == affine_count(spec, k, b, c), (str(form), k, c)


def test_example_collisions_over_gf9(gf9):
    form = CarlitzForm(gf9, (1, gf9.pow(5, 5), gf9.pow(5, 6), gf9.pow(5, 3), 0))
    assert classify(form) is FormClass.L1_AND_L2
    mu = collision_count(form, Poly.monomial(gf9, 2)).mu
    assert mu == 6
    assert mu == affine_count(gf9, 2, normalize_last(form).b, 1)


def test_curve_preconditions(gf7):
    with pytest.raises(ZeroCoefficientError):
        curve_affine_count(gf7, 2, 0, 1)
    with pytest.raises(ZeroCoefficientError):
        parabola_intersections(gf7, 2, 1, 0)
    with pytest.raises(ParameterOutOfRangeError):
        curve_affine_count(gf7, 6, 1, 1)
