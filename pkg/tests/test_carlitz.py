"""Carlitz forms: expansion, convergents, poles, classes and rank."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from carlitz_rank.carlitz import (
    CarlitzForm,
    FormClass,
    approximant,
    carlitz_rank,
    classify,
    convergents,
    count_forms,
    enumerate_forms,
    expand_form,
    normalize_last,
    permutations_of_rank,
    pole_set,
    rank_index,
)
from carlitz_rank.errors import (
    IndexOutOfRangeError,
    MalformedFormError,
    NotAPermutationError,
    NotInL1Error,
)
from carlitz_rank.field import INFINITY, construct_field
from carlitz_rank.poly import PermMap, Poly, is_permutation, to_map


@pytest.mark.parametrize("coeffs", [(0, 1), (1,), (1, 0, 0, 0), (2, 1, 3, 0, 5, 1)])
def test_malformed_forms(gf7, coeffs):
    with pytest.raises(MalformedFormError):
        CarlitzForm(gf7, coeffs)


def test_parse_and_str(gf7):
    form = CarlitzForm.parse(gf7, "1,0,1,0")
    assert form.coeffs == (1, 0, 1, 0)
    assert form.n == 2
    assert str(form) == "1,0,1,0"
    with pytest.raises(MalformedFormError):
        CarlitzForm.parse(gf7, "1,x")


def test_expansion_of_small_forms(gf5, gf7):
    # one inversion: x^(q-2)
    assert expand_form(CarlitzForm(gf5, (1, 0, 0))) == to_map(Poly.monomial(gf5, 3))
    # rank 0: the affine map 3x + 2
    assert expand_form(CarlitzForm(gf7, (3, 2))) == to_map(Poly(gf7, (2, 3)))
    # 1 / (1/x + 1): fixes 0 -> 1 and 6 -> 0, x / (x + 1) elsewhere
    f = expand_form(CarlitzForm(gf7, (1, 0, 1, 0)))
    assert f[0] == 1 and f[6] == 0
    assert f[2] == gf7.div(2, 3)


def test_every_form_expands_to_a_permutation(gf5):
    for n in range(3):
        assert all(is_permutation(expand_form(form)) for form in enumerate_forms(gf5, n))


def test_convergents_and_cross_determinant(gf7):
    form = CarlitzForm(gf7, (3, 4, 2, 5, 1))
    conv = convergents(form)
    assert conv.alpha[:2] == (0, 3) and conv.beta[:2] == (1, 4)
    for k in range(form.n + 1):
        assert conv.cross_determinant(gf7, k) in (3, gf7.neg(3))


def test_poles_and_normalization(gf7):
    form = CarlitzForm(gf7, (1, 0, 1, 0))
    assert pole_set(form).points == (0, 6)
    assert pole_set(form).last == 6
    norm = normalize_last(form)
    assert (norm.a, norm.b, norm.d, norm.b_tilde) == (1, 0, 1, 1)
    assert approximant(form, 2).num == (1, 0)
    assert approximant(form, 2)(6) is INFINITY


def _agrees_off_the_poles(form):
    f = expand_form(form)
    r_n = approximant(form, form.n)
    poles = pole_set(form).finite
    return all(f[x] == r_n(x) for x in range(form.spec.q) if x not in poles)


@pytest.mark.parametrize("p, n_max", [(5, 2), (7, 3)])
def test_forms_agree_with_their_last_approximant_off_the_poles(p, n_max):
    spec = construct_field(p)
    for n in range(1, n_max + 1):
        for form in enumerate_forms(spec, n):
            assert _agrees_off_the_poles(form), str(form)
            assert len(pole_set(form).distinct) <= n


def _random_form(spec, rng, n):
    q = spec.q
    coeffs = ([int(rng.integers(1, q)), int(rng.integers(0, q))]
              + [int(c) for c in rng.integers(1, q, size=n - 1)]
              + [int(rng.integers(0, q))])
    return CarlitzForm(spec, tuple(coeffs))


@pytest.mark.parametrize("p, r", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_random_forms_agree_off_at_most_n_poles(p, r):
    spec = construct_field(p, r)
    rng = np.random.default_rng(1000 * p + r)
    for _ in range(1000):
        form = _random_form(spec, rng, int(rng.integers(1, 7)))
        assert len(pole_set(form).distinct) <= form.n
        assert _agrees_off_the_poles(form), str(form)


def test_approximant_index_range(gf7):
    form = CarlitzForm(gf7, (1, 0, 1, 0))
    with pytest.raises(IndexOutOfRangeError):
        approximant(form, 3)
    with pytest.raises(IndexOutOfRangeError):
        approximant(form, -1)


def test_classification(gf7):
    assert classify(CarlitzForm(gf7, (3, 2))) is FormClass.RANK0
    assert classify(CarlitzForm(gf7, (1, 0, 0))) is FormClass.L1_AND_L2
    assert classify(CarlitzForm(gf7, (1, 0, 1, 0))) is FormClass.L1
    # alpha_3 = a_0 (a_2 a_3 + 1) = 0 when a_2 a_3 = -1
    linear = CarlitzForm(gf7, (1, 0, 1, 6, 0))
    assert classify(linear) is FormClass.LINEAR_APPROXIMANT
    assert pole_set(linear).last is INFINITY
    assert approximant(linear, 3).is_affine
    with pytest.raises(NotInL1Error):
        normalize_last(linear)
    with pytest.raises(NotInL1Error):
        normalize_last(CarlitzForm(gf7, (3, 2)))


def test_counting_and_slicing_forms(gf5):
    assert count_forms(gf5, 0) == 20
    assert count_forms(gf5, 2) == 400
    every = list(enumerate_forms(gf5, 2))
    assert len(every) == 400
    assert list(enumerate_forms(gf5, 2, 10, 20)) == every[10:20]
    with pytest.raises(ValueError):
        list(enumerate_forms(gf5, -1))


def test_rank_of_small_maps(gf5, gf7):
    assert carlitz_rank(PermMap.identity(gf7)).rank == 0
    inversion = carlitz_rank(to_map(Poly.monomial(gf5, 3)))
    assert inversion.rank == 1
    assert inversion.witness.coeffs == (1, 0, 0)
    assert carlitz_rank(expand_form(CarlitzForm(gf7, (1, 0, 1, 0)))).rank == 2


def test_rank_search_saturates_its_cap(gf7):
    result = carlitz_rank(expand_form(CarlitzForm(gf7, (1, 0, 1, 0))), cap=1)
    assert result.rank is None and not result.found and result.cap == 1


def test_rank_needs_a_permutation(gf5):
    with pytest.raises(NotAPermutationError):
        carlitz_rank(PermMap(gf5, (0, 0, 1, 2, 3)))


def test_rank_classes_of_gf5_and_gf7(gf5, gf7):
    # affine maps, then a * inv(x + b) + c
    assert len(permutations_of_rank(gf5, 0)) == 20
    assert len(permutations_of_rank(gf5, 1)) == 100
    assert rank_index(gf5).complete
    assert len(permutations_of_rank(gf7, 0)) == 42
    assert len(permutations_of_rank(gf7, 1)) == 294


@pytest.mark.parametrize("p, r", [(2, 2), (5, 1)])
def test_every_permutation_is_ranked_within_six(p, r):
    spec = construct_field(p, r)
    ranks = {}
    for images in itertools.permutations(range(spec.q)):
        result = carlitz_rank(PermMap(spec, images), cap=6)
        assert result.found
        ranks[images] = result.rank
    levels = [permutations_of_rank(spec, n) for n in range(max(ranks.values()) + 1)]
    assert sum(len(level) for level in levels) == math.factorial(spec.q)
    assert {m.images for m in frozenset().union(*levels)} == set(ranks)


def test_witness_expands_to_the_ranked_map(gf7):
    for m in permutations_of_rank(gf7, 2):
        result = carlitz_rank(m)
        assert result.rank == 2
        assert expand_form(result.witness) == m
        break
