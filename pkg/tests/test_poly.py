"""Polynomials, image tables, and the map predicates built on them."""

from __future__ import annotations

import itertools
import math

import galois
import numpy as np
import pytest

from carlitz_rank.errors import InvalidElementCodeError
from carlitz_rank.field import construct_field
from carlitz_rank.poly import (
    CONSTANT_DIFFERENCE,
    PermMap,
    Poly,
    difference_degree,
    eval_poly,
    interpolate,
    is_complete_mapping,
    is_permutation,
    linearity,
    to_map,
    value_multiset,
)


def test_poly_trims_and_reports_degree(gf7):
    assert Poly(gf7, (1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly(gf7, ()).degree == -1
    assert Poly(gf7, (3,)).is_constant
    assert Poly.monomial(gf7, 3, 2).coeffs == (0, 0, 0, 2)
    with pytest.raises(InvalidElementCodeError):
        Poly(gf7, (7,))


def test_poly_ring_operations(gf7):
    f = Poly(gf7, (1, 1))          # x + 1
    g = Poly(gf7, (6, 1))          # x - 1
    assert (f * g).coeffs == (6, 0, 1)   # x^2 - 1
    assert (f - f).degree == -1
    assert (f + g).coeffs == (0, 2)
    assert f.scale(3).coeffs == (3, 3)
    assert eval_poly(f * g, 3) == 1


def test_reduce_modulo_x_to_the_q_minus_x(gf5):
    # x^5 = x and x^6 = x^2 on F_5
    assert Poly.monomial(gf5, 5).reduce().coeffs == (0, 1)
    assert Poly.monomial(gf5, 6).reduce().coeffs == (0, 0, 1)
    assert to_map(Poly.monomial(gf5, 6)) == to_map(Poly.monomial(gf5, 2))


def test_interpolation_recovers_reduced_polynomials(gf7, gf9):
    for spec in (gf7, gf9):
        for coeffs in [(3,), (0, 1), (1, 0, 2), (0,) * (spec.q - 2) + (1,)]:
            f = Poly(spec, coeffs)
            assert interpolate(to_map(f)) == f


def test_interpolation_of_every_permutation_of_gf5(gf5):
    for images in itertools.permutations(range(5)):
        m = PermMap(gf5, images)
        f = interpolate(m)
        assert f.degree < 5
        assert to_map(f) == m


def test_permutation_and_complete_mapping(gf7, gf8):
    assert is_permutation(PermMap.identity(gf7))
    assert not is_permutation(PermMap(gf7, (0, 0, 1, 2, 3, 4, 5)))
    # x -> 2x: both 2x and 3x are bijections of F_7
    assert is_complete_mapping(to_map(Poly.monomial(gf7, 1, 2)))
    # in characteristic 2 the identity is never complete: x + x = 0
    assert not is_complete_mapping(PermMap.identity(gf8))
    assert is_complete_mapping(to_map(Poly.monomial(gf8, 1, 2)))


def test_difference_degree(gf7):
    f = to_map(Poly.monomial(gf7, 5))
    h = f + Poly(gf7, (0, 1, 3))
    assert difference_degree(f, h) == 2
    assert difference_degree(f, f + Poly(gf7, (4,))) is CONSTANT_DIFFERENCE
    assert difference_degree(f, f) is CONSTANT_DIFFERENCE


def test_difference_degree_rejects_mixed_fields(gf7, gf8):
    with pytest.raises(ValueError):
        difference_degree(PermMap.identity(gf7), PermMap.identity(gf8))


def test_linearity(gf7):
    assert linearity(PermMap.identity(gf7)) == 7
    assert linearity(to_map(Poly(gf7, (3, 5)))) == 7
    inversion = to_map(Poly.monomial(gf7, 5))
    assert 2 <= linearity(inversion) < 7


def test_value_multiset_counts_ordered_collisions():
    summary = value_multiset([1, 2, 2, 3, 3, 3])
    assert summary.collisions == 2 + 6
    assert summary.max_fiber == 3
    assert summary.profile() == [(1, 1), (2, 2), (3, 3)]
    assert value_multiset([]).max_fiber == 0


def test_map_length_is_checked(gf5):
    with pytest.raises(ValueError):
        PermMap(gf5, (0, 1, 2))


@pytest.mark.parametrize("p, r", [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_monomial_permutes_iff_exponent_is_coprime(p, r):
    spec = construct_field(p, r)
    for k in range(1, 2 * spec.q):
        assert is_permutation(to_map(Poly.monomial(spec, k))) == (math.gcd(k, spec.q - 1) == 1), k


def test_linearity_is_full_exactly_on_affine_maps(gf5):
    affine = {tuple(gf5.add(gf5.mul(a, c), b) for c in range(5))
              for a in range(1, 5) for b in range(5)}
    assert len(affine) == 20
    for images in itertools.permutations(range(5)):
        assert (linearity(PermMap(gf5, images)) == 5) == (images in affine), images


def test_linearity_of_the_inversion_over_gf5(gf5):
    # x^3 on F_5 meets y = x at 0, 1 and 4
    assert linearity(to_map(Poly.monomial(gf5, 3))) == 3


def test_difference_degree_is_symmetric(gf5):
    maps = [PermMap(gf5, images) for images in itertools.permutations(range(5))][::3]
    for f, h in itertools.product(maps, repeat=2):
        assert difference_degree(f, h) == difference_degree(h, f)


@pytest.mark.parametrize("p, r", [(7, 1), (2, 3), (3, 2), (5, 2)])
def test_interpolation_matches_galois_lagrange(p, r):
    spec = construct_field(p, r)
    if r == 1:
        gf = galois.GF(p)
    else:
        modulus = sum(c * p ** i for i, c in enumerate(spec.modulus))
        gf = galois.GF(spec.q, irreducible_poly=modulus)
    rng = np.random.default_rng(spec.q)
    xs = gf(np.arange(spec.q))
    for _ in range(20):
        images = tuple(int(c) for c in rng.permutation(spec.q))
        expected = galois.lagrange_poly(xs, gf(list(images)))
        high_first = [int(c) for c in expected.coeffs]
        assert interpolate(PermMap(spec, images)).coeffs == tuple(reversed(high_first))
