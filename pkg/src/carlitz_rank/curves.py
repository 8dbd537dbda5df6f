"""carlitz_rank.curves — point counts on the collision curves.

For g = c x^k and f with last pole 0, ordered collisions of f + g correspond
to the points (x, y) in F_q* x F_q* of

    y^(k+1) = b (x - 1) / (c x (x^k - 1))                    (affine model)

which is a Kummer cover of the x-line with m = gcd(k+1, q-1) sheets and
genus (k-1)(m-1)/2. Each x contributes m points when the right side is an
m-th power and none otherwise, so both counts below are O(q) character sums.

    affine_count   the model exactly as written (x^k = 1 excluded, so x = 1
                   never contributes); equals the collision count mu
    kummer_count   the reduced model y^(k+1) = b / (c x Phi(x)) with
                   Phi(x) = 1 + x + ... + x^(k-1), which keeps the points
                   over x = 1; the Hasse-Weil floor
                   q - (k-1)(m-1) sqrt(q) - k is checked against this count

The brute-force double loop is kept here as the oracle both for tests and
for the curve sweep; it accepts an x-slice so sweeps can be partitioned.
"""

from __future__ import annotations

import math

from pydantic import BaseModel

from .bounds import SqrtInequality, exceeds_surd
from .errors import ParameterOutOfRangeError, ZeroCoefficientError
from .field import FieldElement, FieldSpec


class CurveCountReport(BaseModel):
    model_config = {"frozen": True}

    q: int
    k: int
    b: int
    c: int
    m: int
    genus: int
    affine_count: int
    kummer_count: int
    parabola_count: int
    parabola_bound: int
    floor: SqrtInequality
    floor_positive: bool
    floor_applies: bool
    floor_holds: bool
    affine_floor_holds: bool


def _check(spec: FieldSpec, k: int, b: FieldElement, c: FieldElement) -> None:
    spec.check(b)
    spec.check(c)
    if b == 0 or c == 0:
        raise ZeroCoefficientError(b=b, c=c)
    if not 1 <= k < spec.q - 1:
        raise ParameterOutOfRangeError(f"k = {k} outside 1..{spec.q - 2}", k=k)


def _phi(spec: FieldSpec, x: FieldElement, k: int) -> FieldElement:
    acc = 0
    for _ in range(k):
        acc = spec.add(spec.mul(acc, x), 1)
    return acc


def _residue_points(spec: FieldSpec, v: FieldElement, m: int) -> int:
    return m if spec.pow(v, (spec.q - 1) // m) == 1 else 0


def affine_count(spec: FieldSpec, k: int, b: FieldElement, c: FieldElement) -> int:
    m = math.gcd(k + 1, spec.q - 1)
    total = 0
    for x in range(1, spec.q):
        xk1 = spec.sub(spec.pow(x, k), 1)
        if xk1 == 0:
            continue
        v = spec.div(spec.mul(b, spec.sub(x, 1)), spec.mul(c, spec.mul(x, xk1)))
        if v:
            total += _residue_points(spec, v, m)
    return total


def kummer_count(spec: FieldSpec, k: int, b: FieldElement, c: FieldElement) -> int:
    m = math.gcd(k + 1, spec.q - 1)
    total = 0
    for x in range(1, spec.q):
        phi = _phi(spec, x, k)
        if phi == 0:
            continue
        total += _residue_points(spec, spec.div(b, spec.mul(c, spec.mul(x, phi))), m)
    return total


def parabola_intersections(spec: FieldSpec, k: int, b: FieldElement,
                           c: FieldElement) -> int:
    """gamma with (gamma^2, gamma) on the affine model: gamma != 0,
    gamma^(2k) != 1 and c gamma^(k+3) (gamma^(2k) - 1) = b (gamma^2 - 1)."""
    _check(spec, k, b, c)
    count = 0
    for gamma in range(1, spec.q):
        g2k1 = spec.sub(spec.pow(gamma, 2 * k), 1)
        if g2k1 == 0:
            continue
        left = spec.mul(c, spec.mul(spec.pow(gamma, k + 3), g2k1))
        right = spec.mul(b, spec.sub(spec.pow(gamma, 2), 1))
        if left == right:
            count += 1
    return count


def curve_affine_count(spec: FieldSpec, k: int, b: FieldElement,
                       c: FieldElement) -> CurveCountReport:
    _check(spec, k, b, c)
    q = spec.q
    m = math.gcd(k + 1, q - 1)
    surd = (k - 1) * (m - 1)
    affine = affine_count(spec, k, b, c)
    kummer = kummer_count(spec, k, b, c)
    floor = SqrtInequality(A=kummer, B=surd, C=q - k, q=q)
    positive = exceeds_surd(q - k, surd, q, strict=True)
    return CurveCountReport(
        q=q, k=k, b=b, c=c, m=m, genus=surd // 2,
        affine_count=affine, kummer_count=kummer,
        parabola_count=parabola_intersections(spec, k, b, c),
        parabola_bound=3 * k + 1,
        floor=floor, floor_positive=positive,
        floor_applies=positive and m >= 2,
        floor_holds=floor.holds,
        affine_floor_holds=SqrtInequality(A=affine, B=surd, C=q - k, q=q).holds)


def curve_brute_counts(spec: FieldSpec, k: int, b: FieldElement, c: FieldElement,
                       xs: range | None = None) -> tuple[int, int]:
    """(affine, kummer) by scanning every (x, y) with denominators cleared."""
    powers = [spec.pow(y, k + 1) for y in range(spec.q)]
    affine = kummer = 0
    for x in (xs if xs is not None else range(1, spec.q)):
        if x == 0:
            continue
        xk1 = spec.sub(spec.pow(x, k), 1)
        phi = _phi(spec, x, k)
        affine_rhs = spec.mul(b, spec.sub(x, 1))
        affine_den = spec.mul(c, spec.mul(x, xk1))
        kummer_den = spec.mul(c, spec.mul(x, phi))
        for y in range(1, spec.q):
            yk = powers[y]
            if xk1 and spec.mul(yk, affine_den) == affine_rhs:
                affine += 1
            if phi and spec.mul(yk, kummer_den) == b:
                kummer += 1
    return affine, kummer
