"""carlitz_rank.poly — polynomials and maps over GF(q).

Two representations of a function F_q -> F_q:

    Poly      coefficient vector, lowest degree first, no trailing zeros
    PermMap   image table, images[c] = f(c) for every element code c

`to_map` and `interpolate` convert between them; the interpolant of a map is
the unique polynomial of degree < q, so degrees computed from maps (the k of
a difference f+g - f) are always taken on the reduced representative.
"""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Self

from .field import FieldElement, FieldSpec


class ConstantDifference(enum.Enum):
    """difference_degree of two maps whose difference is constant."""

    CONSTANT = "constant"


CONSTANT_DIFFERENCE = ConstantDifference.CONSTANT


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    spec: FieldSpec
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = tuple(self.spec.check(c) for c in self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, c: FieldElement = 1) -> Self:
        return cls(spec, (0,) * k + (c,))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, x: FieldElement) -> FieldElement:
        spec = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = spec.add(spec.mul(acc, x), c)
        return acc

    def __add__(self, other: Poly) -> Poly:
        spec = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(spec, tuple(spec.add(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> Poly:
        return Poly(self.spec, tuple(self.spec.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        spec = self.spec
        if not self.coeffs or not other.coeffs:
            return Poly(spec)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = spec.add(out[i + j], spec.mul(a, b))
        return Poly(spec, tuple(out))

    def scale(self, c: FieldElement) -> Poly:
        return Poly(self.spec, tuple(self.spec.mul(c, a) for a in self.coeffs))

    def reduce(self) -> Poly:
        """The representative modulo x^q - x (degree < q)."""
        q = self.spec.q
        if len(self.coeffs) <= q:
            return self
        out = [0] * q
        for e, c in enumerate(self.coeffs):
            slot = e if e < q else (e - 1) % (q - 1) + 1
            out[slot] = self.spec.add(out[slot], c)
        return Poly(self.spec, tuple(out))

    def codes(self) -> list[int]:
        return list(self.coeffs)


def eval_poly(f: Poly, x: FieldElement) -> FieldElement:
    """Horner evaluation f(x)."""
    return f(f.spec.check(x))


# ---------------------------------------------------------------------------
# PermMap
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PermMap:
    """The image table of a function F_q -> F_q (not necessarily bijective).

    Hashing is by the image tuple, so maps dedup in sets and dict keys.
    """

    spec: FieldSpec
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.spec.q:
            raise ValueError(
                f"image table has {len(self.images)} entries, "
                f"{self.spec.label} needs {self.spec.q}")

    @classmethod
    def from_codes(cls, spec: FieldSpec, codes: Iterable[int]) -> Self:
        return cls(spec, tuple(spec.check(c) for c in codes))

    @classmethod
    def identity(cls, spec: FieldSpec) -> Self:
        return cls(spec, tuple(range(spec.q)))

    def __getitem__(self, c: FieldElement) -> FieldElement:
        return self.images[c]

    def __len__(self) -> int:
        return len(self.images)

    def __add__(self, other: PermMap | Poly) -> PermMap:
        """Pointwise sum with another map or a polynomial."""
        spec = self.spec
        other_images = other.images if isinstance(other, PermMap) else to_map(other).images
        return PermMap(spec, tuple(spec.add(a, b)
                                   for a, b in zip(self.images, other_images)))

    def __sub__(self, other: PermMap) -> PermMap:
        spec = self.spec
        return PermMap(spec, tuple(spec.sub(a, b)
                                   for a, b in zip(self.images, other.images)))


@dataclass(frozen=True)
class ValueSetSummary:
    """Fiber sizes n_u of a list of values (only u with n_u >= 1)."""

    fibers: Mapping[int, int] = field(default_factory=dict)
    total: int = 0

    @property
    def collisions(self) -> int:
        """Ordered pairs of distinct inputs with equal value: sum n_u(n_u - 1)."""
        return sum(n * (n - 1) for n in self.fibers.values())

    @property
    def max_fiber(self) -> int:
        return max(self.fibers.values(), default=0)

    def profile(self) -> list[tuple[int, int]]:
        """(u, n_u) pairs sorted by value code."""
        return sorted(self.fibers.items())


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def to_map(f: Poly) -> PermMap:
    return PermMap(f.spec, tuple(f(c) for c in range(f.spec.q)))


def interpolate(m: PermMap) -> Poly:
    """The unique polynomial of degree < q whose map is m.

    Uses f(x) = sum_c f(c) (1 - (x - c)^(q-1)): the constant term is f(0) and
    for 1 <= j <= q-1 the x^j coefficient is -sum_c f(c) c^(q-1-j) with
    0^0 = 1.
    """
    spec = m.spec
    q = spec.q
    coeffs = [m[0]] + [0] * (q - 1)
    for j in range(1, q):
        e = q - 1 - j
        acc = 0
        for c, fc in enumerate(m.images):
            if fc and (c or e == 0):
                acc = spec.add(acc, spec.mul(fc, spec.pow(c, e)))
        coeffs[j] = spec.neg(acc)
    return Poly(spec, tuple(coeffs))


def is_permutation(m: PermMap) -> bool:
    seen = bytearray(m.spec.q)
    for v in m.images:
        if seen[v]:
            return False
        seen[v] = 1
    return True


def is_complete_mapping(m: PermMap) -> bool:
    """m and c -> m[c] + c are both bijections."""
    if not is_permutation(m):
        return False
    return is_permutation(m + PermMap.identity(m.spec))


def difference_degree(f: PermMap, h: PermMap) -> int | ConstantDifference:
    """Degree of the reduced interpolant of h - f."""
    if f.spec != h.spec:
        raise ValueError("maps over different fields")
    degree = interpolate(h - f).degree
    return CONSTANT_DIFFERENCE if degree <= 0 else degree


def linearity(m: PermMap) -> int:
    """Most graph points of m on one non-vertical line y = ax + b.

    For each base point the other points are tallied by the slope of the
    chord through it; the best line through the base holds 1 + the largest
    tally.
    """
    spec = m.spec
    q = spec.q
    best = 1
    images = m.images
    for c1 in range(q):
        f1 = images[c1]
        slopes: Counter[int] = Counter()
        for c2 in range(c1 + 1, q):
            slope = spec.div(spec.sub(images[c2], f1), spec.sub(c2, c1))
            slopes[slope] += 1
        if slopes:
            best = max(best, 1 + max(slopes.values()))
    return best


def value_multiset(values: Iterable[FieldElement]) -> ValueSetSummary:
    counts = Counter(values)
    return ValueSetSummary(dict(sorted(counts.items())), sum(counts.values()))
