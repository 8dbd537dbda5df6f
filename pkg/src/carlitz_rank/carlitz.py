"""carlitz_rank.carlitz — Carlitz forms, convergents, poles and Carlitz rank.

A form of length n is the coefficient tuple (a_0, ..., a_{n+1}) of

    P_n(x) = (...((a_0 x + a_1)^(q-2) + a_2)^(q-2) ... + a_n)^(q-2) + a_{n+1}

with a_0 != 0 and a_2, ..., a_n != 0 (a_1 and a_{n+1} may be zero); n counts
the inversions. Forms serialize as comma-separated element codes
``"a_0,a_1,...,a_{n+1}"``.

The convergents (alpha_k, beta_k) follow the continued-fraction recursion

    alpha_0 = 0, alpha_1 = a_0, beta_0 = 1, beta_1 = a_1
    alpha_k = a_k alpha_{k-1} + alpha_{k-2}   (same for beta), k >= 2

and give the fractional approximants R_k(x) = (alpha_{k+1} x + beta_{k+1}) /
(alpha_k x + beta_k). The form agrees with R_n off its pole set
x_k = -beta_k / alpha_k (infinity when alpha_k = 0), k = 1..n.

Carlitz rank is computed extensionally by breadth-first search over form
lengths. `RankIndex` keeps, per length, only the distinct maps reached (with
the lexicographically first form reaching each), so a level costs
|maps at the previous level| * q expansions instead of (q-1)^n q^2.
"""

from __future__ import annotations

import enum
import functools
import itertools
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Self

from .errors import (
    BudgetExceededError,
    IndexOutOfRangeError,
    MalformedFormError,
    NotAPermutationError,
    NotInL1Error,
)
from .field import INFINITY, FieldElement, FieldSpec, ProjectivePoint
from .poly import PermMap, is_permutation

logger = logging.getLogger(__name__)

DEFAULT_RANK_BUDGET = 20_000_000


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CarlitzForm:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.spec.check(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise MalformedFormError(
                f"a form needs at least (a_0, a_1), got {len(coeffs)} coefficients",
                coeffs=coeffs)
        if coeffs[0] == 0:
            raise MalformedFormError("a_0 must be nonzero", coeffs=coeffs)
        for i in range(2, len(coeffs) - 1):
            if coeffs[i] == 0:
                raise MalformedFormError(f"a_{i} must be nonzero", coeffs=coeffs)

    @classmethod
    def parse(cls, spec: FieldSpec, text: str) -> Self:
        try:
            coeffs = tuple(int(tok, 10) for tok in text.split(","))
        except ValueError as exc:
            raise MalformedFormError(f"cannot parse form {text!r}: {exc}") from None
        return cls(spec, coeffs)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 2

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class ConvergentSequence:
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def cross_determinant(self, spec: FieldSpec, k: int) -> FieldElement:
        """alpha_{k+1} beta_k - alpha_k beta_{k+1}; always +-a_0."""
        return spec.sub(spec.mul(self.alpha[k + 1], self.beta[k]),
                        spec.mul(self.alpha[k], self.beta[k + 1]))


@dataclass(frozen=True)
class FracTransform:
    """R_k(x) = (num[0] x + num[1]) / (den[0] x + den[1])."""

    spec: FieldSpec
    num: tuple[int, int]
    den: tuple[int, int]

    @property
    def is_affine(self) -> bool:
        return self.den[0] == 0

    def __call__(self, x: FieldElement) -> ProjectivePoint:
        spec = self.spec
        bottom = spec.add(spec.mul(self.den[0], x), self.den[1])
        if bottom == 0:
            return INFINITY
        top = spec.add(spec.mul(self.num[0], x), self.num[1])
        return spec.div(top, bottom)


@dataclass(frozen=True)
class PoleSet:
    points: tuple[ProjectivePoint, ...]

    @property
    def distinct(self) -> frozenset[ProjectivePoint]:
        return frozenset(self.points)

    @property
    def finite(self) -> frozenset[FieldElement]:
        return frozenset(x for x in self.points if x is not INFINITY)

    @property
    def last(self) -> ProjectivePoint | None:
        return self.points[-1] if self.points else None


@dataclass(frozen=True)
class NormalizedLast:
    """R_n(z) = (a z + b) / (z + d) with b_tilde = a d - b."""

    a: FieldElement
    b: FieldElement
    d: FieldElement
    b_tilde: FieldElement


class FormClass(str, enum.Enum):
    RANK0 = "Rank0"
    L1 = "L1"
    L1_AND_L2 = "L1andL2"
    LINEAR_APPROXIMANT = "LinearApproximant"

    @property
    def in_l1(self) -> bool:
        return self in (FormClass.L1, FormClass.L1_AND_L2)


# ---------------------------------------------------------------------------
# operations on one form
# ---------------------------------------------------------------------------


def expand_images(spec: FieldSpec, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    """Image table of P_n by nested evaluation; coefficients are trusted."""
    a0, a1 = coeffs[0], coeffs[1]
    table = [spec.add(spec.mul(a0, c), a1) for c in range(spec.q)]
    inv = spec.inv_table
    for ai in coeffs[2:]:
        row = spec.add_row(ai)
        table = [row[inv[t]] for t in table]
    return tuple(table)


def expand_form(form: CarlitzForm) -> PermMap:
    return PermMap(form.spec, expand_images(form.spec, form.coeffs))


def convergents(form: CarlitzForm) -> ConvergentSequence:
    spec, a = form.spec, form.coeffs
    alpha, beta = [0, a[0]], [1, a[1]]
    for k in range(2, form.n + 2):
        alpha.append(spec.add(spec.mul(a[k], alpha[k - 1]), alpha[k - 2]))
        beta.append(spec.add(spec.mul(a[k], beta[k - 1]), beta[k - 2]))
    return ConvergentSequence(tuple(alpha), tuple(beta))


def pole_set(form: CarlitzForm) -> PoleSet:
    spec = form.spec
    conv = convergents(form)
    points: list[ProjectivePoint] = []
    for k in range(1, form.n + 1):
        if conv.alpha[k] == 0:
            points.append(INFINITY)
        else:
            points.append(spec.neg(spec.div(conv.beta[k], conv.alpha[k])))
    return PoleSet(tuple(points))


def approximant(form: CarlitzForm, k: int) -> FracTransform:
    if not 0 <= k <= form.n:
        raise IndexOutOfRangeError(k, n=form.n)
    conv = convergents(form)
    return FracTransform(form.spec,
                         (conv.alpha[k + 1], conv.beta[k + 1]),
                         (conv.alpha[k], conv.beta[k]))


def classify(form: CarlitzForm) -> FormClass:
    if form.n == 0:
        return FormClass.RANK0
    conv = convergents(form)
    if conv.alpha[form.n] == 0:
        return FormClass.LINEAR_APPROXIMANT
    if conv.beta[form.n] == 0:
        return FormClass.L1_AND_L2
    return FormClass.L1


def normalize_last(form: CarlitzForm) -> NormalizedLast:
    if form.n == 0:
        raise NotInL1Error(f"form {form} has no inversions")
    spec, n = form.spec, form.n
    conv = convergents(form)
    alpha_n = conv.alpha[n]
    if alpha_n == 0:
        raise NotInL1Error(f"form {form} has alpha_n = 0 (linear approximant)")
    a = spec.div(conv.alpha[n + 1], alpha_n)
    b = spec.div(conv.beta[n + 1], alpha_n)
    d = spec.div(conv.beta[n], alpha_n)
    return NormalizedLast(a, b, d, spec.sub(spec.mul(a, d), b))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def count_forms(spec: FieldSpec, n: int) -> int:
    q = spec.q
    return (q - 1) * q if n == 0 else (q - 1) ** n * q * q


def _form_ranges(spec: FieldSpec, n: int) -> list[range]:
    units, everything = range(1, spec.q), range(spec.q)
    if n == 0:
        return [units, everything]
    return [units, everything] + [units] * (n - 1) + [everything]


def enumerate_forms(spec: FieldSpec, n: int, start: int = 0,
                    stop: int | None = None) -> Iterator[CarlitzForm]:
    """All forms of length n in lexicographic order, or the slice
    [start, stop) of that order (for partitioned consumers)."""
    for coeffs in enumerate_coeffs(spec, n, start, stop):
        yield CarlitzForm(spec, coeffs)


def enumerate_coeffs(spec: FieldSpec, n: int, start: int = 0,
                     stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """enumerate_forms without the per-form validation."""
    if n < 0:
        raise ValueError(f"form length must be >= 0, got {n}")
    return itertools.islice(itertools.product(*_form_ranges(spec, n)), start, stop)


# ---------------------------------------------------------------------------
# Carlitz rank
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankResult:
    """rank is None when the search saturated `cap` (not found within it)."""

    rank: int | None
    cap: int
    witness: CarlitzForm | None = None

    @property
    def found(self) -> bool:
        return self.rank is not None


class RankIndex:
    """Breadth-first map index of one field, grown a level at a time.

    ``reach[n]``     every map some length-n form expands to
    ``frontier[n]``  the maps of length-n forms whose last shift is nonzero
                     (the inner forms that may be wrapped once more)
    ``ranks``        map -> (rank, lexicographically first witness)

    Level n is {inv . M + a : M in frontier[n-1], a in F_q}; frontier[0] is
    every affine map (a_1 may be zero).
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.reach: list[dict[tuple[int, ...], tuple[int, ...]]] = []
        self.frontier: list[dict[tuple[int, ...], tuple[int, ...]]] = []
        self.ranks: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {}
        self._total = math.factorial(spec.q) if spec.q <= 20 else None

    @property
    def depth(self) -> int:
        return len(self.reach) - 1

    @property
    def complete(self) -> bool:
        """Every permutation of the field has been ranked."""
        return self._total is not None and len(self.ranks) == self._total

    def extend_to(self, n: int, budget: int = DEFAULT_RANK_BUDGET) -> None:
        while self.depth < n:
            self._grow(budget)

    def _grow(self, budget: int) -> None:
        spec, q = self.spec, self.spec.q
        level = self.depth + 1
        reach: dict[tuple[int, ...], tuple[int, ...]] = {}
        frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
        if level == 0:
            for coeffs in enumerate_coeffs(spec, 0):
                images = expand_images(spec, coeffs)
                reach.setdefault(images, coeffs)
                frontier.setdefault(images, coeffs)
        else:
            inner = self.frontier[level - 1]
            estimate = len(inner) * q
            if estimate > budget:
                raise BudgetExceededError(
                    f"rank level {level} of {spec.label}",
                    estimate=estimate, budget=budget)
            inv = spec.inv_table
            rows = [spec.add_row(a) for a in range(q)]
            for images, witness in inner.items():
                inverted = [inv[v] for v in images]
                for a in range(q):
                    row = rows[a]
                    out = tuple(row[v] for v in inverted)
                    coeffs = witness + (a,)
                    if out not in reach:
                        reach[out] = coeffs
                    if a and out not in frontier:
                        frontier[out] = coeffs
        self.reach.append(reach)
        self.frontier.append(frontier)
        fresh = 0
        for images, coeffs in reach.items():
            if images not in self.ranks:
                self.ranks[images] = (level, coeffs)
                fresh += 1
        logger.debug("%s rank level %d: %d maps reached, %d new",
                     spec.label, level, len(reach), fresh)

    def exact(self, n: int, budget: int = DEFAULT_RANK_BUDGET
              ) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Maps of rank exactly n with their witnesses."""
        self.extend_to(n, budget)
        return {images: coeffs for images, (rank, coeffs) in self.ranks.items()
                if rank == n}

    def lookup(self, images: tuple[int, ...], cap: int,
               budget: int = DEFAULT_RANK_BUDGET) -> tuple[int, tuple[int, ...]] | None:
        hit = self.ranks.get(images)
        if hit is not None and hit[0] <= cap:
            return hit
        while self.depth < cap and not self.complete:
            self._grow(budget)
            hit = self.ranks.get(images)
            if hit is not None:
                return hit
        return None


@functools.lru_cache(maxsize=32)
def rank_index(spec: FieldSpec) -> RankIndex:
    """The per-process index of `spec` (shared by every rank query)."""
    return RankIndex(spec)


def carlitz_rank(m: PermMap, cap: int | None = None,
                 budget: int = DEFAULT_RANK_BUDGET) -> RankResult:
    """Smallest n such that some length-n form expands to m, searching
    n = 0..cap (default q + 2)."""
    if not is_permutation(m):
        raise NotAPermutationError(f"map over {m.spec.label} is not a bijection")
    cap = m.spec.q + 2 if cap is None else cap
    hit = rank_index(m.spec).lookup(m.images, cap, budget)
    if hit is None:
        return RankResult(None, cap)
    rank, coeffs = hit
    return RankResult(rank, cap, CarlitzForm(m.spec, coeffs))


def permutations_of_rank(spec: FieldSpec, n: int,
                         budget: int = DEFAULT_RANK_BUDGET) -> frozenset[PermMap]:
    if n < 0:
        raise ValueError(f"rank must be >= 0, got {n}")
    return frozenset(PermMap(spec, images)
                     for images in rank_index(spec).exact(n, budget))
