"""carlitz_rank.field — exact arithmetic in GF(p^r).

A field is built once per (p, r) and is immutable afterwards. Elements are
plain ``int`` codes in ``[0, q)``: the little-endian base-p digits of a code
are the coefficients (c_0, ..., c_{r-1}) of its representative polynomial
modulo the canonical modulus, so code 0 is zero and code 1 is one.

The canonical modulus is the monic irreducible of degree r over GF(p) whose
low coefficient vector (c_0, ..., c_{r-1}) has the smallest code. It is
stored with its leading 1, so ``modulus`` has r + 1 entries; for r = 1 it is
``(0, 1)``, the polynomial x, which is never used for reduction.

Arithmetic strategy:

    q <= 2**16      discrete log / antilog tables (O(1) mul, inv, pow)
    q <= 256        additionally a full addition table
    otherwise       schoolbook polynomial arithmetic on the digit vectors

The field size cap is read from ``CARLITZ_RANK_FIELD_CAP`` (default 2**20).
"""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass, field
from typing import Literal

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .errors import (
    FieldTooLargeError,
    FieldTooSmallError,
    InvalidElementCodeError,
    MNotDividingGroupOrderError,
    NonPrimeCharacteristicError,
    ZeroInputError,
)

FieldElement = int

FIELD_CAP_ENV = "CARLITZ_RANK_FIELD_CAP"
DEFAULT_FIELD_CAP = 1 << 20
LOG_TABLE_CAP = 1 << 16
ADD_TABLE_CAP = 256


def field_size_cap() -> int:
    """The largest q construct_field accepts: ``$CARLITZ_RANK_FIELD_CAP`` or
    2**20. A malformed value falls back to the default."""
    raw = os.environ.get(FIELD_CAP_ENV)
    if raw:
        try:
            return int(raw, 0)
        except ValueError:
            pass
    return DEFAULT_FIELD_CAP


# ---------------------------------------------------------------------------
# the projective line
# ---------------------------------------------------------------------------


class Infinity(enum.Enum):
    """The point at infinity of P^1(F_q); never a field element."""

    POINT = "inf"

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = Infinity.POINT

ProjectivePoint = FieldElement | Infinity


# ---------------------------------------------------------------------------
# digit plumbing
# ---------------------------------------------------------------------------


def _digits(code: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        code, d = divmod(code, p)
        out.append(d)
    return out


def _from_digits(digits: list[int] | tuple[int, ...], p: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * p + d
    return code


def _canonical_modulus(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree r over GF(p)."""
    for code in range(p ** r):
        low = _digits(code, p, r)
        dense = [ZZ(1)] + [ZZ(c) for c in reversed(low)]
        if gf_irreducible_p(dense, p, ZZ):
            return tuple(low) + (1,)
    raise AssertionError(f"no irreducible of degree {r} over GF({p})")


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^r) with its canonical modulus and precomputed tables.

    The arithmetic methods trust their inputs (they run inside the q^2
    loops); the module-level operations validate element codes first.
    Equality and hashing use (p, r, modulus) only.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    _exp: tuple[int, ...] | None = field(default=None, repr=False)
    _log: tuple[int, ...] | None = field(default=None, repr=False)
    _add: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    _neg: tuple[int, ...] = field(default=(), repr=False)
    _inv: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def label(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.modulus))

    def __reduce__(self):
        # workers rebuild (and cache) the tables instead of unpickling them
        return (construct_field, (self.p, self.r))

    # -- validation ---------------------------------------------------------

    def check(self, x: object) -> FieldElement:
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < self.q:
            raise InvalidElementCodeError(x, q=self.q)
        return x

    def digits(self, x: FieldElement) -> list[int]:
        return _digits(x, self.p, self.r)

    # -- additive group -----------------------------------------------------

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if self._add is not None:
            return self._add[x][y]
        if self.p == 2:
            return x ^ y
        if self.r == 1:
            return (x + y) % self.p
        p, out, place = self.p, 0, 1
        while x or y:
            out += ((x % p + y % p) % p) * place
            x //= p
            y //= p
            place *= p
        return out

    def neg(self, x: FieldElement) -> FieldElement:
        if self._neg:
            return self._neg[x]
        return self._neg_slow(x)

    def _neg_slow(self, x: FieldElement) -> FieldElement:
        if self.p == 2:
            return x
        return _from_digits([(-d) % self.p for d in self.digits(x)], self.p)

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.add(x, self.neg(y))

    def add_row(self, a: FieldElement) -> tuple[int, ...]:
        """The translation table c -> c + a."""
        if self._add is not None:
            return self._add[a]
        return tuple(self.add(c, a) for c in range(self.q))

    # -- multiplicative group -----------------------------------------------

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if x == 0 or y == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[x] + self._log[y]]
        return self._mul_slow(x, y)

    def _mul_slow(self, x: FieldElement, y: FieldElement) -> FieldElement:
        p, r = self.p, self.r
        if r == 1:
            return x * y % p
        a, b = _digits(x, p, r), _digits(y, p, r)
        prod = [0] * (2 * r - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for deg in range(2 * r - 2, r - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i in range(r):
                    prod[deg - r + i] = (prod[deg - r + i] - c * self.modulus[i]) % p
        return _from_digits(prod[:r], p)

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        if e == 0:
            return 1
        if x == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[x] * e) % (self.q - 1)]
        result, base = 1, x
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def inv(self, x: FieldElement) -> FieldElement:
        """x^(q-2): the inverse for x != 0 and 0 for x = 0."""
        if self._inv is not None:
            return self._inv[x]
        return self.pow(x, self.q - 2)

    def div(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if y == 0:
            raise ZeroDivisionError(f"division by zero in {self.label}")
        return self.mul(x, self.inv(y))

    @property
    def inv_table(self) -> tuple[int, ...]:
        if self._inv is not None:
            return self._inv
        return tuple(self.inv(c) for c in range(self.q))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def construct_field(p: int, r: int = 1) -> FieldSpec:
    """The canonical GF(p^r). Equal inputs give the identical object."""
    if not isprime(p):
        raise NonPrimeCharacteristicError(p)
    if r < 1:
        raise FieldTooSmallError(p ** r if r >= 0 else 0)
    q = p ** r
    if q < 3:
        raise FieldTooSmallError(q)
    cap = field_size_cap()
    if q > cap:
        raise FieldTooLargeError(q, cap=cap)
    return _build_field(p, r)


@functools.lru_cache(maxsize=None)
def _build_field(p: int, r: int) -> FieldSpec:
    q = p ** r
    bare = FieldSpec(p, r, _canonical_modulus(p, r))
    if q > LOG_TABLE_CAP:
        return bare
    neg = tuple(bare._neg_slow(c) for c in range(q))
    gen = _smallest_generator(bare)
    # doubled antilog table: mul indexes log x + log y without a modulo
    exp = [1] * (2 * (q - 1))
    for i in range(1, 2 * (q - 1)):
        exp[i] = bare._mul_slow(exp[i - 1], gen)
    log = [0] * q
    for i in range(q - 1):
        log[exp[i]] = i
    inv = [0] * q
    for c in range(1, q):
        inv[c] = exp[(q - 1 - log[c]) % (q - 1)]
    add = None
    if q <= ADD_TABLE_CAP:
        add = tuple(tuple(bare.add(x, y) for y in range(q)) for x in range(q))
    return FieldSpec(p, r, bare.modulus, tuple(exp), tuple(log), add, neg, tuple(inv))


def _smallest_generator(spec: FieldSpec) -> FieldElement:
    order = spec.q - 1
    cofactors = [order // ell for ell in factorint(order)]
    for code in range(1, spec.q):
        if all(spec.pow(code, e) != 1 for e in cofactors):
            return code
    raise AssertionError(f"{spec.label} has no generator")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

ArithOp = Literal["add", "sub", "mul"]


def arith(spec: FieldSpec, op: ArithOp, x: FieldElement, y: FieldElement) -> FieldElement:
    spec.check(x)
    spec.check(y)
    if op == "add":
        return spec.add(x, y)
    if op == "sub":
        return spec.sub(x, y)
    if op == "mul":
        return spec.mul(x, y)
    raise ValueError(f"unknown field operation {op!r}")


def inverse_or_zero(spec: FieldSpec, x: FieldElement) -> FieldElement:
    return spec.inv(spec.check(x))


def power(spec: FieldSpec, x: FieldElement, e: int) -> FieldElement:
    """x^e with 0^0 = 1."""
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return spec.pow(spec.check(x), e)


@functools.lru_cache(maxsize=None)
def primitive_element(spec: FieldSpec) -> FieldElement:
    """The multiplicative generator with the smallest code."""
    if spec._exp is not None:
        return spec._exp[1]
    return _smallest_generator(spec)


def generators(spec: FieldSpec) -> list[FieldElement]:
    """Every multiplicative generator, in increasing code order."""
    order = spec.q - 1
    cofactors = [order // ell for ell in factorint(order)]
    return [c for c in range(1, spec.q)
            if all(spec.pow(c, e) != 1 for e in cofactors)]


def mth_power_residue(spec: FieldSpec, v: FieldElement, m: int) -> bool:
    """True iff v is an m-th power in F_q*, i.e. v^((q-1)/m) = 1."""
    spec.check(v)
    if v == 0:
        raise ZeroInputError("power-residue test needs v != 0")
    if m < 1 or (spec.q - 1) % m:
        raise MNotDividingGroupOrderError(m, q=spec.q)
    return spec.pow(v, (spec.q - 1) // m) == 1


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    return list(range(spec.q))
