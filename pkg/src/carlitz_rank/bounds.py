"""carlitz_rank.bounds — exact inequalities and collision sets.

Every inequality with a square root is decided on integers: A + B*sqrt(q) >= C
(B >= 0) holds iff A >= C, or else B^2 q >= (C - A)^2. No floating point is
involved in any verdict.

The degree bounds (for f and f + g both permutations, f of Carlitz rank n):

    Main         nk + k(k-1) sqrt(q) >= q - nu - n,       nu = gcd(k, q-1)
    Monomial     k(n+3) + (k-1)(m-1) sqrt(q) >= q - n,    m = gcd(k+1, q-1)
                 (g = c x^k and the last pole of f is 0)
    Nontrivial   q >= k(k-1) sqrt(q) + k + nu + 1

and the older results they are compared against (CompleteMappingDegree, DifferenceDegree,
CompleteMappingRank) are plain integer predicates.

Collision sets: for f in L1 with last approximant R_n(z) = (az + b)/(z + d),
the shifted sum H(x) = (ax - b~)/x + g(x - d) on F_q* (b~ = ad - b) has fiber
sizes n_u <= k + 1, and mu = sum n_u(n_u - 1) counts ordered collisions. When
f + g is a permutation every collision forces a pole, so
(k + 1)(n - 1) >= mu.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from pydantic import BaseModel, Field, computed_field

from .carlitz import CarlitzForm, approximant, classify, normalize_last
from .errors import ConstantGError, NotInL1Error, ParameterOutOfRangeError, ZeroInputError
from .field import INFINITY, FieldElement, FieldSpec, mth_power_residue
from .poly import Poly, value_multiset

# ---------------------------------------------------------------------------
# exact surd comparisons
# ---------------------------------------------------------------------------


def surd_at_least(a: int, b: int, c: int, q: int) -> bool:
    """a + b*sqrt(q) >= c for b >= 0."""
    if a >= c:
        return True
    return b * b * q >= (c - a) ** 2


def exceeds_surd(lhs: int, b: int, q: int, *, strict: bool = False) -> bool:
    """lhs >= b*sqrt(q) (or > with strict) for b >= 0."""
    if lhs < 0 or (strict and lhs == 0):
        return False
    square, target = lhs * lhs, b * b * q
    return square > target if strict else square >= target


class SqrtInequality(BaseModel):
    """The claim A + B*sqrt(q) >= C."""

    model_config = {"frozen": True}

    A: int
    B: int = Field(ge=0)
    C: int
    q: int = Field(ge=1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def holds(self) -> bool:
        return surd_at_least(self.A, self.B, self.C, self.q)

    def describe(self) -> str:
        return f"{self.A} + {self.B}*sqrt({self.q}) >= {self.C}"


# ---------------------------------------------------------------------------
# bound reports
# ---------------------------------------------------------------------------


class BoundKind(str, enum.Enum):
    MAIN = "Main"
    MONOMIAL = "Monomial"
    NONTRIVIAL = "Nontrivial"
    COMPLETE_DEGREE = "CompleteMappingDegree"
    DIFFERENCE_DEGREE = "DifferenceDegree"
    COMPLETE_RANK = "CompleteMappingRank"


class BoundReport(BaseModel):
    """One evaluated inequality with its inputs and intermediates.

    `values` carries the named integers a predicate derives (thresholds,
    floors) so a report reads on its own.
    """

    model_config = {"frozen": True}

    which: BoundKind
    q: int | None = None
    n: int | None = None
    k: int | None = None
    d: int | None = None
    t: int | None = None
    p: int | None = None
    nu: int | None = None
    m: int | None = None
    lhs: str
    rhs: str
    holds: bool
    inequality: SqrtInequality | None = None
    m1_specialization: bool | None = None
    values: dict[str, int] = Field(default_factory=dict)


def _check_range(q: int, n: int, k: int) -> None:
    if q < 3:
        raise ParameterOutOfRangeError(f"q = {q} < 3", q=q)
    if n < 1:
        raise ParameterOutOfRangeError(f"n = {n} < 1", n=n)
    if not 1 <= k < q - 1:
        raise ParameterOutOfRangeError(f"k = {k} outside 1..{q - 2}", k=k, q=q)


def main_bound(q: int, n: int, k: int) -> BoundReport:
    """nk + k(k-1) sqrt(q) >= q - nu - n."""
    _check_range(q, n, k)
    nu = math.gcd(k, q - 1)
    ineq = SqrtInequality(A=n * k, B=k * (k - 1), C=q - nu - n, q=q)
    return BoundReport(
        which=BoundKind.MAIN, q=q, n=n, k=k, nu=nu,
        lhs=f"{ineq.A} + {ineq.B}*sqrt({q})", rhs=str(ineq.C),
        holds=ineq.holds, inequality=ineq)


def monomial_bound(q: int, n: int, k: int) -> BoundReport:
    """k(n+3) + (k-1)(m-1) sqrt(q) >= q - n; with m = 1 also k >= (q-n)/(n+3)."""
    _check_range(q, n, k)
    m = math.gcd(k + 1, q - 1)
    ineq = SqrtInequality(A=k * (n + 3), B=(k - 1) * (m - 1), C=q - n, q=q)
    specialization = k * (n + 3) >= q - n if m == 1 else None
    return BoundReport(
        which=BoundKind.MONOMIAL, q=q, n=n, k=k, m=m,
        lhs=f"{ineq.A} + {ineq.B}*sqrt({q})", rhs=str(ineq.C),
        holds=ineq.holds, inequality=ineq, m1_specialization=specialization)


def nontriviality_report(q: int, k: int) -> BoundReport:
    if q < 3 or k < 1:
        raise ParameterOutOfRangeError(f"need q >= 3 and k >= 1 (q={q}, k={k})", q=q, k=k)
    nu = math.gcd(k, q - 1)
    slack = q - k - nu - 1
    return BoundReport(
        which=BoundKind.NONTRIVIAL, q=q, k=k, nu=nu,
        lhs=str(q), rhs=f"{k * (k - 1)}*sqrt({q}) + {k + nu + 1}",
        holds=exceeds_surd(slack, k * (k - 1), q))


def nontriviality(q: int, k: int) -> bool:
    """Whether the main bound says anything for degree-k differences over F_q."""
    return nontriviality_report(q, k).holds


def legacy_predicates(kind: BoundKind | str, *, p: int | None = None,
                      d: int | None = None, t: int | None = None,
                      q: int | None = None, linearity: int | None = None,
                      rank: int | None = None) -> BoundReport:
    """The three earlier results as integer predicates.

    CompleteMappingDegree (p, d)
                        holds iff p > (d^2 - 3d + 4)^2, i.e. no complete
                        mapping polynomial of degree d exists over F_p
    DifferenceDegree (d, t)
                        holds iff t >= 3d/5
    CompleteMappingRank (q[, linearity, rank])
                        the floor Crk >= q//2 under linearity < (q+5)//2;
                        with linearity and rank given, holds iff the pair
                        is consistent with it
    """
    kind = BoundKind(kind)
    if kind is BoundKind.COMPLETE_DEGREE:
        if p is None or d is None or p < 2 or d < 1:
            raise ParameterOutOfRangeError("CompleteMappingDegree needs p >= 2 and d >= 1", p=p or 0, d=d or 0)
        threshold = (d * d - 3 * d + 4) ** 2
        return BoundReport(which=kind, p=p, d=d, lhs=str(p), rhs=f"> {threshold}",
                           holds=p > threshold, values={"threshold": threshold})
    if kind is BoundKind.DIFFERENCE_DEGREE:
        if d is None or t is None or d < 1 or t < 0:
            raise ParameterOutOfRangeError("DifferenceDegree needs d >= 1 and t >= 0", d=d or 0, t=t or 0)
        return BoundReport(which=kind, d=d, t=t, lhs=f"5*{t} = {5 * t}",
                           rhs=f"3*{d} = {3 * d}", holds=5 * t >= 3 * d)
    if kind is BoundKind.COMPLETE_RANK:
        if q is None or q < 3:
            raise ParameterOutOfRangeError("CompleteMappingRank needs q >= 3", q=q or 0)
        floor, hypothesis = q // 2, (q + 5) // 2
        values = {"rank_floor": floor, "linearity_bound": hypothesis}
        holds = True
        if linearity is not None and rank is not None:
            holds = linearity >= hypothesis or rank >= floor
        return BoundReport(which=kind, q=q, lhs=f"Crk = {rank}" if rank is not None else "Crk",
                           rhs=f">= {floor} when L < {hypothesis}", holds=holds, values=values)
    raise ParameterOutOfRangeError(f"{kind.value} is not a legacy predicate")


def minimal_degree(q: int, n: int, which: BoundKind | str = BoundKind.MAIN) -> int | None:
    """Smallest 1 <= k < q-1 that the given degree bound admits (None: none)."""
    which = BoundKind(which)
    evaluate = {BoundKind.MAIN: main_bound, BoundKind.MONOMIAL: monomial_bound}[which]
    for k in range(1, q - 1):
        if evaluate(q, n, k).holds:
            return k
    return None


def minimal_rank(q: int, k: int, which: BoundKind | str = BoundKind.MAIN) -> int:
    """Smallest Carlitz rank n >= 1 the degree bound admits for a degree-k
    difference: n >= (q - k(k-1)sqrt(q) - nu)/(k+1) for the main bound. Both
    bounds hold once n >= q, so the scan always ends."""
    which = BoundKind(which)
    evaluate = {BoundKind.MAIN: main_bound, BoundKind.MONOMIAL: monomial_bound}[which]
    n = 1
    while not evaluate(q, n, k).holds:
        n += 1
    return n


def main_mu_floor(q: int, k: int, mu: int) -> SqrtInequality:
    """mu >= q + 1 - k(k-1) sqrt(q) - (nu + k + 2), the main proof's count."""
    nu = math.gcd(k, q - 1)
    return SqrtInequality(A=mu, B=k * (k - 1), C=q + 1 - nu - k - 2, q=q)


def monomial_mu_floor(q: int, k: int, mu: int) -> SqrtInequality:
    """mu >= q - (k-1)(m-1) sqrt(q) - (4k + 1), the monomial proof's count."""
    m = math.gcd(k + 1, q - 1)
    return SqrtInequality(A=mu, B=(k - 1) * (m - 1), C=q - 4 * k - 1, q=q)


# ---------------------------------------------------------------------------
# collision sets
# ---------------------------------------------------------------------------


class CollisionReport(BaseModel):
    model_config = {"frozen": True}

    q: int
    n: int
    k: int
    b_tilde: int
    d: int
    mu: int
    fibers: list[tuple[int, int]]
    max_fiber: int
    pole_floor: str
    pole_budget: int

    @computed_field  # type: ignore[prop-decorator]
    @property
    def fiber_bound_holds(self) -> bool:
        return self.max_fiber <= self.k + 1


def _reduced_degree(spec: FieldSpec, g: Poly) -> tuple[Poly, int]:
    g = g.reduce()
    if g.is_constant:
        raise ConstantGError(f"g = {g.codes()} is constant")
    if g.degree >= spec.q - 1:
        raise ParameterOutOfRangeError(
            f"deg g = {g.degree} is not below q - 1 = {spec.q - 1}", k=g.degree)
    return g, g.degree


def collision_count(form: CarlitzForm, g: Poly) -> CollisionReport:
    if not classify(form).in_l1:
        raise NotInL1Error(f"form {form} is not in L1")
    spec = form.spec
    g, k = _reduced_degree(spec, g)
    norm = normalize_last(form)
    a, bt, d = norm.a, norm.b_tilde, norm.d
    values = [spec.add(spec.div(spec.sub(spec.mul(a, x), bt), x), g(spec.sub(x, d)))
              for x in range(1, spec.q)]
    summary = value_multiset(values)
    mu = summary.collisions
    n = form.n
    return CollisionReport(
        q=spec.q, n=n, k=k, b_tilde=bt, d=d, mu=mu,
        fibers=summary.profile(), max_fiber=summary.max_fiber,
        pole_floor=str(Fraction(mu, k + 1) + 1), pole_budget=(k + 1) * (n - 1))


def collision_count_bruteforce(form: CarlitzForm, g: Poly,
                               xs: range | None = None) -> int:
    """Ordered pairs x != y in F_q* with equal H values, x restricted to `xs`.

    Evaluates H(x) = R_n(x - d) + g(x - d) through the approximant, so it
    shares no code with collision_count; slices of F_q* sum to the total.
    """
    spec = form.spec
    d = normalize_last(form).d
    r_n = approximant(form, form.n)

    def h_value(x: int) -> int:
        z = spec.sub(x, d)
        head = r_n(z)
        assert head is not INFINITY
        return spec.add(head, g(z))

    domain = range(1, spec.q)
    values = {x: h_value(x) for x in domain}
    total = 0
    for x in (xs if xs is not None else domain):
        if x == 0:
            continue
        hx = values[x]
        total += sum(1 for y in domain if y != x and values[y] == hx)
    return total


def k1_mu_formula(spec: FieldSpec, b_tilde: FieldElement) -> int:
    """Ordered pairs x != y in F_q* with xy = b_tilde."""
    spec.check(b_tilde)
    if b_tilde == 0:
        raise ZeroInputError("k = 1 collision count needs a nonzero product")
    q = spec.q
    if q % 2 == 0:
        return q - 2
    return q - 3 if mth_power_residue(spec, b_tilde, 2) else q - 1


def pole_consistency(form: CarlitzForm, g: Poly, report: CollisionReport) -> bool:
    """n >= 1 + mu/(k+1), compared as (k+1)(n-1) >= mu."""
    return (report.k + 1) * (form.n - 1) >= report.mu
