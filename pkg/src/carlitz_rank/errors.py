"""carlitz_rank.errors — the error taxonomy.

    CarlitzRankError(Exception)
      FieldError
        NonPrimeCharacteristicError   # p is not prime
        FieldTooSmallError            # q < 3
        FieldTooLargeError            # q above the configured cap
        InvalidElementCodeError       # code outside [0, q)
        ZeroInputError                # a nonzero element was required
        MNotDividingGroupOrderError   # m does not divide q - 1
      FormError
        MalformedFormError            # a required coefficient is zero
        IndexOutOfRangeError          # approximant index outside 0..n
        NotInL1Error                  # alpha_n = 0 (or n = 0)
        NotAPermutationError          # rank asked of a non-bijection
      BoundsError
        ParameterOutOfRangeError      # inequality inputs outside the theorem range
        ConstantGError                # g has degree <= 0
        ZeroCoefficientError          # b or c is zero in a curve count
      CampaignError
        BudgetExceededError           # enumeration cost above the configured cap
        ConfigInvalidError            # rejected campaign configuration
        IoFailureError                # report could not be written

Outcomes that are not failures are values, not exceptions: a constant
difference, a rank search that saturates its cap, a pole at infinity, and
counterexamples (which live inside campaign reports).
"""


class CarlitzRankError(Exception):
    """Base for all carlitz-rank errors.

    Subclasses take keyword-only extras that default exception pickling
    cannot replay; `__reduce__` restores args and attributes directly so an
    error raised inside a pool worker reaches the parent intact.
    """

    def __reduce__(self):
        return (_rebuild, (type(self), self.args, self.__dict__))


def _rebuild(cls: type, args: tuple, state: dict) -> CarlitzRankError:
    err = Exception.__new__(cls)
    err.args = args
    err.__dict__.update(state)
    return err


# ---------------------------------------------------------------------------
# field
# ---------------------------------------------------------------------------


class FieldError(CarlitzRankError):
    """A finite field could not be built, or an element is invalid for it."""


class NonPrimeCharacteristicError(FieldError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"characteristic {p} is not prime")


class FieldTooSmallError(FieldError):
    def __init__(self, q: int):
        self.q = q
        super().__init__(f"GF({q}) is below the supported minimum q >= 3")


class FieldTooLargeError(FieldError):
    def __init__(self, q: int, *, cap: int):
        self.q = q
        self.cap = cap
        super().__init__(
            f"GF({q}) exceeds the field size cap {cap} "
            f"(raise CARLITZ_RANK_FIELD_CAP to allow it)")


class InvalidElementCodeError(FieldError):
    def __init__(self, code: object, *, q: int):
        self.code = code
        self.q = q
        super().__init__(f"{code!r} is not an element code of GF({q})")


class ZeroInputError(FieldError):
    """A nonzero element was required (power-residue test, b-tilde, ...)."""


class MNotDividingGroupOrderError(FieldError):
    def __init__(self, m: int, *, q: int):
        self.m = m
        self.q = q
        super().__init__(f"m = {m} does not divide q - 1 = {q - 1}")


# ---------------------------------------------------------------------------
# carlitz
# ---------------------------------------------------------------------------


class FormError(CarlitzRankError):
    """A Carlitz form is malformed or outside an operation's class."""


class MalformedFormError(FormError):
    def __init__(self, message: str, *, coeffs: tuple[int, ...] | None = None):
        self.coeffs = coeffs
        super().__init__(message)


class IndexOutOfRangeError(FormError):
    def __init__(self, k: int, *, n: int):
        self.k = k
        self.n = n
        super().__init__(f"approximant index {k} outside 0..{n}")


class NotInL1Error(FormError):
    """normalize_last / collision_count need alpha_n != 0 (class L1)."""


class NotAPermutationError(FormError):
    """Carlitz rank is only defined for permutations."""


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


class BoundsError(CarlitzRankError):
    """Inputs outside the range an inequality or count is stated for."""


class ParameterOutOfRangeError(BoundsError):
    def __init__(self, message: str, **params: int):
        self.params = params
        super().__init__(message)


class ConstantGError(BoundsError):
    """g is constant: the theorems exclude it."""


class ZeroCoefficientError(BoundsError):
    def __init__(self, *, b: int, c: int):
        self.b = b
        self.c = c
        super().__init__(f"curve coefficients must be nonzero (b={b}, c={c})")


# ---------------------------------------------------------------------------
# harness
# ---------------------------------------------------------------------------


class CampaignError(CarlitzRankError):
    """A campaign could not run as configured."""


class BudgetExceededError(CampaignError):
    def __init__(self, what: str, *, estimate: int, budget: int):
        self.what = what
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"{what}: estimated cost {estimate} exceeds the budget {budget}")


class ConfigInvalidError(CampaignError):
    """The campaign configuration was rejected; the message names the field."""


class IoFailureError(CampaignError):
    def __init__(self, path: object, cause: OSError):
        self.path = path
        self.cause = cause
        super().__init__(f"cannot write report to {path}: {cause}")
