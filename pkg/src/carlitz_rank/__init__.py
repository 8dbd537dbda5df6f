"""carlitz_rank — Carlitz rank and the degree of permutation differences.

Every permutation of GF(q) is a composition of affine maps and x^(q-2); its
Carlitz rank is the fewest inversions needed. This package computes ranks
over small fields and checks, exhaustively or by seeded sampling, the lower
bounds on deg g when f and f + g are both permutations:

    spec = construct_field(3, 2)
    form = example_form(spec, 5)                      # zeta = 2 + i
    carlitz_rank(expand_form(form)).rank              # 3
    main_bound(9, 3, 2).holds                         # True
    run_campaign(CampaignConfig.acceptance("MainTheorem")).verdict   # "PASS"

Layout: field (GF(p^r) tables), poly (polynomials and maps), carlitz (forms,
convergents, poles, rank), bounds (inequalities and collision counts),
curves (point counts), campaign + harness (verification campaigns), cli.
"""

from .bounds import (
    BoundKind,
    BoundReport,
    CollisionReport,
    SqrtInequality,
    collision_count,
    collision_count_bruteforce,
    k1_mu_formula,
    legacy_predicates,
    main_bound,
    main_mu_floor,
    minimal_degree,
    minimal_rank,
    monomial_bound,
    monomial_mu_floor,
    nontriviality,
    pole_consistency,
)
from .campaign import (
    CampaignConfig,
    CampaignKind,
    CampaignReport,
    FieldRef,
    Witness,
    write_report,
)
from .carlitz import (
    CarlitzForm,
    ConvergentSequence,
    FormClass,
    FracTransform,
    NormalizedLast,
    PoleSet,
    RankResult,
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
)
from .curves import CurveCountReport, curve_affine_count, curve_brute_counts
from .errors import (
    BoundsError,
    BudgetExceededError,
    CampaignError,
    CarlitzRankError,
    ConfigInvalidError,
    ConstantGError,
    FieldError,
    FieldTooLargeError,
    FieldTooSmallError,
    FormError,
    IndexOutOfRangeError,
    InvalidElementCodeError,
    IoFailureError,
    MalformedFormError,
    MNotDividingGroupOrderError,
    NonPrimeCharacteristicError,
    NotAPermutationError,
    NotInL1Error,
    ParameterOutOfRangeError,
    ZeroCoefficientError,
    ZeroInputError,
)
from .field import (
    INFINITY,
    FieldSpec,
    arith,
    construct_field,
    generators,
    inverse_or_zero,
    mth_power_residue,
    power,
    primitive_element,
)
from .harness import (
    curve_sweep,
    example_f9,
    example_form,
    mu_sweep,
    replay_witness,
    run_campaign,
    verify_corollary,
    verify_main,
    verify_monomial,
)
from .poly import (
    CONSTANT_DIFFERENCE,
    PermMap,
    Poly,
    difference_degree,
    interpolate,
    is_complete_mapping,
    is_permutation,
    linearity,
    to_map,
    value_multiset,
)

__version__ = "0.1.0"

__all__ = [
    # field
    "INFINITY", "FieldSpec", "arith", "construct_field", "generators",
    "inverse_or_zero", "mth_power_residue", "power", "primitive_element",
    # polynomials and maps
    "CONSTANT_DIFFERENCE", "PermMap", "Poly", "difference_degree", "interpolate",
    "is_complete_mapping", "is_permutation", "linearity", "to_map", "value_multiset",
    # Carlitz forms and rank
    "CarlitzForm", "ConvergentSequence", "FormClass", "FracTransform", "NormalizedLast",
    "PoleSet", "RankResult", "approximant", "carlitz_rank", "classify", "convergents",
    "count_forms", "enumerate_forms", "expand_form", "normalize_last",
    "permutations_of_rank", "pole_set",
    # bounds and curves
    "BoundKind", "BoundReport", "CollisionReport", "CurveCountReport", "SqrtInequality",
    "collision_count", "collision_count_bruteforce", "curve_affine_count",
    "curve_brute_counts", "k1_mu_formula", "legacy_predicates", "main_bound",
    "main_mu_floor", "minimal_degree", "minimal_rank", "monomial_bound",
    "monomial_mu_floor", "nontriviality", "pole_consistency",
    # campaigns
    "CampaignConfig", "CampaignKind", "CampaignReport", "FieldRef", "Witness",
    "curve_sweep", "example_f9", "example_form", "mu_sweep", "replay_witness",
    "run_campaign", "verify_corollary", "verify_main", "verify_monomial", "write_report",
    # errors
    "BoundsError", "BudgetExceededError", "CampaignError", "CarlitzRankError",
    "ConfigInvalidError", "ConstantGError", "FieldError", "FieldTooLargeError",
    "FieldTooSmallError", "FormError", "IndexOutOfRangeError", "InvalidElementCodeError",
    "IoFailureError", "MNotDividingGroupOrderError", "MalformedFormError",
    "NonPrimeCharacteristicError", "NotAPermutationError", "NotInL1Error",
    "ParameterOutOfRangeError", "ZeroCoefficientError", "ZeroInputError",
    "__version__",
]
