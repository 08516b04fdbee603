"""Zero-sum invariants of finite abelian groups.

Exact computation of s_L(G) (Davenport constant, s_{<=k}, eta, EGZ and
friends) by pruned exhaustive search, extremal sequence constructions with
verifiers, and mod-p criteria guaranteeing short zero-sum subsequences.
"""

from .errors import (
    GroupMismatchError,
    InvalidFactorError,
    InvalidInputError,
    InvalidParamsError,
    ResourceLimitError,
    UnsupportedGroupError,
    ZeroSumError,
)
from .groups import (
    Automorphism,
    GroupElement,
    GroupSpec,
    d_equals_dstar_known,
    d_star,
    enumerate_automorphisms,
    enumerate_elements,
    make_group,
    parse_group,
)
from .sequences import (
    FeasibilityTable,
    LengthSet,
    Sequence,
    apply_automorphism,
    count_subseq,
    feasibility,
    has_zero_sum_in,
    min_zero_sum_length,
    n_plus_minus,
    orbit_canonical,
    sigma,
    subsequence_count_table,
)
from .search import (
    ExtremalSet,
    SearchConfig,
    SearchResult,
    SearchStats,
    davenport,
    enumerate_extremal,
    enumerate_minimal_zero_sum,
    eta,
    s_L,
    s_egz,
    s_kexp,
    s_leq,
)

from .constructions import (
    LowerCnrParams,
    LowerGeneralParams,
    VerificationReport,
    build_inv2,
    build_lower_general,
    build_lowercnr,
    inverse_family_members,
    match_inverse_structure,
    verify_construction,
)
from .criteria import (
    CriterionReport,
    I0Prediction,
    PDecomposition,
    a_i,
    binom_mod_p,
    check_4_7,
    check_4_8,
    check_4_9,
    compute_i0,
    first_nonzero_a_index,
    gen_binom,
    is_prime,
    predict_i0,
    row_transform_verify,
    zerosub_guarantee,
)
from .known import (
    BundledRow,
    KnownValue,
    known_davenport,
    known_s_kexp,
    known_s_leq,
    load_bundled,
)
from .sweeps import (
    SweepOutcome,
    run_all_sweeps,
    sweep_congruence,
    sweep_i0,
    sweep_row_transform,
    sweep_zerosub_soundness,
)
from .theorems import (
    ConjectureReport,
    ConjectureRow,
    KexpRow,
    PropertyReport,
    TheoremClaim,
    check_lemma_5_1,
    check_thm_1_8,
    check_thm_1_9,
    check_thm_1_10,
    conjecture_harness,
    davenport_value,
    lemma_3_6_property,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "BundledRow",
    "ConjectureReport",
    "ConjectureRow",
    "CriterionReport",
    "ExtremalSet",
    "FeasibilityTable",
    "GroupElement",
    "GroupMismatchError",
    "GroupSpec",
    "I0Prediction",
    "InvalidFactorError",
    "InvalidInputError",
    "InvalidParamsError",
    "KexpRow",
    "KnownValue",
    "LengthSet",
    "LowerCnrParams",
    "LowerGeneralParams",
    "PDecomposition",
    "PropertyReport",
    "ResourceLimitError",
    "SearchConfig",
    "SearchResult",
    "SearchStats",
    "Sequence",
    "SweepOutcome",
    "TheoremClaim",
    "UnsupportedGroupError",
    "VerificationReport",
    "ZeroSumError",
    "a_i",
    "apply_automorphism",
    "binom_mod_p",
    "build_inv2",
    "build_lower_general",
    "build_lowercnr",
    "check_4_7",
    "check_4_8",
    "check_4_9",
    "check_lemma_5_1",
    "check_thm_1_10",
    "check_thm_1_8",
    "check_thm_1_9",
    "compute_i0",
    "conjecture_harness",
    "count_subseq",
    "d_equals_dstar_known",
    "d_star",
    "davenport",
    "davenport_value",
    "enumerate_automorphisms",
    "enumerate_elements",
    "enumerate_extremal",
    "enumerate_minimal_zero_sum",
    "eta",
    "feasibility",
    "first_nonzero_a_index",
    "gen_binom",
    "has_zero_sum_in",
    "inverse_family_members",
    "is_prime",
    "known_davenport",
    "known_s_kexp",
    "known_s_leq",
    "lemma_3_6_property",
    "load_bundled",
    "make_group",
    "match_inverse_structure",
    "min_zero_sum_length",
    "n_plus_minus",
    "orbit_canonical",
    "parse_group",
    "predict_i0",
    "row_transform_verify",
    "run_all_sweeps",
    "s_L",
    "s_egz",
    "s_kexp",
    "s_leq",
    "sigma",
    "subsequence_count_table",
    "sweep_congruence",
    "sweep_i0",
    "sweep_row_transform",
    "sweep_zerosub_soundness",
    "verify_construction",
    "zerosub_guarantee",
]
