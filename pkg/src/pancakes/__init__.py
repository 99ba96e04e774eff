"""Pancake and burnt pancake graph toolkit.

Computes distance-layer counts from the identity (how many stacks need
exactly k flips to sort), enumerates and classifies short cycles against the
known canonical-form families, and evaluates/cross-checks the closed-form
counting polynomials — all with exact integer arithmetic.
"""

from .perms import (
    MAX_N,
    FlipRangeError,
    ParseError,
    Perm,
    PermError,
    RankRangeError,
    SignedPerm,
    apply_flip,
    apply_signed_flip,
    format_perm,
    parse_perm,
    rank,
    srank,
    sunrank,
    unrank,
)
from .graphs import GraphKind, PancakeGraph
from .search import (
    DEFAULT_MEMORY_LIMIT,
    MEMORY_LIMIT_ENV,
    LayerProfile,
    MemoryLimitError,
    distance,
    layer_profile,
    required_memory,
    resolve_memory_limit,
    resume,
    sort_sequence,
)
from .checkpoint import (
    CHECKPOINT_VERSION,
    CheckpointError,
    SearchCheckpoint,
    crc32c,
    read_checkpoint,
    write_checkpoint,
)
from .cycles import (
    DEFAULT_NODE_BUDGET,
    UNMATCHED,
    CensusReport,
    Cycle,
    CycleFamily,
    FamilyMatch,
    FamilyTally,
    InfeasibleSizeError,
    UnsupportedLengthError,
    canonicalize,
    enumerate_cycles,
    families_for,
    match_form,
    verify_classification,
)
from .formulas import (
    OUT_OF_VALIDITY,
    CrosscheckReport,
    CrosscheckRow,
    FitError,
    FormulaSpec,
    FormulaStatus,
    IdentityReport,
    NewtonPoly,
    OutOfValidity,
    UnknownFormulaError,
    Verdict,
    check_gregory_newton_con63,
    check_recurrence_cor62,
    crosscheck,
    eval_formula,
    fit_newton,
    formula_names,
    get_formula,
    published_cells,
)
from . import reports, tables

__version__ = "0.1.0"

__all__ = [
    "MAX_N",
    "Perm",
    "SignedPerm",
    "PermError",
    "FlipRangeError",
    "RankRangeError",
    "ParseError",
    "apply_flip",
    "apply_signed_flip",
    "rank",
    "unrank",
    "srank",
    "sunrank",
    "parse_perm",
    "format_perm",
    "GraphKind",
    "PancakeGraph",
    "LayerProfile",
    "MemoryLimitError",
    "DEFAULT_MEMORY_LIMIT",
    "MEMORY_LIMIT_ENV",
    "layer_profile",
    "resume",
    "distance",
    "sort_sequence",
    "required_memory",
    "resolve_memory_limit",
    "SearchCheckpoint",
    "CheckpointError",
    "CHECKPOINT_VERSION",
    "crc32c",
    "read_checkpoint",
    "write_checkpoint",
    "Cycle",
    "CycleFamily",
    "CensusReport",
    "FamilyMatch",
    "FamilyTally",
    "UNMATCHED",
    "DEFAULT_NODE_BUDGET",
    "InfeasibleSizeError",
    "UnsupportedLengthError",
    "canonicalize",
    "enumerate_cycles",
    "families_for",
    "match_form",
    "verify_classification",
    "FormulaSpec",
    "FormulaStatus",
    "OutOfValidity",
    "OUT_OF_VALIDITY",
    "CrosscheckReport",
    "CrosscheckRow",
    "IdentityReport",
    "NewtonPoly",
    "Verdict",
    "FitError",
    "UnknownFormulaError",
    "eval_formula",
    "get_formula",
    "formula_names",
    "crosscheck",
    "fit_newton",
    "check_recurrence_cor62",
    "check_gregory_newton_con63",
    "published_cells",
    "reports",
    "tables",
]
