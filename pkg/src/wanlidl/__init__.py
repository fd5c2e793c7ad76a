"""Wan-Lidl polynomials over finite fields: construction, permutation
criterion, exact differential uniformity, bound certification, and the
table-reproduction sweeps."""

from .bounds import (
    BoundCertificate,
    CorollaryCertificate,
    bound_binomial_even_s,
    bound_general,
    bound_s2_even_d,
    certify,
    corollary_b3_certify,
)
from .du import (
    DiffSpectrum,
    DuResult,
    delta_row,
    differential_spectrum,
    differential_uniformity,
    du_fast_binomial,
    du_wanlidl_rows,
    solution_count,
)
from .family import (
    BinomialParams,
    PPCheck,
    WanLidlParams,
    binomial_f,
    eval_f,
    negate_b_equivalent,
    normalize_h,
    wl_is_pp,
)
from .fields import (
    FieldCtx,
    FieldSpec,
    make_field,
    power_map_T,
    quadratic_character,
    subgroup_H,
)
from .identities import IdentityReport, verify_root_products
from .polys import Poly, image_size, is_permutation_bruteforce
from .sweep import (
    SweepConfig,
    SweepResult,
    TableRow,
    admissible_primes,
    find_bound_achievers,
    run_sweep,
    sweep_row,
)

__version__ = "0.1.0"

__all__ = [
    "BinomialParams",
    "BoundCertificate",
    "CorollaryCertificate",
    "DiffSpectrum",
    "DuResult",
    "FieldCtx",
    "FieldSpec",
    "IdentityReport",
    "PPCheck",
    "Poly",
    "SweepConfig",
    "SweepResult",
    "TableRow",
    "WanLidlParams",
    "admissible_primes",
    "binomial_f",
    "bound_binomial_even_s",
    "bound_general",
    "bound_s2_even_d",
    "certify",
    "corollary_b3_certify",
    "delta_row",
    "differential_spectrum",
    "differential_uniformity",
    "du_fast_binomial",
    "du_wanlidl_rows",
    "eval_f",
    "find_bound_achievers",
    "image_size",
    "is_permutation_bruteforce",
    "make_field",
    "negate_b_equivalent",
    "normalize_h",
    "power_map_T",
    "quadratic_character",
    "run_sweep",
    "solution_count",
    "subgroup_H",
    "sweep_row",
    "verify_root_products",
    "wl_is_pp",
]
