"""Exact arithmetic for Lucas sequences, their Mobius duals, and the
congruence and bias phenomena those duals exhibit.

Everything here is exact: integers are unbounded, rationals are
fractions.Fraction, and p-adic statements are checked through valuations
rather than floating point.
"""

from .arith import (
    Factorization,
    divisors,
    euler_phi,
    factorize,
    is_probable_prime,
    kronecker,
    mobius,
    sieve_primes,
    valuation,
)
from .bias import (
    INCOMPLETE as FACTORS_INCOMPLETE,
    BiasRow,
    EntryPointCensus,
    FactorTable,
    FactorTableError,
    bias_table,
    bias_term,
    census_build,
    characteristic_factors,
    export_bias_csv,
    import_factor_table,
    read_bias_csv,
)
from .congruence import (
    verify_cor_lift,
    verify_cor_modn,
    verify_cor_mult,
    verify_fib_cases,
    verify_thm_mu,
    verify_thm_mv,
)
from .cyclotomic import CyclotomicPoly, cyclotomic_coeffs, homogeneous_eval, verify_ratcon
from .dual import check_doubling, dual_u, dual_v, predicted_valuation_u
from .lucas import (
    INFINITE,
    EntryPoint,
    LucasParams,
    entry_point,
    term_mod,
    u_term,
    v_term,
)
from .padic import PadicValue, ZeroTermError, dual_padic, fraction_valuation, term_padic
from .reports import Statement, Status, VerificationReport, Witness

__all__ = [
    "BiasRow",
    "CyclotomicPoly",
    "EntryPoint",
    "EntryPointCensus",
    "FACTORS_INCOMPLETE",
    "FactorTable",
    "FactorTableError",
    "Factorization",
    "INFINITE",
    "LucasParams",
    "PadicValue",
    "Statement",
    "Status",
    "VerificationReport",
    "Witness",
    "ZeroTermError",
    "bias_table",
    "bias_term",
    "census_build",
    "characteristic_factors",
    "check_doubling",
    "cyclotomic_coeffs",
    "divisors",
    "dual_padic",
    "dual_u",
    "dual_v",
    "entry_point",
    "euler_phi",
    "export_bias_csv",
    "factorize",
    "fraction_valuation",
    "homogeneous_eval",
    "import_factor_table",
    "is_probable_prime",
    "kronecker",
    "mobius",
    "predicted_valuation_u",
    "read_bias_csv",
    "sieve_primes",
    "term_mod",
    "term_padic",
    "u_term",
    "v_term",
    "verify_cor_lift",
    "verify_cor_modn",
    "verify_cor_mult",
    "verify_fib_cases",
    "verify_ratcon",
    "verify_thm_mu",
    "verify_thm_mv",
]

__version__ = "0.1.0"
