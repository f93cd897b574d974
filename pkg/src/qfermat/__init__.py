"""Nonexistence proofs for x^4 + y^4 = q z^p by newform elimination.

The pipeline: classify the prime q, attach a Frey curve over Q(i) to a
hypothetical solution, compare its traces of Frobenius against every
weight 2 newform of level 32q, and intersect the surviving exponent sets
over several auxiliary primes.  A residual (exponent, form) pair, if any,
is removed by an explicit Hecke eigenvalue congruence up to the Sturm
bound combined with a discriminant valuation argument.
"""

from .classifier import Classification, classify, has_local_solution
from .config import DEFAULT_TSET, RunConfig
from .endgame import (
    CongruenceCertificate,
    build_endgame_payload,
    sturm_bound,
    valuation_residue,
    verify_congruence,
    zero_trace_pattern,
)
from .errors import (
    BadReductionError,
    CalibrationError,
    DataUnavailableError,
    FactorizationIncompleteError,
    InfiniteValuationError,
    InvalidInputError,
    InvariantViolationError,
    MethodInapplicableError,
    MissingCoefficientError,
    ParseError,
    QfermatError,
    TamperedDataError,
)
from .frey import EllipticCurveOverQi, build_curve, discriminant, inert_trace_scalar
from .gaussian import GaussianInteger, prime_above, valuation
from .newforms import NewformRecord, fetch_level, load_cached, store_cache
from .polynomials import IntPolynomial, count_real_roots_greater, resultant
from .primes import PrimeSet, is_prime, prime_divisors
from .sieve import (
    EliminationReport,
    SieveOutcome,
    outcome_to_report,
    sieve_form,
    sieve_level,
    survivors_at,
)

__version__ = "0.1.0"

__all__ = [
    "BadReductionError",
    "CalibrationError",
    "Classification",
    "CongruenceCertificate",
    "DEFAULT_TSET",
    "DataUnavailableError",
    "EliminationReport",
    "EllipticCurveOverQi",
    "FactorizationIncompleteError",
    "GaussianInteger",
    "InfiniteValuationError",
    "IntPolynomial",
    "InvalidInputError",
    "InvariantViolationError",
    "MethodInapplicableError",
    "MissingCoefficientError",
    "NewformRecord",
    "ParseError",
    "PrimeSet",
    "QfermatError",
    "RunConfig",
    "SieveOutcome",
    "TamperedDataError",
    "build_curve",
    "build_endgame_payload",
    "classify",
    "count_real_roots_greater",
    "discriminant",
    "fetch_level",
    "has_local_solution",
    "inert_trace_scalar",
    "is_prime",
    "load_cached",
    "outcome_to_report",
    "prime_above",
    "prime_divisors",
    "resultant",
    "sieve_form",
    "sieve_level",
    "store_cache",
    "sturm_bound",
    "survivors_at",
    "valuation",
    "valuation_residue",
    "verify_congruence",
    "zero_trace_pattern",
    "__version__",
]
