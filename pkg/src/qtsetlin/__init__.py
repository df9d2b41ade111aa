"""
Exact-arithmetic q-deformed Tsetlin library chains on permutations, words and
complete flags over a prime field: transition matrices, closed-form
stationary distributions, eigenvalue catalogs, and the lumping maps tying the
three chains together.  All arithmetic is over the rationals; every identity
is checked exactly.
"""

from .exact import Matrix, Rational, format_rational, parse_rational
from .hecke_chains import (
    LinearOperator,
    PermRates,
    WordRates,
    transition_matrix_perm,
    transition_matrix_word,
)
from .flags import (
    FlagRep,
    Line,
    enumerate_flags,
    enumerate_lines,
    rcayley_stationary,
    transition_matrix_flags,
)
from .stationary import (
    StationaryVector,
    stationary_flags_formula,
    stationary_oracle,
    stationary_perm_formula,
    stationary_word_formula,
)
from .spectra import (
    EigenEntry,
    eigen_catalog_flags,
    eigen_catalog_perm,
    eigen_catalog_word,
    verify_annihilation,
    verify_multiplicities,
)
from .lumping import check_commuting

__all__ = [
    "Matrix",
    "Rational",
    "format_rational",
    "parse_rational",
    "LinearOperator",
    "PermRates",
    "WordRates",
    "transition_matrix_perm",
    "transition_matrix_word",
    "FlagRep",
    "Line",
    "enumerate_flags",
    "enumerate_lines",
    "rcayley_stationary",
    "transition_matrix_flags",
    "StationaryVector",
    "stationary_flags_formula",
    "stationary_oracle",
    "stationary_perm_formula",
    "stationary_word_formula",
    "EigenEntry",
    "eigen_catalog_flags",
    "eigen_catalog_perm",
    "eigen_catalog_word",
    "verify_annihilation",
    "verify_multiplicities",
    "check_commuting",
]
