"""Digit extraction for log 2, pi in base 16, and the Gaussian-integer base-5 series for pi."""

from .base5 import (
    FlawReport,
    Route,
    base5_extract_exact,
    base5_extract_flawed,
    check_condition,
    decompose,
    flaw_experiment,
    tail_bound_base5,
    term_exact_frac,
    term_residue,
)
from .bbp import log2_extract_direct, log2_extract_split, pi_hex_extract, tail_bound_log2
from .digits import DigitWindow, FixedFraction, emit_digits, frac_add, frac_from_ratio
from .gaussian import GaussianInt, GaussianResidue, b_sequence, gauss_pow, gauss_pow_mod

__version__ = "0.1.0"
