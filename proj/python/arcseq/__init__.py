"""Arc-annotated sequence toolkit: occurrence checking, LAPCS solvers, and the
3SAT-to-LAPCS(STEM,STEM) construction with executable certificates."""

from ._arcseq import (
    classify,
    decide,
    default_padding,
    extract,
    k_prime,
    lapcs_length,
    occurs,
    reduce,
    sat,
    witness_length,
)

__all__ = [
    "classify",
    "decide",
    "default_padding",
    "extract",
    "k_prime",
    "lapcs_length",
    "occurs",
    "reduce",
    "sat",
    "witness_length",
]
