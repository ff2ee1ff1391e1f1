"""Tabulated string matching: regular expressions, approximate regular
expressions, edit distance and subsequence indexing, each with a naive
reference implementation."""

from .approx import ApproxMatcher, amatch, approx_dp_naive
from .editdist import edit_distance_4r, edit_distance_naive
from .matcher import TabulatedMatcher, match
from .nfa import accepts_naive, build_nfa, compile_pattern
from .regex_ast import PatternSyntaxError, parse
from .subseq import Engine, SubseqIndex, build_index, query, subsequence_naive
from .tables import TableCache

__all__ = [
    "ApproxMatcher",
    "Engine",
    "PatternSyntaxError",
    "SubseqIndex",
    "TableCache",
    "TabulatedMatcher",
    "accepts_naive",
    "amatch",
    "approx_dp_naive",
    "build_index",
    "build_nfa",
    "compile_pattern",
    "edit_distance_4r",
    "edit_distance_naive",
    "match",
    "parse",
    "query",
    "subsequence_naive",
]

__version__ = "0.1.0"
