"""Exact computation in Thompson's group F.

Two independent models of the same group are provided: normal forms over the
infinite presentation (:mod:`thompson.normal_form`) and piecewise-linear
homeomorphisms of the real line with dyadic breakpoints
(:mod:`thompson.plmap`).  :mod:`thompson.metrics` computes word norms with
respect to the generators ``x0, x1`` and :mod:`thompson.embeddings` builds the
undistorted copies of F x Z^n inside F.
"""

from thompson.words import Letter, Word, WordSyntaxError, format_word, free_reduce, invert_word, parse_word
from thompson.normal_form import NormalForm, d_statistic, multiply, normalize, shift, to_word
from thompson.plmap import Breakpoint, Dyadic, PLMap, compose, from_word, generator
from thompson.metrics import ResourceLimitError, WordMetric, ball_sizes, exact_norm

__all__ = [
    "Breakpoint",
    "Dyadic",
    "Letter",
    "NormalForm",
    "PLMap",
    "ResourceLimitError",
    "Word",
    "WordMetric",
    "WordSyntaxError",
    "ball_sizes",
    "compose",
    "d_statistic",
    "exact_norm",
    "format_word",
    "free_reduce",
    "from_word",
    "generator",
    "invert_word",
    "multiply",
    "normalize",
    "parse_word",
    "shift",
    "to_word",
]
