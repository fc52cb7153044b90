"""Noncommutative graded polynomials, Magnus series and degree-bounded rewriting."""

from .grammar import parse_polynomial, parse_terms
from .poly import (HomogeneousPoly, Monomial, all_words, deglex_compare, deglex_key,
                   format_poly, format_terms, word_slot)
from .rewriting import (Overlap, RewritingSystem, buchberger_to_degree, count_avoiding,
                        normal_monomials, reduce)
from .series import TruncatedSeries, magnus_expand, series_initial_form

__all__ = [
    "HomogeneousPoly", "Monomial", "all_words", "deglex_compare", "deglex_key", "format_poly",
    "format_terms", "word_slot", "parse_polynomial", "parse_terms", "Overlap",
    "RewritingSystem", "buchberger_to_degree", "count_avoiding", "normal_monomials", "reduce",
    "TruncatedSeries", "magnus_expand", "series_initial_form",
]
