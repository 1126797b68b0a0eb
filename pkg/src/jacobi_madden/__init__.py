"""Exact-arithmetic tools for a^4 + b^4 + c^4 + d^4 = (a + b + c + d)^4.

The pipeline runs from a parameter t = m/n through a pencil of quadrics,
a pair of conics and a quartic curve to the elliptic curve E_t, and back
to integer solutions.
"""
from __future__ import annotations

from .corpus_io import CorpusRecord, corpus_load, corpus_save, shipped_corpus
from .ecurve import CurveEt, ECPoint, GeneratorSet, curve_from_t, known_generator
from .quartic import BinaryQuartic, QuarticPoint
from .search import build_model, roundtrip, search_curve_method, search_quartic_method
from .sieve import SieveReport, TValue, conjecture_filter, enumerate_t, normalize_t, sieve, sieve_t
from .solutions import Solution, Verdict, brute_force, canonical, compute_FGH, t_of, t_orbit, verify_solution

__version__ = "0.1.0"

__all__ = [
    "BinaryQuartic", "CorpusRecord", "CurveEt", "ECPoint", "GeneratorSet", "QuarticPoint",
    "SieveReport", "Solution", "TValue", "Verdict", "brute_force", "build_model", "canonical",
    "compute_FGH", "conjecture_filter", "corpus_load", "corpus_save", "curve_from_t",
    "enumerate_t", "known_generator", "normalize_t", "shipped_corpus", "roundtrip", "search_curve_method",
    "search_quartic_method", "sieve", "sieve_t", "t_of", "t_orbit", "verify_solution",
]
