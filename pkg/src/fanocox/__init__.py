"""Exact combinatorics for smooth Fano fourfolds of Picard number two whose
Cox ring is a polynomial ring in seven variables modulo one relation."""

from .grading_core import SpecifyingData, canonical_form
from .verification import verify_candidate
from .invariants import anticanonical_degree, elementary_contractions, hodge_numbers
from .enumeration import SearchBounds, enumerate_candidates

__all__ = [
    "SpecifyingData", "canonical_form", "verify_candidate", "anticanonical_degree",
    "elementary_contractions", "hodge_numbers", "SearchBounds", "enumerate_candidates",
]
