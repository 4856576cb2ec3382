"""Enumeration of order-preserving squares in integer strings."""
from .enumerator import (SquareOccurrence, count_distinct_as_words, enumerate_op_squares,
                         run_enumeration)
from .genbench import audit_bounds, generate_lower_bound_family, generate_random
from .opcore import Sequence, compute_code, is_op_isomorphic
from .opsuffixtree import build_op_suffix_tree
from .oracle import brute_force_distinct, brute_force_enumerate

__all__ = [
    "Sequence", "SquareOccurrence", "audit_bounds", "brute_force_distinct",
    "brute_force_enumerate", "build_op_suffix_tree", "compute_code",
    "count_distinct_as_words", "enumerate_op_squares", "generate_lower_bound_family",
    "generate_random", "is_op_isomorphic", "run_enumeration",
]
