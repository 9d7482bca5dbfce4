"""Cartesian tree matching on integer sequences."""

from cartmatch.core import (
    CartesianTree,
    build_cartesian_tree,
    ct_equal,
    parent_distance,
    substring_pd_char,
    tree_from_pd,
)
from cartmatch.errors import (
    CartmatchError,
    ContractViolation,
    CorruptIndex,
    InvalidPattern,
    MalformedInput,
)
from cartmatch.multi import build_automaton, multi_search
from cartmatch.signature import signature_search
from cartmatch.single import StreamMatcher, failure_func, search
from cartmatch.suffixtree import CartesianSuffixTree, query

__version__ = "0.1.0"

__all__ = [
    "CartesianSuffixTree",
    "CartesianTree",
    "CartmatchError",
    "ContractViolation",
    "CorruptIndex",
    "InvalidPattern",
    "MalformedInput",
    "StreamMatcher",
    "build_automaton",
    "build_cartesian_tree",
    "ct_equal",
    "failure_func",
    "multi_search",
    "parent_distance",
    "query",
    "search",
    "signature_search",
    "substring_pd_char",
    "tree_from_pd",
]
