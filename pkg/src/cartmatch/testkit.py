"""Brute-force oracles and seeded instance generators.

Nothing here imports the matchers it is used to check.  The trees are built
straight from the recursive definition: the leftmost minimum is the root and
the two flanks recurse.
"""

from __future__ import annotations

import os
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

Shape = Optional[tuple]

ALPHABETS = (2, 5, 100)


def naive_tree(values: Sequence[int]) -> Shape:
    """Shape of CT(values) as nested ``(left, right)`` pairs; ``None`` is the empty tree."""
    if not values:
        return None
    root = 0
    for i, v in enumerate(values):
        if v < values[root]:
            root = i
    return (naive_tree(values[:root]), naive_tree(values[root + 1 :]))


def naive_search(text: Sequence[int], pattern: Sequence[int]) -> list[int]:
    m = len(pattern)
    target = naive_tree(pattern)
    return [
        i + 1
        for i in range(len(text) - m + 1)
        if naive_tree(text[i : i + m]) == target
    ]


def naive_failure(pattern: Sequence[int]) -> list[int]:
    pi = [0] * len(pattern)
    for q in range(2, len(pattern) + 1):
        for k in range(q - 1, 0, -1):
            if naive_tree(pattern[:k]) == naive_tree(pattern[q - k : q]):
                pi[q - 1] = k
                break
    return pi


def naive_pd(values: Sequence[int]) -> list[int]:
    out = []
    for i in range(len(values)):
        js = [j for j in range(i) if values[j] <= values[i]]
        out.append(i - max(js) if js else 0)
    return out


def shape_of(tree) -> Shape:
    """Convert an array-backed tree (anything with root/left/right) to a nested shape."""

    def walk(node):
        if node is None:
            return None
        return (walk(tree.left[node]), walk(tree.right[node]))

    return walk(tree.root)


def default_seed() -> int:
    return int(os.environ.get("CARTMATCH_SEED", "20190123"))


@dataclass
class InstanceGenerator:
    """Reproducible random sequences over a small integer alphabet."""

    seed: int = field(default_factory=default_seed)
    alphabet_size: int = 5
    min_length: int = 0
    max_length: int = 200
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        self.rng = random.Random(self.seed)

    def sequence(self, lo: Optional[int] = None, hi: Optional[int] = None) -> list[int]:
        lo = self.min_length if lo is None else lo
        hi = self.max_length if hi is None else hi
        n = self.rng.randint(lo, hi)
        a = self.alphabet_size
        return [self.rng.randrange(a) for _ in range(n)]

    def pair(self, max_text: int = 200, max_pattern: int = 12) -> tuple[list[int], list[int]]:
        return self.sequence(0, max_text), self.sequence(1, max_pattern)

    def patterns(self, k: int, max_pattern: int = 10) -> list[list[int]]:
        return [self.sequence(1, max_pattern) for _ in range(k)]


def instances(count: int, seed: Optional[int] = None, **bounds):
    """Yield ``(alphabet_size, text, pattern)`` cycling through the standard alphabets."""
    base = default_seed() if seed is None else seed
    gens = [InstanceGenerator(seed=base + a, alphabet_size=a) for a in ALPHABETS]
    for t in range(count):
        g = gens[t % len(gens)]
        text, pattern = g.pair(**bounds)
        yield g.alphabet_size, text, pattern
