"""Single-pattern Cartesian tree matching with a KMP-style failure function.

The text's parent-distance string is never materialised.  A deque holds the
non-decreasing chain of (value, position) pairs inside the current window,
which is enough to read off the next parent distance in O(1) and keeps the
working memory at O(m).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Optional

from cartmatch.core import parent_distance
from cartmatch.errors import InvalidPattern


@dataclass(frozen=True)
class FailureFunction:
    """``pi[q - 1]`` is the failure value for prefix length q."""

    pi: tuple[int, ...]
    pattern_pd: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.pi)


@dataclass
class SearchCounters:
    comparisons: int = 0
    pushes: int = 0
    back_pops: int = 0
    front_pops: int = 0
    failure_links: int = 0
    max_deque: int = 0
    matches: int = 0

    @property
    def pops(self) -> int:
        return self.back_pops + self.front_pops


@dataclass
class MatcherState:
    length: int = 0
    window: deque = field(default_factory=deque)
    position: int = 0
    counters: SearchCounters = field(default_factory=SearchCounters)


def failure_func(pattern: Sequence[int]) -> FailureFunction:
    m = len(pattern)
    if m == 0:
        raise InvalidPattern("pattern must be nonempty")
    pd = parent_distance(pattern)
    pi = [0] * m
    length = 0
    for i in range(2, m + 1):
        d = pd[i - 1]
        while length:
            # PD(P[i-len..i])[len+1] against PD(P)[len+1]
            if (0 if d > length else d) == pd[length]:
                break
            length = pi[length - 1]
        length += 1
        pi[i - 1] = length
    return FailureFunction(tuple(pi), pd)


def advance(
    state: MatcherState, c: int, ff: FailureFunction
) -> tuple[MatcherState, Optional[int]]:
    """Consume one text character; return the state and a match start if one ended here."""
    pd = ff.pattern_pd
    pi = ff.pi
    window = state.window
    cnt = state.counters
    state.position += 1
    i = state.position
    length = state.length

    while window:
        cnt.comparisons += 1
        if window[-1][0] <= c:
            break
        window.pop()
        cnt.back_pops += 1

    while length:
        x = i - window[-1][1] if window else 0
        cnt.comparisons += 1
        if x == pd[length]:
            break
        length = pi[length - 1]
        cnt.failure_links += 1
        lo = i - length
        while window and window[0][1] < lo:
            window.popleft()
            cnt.front_pops += 1

    length += 1
    window.append((c, i))
    cnt.pushes += 1
    if len(window) > cnt.max_deque:
        cnt.max_deque = len(window)

    match = None
    if length == ff.m:
        match = i - ff.m + 1
        cnt.matches += 1
        length = pi[length - 1]
        lo = i - length
        while window and window[0][1] <= lo:
            window.popleft()
            cnt.front_pops += 1
    state.length = length
    return state, match


class StreamMatcher:
    """Push-style matcher: feed characters one at a time."""

    def __init__(self, pattern: Sequence[int] | FailureFunction):
        self.ff = pattern if isinstance(pattern, FailureFunction) else failure_func(pattern)
        self.state = MatcherState()

    @property
    def counters(self) -> SearchCounters:
        return self.state.counters

    def feed(self, c: int) -> Optional[int]:
        return advance(self.state, c, self.ff)[1]

    def scan(self, text: Iterable[int]) -> Iterator[int]:
        for c in text:
            hit = advance(self.state, c, self.ff)[1]
            if hit is not None:
                yield hit


def search(
    text: Iterable[int],
    pattern: Sequence[int],
    counters: Optional[SearchCounters] = None,
) -> list[int]:
    """All 1-indexed i with CT(text[i..i+m-1]) = CT(pattern), in increasing order."""
    matcher = StreamMatcher(pattern)
    if counters is not None:
        matcher.state.counters = counters
    return list(matcher.scan(text))
