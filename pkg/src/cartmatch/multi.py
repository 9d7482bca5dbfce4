"""Aho-Corasick automaton over parent-distance strings.

The trie is built from PD(P_1) ... PD(P_k).  Failure links cannot be found by
simply following the parent's chain with a fixed character: the next parent
distance depends on how long the candidate suffix is, so it is recomputed for
every candidate on the chain.  The text side does the same thing with the
deque from the single-pattern matcher.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Optional

from sortedcontainers import SortedDict

from cartmatch.core import parent_distance
from cartmatch.errors import InvalidPattern

ROOT = 0


@dataclass
class Node:
    idx: int
    len: int
    trans: dict = field(default_factory=dict)
    fail: int = ROOT
    parent: int = ROOT
    terminal: list[int] = field(default_factory=list)
    output: tuple[int, ...] = ()


@dataclass
class MatchAutomaton:
    """Trie nodes (node 0 is the root) plus the patterns' parent-distance strings.

    Pattern ids are 1-indexed; ``pds[j - 1]`` is PD(P_j).
    """

    nodes: list[Node]
    pds: list[tuple[int, ...]]
    ordered: bool = True
    has_failure: bool = False

    @property
    def k(self) -> int:
        return len(self.pds)

    def lengths(self) -> list[int]:
        return [len(pd) for pd in self.pds]

    def find(self, pd: Sequence[int]) -> Optional[int]:
        """Node id spelling ``pd`` exactly, if the trie has one."""
        q = ROOT
        for x in pd:
            q = self.nodes[q].trans.get(x)
            if q is None:
                return None
        return q


def build_trie(patterns: Sequence[Sequence[int]], ordered: bool = True) -> MatchAutomaton:
    """Trie over the patterns' parent-distance strings.

    ``ordered`` keeps each node's transitions in a sorted map (O(log k) per
    step); ``ordered=False`` uses a plain dict instead.
    """
    if not patterns:
        raise InvalidPattern("at least one pattern is required")
    new_map = SortedDict if ordered else dict
    nodes = [Node(idx=0, len=0, trans=new_map())]
    pds = []
    for pid, pattern in enumerate(patterns, 1):
        if len(pattern) == 0:
            raise InvalidPattern(f"pattern {pid} is empty")
        pd = parent_distance(pattern)
        pds.append(pd)
        q = ROOT
        for depth, x in enumerate(pd, 1):
            nxt = nodes[q].trans.get(x)
            if nxt is None:
                nxt = len(nodes)
                nodes.append(Node(idx=pid, len=depth, trans=new_map(), parent=q))
                nodes[q].trans[x] = nxt
            q = nxt
        nodes[q].terminal.append(pid)
    return MatchAutomaton(nodes, pds, ordered)


def build_failure(automaton: MatchAutomaton) -> MatchAutomaton:
    nodes = automaton.nodes
    pds = automaton.pds
    order = deque(nodes[ROOT].trans.values())
    while order:
        q = order.popleft()
        node = nodes[q]
        order.extend(node.trans.values())
        node.fail = ROOT
        ptr = node.parent
        if ptr != ROOT:
            # the last character of P_idx[1..len], as seen by a suffix of length plen + 1
            d = pds[node.idx - 1][node.len - 1]
            while ptr != ROOT:
                ptr = nodes[ptr].fail
                plen = nodes[ptr].len
                x = 0 if d > plen else d
                hit = nodes[ptr].trans.get(x)
                if hit is not None:
                    node.fail = hit
                    break
        node.output = tuple(node.terminal) + nodes[node.fail].output
    automaton.has_failure = True
    return automaton


def build_automaton(patterns: Sequence[Sequence[int]], ordered: bool = True) -> MatchAutomaton:
    return build_failure(build_trie(patterns, ordered))


@dataclass
class MultiCounters:
    pushes: int = 0
    pops: int = 0
    failure_links: int = 0
    max_deque: int = 0


def multi_search_iter(
    text: Iterable[int],
    automaton: MatchAutomaton,
    counters: Optional[MultiCounters] = None,
) -> Iterator[tuple[int, int]]:
    """Yield ``(position, pattern_id)`` as soon as each occurrence ends."""
    if not automaton.has_failure:
        raise ValueError("automaton has no failure links; call build_failure first")
    nodes = automaton.nodes
    sizes = automaton.lengths()
    cnt = counters if counters is not None else MultiCounters()
    window: deque = deque()
    q = ROOT
    for i, c in enumerate(text, 1):
        while window and window[-1][0] > c:
            window.pop()
            cnt.pops += 1
        while True:
            x = i - window[-1][1] if window else 0
            nxt = nodes[q].trans.get(x)
            if nxt is not None:
                q = nxt
                break
            # the root always has the 0 transition, so q is never the root here
            q = nodes[q].fail
            cnt.failure_links += 1
            lo = i - nodes[q].len
            while window and window[0][1] < lo:
                window.popleft()
                cnt.pops += 1
        window.append((c, i))
        cnt.pushes += 1
        if len(window) > cnt.max_deque:
            cnt.max_deque = len(window)
        for pid in nodes[q].output:
            yield i - sizes[pid - 1] + 1, pid


def multi_search(
    text: Iterable[int],
    automaton: MatchAutomaton,
    counters: Optional[MultiCounters] = None,
) -> list[tuple[int, int]]:
    return list(multi_search_iter(text, automaton, counters))
