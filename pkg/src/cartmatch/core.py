"""Parent-distance strings and array-backed Cartesian trees.

Positions in every public contract are 1-indexed.  Sequences are stored
0-indexed internally, so ``pd[i - 1]`` is the i-th parent distance.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

from cartmatch.errors import ContractViolation, MalformedInput

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


@dataclass
class StackCounters:
    pushes: int = 0
    pops: int = 0


@dataclass(frozen=True)
class CartesianTree:
    """Cartesian tree over node ids ``1..n`` (node i is the i-th character).

    ``left``, ``right`` and ``parent`` are tuples of length ``n + 1``; slot 0
    is unused so that ``left[i]`` addresses node i directly.  Structural
    equality is plain dataclass equality.
    """

    n: int
    root: Optional[int]
    left: tuple[Optional[int], ...]
    right: tuple[Optional[int], ...]
    parent: tuple[Optional[int], ...]

    def inorder(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        node = self.root
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = self.left[node]
            node = stack.pop()
            out.append(node)
            node = self.right[node]
        return out


def _freeze(n, root, left, right, parent) -> CartesianTree:
    return CartesianTree(n, root, tuple(left), tuple(right), tuple(parent))


def build_cartesian_tree(values: Sequence[int]) -> CartesianTree:
    """Build CT(values) with the rightmost-spine stack in O(n).

    Equal values stay on the spine, so the leftmost minimum of any range
    ends up as the ancestor and later equal values hang to its right.
    """
    n = len(values)
    left: list[Optional[int]] = [None] * (n + 1)
    right: list[Optional[int]] = [None] * (n + 1)
    parent: list[Optional[int]] = [None] * (n + 1)
    spine: list[int] = []
    for i in range(1, n + 1):
        v = values[i - 1]
        last = None
        while spine and values[spine[-1] - 1] > v:
            last = spine.pop()
        if last is not None:
            left[i] = last
            parent[last] = i
        if spine:
            right[spine[-1]] = i
            parent[i] = spine[-1]
        spine.append(i)
    root = spine[0] if spine else None
    return _freeze(n, root, left, right, parent)


def parent_distance(
    values: Sequence[int], counters: Optional[StackCounters] = None
) -> tuple[int, ...]:
    """Return PD(values): distance back to the nearest earlier value <= the current one, else 0."""
    stack: list[tuple[int, int]] = []
    out = []
    pushes = pops = 0
    for i, v in enumerate(values, 1):
        while stack and stack[-1][0] > v:
            stack.pop()
            pops += 1
        out.append(i - stack[-1][1] if stack else 0)
        stack.append((v, i))
        pushes += 1
    if counters is not None:
        counters.pushes += pushes
        counters.pops += pops
    return tuple(out)


def substring_pd_char(pd: Sequence[int], i: int, k: int) -> int:
    """Return PD(S[i..j])[k] for any j >= i + k - 1, given pd = PD(S).

    Runs in O(1): the parent of S[i+k-1] lies inside the substring exactly
    when its distance is smaller than k.
    """
    if i < 1 or k < 1 or i + k - 1 > len(pd):
        raise ContractViolation(
            f"substring_pd_char: position {i}+{k}-1 outside 1..{len(pd)}"
        )
    d = pd[i + k - 2]
    return 0 if d >= k else d


def validate_pd(pd: Sequence[int]) -> None:
    """Raise MalformedInput unless ``pd`` is the parent-distance string of some sequence."""
    spine: list[int] = []
    for i, d in enumerate(pd, 1):
        if not isinstance(d, int) or d < 0 or d > i - 1:
            raise MalformedInput(f"parent distance {d!r} at position {i} out of range 0..{i - 1}")
        if d == 0:
            spine.clear()
        else:
            j = i - d
            while spine and spine[-1] > j:
                spine.pop()
            if not spine or spine[-1] != j:
                raise MalformedInput(
                    f"parent pointer at position {i} crosses an earlier pointer (target {j})"
                )
        spine.append(i)


def tree_from_pd(pd: Sequence[int]) -> CartesianTree:
    """Rebuild the Cartesian tree encoded by ``pd`` by rightmost-spine insertion."""
    n = len(pd)
    left: list[Optional[int]] = [None] * (n + 1)
    right: list[Optional[int]] = [None] * (n + 1)
    parent: list[Optional[int]] = [None] * (n + 1)
    spine: list[int] = []
    for i, d in enumerate(pd, 1):
        if not isinstance(d, int) or d < 0 or d > i - 1:
            raise MalformedInput(f"parent distance {d!r} at position {i} out of range 0..{i - 1}")
        target = i - d if d else 0
        last = None
        while spine and spine[-1] > target:
            last = spine.pop()
        if d and (not spine or spine[-1] != target):
            raise MalformedInput(
                f"parent pointer at position {i} crosses an earlier pointer (target {target})"
            )
        # the detached part of the spine becomes the new node's left subtree
        if last is not None:
            left[i] = last
            parent[last] = i
        if d:
            right[target] = i
            parent[i] = target
        spine.append(i)
    root = spine[0] if spine else None
    return _freeze(n, root, left, right, parent)


def ct_equal(s1: Sequence[int], s2: Sequence[int]) -> bool:
    return len(s1) == len(s2) and parent_distance(s1) == parent_distance(s2)


def format_pd(pd: Sequence[int]) -> str:
    return " ".join(map(str, pd))


def parse_pd(line: str) -> tuple[int, ...]:
    try:
        pd = tuple(int(tok) for tok in line.split())
    except ValueError as exc:
        raise MalformedInput(f"not an integer sequence: {line!r}") from exc
    validate_pd(pd)
    return pd
