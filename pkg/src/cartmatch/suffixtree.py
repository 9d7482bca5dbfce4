"""Cartesian suffix tree: a compacted trie over PD(T[j..n]) . (-1).

Edges keep ``(suffix, start, end)`` triples into the quasi-suffix string of
that suffix and every label character is produced on demand by
:func:`oracle_char`.  Construction inserts the quasi-suffixes one at a time,
which is quadratic in the worst case.

Binary index layout (all fields little-endian signed 64-bit)::

    magic  b"CSTREE\\x00\\x01"  (8 raw bytes)
    version, n
    n text values
    node_count
    node_count records in preorder: child_count, suffix, start, end, leaf
"""

from __future__ import annotations

import io
import struct
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import BinaryIO, Optional

from sortedcontainers import SortedDict

from cartmatch.core import parent_distance
from cartmatch.errors import ContractViolation, CorruptIndex

SENTINEL = -1
MAGIC = b"CSTREE\x00\x01"
VERSION = 1


def oracle_char(text_pd: Sequence[int], j: int, i: int) -> int:
    """The i-th character of the j-th quasi-suffix PD(T[j..n]) . (-1)."""
    n = len(text_pd)
    if not (1 <= j <= n + 1 and 1 <= i <= n + 2 - j):
        raise ContractViolation(f"oracle_char({j}, {i}) outside the quasi-suffix collection of n={n}")
    if i == n + 2 - j:
        return SENTINEL
    d = text_pd[j + i - 2]
    return 0 if d >= i else d


@dataclass
class STNode:
    suffix: int = 0
    start: int = 0
    end: int = 0
    children: SortedDict = field(default_factory=SortedDict)
    leaf: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.leaf > 0


@dataclass
class CartesianSuffixTree:
    text: tuple[int, ...]
    text_pd: tuple[int, ...]
    nodes: list[STNode]

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def root(self) -> STNode:
        return self.nodes[0]

    def char(self, j: int, i: int) -> int:
        return oracle_char(self.text_pd, j, i)

    def label(self, node: STNode) -> list[int]:
        return [self.char(node.suffix, p) for p in range(node.start, node.end + 1)]

    def leaves(self, start: int = 0) -> list[int]:
        out = []
        stack = [start]
        while stack:
            node = self.nodes[stack.pop()]
            if node.is_leaf:
                out.append(node.leaf)
            stack.extend(node.children.values())
        return out

    def find_path(self, path: Sequence[int]) -> Optional[int]:
        """Node id spelled exactly by ``path`` when it ends on an explicit node."""
        q, depth = 0, 0
        while depth < len(path):
            child = self.nodes[q].children.get(path[depth])
            if child is None:
                return None
            node = self.nodes[child]
            for p in range(node.start, node.end + 1):
                if depth == len(path):
                    return None
                if self.char(node.suffix, p) != path[depth]:
                    return None
                depth += 1
            q = child
        return q

    def root_to_leaf_strings(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        stack: list[tuple[int, list[int]]] = [(0, [])]
        while stack:
            q, prefix = stack.pop()
            node = self.nodes[q]
            spelled = prefix + (self.label(node) if q else [])
            if node.is_leaf:
                out[node.leaf] = spelled
            for child in node.children.values():
                stack.append((child, spelled))
        return out

    def check_invariants(self) -> None:
        leaves = self.leaves()
        if sorted(leaves) != list(range(1, self.n + 2)):
            raise CorruptIndex(f"expected leaves 1..{self.n + 1}, found {len(leaves)}")
        for q, node in enumerate(self.nodes):
            if not node.is_leaf and q and len(node.children) < 2:
                raise CorruptIndex(f"internal node {q} has fewer than two children")
            if node.is_leaf and node.children:
                raise CorruptIndex(f"leaf node {q} has children")
            for first, child in node.children.items():
                c = self.nodes[child]
                if self.char(c.suffix, c.start) != first:
                    raise CorruptIndex(f"edge into node {child} is filed under the wrong character")


def build(text: Sequence[int]) -> CartesianSuffixTree:
    text = tuple(text)
    n = len(text)
    if n < 1:
        raise ContractViolation("suffix tree needs a nonempty text")
    pd = parent_distance(text)
    tree = CartesianSuffixTree(text, pd, [STNode()])
    nodes = tree.nodes
    for j in range(1, n + 2):
        size = n + 2 - j
        q, depth = 0, 0
        while True:
            c = oracle_char(pd, j, depth + 1)
            child = nodes[q].children.get(c)
            if child is None:
                nodes.append(STNode(j, depth + 1, size, leaf=j))
                nodes[q].children[c] = len(nodes) - 1
                break
            edge = nodes[child]
            # the first character already matched through the children map
            p = edge.start + 1
            depth += 1
            while p <= edge.end and oracle_char(pd, edge.suffix, p) == oracle_char(pd, j, depth + 1):
                p += 1
                depth += 1
            if p > edge.end:
                q = child
                continue
            # mismatch inside the edge: split at position p
            mid = STNode(edge.suffix, edge.start, p - 1)
            nodes.append(mid)
            mid_id = len(nodes) - 1
            nodes[q].children[c] = mid_id
            edge.start = p
            mid.children[oracle_char(pd, edge.suffix, p)] = child
            nodes.append(STNode(j, depth + 1, size, leaf=j))
            mid.children[oracle_char(pd, j, depth + 1)] = len(nodes) - 1
            break
    return tree


def _locus(tree: CartesianSuffixTree, pattern_pd: Sequence[int]) -> Optional[int]:
    """Node at or just below the end of ``pattern_pd``'s path, or None if the path breaks off."""
    q, depth, m = 0, 0, len(pattern_pd)
    nodes, pd = tree.nodes, tree.text_pd
    while depth < m:
        child = nodes[q].children.get(pattern_pd[depth])
        if child is None:
            return None
        edge = nodes[child]
        depth += 1
        p = edge.start + 1
        while depth < m and p <= edge.end:
            if oracle_char(pd, edge.suffix, p) != pattern_pd[depth]:
                return None
            depth += 1
            p += 1
        q = child
    return q


def query(tree: CartesianSuffixTree, pattern: Sequence[int]) -> list[int]:
    """Every start i with CT(T[i..i+m-1]) = CT(pattern), ascending."""
    if not pattern or len(pattern) > tree.n:
        return []
    q = _locus(tree, parent_distance(pattern))
    if q is None:
        return []
    return sorted(leaf for leaf in tree.leaves(q) if leaf <= tree.n)


def query_any(tree: CartesianSuffixTree, pattern: Sequence[int]) -> Optional[int]:
    """One occurrence (the first leaf reached), or None."""
    if not pattern or len(pattern) > tree.n:
        return None
    q = _locus(tree, parent_distance(pattern))
    if q is None:
        return None
    while not tree.nodes[q].is_leaf:
        q = tree.nodes[q].children.peekitem(-1)[1]
    leaf = tree.nodes[q].leaf
    return leaf if leaf <= tree.n else None


def _lcp(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def verify_quasi_suffix(text: Sequence[int]) -> bool:
    """Brute-force check that {PD(T[i..n]) . (-1)} plus (-1) is a quasi-suffix collection."""
    n = len(text)
    pd = parent_distance(text)
    strings = [
        [oracle_char(pd, j, i) for i in range(1, n + 3 - j)] for j in range(1, n + 2)
    ]
    for j, s in enumerate(strings, 1):
        if len(s) != n + 2 - j:
            return False
    for a, b in combinations(range(n + 1), 2):
        sa, sb = strings[a], strings[b]
        short, long_ = (sa, sb) if len(sa) <= len(sb) else (sb, sa)
        if long_[: len(short)] == short:
            return False
        if b + 1 <= n and _lcp(strings[a + 1], strings[b + 1]) < _lcp(sa, sb) - 1:
            return False
    return True


_I64 = struct.Struct("<q")


def _records(tree: CartesianSuffixTree):
    stack = [0]
    while stack:
        q = stack.pop()
        node = tree.nodes[q]
        yield (len(node.children), node.suffix, node.start, node.end, node.leaf)
        stack.extend(reversed(node.children.values()))


def dump(tree: CartesianSuffixTree, fh: BinaryIO) -> None:
    records = list(_records(tree))
    fh.write(MAGIC)
    fh.write(struct.pack(f"<qq{tree.n}q", VERSION, tree.n, *tree.text))
    fh.write(_I64.pack(len(records)))
    for rec in records:
        fh.write(struct.pack("<5q", *rec))


def dumps(tree: CartesianSuffixTree) -> bytes:
    buf = io.BytesIO()
    dump(tree, buf)
    return buf.getvalue()


def loads(data: bytes) -> CartesianSuffixTree:
    if data[: len(MAGIC)] != MAGIC:
        raise CorruptIndex("bad magic")
    off = len(MAGIC)

    def take(count: int) -> tuple[int, ...]:
        nonlocal off
        end = off + 8 * count
        if end > len(data):
            raise CorruptIndex("index file is truncated")
        vals = struct.unpack_from(f"<{count}q", data, off)
        off = end
        return vals

    version, n = take(2)
    if version != VERSION:
        raise CorruptIndex(f"unsupported index version {version}")
    if n < 1 or 8 * n > len(data):
        raise CorruptIndex(f"implausible text length {n}")
    text = take(n)
    (count,) = take(1)
    if count < 1 or count > 2 * (n + 1):
        raise CorruptIndex(f"implausible node count {count}")
    records = [take(5) for _ in range(count)]
    if off != len(data):
        raise CorruptIndex("trailing bytes after the last node")

    tree = CartesianSuffixTree(tuple(text), parent_distance(text), [])
    # (node id, children still to attach)
    pending: list[list[int]] = []
    for q, (kids, suffix, start, end, leaf) in enumerate(records):
        if q and not pending:
            raise CorruptIndex("node records left over after the tree was rebuilt")
        if q and not (1 <= suffix <= n + 1 and 1 <= start <= end <= n + 2 - suffix):
            raise CorruptIndex(f"edge triple ({suffix}, {start}, {end}) out of range")
        if kids < 0 or (leaf and kids) or not 0 <= leaf <= n + 1:
            raise CorruptIndex(f"bad node record {q}")
        tree.nodes.append(STNode(suffix, start, end, leaf=leaf))
        if pending:
            parent = pending[-1]
            first = oracle_char(tree.text_pd, suffix, start)
            siblings = tree.nodes[parent[0]].children
            if first in siblings:
                raise CorruptIndex("sibling edges share a first character")
            siblings[first] = q
            parent[1] -= 1
            if parent[1] == 0:
                pending.pop()
        if kids:
            pending.append([q, kids])
    if pending:
        raise CorruptIndex("preorder node list ends early")
    tree.check_invariants()
    return tree


def load(fh: BinaryIO) -> CartesianSuffixTree:
    return loads(fh.read())
