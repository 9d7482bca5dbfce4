"""Cartesian tree signatures: pop counts of the stack construction.

``L[i]`` counts the stack pops made when the i-th character arrives and
``D[i]`` is the forward distance to the character that popped it (0 if it
is never popped).  ``D`` is what makes removing the first character cheap,
which in turn lets the KMP search run over signatures instead of parent
distances.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from cartmatch.errors import ContractViolation, InvalidPattern, MalformedInput
from cartmatch.single import failure_func


@dataclass(frozen=True)
class CartesianSignature:
    L: tuple[int, ...]
    D: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.L)


def signature(values: Sequence[int]) -> CartesianSignature:
    n = len(values)
    L = [0] * n
    D = [0] * n
    stack: list[int] = []
    for i, v in enumerate(values):
        while stack and values[stack[-1]] > v:
            j = stack.pop()
            D[j] = i - j
            L[i] += 1
        stack.append(i)
    return CartesianSignature(tuple(L), tuple(D))


class PackedBits:
    """Fixed-length bit vector packed into a ``bytearray``, most significant bit first."""

    __slots__ = ("_data", "_len")

    def __init__(self, length: int = 0):
        self._len = length
        self._data = bytearray((length + 7) // 8)

    @classmethod
    def from_str(cls, bits: str) -> PackedBits:
        out = cls(len(bits))
        for i, ch in enumerate(bits):
            if ch == "1":
                out[i] = 1
            elif ch != "0":
                raise MalformedInput(f"bad bit {ch!r} at offset {i + 1}")
        return out

    def __len__(self) -> int:
        return self._len

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self._len:
            raise IndexError(i)
        return (self._data[i >> 3] >> (7 - (i & 7))) & 1

    def __setitem__(self, i: int, bit: int) -> None:
        if not 0 <= i < self._len:
            raise IndexError(i)
        mask = 1 << (7 - (i & 7))
        if bit:
            self._data[i >> 3] |= mask
        else:
            self._data[i >> 3] &= ~mask

    def __iter__(self):
        return (self[i] for i in range(self._len))

    def __eq__(self, other) -> bool:
        if isinstance(other, PackedBits):
            return self._len == other._len and self._data == other._data
        if isinstance(other, str):
            return str(self) == other
        return NotImplemented

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self)

    def __repr__(self) -> str:
        return f"PackedBits('{self}')"

    def tobytes(self) -> bytes:
        return bytes(self._data)


def encode_bits(L: Sequence[int]) -> PackedBits:
    """Encode L as 1^L[1] 0 1^L[2] 0 ... 1^L[n] 0."""
    out = PackedBits(len(L) + sum(L))
    pos = 0
    for count in L:
        for _ in range(count):
            out[pos] = 1
            pos += 1
        pos += 1
    return out


def decode_bits(bits: PackedBits | str) -> tuple[int, ...]:
    if isinstance(bits, str):
        bits = PackedBits.from_str(bits)
    L = []
    run = 0
    for b in bits:
        if b:
            run += 1
        else:
            L.append(run)
            run = 0
    if run:
        raise MalformedInput("bit string does not end with a 0 terminator")
    return tuple(L)


def delete_front(sig: CartesianSignature) -> CartesianSignature:
    """Signature of S[2..n] from the signature of S[1..n]."""
    if not sig.L:
        raise ContractViolation("delete_front on an empty signature")
    d = sig.D[0]
    L = list(sig.L)
    if d > 0:
        L[d] -= 1
    return CartesianSignature(tuple(L[1:]), sig.D[1:])


class SignatureWindow:
    """Mutable (L, D) pair for a sliding window of a text.

    ``push`` appends a character, ``pop_front`` drops the oldest one in O(1)
    amortised time.  Storage is a list with a head offset, compacted once the
    dead prefix dominates.
    """

    def __init__(self) -> None:
        self.values: list[int] = []
        self.L: list[int] = []
        self.D: list[int] = []
        self.head = 0
        # window offsets (absolute list indices) of never-popped characters, increasing
        self.stack: list[int] = []
        self.stack_head = 0
        self.work = 0

    def __len__(self) -> int:
        return len(self.L) - self.head

    def last_pops(self) -> int:
        return self.L[-1]

    def push(self, c: int) -> int:
        """Append ``c``; return its pop count within the window."""
        values, stack = self.values, self.stack
        i = len(values)
        pops = 0
        while len(stack) > self.stack_head and values[stack[-1]] > c:
            j = stack.pop()
            self.D[j] = i - j
            pops += 1
            self.work += 1
        values.append(c)
        self.L.append(pops)
        self.D.append(0)
        stack.append(i)
        self.work += 1
        return pops

    def pop_front(self) -> None:
        if self.head >= len(self.L):
            raise ContractViolation("pop_front on an empty window")
        h = self.head
        d = self.D[h]
        if d > 0:
            self.L[h + d] -= 1
        else:
            # never popped, so it is the bottom of the window's stack
            self.stack_head += 1
        self.head += 1
        self.work += 1
        if self.head > 64 and self.head * 2 > len(self.L):
            self._compact()

    def _compact(self) -> None:
        h = self.head
        del self.values[:h], self.L[:h], self.D[:h]
        self.stack = [j - h for j in self.stack[self.stack_head :]]
        self.stack_head = 0
        self.head = 0

    def signature(self) -> CartesianSignature:
        return CartesianSignature(tuple(self.L[self.head :]), tuple(self.D[self.head :]))


def signature_search(text: Iterable[int], pattern: Sequence[int]) -> list[int]:
    """KMP search comparing pop counts of the window instead of parent distances."""
    if not pattern:
        raise InvalidPattern("pattern must be nonempty")
    m = len(pattern)
    pi = failure_func(pattern).pi
    target = signature(pattern).L
    window = SignatureWindow()
    out = []
    length = 0
    for i, c in enumerate(text, 1):
        window.push(c)
        while length and window.last_pops() != target[length]:
            new = pi[length - 1]
            for _ in range(length - new):
                window.pop_front()
            length = new
        length += 1
        if length == m:
            out.append(i - m + 1)
            new = pi[length - 1]
            for _ in range(length - new):
                window.pop_front()
            length = new
    return out

