import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartmatch.core import ct_equal, parent_distance
from cartmatch.errors import ContractViolation, InvalidPattern
from cartmatch.signature import (
    CartesianSignature,
    PackedBits,
    SignatureWindow,
    decode_bits,
    delete_front,
    encode_bits,
    signature,
    signature_search,
)
from cartmatch.single import search
from cartmatch.testkit import ALPHABETS, InstanceGenerator

from conftest import HEAD_AND_SHOULDERS, PRICE_TEXT

seqs = st.lists(st.integers(0, 3), min_size=1, max_size=40)


def test_worked_signature():
    sig = signature((2, 7, 5, 6, 4, 3, 1))
    assert sig.L == (0, 0, 1, 0, 2, 1, 2)
    assert sig.D == (6, 1, 2, 1, 1, 1, 0)
    assert str(encode_bits(sig.L)) == "0010011010110"


def test_worked_delete_front():
    sig = delete_front(signature((2, 7, 5, 6, 4, 3, 1)))
    assert sig == CartesianSignature((0, 1, 0, 2, 1, 1), (1, 2, 1, 1, 1, 0))
    assert sig == signature((7, 5, 6, 4, 3, 1))


def test_trivial_signatures():
    assert signature((9,)) == CartesianSignature((0,), (0,))
    assert signature((1, 2, 2, 3)) == CartesianSignature((0,) * 4, (0,) * 4)
    assert str(encode_bits((0,))) == "0"
    assert delete_front(signature((9,))) == CartesianSignature((), ())
    with pytest.raises(ContractViolation):
        delete_front(CartesianSignature((), ()))


def test_packed_bits():
    bits = PackedBits.from_str("0010011010110")
    assert len(bits) == 13 and bits == "0010011010110"
    assert bits.tobytes() == bytes([0b00100110, 0b10110000])
    assert decode_bits(bits) == (0, 0, 1, 0, 2, 1, 2)


def test_signature_search_examples():
    assert signature_search(PRICE_TEXT, HEAD_AND_SHOULDERS) == [5]
    assert signature_search(HEAD_AND_SHOULDERS, HEAD_AND_SHOULDERS) == [1]
    with pytest.raises(InvalidPattern):
        signature_search((1,), ())


@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_signature_search_random(alphabet, seed):
    gen = InstanceGenerator(seed=seed + 17 * alphabet, alphabet_size=alphabet)
    for _ in range(350):
        text, pattern = gen.sequence(0, 200), gen.sequence(1, 12)
        assert signature_search(text, pattern) == search(text, pattern)


def test_iterated_delete_front_matches_recomputation():
    rng = random.Random(11)
    for _ in range(500):
        values = [rng.randrange(rng.choice(ALPHABETS)) for _ in range(rng.randint(1, 25))]
        sig = signature(values)
        for k in range(len(values)):
            assert sig == signature(values[k:])
            sig = delete_front(sig)


@given(seqs)
def test_bit_encoding(values):
    sig = signature(values)
    bits = encode_bits(sig.L)
    assert len(bits) == len(values) + sum(sig.L) < 2 * len(values)
    assert decode_bits(bits) == sig.L
    assert decode_bits(str(bits)) == sig.L


@given(seqs)
def test_d_array_meaning(values):
    sig = signature(values)
    assert sig.L[0] == 0
    chain = []
    for i, v in enumerate(values):
        while chain and values[chain[-1]] > v:
            chain.pop()
        chain.append(i)
    for i, d in enumerate(sig.D):
        if d == 0:
            assert i in chain
        else:
            popper = values[i + d]
            assert popper < values[i]
            assert all(values[k] >= values[i] for k in range(i + 1, i + d))


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 2), min_size=n, max_size=n),
    st.lists(st.integers(0, 2), min_size=n, max_size=n),
)))
def test_signature_equality_iff_tree_equality(pair):
    a, b = pair
    assert (signature(a).L == signature(b).L) == ct_equal(a, b)


def test_window_front_deletion_constant_work():
    rng = random.Random(5)
    window = SignatureWindow()
    values = [rng.randrange(4) for _ in range(5000)]
    for c in values:
        window.push(c)
    before = window.work
    for k in range(1, len(values)):
        window.pop_front()
        assert window.work - before == k
        if k % 997 == 0:
            assert window.signature() == signature(values[k:])
    assert parent_distance(values[-1:]) == (0,)
