import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartmatch.core import ct_equal, parent_distance
from cartmatch.errors import InvalidPattern
from cartmatch.multi import (
    ROOT,
    MultiCounters,
    build_automaton,
    build_failure,
    build_trie,
    multi_search,
)
from cartmatch.single import search
from cartmatch.testkit import ALPHABETS, InstanceGenerator

from conftest import THREE_PATTERNS, HEAD_AND_SHOULDERS, PRICE_TEXT


def union_of_single(text, patterns):
    return sorted((i, j) for j, p in enumerate(patterns, 1) for i in search(text, p))


def test_three_pattern_trie_shape():
    auto = build_trie(THREE_PATTERNS)
    assert auto.pds == [(0, 0, 1, 0, 1), (0, 0, 1, 2), (0, 1, 1, 1, 2)]
    shared = auto.find((0, 0, 1))
    assert shared is not None and auto.nodes[shared].idx == 1
    assert auto.find((0, 0, 1, 2)) is not None
    assert len(auto.nodes) == 11
    assert list(auto.nodes[ROOT].trans) == [0]


def test_three_pattern_failure_of_p2_prefix():
    auto = build_automaton(THREE_PATTERNS)
    q7 = auto.find((0, 0, 1, 2))
    q2 = auto.find((0, 0))
    assert auto.nodes[q7].idx == 2 and auto.nodes[q7].len == 4
    assert auto.nodes[q7].fail == q2
    assert auto.nodes[q2].idx == 1


def test_depth_one_fails_to_root():
    auto = build_automaton(THREE_PATTERNS)
    for child in auto.nodes[ROOT].trans.values():
        assert auto.nodes[child].fail == ROOT


def test_single_pattern_trie():
    auto = build_trie([(1,)])
    assert len(auto.nodes) == 2
    assert dict(auto.nodes[ROOT].trans) == {0: 1}


def test_identical_patterns_share_path():
    auto = build_automaton([(5, 1, 3), (9, 2, 4)])
    assert len(auto.nodes) == 4
    leaf = auto.find(parent_distance((5, 1, 3)))
    assert auto.nodes[leaf].idx == 1
    assert auto.nodes[leaf].output == (1, 2)
    assert multi_search((7, 3, 8, 0), auto) == [(1, 1), (1, 2)]


def test_invalid_inputs():
    with pytest.raises(InvalidPattern):
        build_trie([])
    with pytest.raises(InvalidPattern):
        build_trie([(1, 2), ()])
    with pytest.raises(ValueError):
        multi_search((1, 2), build_trie([(1,)]))


def test_search_examples():
    assert multi_search((3, 1, 4, 2), build_automaton(THREE_PATTERNS)) == [(1, 2)]
    assert multi_search(PRICE_TEXT, build_automaton([HEAD_AND_SHOULDERS])) == [(5, 1)]


def brute_force_failure_length(auto, source, q):
    """Longest proper suffix of node q's string that CT-matches some pattern prefix."""
    node = auto.nodes[q]
    # any pattern realising the node works; use the stored representative
    s = source[node.idx - 1][: node.len]
    prefixes = [p[:k] for p in source for k in range(1, len(p) + 1)]
    for k in range(node.len - 1, 0, -1):
        if any(len(p) == k and ct_equal(s[-k:], p) for p in prefixes):
            return k
    return 0


@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_failure_links_brute_force(alphabet, seed):
    gen = InstanceGenerator(seed=seed * 3 + alphabet, alphabet_size=alphabet)
    for _ in range(120):
        source = gen.patterns(gen.rng.randint(1, 5), max_pattern=7)
        auto = build_automaton(source)
        for q in range(1, len(auto.nodes)):
            node = auto.nodes[q]
            assert auto.nodes[node.fail].len == brute_force_failure_length(auto, source, q)
            s = source[node.idx - 1][: node.len]
            expected = {
                j for j, p in enumerate(source, 1)
                if len(p) <= node.len and ct_equal(s[len(s) - len(p):], p)
            }
            assert set(node.output) == expected


@pytest.mark.parametrize("ordered", [True, False])
@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_union_correctness(alphabet, ordered, seed):
    gen = InstanceGenerator(seed=seed + 101 * alphabet, alphabet_size=alphabet)
    for _ in range(150):
        pats = gen.patterns(gen.rng.randint(1, 8), max_pattern=10)
        text = gen.sequence(0, 300)
        auto = build_automaton(pats, ordered=ordered)
        assert sorted(multi_search(text, auto)) == union_of_single(text, pats)
        assert len(auto.nodes) <= sum(map(len, pats)) + 1
        assert all(len(n.trans) <= len(pats) for n in auto.nodes)


@settings(max_examples=200)
@given(
    st.lists(st.integers(0, 2), max_size=80),
    st.lists(st.integers(0, 2), min_size=1, max_size=8),
)
def test_single_pattern_reduction(text, pattern):
    assert [i for i, _ in multi_search(text, build_automaton([pattern]))] == search(text, pattern)


def test_counters_and_space():
    gen = InstanceGenerator(seed=3, alphabet_size=3)
    pats = gen.patterns(6, max_pattern=9)
    text = gen.sequence(5000, 5000)
    cnt = MultiCounters()
    multi_search(text, build_automaton(pats), cnt)
    assert cnt.pushes == len(text)
    assert cnt.pops <= len(text)
    assert cnt.failure_links <= len(text)
    assert cnt.max_deque <= max(map(len, pats))


def test_build_failure_is_idempotent():
    auto = build_trie(THREE_PATTERNS)
    build_failure(auto)
    first = [(n.fail, n.output) for n in auto.nodes]
    build_failure(auto)
    assert [(n.fail, n.output) for n in auto.nodes] == first
