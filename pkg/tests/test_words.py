import pytest
from hypothesis import given, strategies as st

from distgraph import IncompleteMappingError, Letter, cyclic_equal, make_word, min_rotation, reverse_word, substitute, words_match
from distgraph.words import rotations

letters = st.builds(Letter, st.sampled_from("abcd"), st.sampled_from((1, -1)))
words = st.lists(letters, min_size=1, max_size=8).map(tuple)


def _naive_cyclic_equal(w1, w2):
    return len(w1) == len(w2) and any(r == tuple(w2) for r in rotations(w1))


def test_cyclic_equal_examples():
    assert cyclic_equal(make_word("a b c"), make_word("b c a"))
    assert not cyclic_equal(make_word("a b c"), make_word("a c b"))
    assert not cyclic_equal(make_word("a b"), make_word("a b a"))


def test_reverse_negates_exponents():
    assert reverse_word(make_word("a b^-1 c")) == make_word("c^-1 b a^-1")


def test_no_cancellation():
    # a a^-1 is a genuine two-letter word
    assert not cyclic_equal(make_word("a a^-1"), ())


def test_substitute_and_missing_edge():
    assert substitute(make_word("a b^-1"), {"a": ("x", -1), "b": ("y", -1)}) == make_word("x^-1 y")
    with pytest.raises(IncompleteMappingError):
        substitute(make_word("a b"), {"a": ("x", 1)})


@given(words, st.integers(0, 20))
def test_rotation_is_cyclic_equal(w, k):
    k %= len(w)
    assert cyclic_equal(w, w[k:] + w[:k])


@given(words, words)
def test_cyclic_equal_matches_naive(w1, w2):
    assert cyclic_equal(w1, w2) == _naive_cyclic_equal(w1, w2)


@given(words)
def test_reverse_involution(w):
    assert reverse_word(reverse_word(w)) == w


@given(words, words)
def test_min_rotation_canonical(w1, w2):
    assert (min_rotation(w1) == min_rotation(w2)) == cyclic_equal(w1, w2)


@given(st.lists(words, min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_words_match_permuted_and_rotated(ws, rnd):
    moved = []
    for w in ws:
        k = rnd.randrange(len(w))
        moved.append(w[k:] + w[:k])
    rnd.shuffle(moved)
    assert words_match(ws, moved)
    assert words_match(ws, [reverse_word(w) for w in moved], mode="reversed")


def test_words_match_is_a_bijection():
    a, b = make_word("a"), make_word("b")
    assert not words_match([a, a], [a, b])
    assert not words_match([a], [a, a])


def test_words_match_bad_mode():
    with pytest.raises(ValueError):
        words_match([], [], mode="sideways")


def test_documented_examples():
    w = make_word("u v u^-1 v^-1")
    assert cyclic_equal(w, make_word("u^-1 v^-1 u v"))
    assert cyclic_equal(w, w)
    assert not cyclic_equal(w, make_word("v u v^-1 u^-1"))
    assert reverse_word(w) == make_word("v u v^-1 u^-1")
    assert reverse_word(make_word("u")) == make_word("u^-1")
    assert substitute(w, {"u": ("u'", 1), "v": ("v'", 1)}) == make_word("u' v' u'^-1 v'^-1")
    assert substitute(w, {"u": ("u'", -1), "v": ("v'", 1)}) == make_word("u'^-1 v' u' v'^-1")
    assert words_match([make_word("u"), make_word("v^-1")], [make_word("v^-1"), make_word("u")])
    assert words_match([w], [make_word("v u v^-1 u^-1")], mode="reversed")
    assert not words_match([make_word("u"), make_word("u")], [make_word("u"), make_word("u^-1")])


mappings = st.permutations("abcd").flatmap(
    lambda perm: st.lists(st.sampled_from((1, -1)), min_size=4, max_size=4).map(
        lambda signs: {e: (f, s) for e, f, s in zip("abcd", perm, signs)}))


@given(words, mappings)
def test_substitute_inverse(w, m):
    inv = {f: (e, s) for e, (f, s) in m.items()}
    assert substitute(substitute(w, m), inv) == w


@given(words, mappings)
def test_substitute_commutes_with_reverse(w, m):
    assert substitute(reverse_word(w), m) == reverse_word(substitute(w, m))


@given(words, st.integers(0, 20), st.integers(0, 20))
def test_cyclic_equal_equivalence_relation(w, j, k):
    j %= len(w)
    k %= len(w)
    w2 = w[j:] + w[:j]
    w3 = w2[k:] + w2[:k]
    assert cyclic_equal(w, w)
    assert cyclic_equal(w2, w) and cyclic_equal(w, w2)
    assert cyclic_equal(w, w3)


@given(words, words)
def test_cyclic_equal_respects_reverse(w1, w2):
    if cyclic_equal(w1, w2):
        assert cyclic_equal(reverse_word(w1), reverse_word(w2))


@given(st.lists(words, max_size=4))
def test_words_match_reflexive(ws):
    assert words_match(ws, ws)
