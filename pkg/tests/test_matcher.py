import pytest
from hypothesis import given, strategies as st

from strategies import patterns, texts
from tabmatch.matcher import TabulatedMatcher, match
from tabmatch.nfa import accepts_naive, compile_pattern, naive_close, naive_move, simulate_naive
from tabmatch.tables import TableCache


@pytest.mark.parametrize("q, want", [("ac", True), ("b", True), ("ab", True), ("aab", True),
                                     ("a", False), ("c", False), ("abc", False), ("", False)])
def test_example_pattern(q, want):
    assert match("ac|a*b", q) is want


def test_empty_word_through_star():
    assert match("a*", "")
    assert match("(a|b)*", "")
    assert not match("a", "")


def test_long_concatenation_has_deep_macro_tree():
    m = TabulatedMatcher("ab" * 3000, k=16)
    assert not m.accepts("ab")
    assert not m.accepts("")
    short = "ab" * 150
    assert TabulatedMatcher(short, k=16).accepts(short)


def test_shared_cache_across_patterns():
    cache = TableCache(16)
    assert match("(ab)*", "abab", cache=cache)
    n = cache.n_shapes
    assert match("(cd)*", "cdcd", cache=cache)
    assert cache.n_shapes == n


@given(patterns(max_size=30), texts(max_size=15), st.sampled_from([1, 2, 3, 4, None]))
def test_states_equal_naive_simulation(p, q, x):
    m = TabulatedMatcher(p, k=16, x=x)
    for want, st_ in zip(simulate_naive(m.nfa, q), m.states(q)):
        assert m.global_nodes(st_) == want
        m.check_consistency(st_)


@given(patterns(max_size=30), texts(max_size=15))
def test_move_then_two_closes_is_one_step(p, q):
    m = TabulatedMatcher(p, k=16)
    nfa = m.nfa
    state = m.initial_state()
    for ch in q:
        before = m.global_nodes(state)
        m.step(state, ch)
        assert m.global_nodes(state) == naive_close(nfa, naive_move(nfa, before, ch))
        third = list(state)
        m.close(third, m.root, 0)
        assert third == state


@given(patterns(max_size=20, alphabet="abc"), texts("abc", 10))
def test_accepts_agrees_with_naive(p, q):
    assert match(p, q, k=24) == accepts_naive(compile_pattern(p), q)
