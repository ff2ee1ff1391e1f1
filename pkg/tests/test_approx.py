import pytest
from hypothesis import given, settings, strategies as st

from strategies import patterns, texts
from tabmatch.approx import ApproxMatcher, amatch, approx_dp_naive, dp_columns
from tabmatch.matcher import match
from tabmatch.nfa import compile_pattern
from tabmatch.oracles import distance_to_language


@pytest.mark.parametrize("q, d, want", [
    ("ac", 0, True), ("abc", 0, False), ("abc", 1, True), ("cc", 1, True), ("xyz", 2, False),
    ("", 1, True), ("", 0, False), ("aaaab", 0, True), ("aaaxb", 1, True),
])
def test_examples(q, d, want):
    assert amatch("ac|a*b", q, d) is want
    assert approx_dp_naive("ac|a*b", q, d) is want


def test_negative_threshold_rejected():
    with pytest.raises(ValueError):
        ApproxMatcher("a", -1)


def test_distance_value_is_clamped():
    m = ApproxMatcher("abc", 1)
    assert m.distance_value("abc") == 0
    assert m.distance_value("abd") == 1
    assert m.distance_value("xyz") == 2


@given(patterns(max_size=20), texts(max_size=12), st.sampled_from([0, 1, 2, 5]), st.sampled_from([1, 2, 3, None]))
def test_columns_equal_naive_dp(p, q, d, x):
    m = ApproxMatcher(p, d, k=24, x=x)
    for col, state in zip(dp_columns(m.nfa, q, d), m.columns(q)):
        vals = m.global_values(state)
        assert all(vals[v] == col[v] for v in vals)


@settings(max_examples=60)
@given(patterns(max_size=10), texts(max_size=4), st.sampled_from([0, 1, 2]))
def test_naive_dp_equals_brute_force(p, q, d):
    bf = distance_to_language(p, q, d)
    assert approx_dp_naive(p, q, d) == (bf is not None)
    assert ApproxMatcher(p, d).accepts(q) == (bf is not None)


@given(patterns(max_size=20), texts(max_size=12))
def test_zero_distance_is_exact_matching(p, q):
    assert amatch(p, q, 0) == match(p, q)


@given(patterns(max_size=15), texts(max_size=10), st.integers(0, 4))
def test_monotone_in_threshold(p, q, d):
    if amatch(p, q, d):
        assert amatch(p, q, d + 1)


def test_first_column_counts_deletions():
    nfa = compile_pattern("abc")
    col = next(dp_columns(nfa, "", 5))
    assert col[nfa.accept] == 3
