import io
import random

import pytest
from hypothesis import given, strategies as st

from strategies import trees
from tabmatch.decomposition import build_decomposition
from tabmatch.nfa import build_nfa
from tabmatch.regex_ast import parse
from tabmatch.tables import (MIN_K, Shape, TableCache, UnknownShape, choose_x, lane_bits, move_a, pack_values,
                             shape_key, tab_close, tab_succ, unpack_values)


def _subs(pattern, x=8):
    tree = parse(pattern)
    return build_decomposition(build_nfa(tree), tree, x).subautomata


def test_close_on_star_fragment():
    (a,) = _subs("a*")
    cache = TableCache(16)
    key = shape_key(a)
    cache.register(key)
    # nodes: start, inner start, inner accept, accept
    assert tab_close(cache, key, 0b0001, 0) == 0b1011
    assert tab_close(cache, key, 0b0000, 1) == 0b1011
    assert tab_close(cache, key, 0b0100, 0) == 0b1110
    assert tab_succ(cache, key, 0b0010) == 0b0100


def test_move_uses_eq_mask():
    (a,) = _subs("ab")
    cache = TableCache(16)
    key = shape_key(a)
    cache.register(key)
    assert move_a(cache, key, a.eq, 0b001, 0, "a") == 0b010
    assert move_a(cache, key, a.eq, 0b001, 0, "b") == 0
    assert move_a(cache, key, a.eq, 0b000, 1, "b") == 0b001


def test_lane_bits_and_budget():
    assert [lane_bits(d) for d in (0, 1, 2, 5, 6)] == [1, 2, 2, 3, 3]
    assert choose_x(16) == 4 and choose_x(24) == 4 and choose_x(64) == 8
    assert choose_x(24, 5) == 1
    with pytest.raises(ValueError):
        choose_x(MIN_K - 1)
    with pytest.raises(ValueError):
        TableCache(8)


@given(st.lists(st.integers(0, 6), max_size=20), st.sampled_from([0, 1, 2, 5]))
def test_pack_roundtrip(vals, d):
    vals = [min(v, d + 1) for v in vals]
    assert unpack_values(pack_values(vals, d), len(vals), d) == vals


def _direct_succ(n, edges, b):
    out = 0
    for s, t, _ in edges:
        if (b >> s) & 1:
            out |= 1 << t
    return out


def _direct_close(n, edges, b):
    seen = {i for i in range(n) if (b >> i) & 1}
    changed = True
    while changed:
        changed = False
        for s, t, kind in edges:
            if kind != 0 and s in seen and t not in seen:
                seen.add(t)
                changed = True
    return sum(1 << i for i in seen)


@given(trees(max_size=40), st.sampled_from([2, 3, 4]), st.integers(0, 2**32 - 1))
def test_tables_equal_direct_computation(tree, x, seed):
    rng = random.Random(seed)
    cache = TableCache(16)
    for a in build_decomposition(build_nfa(tree), tree, x).subautomata:
        key = shape_key(a)
        cache.register(key)
        for _ in range(5):
            b = rng.getrandbits(a.size)
            assert cache.succ(key, b) == _direct_succ(a.size, a.local_edges, b)
            assert cache.close(key, b) == _direct_close(a.size, a.local_edges, b)
    assert cache.words <= cache.capacity


def test_isomorphic_subautomata_share_tables():
    cache = TableCache(16)
    keys = {shape_key(a) for a in _subs("(ab)*(cd)*(ef)*", 3)}
    for k in keys:
        cache.register(k)
    assert cache.n_shapes == len(keys) < len(_subs("(ab)*(cd)*(ef)*", 3))


def test_budget_caps_stored_words():
    (a,) = _subs("(a|b)*c")
    cache = TableCache(16)
    cache.capacity = 3
    key = shape_key(a)
    cache.register(key)
    shape = Shape(key)
    for b in range(1 << a.size):
        assert cache.succ(key, b) == shape.succ(b)
    assert cache.words == 3


def test_unknown_shape():
    with pytest.raises(UnknownShape):
        TableCache(16).succ(b"\x02\x00\x01\x00", 1)


def test_save_load_roundtrip():
    cache = TableCache(20)
    for a in _subs("(a|b)*abb", 3):
        key = shape_key(a)
        cache.register(key)
        for b in range(1 << min(a.size, 6)):
            cache.succ(key, b)
            cache.close(key, b)
    buf = io.BytesIO()
    cache.save(buf)
    buf.seek(0)
    back = TableCache.load(buf)
    assert back.k == 20 and back.words == cache.words and back.n_shapes == cache.n_shapes
    with pytest.raises(ValueError):
        TableCache.load(io.BytesIO(b"nope"))
