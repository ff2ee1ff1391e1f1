import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tabmatch.subseq import (SPACE_CONST, BucketSet, Engine, IndexFormatError, VebSet, build_index, greedy_positions,
                             load_index, loads_index, query, subsequence_naive)

ENGINES = list(Engine)


@pytest.mark.parametrize("engine", ENGINES)
def test_examples(engine):
    idx = build_index("abcde", engine)
    assert query(idx, "ace") and not query(idx, "aec")
    assert query(idx, "") and query(idx, "abcde") and not query(idx, "abcdef")
    assert not query(idx, "z")


@pytest.mark.parametrize("engine", ENGINES)
def test_empty_text(engine):
    idx = build_index("", engine)
    assert query(idx, "") and not query(idx, "a")
    assert idx.space_entries() == 0


def test_full_table_entries():
    idx = build_index("abcde", Engine.FULL)
    assert idx.table.shape == (5, 5)
    assert idx.table[0, idx.alphabet.index("c")] == 2
    assert idx.table[3, idx.alphabet.index("c")] == -1


def test_naive_scan():
    assert subsequence_naive("abc", "abc")
    assert not subsequence_naive("abc", "abcd")
    assert greedy_positions("abcabc", "cb") == [2, 4]


@given(st.sets(st.integers(0, 2**12 - 1)), st.lists(st.integers(0, 2**12), max_size=30))
def test_veb_successor(members, probes):
    v = VebSet(12)
    for x in sorted(members, key=lambda x: (x * 7919) % 4099):
        v.insert(x)
    srt = sorted(members)
    for p in probes:
        want = next((m for m in srt if m >= p), None)
        assert v.successor(p) == want


@given(st.sets(st.integers(0, 99)), st.lists(st.integers(0, 99), max_size=30))
def test_bucket_successor(members, probes):
    b = BucketSet(10)
    for x in members:
        b.add(x)
    for p in probes:
        assert b.successor(p) == next((m for m in sorted(members) if m >= p), None)


texts_ = st.text(alphabet="abcdef", max_size=200)
queries_ = st.text(alphabet="abcdefg", max_size=20)


@given(texts_, st.lists(queries_, max_size=10))
def test_engines_agree_with_scan(t, qs):
    idxs = [build_index(t, e) for e in ENGINES]
    for q in qs + [t[::3], t[1::2]]:
        want = greedy_positions(t, q)
        for idx in idxs:
            tr = idx.query_trace(q)
            assert (tr.positions if tr else None) == want


@given(texts_)
def test_space_counters(t):
    full, succ, hyb = (build_index(t, e) for e in ENGINES)
    assert full.space_entries() == len(t) * full.sigma
    assert succ.space_entries() <= SPACE_CONST * max(1, len(t))
    assert hyb.space_entries() <= SPACE_CONST * max(1, len(t))
    assert hyb.n_groups == -(-len(t) // max(1, hyb.sigma))


@given(texts_)
def test_long_jumps_land_in_later_groups(t):
    idx = build_index(t, Engine.HYBRID)
    sig = idx.sigma
    for g in range(idx.n_groups):
        for c in range(sig):
            j = int(idx.jumps[g, c])
            assert j == -1 or j // sig > g


@pytest.mark.parametrize("engine", ENGINES)
def test_serialization_roundtrip(engine):
    t = "mississippi river"
    idx = build_index(t, engine)
    buf = io.BytesIO()
    idx.save(buf)
    back = loads_index(buf.getvalue())
    assert back.engine is engine and back.n == idx.n and back.alphabet == idx.alphabet
    assert np.array_equal(back.codes, idx.codes)
    for q in ["mis", "sip", "rr", "pm", "miss river", "vr "]:
        assert back.query(q) == subsequence_naive(t, q)


def test_corrupt_index_rejected():
    with pytest.raises(IndexFormatError):
        load_index(io.BytesIO(b"XXXX"))
    buf = io.BytesIO()
    build_index("abc", Engine.FULL).save(buf)
    data = bytearray(buf.getvalue())
    data[4] = 99  # version
    with pytest.raises(IndexFormatError):
        loads_index(bytes(data))


def test_large_alphabet_text():
    t = "".join(chr(0x100 + (i * 37) % 1000) for i in range(5000))
    q = t[::50]
    for e in ENGINES:
        assert build_index(t, e).query(q)
