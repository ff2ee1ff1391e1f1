"""Four-Russians transition tables for subautomata.

Tables are keyed by the shape of a subautomaton with its edge labels erased,
so isomorphic pieces of a pattern share one table.  Entries are filled on
first use and charged against a budget of ``2**k`` words; once the budget is
spent, further results are computed directly and not stored.

The alphabet never appears in a table key.  Character-dependent behaviour
enters only through per-subautomaton ``eq`` bitmasks (the set of nodes whose
incoming edges carry a given character), which are passed as arguments.
"""

from __future__ import annotations

import math
import struct
import threading
from dataclasses import dataclass, field
from typing import BinaryIO

from .decomposition import EPS_BACK, EPS_FWD, LEAF, Subautomaton

WORD_BITS = 64
DEFAULT_K = 24
MIN_K = 16

_MAGIC = b"TMTB"
_VERSION = 1


class UnknownShape(KeyError):
    pass


def lane_bits(d: int) -> int:
    """Bits per node value when values live in [0, d+1]."""
    return max(1, math.ceil(math.log2(d + 2)))


def choose_x(k: int, d: int = 0) -> int:
    """Cluster capacity for table budget ``k`` and clamp bound ``d``.

    Largest x with ``x * lane_bits(d) <= max(4, k / 8)``, reduced further
    until a subautomaton's vector (at most 6x lanes) fits one word.
    """
    if k < MIN_K:
        raise ValueError(f"table budget k must be at least {MIN_K}")
    bits = lane_bits(d)
    x = max(1, int(max(4, k / 8) // bits))
    while x > 1 and 6 * x * bits > WORD_BITS:
        x -= 1
    return x


def shape_key(a: Subautomaton) -> bytes:
    """Canonical encoding of ``a`` with labels erased.

    Layout: node count, then (src, dst, kind) triples of the sorted local edge
    list.  Pseudo-edges and character edges are both encoded as plain leaf
    edges, so the key depends only on the label-erased automaton.
    """
    if a.size > 255:
        raise ValueError("subautomaton too large for a shape key")
    out = [a.size]
    for s, d, kind in a.local_edges:
        out += (s, d, kind)
    return bytes(out)


def decode_shape(key: bytes) -> tuple[int, list[tuple[int, int, int]]]:
    n = key[0]
    edges = [tuple(key[i:i + 3]) for i in range(1, len(key), 3)]
    return n, edges


def build_eq(a: Subautomaton) -> dict[str, int]:
    """Map each character to the bitmask of its character-nodes in ``a``."""
    return dict(a.eq)


class Shape:
    """Precomputed adjacency for one label-erased subautomaton shape."""

    def __init__(self, key: bytes) -> None:
        self.key = key
        n, edges = decode_shape(key)
        self.n = n
        self.edges = edges
        self.out_all = [0] * n
        self.out_eps = [0] * n
        self.sigma = [False] * n
        self.pred_leaf = [-1] * n
        self.pred_fwd: list[list[int]] = [[] for _ in range(n)]
        self.pred_back: list[list[int]] = [[] for _ in range(n)]
        for s, d, kind in edges:
            self.out_all[s] |= 1 << d
            if kind == LEAF:
                self.sigma[d] = True
                self.pred_leaf[d] = s
                self.pred_fwd[d].append(s)
            elif kind == EPS_FWD:
                self.out_eps[s] |= 1 << d
                self.pred_fwd[d].append(s)
            else:
                self.out_eps[s] |= 1 << d
                self.pred_back[d].append(s)

    def succ(self, b: int) -> int:
        out = 0
        out_all = self.out_all
        while b:
            low = b & -b
            out |= out_all[low.bit_length() - 1]
            b ^= low
        return out

    def close(self, b: int) -> int:
        seen = b
        todo = b
        out_eps = self.out_eps
        while todo:
            low = todo & -todo
            todo ^= low
            new = out_eps[low.bit_length() - 1] & ~seen
            seen |= new
            todo |= new
        return seen

    def next1(self, vec: int, chunk: int, eq: int, b: int, d: int) -> int:
        """Pass-1 update of the nodes in ``chunk``.

        ``vec`` holds new values outside the chunk and previous-column values
        inside it.  ``b`` is the previous-column value of the node just before
        the chunk, which is the only outside node a character-node of the
        chunk can read a substitution from.
        """
        w = lane_bits(d)
        mask = (1 << w) - 1
        cap = d + 1
        old = [(vec >> (w * i)) & mask for i in range(self.n)]
        new = old[:]
        c = chunk
        while c:
            low = c & -c
            c ^= low
            v = low.bit_length() - 1
            if self.sigma[v]:
                p = self.pred_leaf[v]
                sub = b if not (chunk >> p) & 1 else old[p]
                cost = 0 if (eq >> v) & 1 else 1
                val = min(old[v] + 1, sub + cost, new[p] + 1)
            else:
                val = min(new[p] for p in self.pred_fwd[v])
            new[v] = val if val < cap else cap
        return _pack(new, w)

    def next2(self, vec: int, chunk: int, d: int) -> int:
        """Pass-2 update of the nodes in ``chunk``: propagate back edges."""
        w = lane_bits(d)
        mask = (1 << w) - 1
        cap = d + 1
        cur = [(vec >> (w * i)) & mask for i in range(self.n)]
        c = chunk
        while c:
            low = c & -c
            c ^= low
            v = low.bit_length() - 1
            if self.sigma[v]:
                val = min(cur[v], cur[self.pred_leaf[v]] + 1)
            else:
                # back-edge sources come later in the order, so cur still
                # holds their pass-1 values here
                val = min(cur[p] for p in self.pred_fwd[v] + self.pred_back[v])
            cur[v] = val if val < cap else cap
        return _pack(cur, w)


def _pack(vals: list[int], w: int) -> int:
    out = 0
    for i in range(len(vals) - 1, -1, -1):
        out = (out << w) | vals[i]
    return out


def pack_values(vals: list[int], d: int) -> int:
    return _pack(vals, lane_bits(d))


def unpack_values(vec: int, n: int, d: int) -> list[int]:
    w = lane_bits(d)
    mask = (1 << w) - 1
    return [(vec >> (w * i)) & mask for i in range(n)]


@dataclass
class _ShapeTables:
    shape: Shape
    succ: dict = field(default_factory=dict)
    close: dict = field(default_factory=dict)
    next1: dict = field(default_factory=dict)
    next2: dict = field(default_factory=dict)


class TableCache:
    """Memoized transition tables for every registered shape.

    ``words`` counts stored entries (one word each); it never exceeds
    ``2**k``.  ``hits`` and ``misses`` are kept for benchmarking.
    """

    def __init__(self, k: int = DEFAULT_K) -> None:
        if not MIN_K <= k <= WORD_BITS:
            raise ValueError(f"k must lie in [{MIN_K}, {WORD_BITS}]")
        self.k = k
        self.capacity = 1 << k
        self.words = 0
        self.hits = 0
        self.misses = 0
        self._shapes: dict[bytes, _ShapeTables] = {}
        self._lock = threading.Lock()

    def register(self, key: bytes) -> _ShapeTables:
        t = self._shapes.get(key)
        if t is None:
            with self._lock:
                t = self._shapes.get(key)
                if t is None:
                    t = _ShapeTables(Shape(key))
                    self._shapes[key] = t
        return t

    def tables(self, key: bytes) -> _ShapeTables:
        try:
            return self._shapes[key]
        except KeyError:
            raise UnknownShape(key) from None

    @property
    def n_shapes(self) -> int:
        return len(self._shapes)

    @property
    def bytes_used(self) -> int:
        return self.words * (WORD_BITS // 8)

    def _store(self, table: dict, arg, value) -> None:
        with self._lock:
            if arg not in table and self.words < self.capacity:
                table[arg] = value
                self.words += 1

    def succ(self, key: bytes, b: int) -> int:
        t = self.tables(key)
        r = t.succ.get(b)
        if r is None:
            self.misses += 1
            r = t.shape.succ(b)
            self._store(t.succ, b, r)
        else:
            self.hits += 1
        return r

    def close(self, key: bytes, b: int, start: int = 0) -> int:
        t = self.tables(key)
        b |= start
        r = t.close.get(b)
        if r is None:
            self.misses += 1
            r = t.shape.close(b)
            self._store(t.close, b, r)
        else:
            self.hits += 1
        return r

    def next1(self, key: bytes, d: int, vec: int, chunk: int, eq: int, b: int) -> int:
        t = self.tables(key)
        arg = (d, vec, chunk, eq & chunk, b)
        r = t.next1.get(arg)
        if r is None:
            self.misses += 1
            r = t.shape.next1(vec, chunk, eq & chunk, b, d)
            self._store(t.next1, arg, r)
        else:
            self.hits += 1
        return r

    def next2(self, key: bytes, d: int, vec: int, chunk: int) -> int:
        t = self.tables(key)
        arg = (d, vec, chunk)
        r = t.next2.get(arg)
        if r is None:
            self.misses += 1
            r = t.shape.next2(vec, chunk, d)
            self._store(t.next2, arg, r)
        else:
            self.hits += 1
        return r

    # serialization -------------------------------------------------------

    def save(self, fh: BinaryIO) -> None:
        """Write exact-engine tables (succ/close) in a versioned binary format."""
        fh.write(_MAGIC + struct.pack("<HBI", _VERSION, self.k, len(self._shapes)))
        for key, t in self._shapes.items():
            fh.write(struct.pack("<H", len(key)) + key)
            for table in (t.succ, t.close):
                fh.write(struct.pack("<I", len(table)))
                for a, v in table.items():
                    fh.write(struct.pack("<QQ", a, v))

    @classmethod
    def load(cls, fh: BinaryIO) -> "TableCache":
        head = fh.read(4)
        if head != _MAGIC:
            raise ValueError("not a table file")
        version, k, count = struct.unpack("<HBI", fh.read(7))
        if version != _VERSION:
            raise ValueError(f"unsupported table file version {version}")
        cache = cls(k)
        for _ in range(count):
            (klen,) = struct.unpack("<H", fh.read(2))
            t = cache.register(fh.read(klen))
            for table in (t.succ, t.close):
                (cnt,) = struct.unpack("<I", fh.read(4))
                for _ in range(cnt):
                    a, v = struct.unpack("<QQ", fh.read(16))
                    cache._store(table, a, v)
        return cache


def move_a(cache: TableCache, key: bytes, eq: dict[str, int], vec: int, b: int, ch: str) -> int:
    """Move^A(B, b, ch) = (Succ(B) & Eq(ch)) | {start if b}."""
    return (cache.succ(key, vec) & eq.get(ch, 0)) | b


def tab_succ(cache: TableCache, key: bytes, vec: int) -> int:
    return cache.succ(key, vec)


def tab_close(cache: TableCache, key: bytes, vec: int, b: int) -> int:
    return cache.close(key, vec, b)


def tab_next1(cache: TableCache, key: bytes, d: int, vec: int, chunk: int, eq: int, b: int) -> int:
    return cache.next1(key, d, vec, chunk, eq, b)


def tab_next2(cache: TableCache, key: bytes, d: int, vec: int, chunk: int) -> int:
    return cache.next2(key, d, vec, chunk)


def word_fits(a: Subautomaton, d: int = 0) -> bool:
    return a.size * lane_bits(d) <= WORD_BITS


__all__ = [
    "DEFAULT_K", "MIN_K", "WORD_BITS", "Shape", "TableCache", "UnknownShape",
    "build_eq", "choose_x", "lane_bits", "move_a", "pack_values", "shape_key",
    "tab_close", "tab_next1", "tab_next2", "tab_succ", "unpack_values", "word_fits",
]
