"""Subsequence indexing: is q a subsequence of a fixed text t?

Three engines share one query loop.  The state is the next text position p
still available; reading character c moves to (first c at or after p) + 1.

``Full``
    An n-by-sigma' table of next occurrences.  One lookup per character.
``Successor``
    One van Emde Boas set of positions per character, stored with hash-map
    clusters so space stays near linear.
``Hybrid``
    The text is cut into groups of sigma' positions.  Inside a group each
    character has a two-level bitmask (bucket masks plus a summary mask);
    a long-jump table gives the first occurrence of each character after
    the group.  Queries use the group structure and fall back to one long
    jump when the character does not occur again inside the current group.

sigma' is the number of distinct characters of t.
"""

from __future__ import annotations

import enum
import io
import json
import math
import struct
from dataclasses import dataclass, field
from typing import BinaryIO, Optional

import numpy as np

# Successor and Hybrid payloads stay within SPACE_CONST * n entries
SPACE_CONST = 8


class Engine(enum.Enum):
    FULL = "full"
    SUCCESSOR = "successor"
    HYBRID = "hybrid"


def subsequence_naive(t: str, q: str) -> bool:
    """Greedy two-pointer scan."""
    it = iter(t)
    return all(ch in it for ch in q)


def greedy_positions(t: str, q: str) -> Optional[list[int]]:
    """Leftmost match positions of q in t, or None."""
    out = []
    p = 0
    for ch in q:
        j = t.find(ch, p)
        if j < 0:
            return None
        out.append(j)
        p = j + 1
    return out


# --- successor structures ---------------------------------------------------


class VebSet:
    """van Emde Boas set over [0, 2**bits) with lazily created hashed clusters.

    The minimum is kept out of the clusters, as usual, so inserting into an
    empty subtree is constant work.
    """

    __slots__ = ("bits", "lo_bits", "min", "max", "clusters", "summary")

    def __init__(self, bits: int) -> None:
        self.bits = bits
        self.lo_bits = bits // 2
        self.min: Optional[int] = None
        self.max: Optional[int] = None
        self.clusters: Optional[dict[int, VebSet]] = None
        self.summary: Optional[VebSet] = None

    def insert(self, x: int) -> None:
        if self.min is None:
            self.min = self.max = x
            return
        if x == self.min:
            return
        if x < self.min:
            x, self.min = self.min, x
        if x > self.max:
            self.max = x
        if self.bits <= 1:
            return
        lo = self.lo_bits
        h, l = x >> lo, x & ((1 << lo) - 1)
        if self.clusters is None:
            self.clusters = {}
            self.summary = VebSet(self.bits - lo)
        c = self.clusters.get(h)
        if c is None:
            c = self.clusters[h] = VebSet(lo)
            self.summary.insert(h)
        c.insert(l)

    def successor(self, x: int) -> Optional[int]:
        """Smallest member >= x, or None."""
        node = self
        base = 0
        # iterative descent; each level either answers or narrows to one cluster
        while True:
            if node.min is None or x > node.max:
                return None
            if x <= node.min:
                return base + node.min
            if node.bits <= 1 or node.clusters is None:
                return base + node.max
            lo = node.lo_bits
            h, l = x >> lo, x & ((1 << lo) - 1)
            c = node.clusters.get(h)
            if c is not None and l <= c.max:
                node, base, x = c, base + (h << lo), l
                continue
            nh = node.summary.successor(h + 1)
            if nh is None:
                return None
            return base + (nh << lo) + node.clusters[nh].min

    def node_count(self) -> int:
        total = 0
        stack = [self]
        while stack:
            v = stack.pop()
            total += 1
            if v.clusters is not None:
                stack.extend(v.clusters.values())
                stack.append(v.summary)
        return total


@dataclass
class BucketSet:
    """Two-level bitmask successor over a small universe."""

    bucket: int
    summary: int = 0
    masks: dict[int, int] = field(default_factory=dict)

    def add(self, x: int) -> None:
        b, r = divmod(x, self.bucket)
        self.masks[b] = self.masks.get(b, 0) | (1 << r)
        self.summary |= 1 << b

    def successor(self, x: int) -> Optional[int]:
        b, r = divmod(x, self.bucket)
        m = self.masks.get(b, 0) >> r
        if m:
            return x + (m & -m).bit_length() - 1
        s = self.summary >> (b + 1)
        if not s:
            return None
        nb = b + (s & -s).bit_length()
        m = self.masks[nb]
        return nb * self.bucket + (m & -m).bit_length() - 1

    def entries(self) -> int:
        return 1 + len(self.masks)


# --- index ------------------------------------------------------------------


@dataclass
class QueryTrace:
    positions: list[int] = field(default_factory=list)
    lookups: int = 0
    long_jumps: int = 0


@dataclass
class SubseqIndex:
    engine: Engine
    n: int
    alphabet: list[str]
    codes: np.ndarray  # text as alphabet indices
    table: Optional[np.ndarray] = None  # Full: n x sigma'
    sets: Optional[list[VebSet]] = None  # Successor: one per character
    groups: Optional[list[dict[int, BucketSet]]] = None  # Hybrid
    jumps: Optional[np.ndarray] = None  # Hybrid: n_groups x sigma'
    _code_of: dict[str, int] = field(default_factory=dict, repr=False)

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def n_groups(self) -> int:
        return len(self.groups) if self.groups is not None else 0

    def space_entries(self) -> int:
        """Payload size in table entries (the text itself is not counted)."""
        if self.engine is Engine.FULL:
            return int(self.table.size)
        if self.engine is Engine.SUCCESSOR:
            return sum(s.node_count() for s in self.sets)
        return int(self.jumps.size) + sum(b.entries() for g in self.groups for b in g.values())

    def query(self, q: str) -> bool:
        return self.query_trace(q) is not None

    def query_trace(self, q: str) -> Optional[QueryTrace]:
        """Match q greedily; the trace holds matched positions and step counts."""
        tr = QueryTrace()
        p = 0
        n = self.n
        code_of = self._code_of
        eng = self.engine
        sig = self.sigma
        for ch in q:
            c = code_of.get(ch)
            if c is None or p >= n:
                return None
            tr.lookups += 1
            if eng is Engine.FULL:
                j = int(self.table[p, c])
            elif eng is Engine.SUCCESSOR:
                r = self.sets[c].successor(p)
                j = -1 if r is None else r
            else:
                g, loc = divmod(p, sig)
                bs = self.groups[g].get(c)
                r = bs.successor(loc) if bs is not None else None
                if r is not None:
                    j = g * sig + r
                else:
                    tr.long_jumps += 1
                    j = int(self.jumps[g, c])
            if j < 0:
                return None
            tr.positions.append(j)
            p = j + 1
        return tr

    # --- serialization ------------------------------------------------------

    def save(self, fh: BinaryIO) -> None:
        """Versioned binary format: header (engine, n, sigma'), alphabet, payload.

        The per-character position structures are rebuilt from the stored
        text codes on load; the Full table and the long-jump table are stored.
        """
        tag = _TAGS[self.engine]
        alpha = json.dumps(self.alphabet, ensure_ascii=True).encode("ascii")
        fh.write(MAGIC + struct.pack("<BBqqq", VERSION, tag, self.n, self.sigma, len(alpha)))
        fh.write(alpha)
        np.save(fh, self.codes, allow_pickle=False)
        if self.engine is Engine.FULL:
            np.save(fh, self.table, allow_pickle=False)
        elif self.engine is Engine.HYBRID:
            np.save(fh, self.jumps, allow_pickle=False)


MAGIC = b"TMSQ"
VERSION = 1
_TAGS = {Engine.FULL: 0, Engine.SUCCESSOR: 1, Engine.HYBRID: 2}
_HEADER = struct.Struct("<BBqqq")


class IndexFormatError(ValueError):
    pass


def load_index(fh: BinaryIO) -> SubseqIndex:
    if fh.read(4) != MAGIC:
        raise IndexFormatError("not a subsequence index file")
    raw = fh.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise IndexFormatError("truncated header")
    version, tag, n, sigma, alen = _HEADER.unpack(raw)
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    engine = {v: k for k, v in _TAGS.items()}.get(tag)
    if engine is None:
        raise IndexFormatError(f"unknown engine tag {tag}")
    alphabet = json.loads(fh.read(alen).decode("ascii"))
    if len(alphabet) != sigma:
        raise IndexFormatError("alphabet size does not match header")
    codes = np.load(fh, allow_pickle=False)
    if codes.shape != (n,):
        raise IndexFormatError("text length does not match header")
    idx = _new(engine, alphabet, codes)
    if engine is Engine.FULL:
        idx.table = np.load(fh, allow_pickle=False)
        if idx.table.shape != (n, sigma):
            raise IndexFormatError("table shape does not match header")
    elif engine is Engine.SUCCESSOR:
        _build_sets(idx)
    else:
        _build_groups(idx)
        idx.jumps = np.load(fh, allow_pickle=False)
        if idx.jumps.shape != (idx.n_groups, sigma):
            raise IndexFormatError("long-jump table shape does not match header")
    return idx


def loads_index(data: bytes) -> SubseqIndex:
    return load_index(io.BytesIO(data))


# --- construction -----------------------------------------------------------


def _new(engine: Engine, alphabet: list[str], codes: np.ndarray) -> SubseqIndex:
    idx = SubseqIndex(engine, int(codes.shape[0]), alphabet, codes)
    idx._code_of = {ch: i for i, ch in enumerate(alphabet)}
    return idx


def _build_full(idx: SubseqIndex) -> None:
    n, sig = idx.n, idx.sigma
    table = np.empty((n, sig), dtype=np.int32)
    row = np.full(sig, -1, dtype=np.int32)
    codes = idx.codes
    for i in range(n - 1, -1, -1):
        row[codes[i]] = i
        table[i] = row
    idx.table = table


def _build_sets(idx: SubseqIndex) -> None:
    bits = max(1, idx.n.bit_length())
    sets = [VebSet(bits) for _ in range(idx.sigma)]
    for i, c in enumerate(idx.codes.tolist()):
        sets[c].insert(i)
    idx.sets = sets


def _build_groups(idx: SubseqIndex) -> None:
    sig = idx.sigma
    if sig == 0:
        idx.groups = []
        return
    bucket = max(1, math.isqrt(sig - 1) + 1)  # ceil(sqrt(sig))
    groups: list[dict[int, BucketSet]] = [dict() for _ in range(-(-idx.n // sig))]
    for i, c in enumerate(idx.codes.tolist()):
        g, loc = divmod(i, sig)
        bs = groups[g].get(c)
        if bs is None:
            bs = groups[g][c] = BucketSet(bucket)
        bs.add(loc)
    idx.groups = groups


def _build_jumps(idx: SubseqIndex) -> None:
    sig, n = idx.sigma, idx.n
    n_groups = idx.n_groups
    jumps = np.full((n_groups, sig), -1, dtype=np.int32)
    last = np.full(sig, -1, dtype=np.int32)
    codes = idx.codes
    for i in range(n - 1, -1, -1):
        last[codes[i]] = i
        if i % sig == 0 and i > 0:
            jumps[i // sig - 1] = last
    idx.jumps = jumps


def build_index(t: str, engine: Engine | str = Engine.HYBRID) -> SubseqIndex:
    """Preprocess ``t`` for subsequence queries with the chosen engine."""
    engine = Engine(engine)
    alphabet = sorted(set(t))
    code_of = {ch: i for i, ch in enumerate(alphabet)}
    codes = np.fromiter((code_of[ch] for ch in t), dtype=np.int32, count=len(t))
    idx = _new(engine, alphabet, codes)
    if engine is Engine.FULL:
        _build_full(idx)
    elif engine is Engine.SUCCESSOR:
        _build_sets(idx)
    else:
        _build_groups(idx)
        _build_jumps(idx)
    return idx


def query(idx: SubseqIndex, q: str) -> bool:
    return idx.query(q)
