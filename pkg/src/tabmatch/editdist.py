"""Edit distance: Wagner-Fischer and an alphabet-independent Four-Russians variant.

The Four-Russians version splits the distance matrix into x-by-x cells.  A
cell's interior depends only on which characters of its two substrings are
equal and on the differences along its top row and left column, each of
which lies in {-1, 0, +1}.  Characters are replaced by small codes: within
a macro cell (y-by-y cells) a character gets its rank among the characters
that occur in both substrings, or 0 if it occurs in only one.  Two positions
hold equal characters iff their codes are equal and nonzero.  Cell results
are memoized on the packed codes and steps, never on the characters.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from typing import Optional, Sequence

from .tables import MIN_K, WORD_BITS


def edit_distance_naive(s: Sequence, t: Sequence) -> int:
    """Levenshtein distance keeping one row of the matrix."""
    if len(s) < len(t):
        s, t = t, s
    prev = list(range(len(t) + 1))
    for i, a in enumerate(s, 1):
        cur = [i]
        for j, b in enumerate(t, 1):
            cur.append(min(prev[j - 1] + (a != b), prev[j] + 1, cur[j - 1] + 1))
        prev = cur
    return prev[-1]


def encode_macro_cell(s_block: Sequence, t_block: Sequence) -> tuple[list[int], list[int]]:
    """Rank codes of the characters the two blocks share; 0 for the rest."""
    s_sorted = sorted(set(s_block))
    shared = set()
    for ch in t_block:
        i = bisect_left(s_sorted, ch)
        if i < len(s_sorted) and s_sorted[i] == ch:
            shared.add(ch)
    rank = {ch: r for r, ch in enumerate(sorted(shared), 1)}
    return [rank.get(ch, 0) for ch in s_block], [rank.get(ch, 0) for ch in t_block]


def cell_params(k: int) -> tuple[int, int]:
    """Cell side x and macro-cell side y (in cells) for table budget k.

    y grows like k log k (scaled down by 16); x is the largest side whose
    two code vectors fit in k bits.
    """
    if k < MIN_K:
        raise ValueError(f"k must be at least {MIN_K}")
    y = max(1, math.ceil(k * math.log2(k) / 16))
    x = 1
    while 2 * (x + 1) * code_bits(x + 1, y) <= k:
        x += 1
    while x > 1 and x * code_bits(x, y) > WORD_BITS:
        x -= 1
    return x, y


def code_bits(x: int, y: int) -> int:
    return max(1, math.ceil(math.log2(x * y + 1)))


def _pack_steps(steps: Sequence[int]) -> int:
    # base-3 digits; step -1, 0, +1 maps to digit 0, 1, 2
    out = 0
    for st in reversed(steps):
        out = out * 3 + st + 1
    return out


def _unpack_steps(code: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        code, r = divmod(code, 3)
        out.append(r - 1)
    return out


def cell_compute(sc: Sequence[int], tc: Sequence[int], top: Sequence[int], left: Sequence[int]) -> tuple[list[int], list[int]]:
    """Bottom-row and right-column steps of one cell.

    ``top[j]`` is D[0][j+1] - D[0][j] along the cell's top boundary and
    ``left[i]`` is D[i+1][0] - D[i][0] down its left boundary, relative to
    the cell's top-left corner value 0.
    """
    w = len(tc)
    row = [0]
    for st in top:
        row.append(row[-1] + st)
    right = []
    for i, a in enumerate(sc):
        cur = [row[0] + left[i]]
        for j in range(w):
            b = tc[j]
            lam = 0 if a == b and a > 0 else 1
            cur.append(min(row[j] + lam, row[j + 1] + 1, cur[j] + 1))
        right.append(cur[w] - row[w])
        row = cur
    bottom = [row[j + 1] - row[j] for j in range(w)]
    return bottom, right


class CellTable:
    """Memoized cell results, keyed by (S codes, T codes, top steps, left steps).

    Every key is a tuple of four ints: packed code vectors and base-3 step
    codes.  ``words`` is bounded by ``2**k``; past that, results are computed
    without being stored.
    """

    def __init__(self, k: int, x: int, y: int) -> None:
        self.k = k
        self.x = x
        self.y = y
        self.bits = code_bits(x, y)
        self.capacity = 1 << k
        self.table: dict[tuple[int, int, int, int], tuple[int, int, int, int]] = {}
        self.words = 0

    def lookup(self, s_code: int, t_code: int, top: int, left: int) -> tuple[int, int, int, int]:
        key = (s_code, t_code, top, left)
        r = self.table.get(key)
        if r is None:
            x, bits = self.x, self.bits
            mask = (1 << bits) - 1
            sc = [(s_code >> (bits * i)) & mask for i in range(x)]
            tc = [(t_code >> (bits * i)) & mask for i in range(x)]
            bottom, right = cell_compute(sc, tc, _unpack_steps(top, x), _unpack_steps(left, x))
            r = (_pack_steps(bottom), _pack_steps(right), sum(bottom), sum(right))
            if self.words < self.capacity:
                self.table[key] = r
                self.words += 1
        return r


def _pack_codes(codes: Sequence[int], bits: int) -> int:
    out = 0
    for c in reversed(codes):
        out = (out << bits) | c
    return out


_tables: dict[int, CellTable] = {}


def cell_table(k: int) -> CellTable:
    t = _tables.get(k)
    if t is None:
        x, y = cell_params(k)
        t = _tables.setdefault(k, CellTable(k, x, y))
    return t


def edit_distance_4r(s: Sequence, t: Sequence, k: int = 16, table: Optional[CellTable] = None, trace: Optional[list] = None) -> int:
    """Edit distance via tabulated x-by-x cells.

    Full cells go through the memoized table; the ragged last row and column
    of cells (when a length is not a multiple of x) are evaluated directly
    from the same codes.  If ``trace`` is a list, each cell appends
    ``(row0, col0, bottom_steps, right_steps)`` in absolute matrix coordinates.
    """
    if table is None:
        table = cell_table(k)
    x, y, bits = table.x, table.y, table.bits
    memo = table.table
    m, n = len(s), len(t)
    if m == 0 or n == 0:
        return m + n
    n_cell_cols = -(-n // x)
    n_cell_rows = -(-m // x)
    # steps along the bottom boundary of the last processed cell in each column
    top_steps: list[list[int]] = [[1] * min(x, n - J * x) for J in range(n_cell_cols)]
    bottom_sum = [len(ts) for ts in top_steps]
    top_code = [_pack_steps(ts) if len(ts) == x else -1 for ts in top_steps]

    for I0 in range(0, n_cell_rows, y):
        rows_here = range(I0, min(I0 + y, n_cell_rows))
        left_steps = {I: [1] * min(x, m - I * x) for I in rows_here}
        left_code = {I: (_pack_steps(v) if len(v) == x else -1) for I, v in left_steps.items()}
        s_lo, s_hi = I0 * x, min(m, (I0 + y) * x)
        s_block = s[s_lo:s_hi]
        for J0 in range(0, n_cell_cols, y):
            t_lo, t_hi = J0 * x, min(n, (J0 + y) * x)
            s_codes, t_codes = encode_macro_cell(s_block, t[t_lo:t_hi])
            J_hi = min(J0 + y, n_cell_cols)
            t_cells = [t_codes[(J - J0) * x:(J - J0 + 1) * x] for J in range(J0, J_hi)]
            t_packed = [_pack_codes(tc, bits) if len(tc) == x else -1 for tc in t_cells]
            for I in rows_here:
                si = I * x - s_lo
                sc = s_codes[si:si + x]
                s_full = len(sc) == x
                s_packed = _pack_codes(sc, bits) if s_full else 0
                for J in range(J0, J_hi):
                    tp = t_packed[J - J0]
                    if s_full and tp >= 0:
                        key = (s_packed, tp, top_code[J], left_code[I])
                        r = memo.get(key)
                        if r is None:
                            r = table.lookup(*key)
                        bc, rc, bsum, _ = r
                        top_code[J] = bc
                        left_code[I] = rc
                        if trace is not None:
                            trace.append((I * x, J * x, _unpack_steps(bc, x), _unpack_steps(rc, x)))
                        top_steps[J] = None
                        left_steps[I] = None
                        bottom_sum[J] = bsum
                    else:
                        top = top_steps[J] if top_steps[J] is not None else _unpack_steps(top_code[J], x)
                        left = left_steps[I] if left_steps[I] is not None else _unpack_steps(left_code[I], x)
                        tc = t_cells[J - J0]
                        bottom, right = cell_compute(sc, tc, top, left)
                        if trace is not None:
                            trace.append((I * x, J * x, bottom, right))
                        top_steps[J] = bottom
                        left_steps[I] = right
                        top_code[J] = _pack_steps(bottom) if len(bottom) == x else -1
                        left_code[I] = _pack_steps(right) if len(right) == x else -1
                        bottom_sum[J] = sum(bottom)
    return m + sum(bottom_sum)
