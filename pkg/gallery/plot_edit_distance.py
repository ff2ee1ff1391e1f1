r"""
Edit distance without an alphabet-sized table
=============================================

The matrix is cut into x-by-x cells.  Characters are replaced by their rank
among the characters two nearby blocks share, so the cell table never sees
a raw character and works for any alphabet.
"""

# %%
# Basics
# ------

from tabmatch import edit_distance_4r, edit_distance_naive
from tabmatch.editdist import CellTable, cell_params, encode_macro_cell

print(edit_distance_4r("kitten", "sitting"), edit_distance_naive("kitten", "sitting"))

# %%
# Rank codes
# ----------
# Characters that occur in only one block get code 0.  Equal nonzero codes
# mean equal characters.

print(encode_macro_cell("zaxb", "bqz"))

# %%
# A large alphabet
# ----------------
# Ten thousand distinct symbols, yet the table keys stay small integers.

import random

rng = random.Random(7)
pool = [chr(0x4E00 + i) for i in range(10_000)]
s = "".join(rng.choice(pool) for _ in range(150))
t = "".join(rng.choice(pool) for _ in range(150))
x, y = cell_params(16)
table = CellTable(16, x, y)
print("cell", x, "macro cell", y, "distance", edit_distance_4r(s, t, table=table), edit_distance_naive(s, t))
print("stored cells:", table.words, "example key:", next(iter(table.table)))

# %%
# Unit steps
# ----------
# Neighbouring matrix entries differ by at most one, which is what lets a
# cell boundary be stored as base-3 digits.

trace = []
edit_distance_4r("intention", "execution", trace=trace)
for row0, col0, bottom, right in trace[:5]:
    print(row0, col0, bottom, right)
