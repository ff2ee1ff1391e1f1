r"""
Subsequence indexes
===================

Three ways to preprocess a text for "is q a subsequence?" queries, from a
full next-occurrence table to linear-space successor structures.
"""

# %%
# Building and querying
# ---------------------

import io

from tabmatch import Engine, build_index, subsequence_naive
from tabmatch.subseq import loads_index

text = "the quick brown fox jumps over the lazy dog" * 20
for engine in Engine:
    idx = build_index(text, engine)
    print(f"{engine.value:9} entries={idx.space_entries():6} ({idx.space_entries() / idx.n:.2f} per char)",
          idx.query("thequickdog"), idx.query("z" * 21))
print("naive:", subsequence_naive(text, "thequickdog"), subsequence_naive(text, "z" * 21))

# %%
# Long jumps
# ----------
# The hybrid engine works inside groups of sigma' positions and jumps to a
# later group when a character does not reappear in the current one.

idx = build_index(text, Engine.HYBRID)
tr = idx.query_trace("tqbfjotld" * 3)
print("groups:", idx.n_groups, "lookups:", tr.lookups, "long jumps:", tr.long_jumps)
print("positions:", tr.positions[:9])

# %%
# Saving an index
# ---------------

buf = io.BytesIO()
idx.save(buf)
again = loads_index(buf.getvalue())
print(len(buf.getvalue()), "bytes;", again.query("lazy dog"))
