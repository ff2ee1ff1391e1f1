r"""
Approximate matching
====================

``amatch`` asks whether a string is within edit distance ``d`` of some word
of the pattern's language.  Each automaton node carries a small distance
value, clamped at ``d + 1``.
"""

# %%
# A few queries
# -------------

from tabmatch import ApproxMatcher, amatch, approx_dp_naive

pattern = "(ab|ba)*c"
for q, d in [("ababc", 0), ("abbc", 1), ("abbc", 0), ("xc", 2), ("xyz", 2)]:
    print(f"{q!r:8} d={d} tabulated={amatch(pattern, q, d)!s:5} naive={approx_dp_naive(pattern, q, d)}")

# %%
# Distance values
# ---------------
# ``distance_value`` reports the clamped distance to the language, so it
# reads exactly up to ``d`` and saturates at ``d + 1``.

m = ApproxMatcher(pattern, d=3)
for q in ["ababc", "abac", "abbbc", "cccc", "zzzzzz"]:
    print(q, m.distance_value(q))

# %%
# Column by column
# ----------------
# Node values after each prefix of the query, decoded from the packed
# per-subautomaton words.

m = ApproxMatcher("a*b", d=2)
for j, state in enumerate(m.columns("aab")):
    vals = m.global_values(state)
    print(j, [vals[v] for v in sorted(vals)])
