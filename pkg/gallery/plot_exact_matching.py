r"""
Exact matching with tabulated subautomata
=========================================

A pattern is parsed, turned into a Thompson automaton and cut into small
subautomata.  Each subautomaton's transitions are looked up in tables that
are shared by every subautomaton of the same shape.
"""

# %%
# Parse and compile
# -----------------
# ``ac|a*b`` has eight parse-tree nodes.  With clusters of at most three
# nodes the automaton splits into three subautomata.

from tabmatch import TabulatedMatcher, accepts_naive, build_nfa, parse
from tabmatch.decomposition import build_decomposition

tree = parse("ac|a*b")
nfa = build_nfa(tree)
print(nfa.to_text())

deco = build_decomposition(nfa, tree, x=3)
print(deco.to_text())

# %%
# Matching
# --------
# The tabulated matcher and the plain node-set simulation agree.

m = TabulatedMatcher("ac|a*b", k=16)
for q in ["ac", "b", "aab", "a", "abc"]:
    print(f"{q!r:6} tabulated={m.accepts(q)!s:5} naive={accepts_naive(nfa, q)}")

# %%
# Node sets after every prefix
# ----------------------------
# The per-subautomaton bitvectors decode to the same node sets as the
# reference simulation.

for j, state in enumerate(m.states("aab")):
    print(j, [bin(v) for v in state], sorted(m.global_nodes(state)))

# %%
# Sharing tables between patterns
# -------------------------------
# Starred pairs of literals all have the same shape, so the second pattern
# adds no new tables.

from tabmatch import TableCache

cache = TableCache(16)
TabulatedMatcher("(ab)*(cd)*", cache=cache, x=3).accepts("abcd")
before = cache.n_shapes
TabulatedMatcher("(xy)*(zw)*", cache=cache, x=3).accepts("xyzw")
print("shapes:", before, "->", cache.n_shapes, " stored words:", cache.words)
