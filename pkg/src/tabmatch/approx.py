"""Approximate regular expression matching under unit-cost edit distance.

Each node v of the Thompson automaton carries the least edit distance between
the prefix read so far and any string spelled by a path from the start node
to v.  A column is computed in two passes over a topological order: pass 1
follows forward edges, pass 2 pushes values across back edges.  Values
larger than ``d`` are clamped to ``d + 1``.

:func:`approx_dp_naive` evaluates the recurrence node by node over the whole
automaton.  :class:`ApproxMatcher` evaluates the same recurrence one chunk
of a subautomaton at a time through memoized tables.
"""

from __future__ import annotations

from typing import Optional, Union

from .decomposition import build_decomposition
from .nfa import Nfa, build_nfa
from .regex_ast import ParseTree, parse
from .tables import DEFAULT_K, TableCache, choose_x, lane_bits, shape_key, word_fits


def _dp_structure(nfa: Nfa):
    sigma_pred = [-1] * nfa.n_nodes
    fwd: list[list[int]] = [[] for _ in range(nfa.n_nodes)]
    back: list[list[int]] = [[] for _ in range(nfa.n_nodes)]
    for e in nfa.edges:
        if e.label is not None:
            sigma_pred[e.dst] = e.src
        if e.back:
            back[e.dst].append(e.src)
        else:
            fwd[e.dst].append(e.src)
    return sigma_pred, fwd, back


def dp_columns(nfa: Nfa, q: str, d: int):
    """Yield the clamped pass-2 column for each prefix length 0..len(q)."""
    cap = d + 1
    n = nfa.n_nodes
    label = nfa.node_label
    sigma_pred, fwd, back = _dp_structure(nfa)
    start = nfa.start

    # column 0: only deletions of pattern characters along forward paths
    col = [0] * n
    for v in range(n):
        if v == start:
            continue
        if sigma_pred[v] >= 0:
            col[v] = min(col[sigma_pred[v]] + 1, cap)
        else:
            col[v] = min(min(col[p] for p in fwd[v]), cap)
    yield col

    for i, ch in enumerate(q, 1):
        prev = col
        p1 = [0] * n
        for v in range(n):  # node ids are a topological order of forward edges
            if v == start:
                p1[v] = min(i, cap)
            elif sigma_pred[v] >= 0:
                w = sigma_pred[v]
                cost = 0 if label[v] == ch else 1
                p1[v] = min(prev[v] + 1, prev[w] + cost, p1[w] + 1, cap)
            else:
                p1[v] = min(min(p1[p] for p in fwd[v]), cap)
        p2 = [0] * n
        for v in range(n):
            if v == start:
                p2[v] = min(i, cap)
            elif sigma_pred[v] >= 0:
                p2[v] = min(p1[v], p2[sigma_pred[v]] + 1, cap)
            else:
                best = min(p2[p] for p in fwd[v])
                for p in back[v]:
                    best = min(best, p1[p])
                p2[v] = min(best, cap)
        col = p2
        yield col


def approx_dp_naive(pattern: Union[str, ParseTree], q: str, d: int) -> bool:
    """True iff ``q`` is within edit distance ``d`` of some string the pattern matches."""
    if d < 0:
        raise ValueError("d must be non-negative")
    tree = parse(pattern) if isinstance(pattern, str) else pattern
    nfa = build_nfa(tree)
    col = None
    for col in dp_columns(nfa, q, d):
        pass
    return col[nfa.accept] <= d


class ApproxMatcher:
    """Chunked two-pass simulation over a decomposition, for a fixed ``d``."""

    def __init__(
        self,
        pattern: Union[str, ParseTree],
        d: int,
        k: int = DEFAULT_K,
        cache: Optional[TableCache] = None,
        x: Optional[int] = None,
    ) -> None:
        if d < 0:
            raise ValueError("d must be non-negative")
        self.d = d
        self.tree = parse(pattern) if isinstance(pattern, str) else pattern
        self.nfa = build_nfa(self.tree)
        self.cache = cache if cache is not None else TableCache(k)
        self.k = self.cache.k
        x = choose_x(self.k, d) if x is None else x
        while True:
            deco = build_decomposition(self.nfa, self.tree, x)
            if x == 1 or all(word_fits(a, d) for a in deco.subautomata):
                break
            x -= 1
        self.x = x
        self.deco = deco
        self.root = deco.root
        self.w = w = lane_bits(d)
        self.mask = (1 << w) - 1
        self._subs = []
        for a in deco.subautomata:
            key = shape_key(a)
            t = self.cache.register(key)
            kids = tuple((c, w * tb, w * fb) for c, tb, fb in a.children)
            self._subs.append((key, t, a.eq, kids, tuple(a.chunks), w * (a.size - 1)))
        self.trace: Optional[list] = None

    # --- chunk operations ---------------------------------------------------

    def _tab1(self, s, vec: int, ci: int, eqmask: int, b: int) -> int:
        key, t, _, _, chunks, _ = s
        chunk = chunks[ci]
        if not chunk:
            return vec
        if self.trace is not None:
            self.trace.append(("next1", s, ci))
        arg = (self.d, vec, chunk, eqmask & chunk, b)
        r = t.next1.get(arg)
        if r is None:
            r = self.cache.next1(key, self.d, vec, chunk, eqmask, b)
        return r

    def _tab2(self, s, vec: int, ci: int) -> int:
        key, t, _, _, chunks, _ = s
        chunk = chunks[ci]
        if not chunk:
            return vec
        if self.trace is not None:
            self.trace.append(("next2", s, ci))
        r = t.next2.get((self.d, vec, chunk))
        if r is None:
            r = self.cache.next2(key, self.d, vec, chunk)
        return r

    # --- recursive operations -----------------------------------------------

    def next1(self, state: list[int], a: int, b: int, ch: Optional[str]) -> int:
        """Pass 1 over A and its descendants; returns A's accept value."""
        subs = self._subs
        mask = self.mask

        def enter(a: int, b: int) -> int:
            s = subs[a]
            vec = state[a]
            old = vec & mask
            vec = (vec & ~mask) | b
            eqm = s[2].get(ch, 0) if ch is not None else 0
            return self._tab1(s, vec, 0, eqm, old)

        stack = [[a, enter(a, b), 0]]
        f = 0
        while stack:
            fr = stack[-1]
            s = subs[fr[0]]
            kids = s[3]
            i = fr[2]
            if i < len(kids):
                cid, tsh, _ = kids[i]
                stack.append([cid, enter(cid, (fr[1] >> tsh) & mask), 0])
                continue
            stack.pop()
            vec = fr[1]
            state[fr[0]] = vec
            f = (vec >> s[5]) & mask
            if stack:
                par = stack[-1]
                ps = subs[par[0]]
                j = par[2]
                fsh = ps[3][j][2]
                pv = par[1]
                old_phi = (pv >> fsh) & mask
                pv = (pv & ~(mask << fsh)) | (f << fsh)
                eqm = ps[2].get(ch, 0) if ch is not None else 0
                par[1] = self._tab1(ps, pv, j + 1, eqm, old_phi)
                par[2] = j + 1
        return f

    def next2(self, state: list[int], a: int, b: int) -> int:
        """Pass 2 over A and its descendants; returns A's accept value."""
        subs = self._subs
        mask = self.mask

        def enter(a: int, b: int) -> int:
            s = subs[a]
            return self._tab2(s, (state[a] & ~mask) | b, 0)

        stack = [[a, enter(a, b), 0]]
        f = 0
        while stack:
            fr = stack[-1]
            s = subs[fr[0]]
            kids = s[3]
            i = fr[2]
            if i < len(kids):
                cid, tsh, _ = kids[i]
                stack.append([cid, enter(cid, (fr[1] >> tsh) & mask), 0])
                continue
            stack.pop()
            vec = fr[1]
            state[fr[0]] = vec
            f = (vec >> s[5]) & mask
            if stack:
                par = stack[-1]
                ps = subs[par[0]]
                j = par[2]
                fsh = ps[3][j][2]
                pv = (par[1] & ~(mask << fsh)) | (f << fsh)
                par[1] = self._tab2(ps, pv, j + 1)
                par[2] = j + 1
        return f

    # --- simulation ---------------------------------------------------------

    def initial_state(self) -> list[int]:
        cap = self.d + 1
        state = []
        for a in self.deco.subautomata:
            vec = 0
            for i in range(a.size):
                vec |= cap << (self.w * i)
            state.append(vec)
        # column 0 is the general step with every previous value at the cap
        # and no character matching anything
        self.next1(state, self.root, 0, None)
        self.next2(state, self.root, 0)
        return state

    def step(self, state: list[int], j: int, ch: str) -> int:
        b = min(j, self.d + 1)
        self.next1(state, self.root, b, ch)
        return self.next2(state, self.root, b)

    def columns(self, q: str):
        state = self.initial_state()
        yield list(state)
        for j, ch in enumerate(q, 1):
            self.step(state, j, ch)
            yield list(state)

    def distance_value(self, q: str) -> int:
        """Clamped distance from ``q`` to the language (``d + 1`` means "more than d")."""
        state = self.initial_state()
        for j, ch in enumerate(q, 1):
            self.step(state, j, ch)
        return (state[self.root] >> self._subs[self.root][5]) & self.mask

    def accepts(self, q: str) -> bool:
        return self.distance_value(q) <= self.d

    def global_values(self, state: list[int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for a, vec in zip(self.deco.subautomata, state):
            for i, g in enumerate(a.node_ids):
                val = (vec >> (self.w * i)) & self.mask
                if out.setdefault(g, val) != val:
                    raise AssertionError(f"shared node {g} disagrees between subautomata")
        return out


def amatch(pattern: str, q: str, d: int, k: int = DEFAULT_K, cache: Optional[TableCache] = None) -> bool:
    """True iff ``q`` is within edit distance ``d`` of the pattern's language."""
    return ApproxMatcher(pattern, d, k=k, cache=cache).accepts(q)
