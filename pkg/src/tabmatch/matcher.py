"""Exact regular expression matching over a decomposed Thompson automaton.

The node set of the automaton is stored as one bitmask per subautomaton.
``move`` and ``close`` walk the macro tree top-down, handling each
subautomaton with a table lookup and visiting children in topological order
of their start nodes so that a child's accept bit is set before the next
child reads its start bit.  Traversals use an explicit stack; macro trees of
long concatenations are far deeper than the interpreter's recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .decomposition import Decomposition, build_decomposition
from .nfa import Nfa, build_nfa
from .regex_ast import ParseTree, parse
from .tables import DEFAULT_K, TableCache, choose_x, shape_key, word_fits


@dataclass
class _Sub:
    key: bytes
    tables: object
    eq: dict
    children: tuple  # ((child id, start bit, accept bit), ...)
    accept_bit: int


class TabulatedMatcher:
    """Matcher for one pattern; tables live in a (shareable) TableCache."""

    def __init__(
        self,
        pattern: Union[str, ParseTree],
        k: int = DEFAULT_K,
        cache: Optional[TableCache] = None,
        x: Optional[int] = None,
    ) -> None:
        self.tree = parse(pattern) if isinstance(pattern, str) else pattern
        self.nfa: Nfa = build_nfa(self.tree)
        self.cache = cache if cache is not None else TableCache(k)
        self.k = self.cache.k
        x = choose_x(self.k) if x is None else x
        while True:
            deco = build_decomposition(self.nfa, self.tree, x)
            if x == 1 or all(word_fits(a) for a in deco.subautomata):
                break
            x -= 1
        self.x = x
        self.deco: Decomposition = deco
        self.root = deco.root
        self._subs: list[_Sub] = []
        for a in deco.subautomata:
            key = shape_key(a)
            t = self.cache.register(key)
            kids = tuple((c, 1 << tb, 1 << fb) for c, tb, fb in a.children)
            self._subs.append(_Sub(key, t, a.eq, kids, 1 << (a.size - 1)))

    # --- per-subautomaton table operations ---------------------------------

    def _move_local(self, s: _Sub, vec: int, b: int, ch: str) -> int:
        r = s.tables.succ.get(vec)
        if r is None:
            r = self.cache.succ(s.key, vec)
        return (r & s.eq.get(ch, 0)) | b

    def _close_local(self, s: _Sub, vec: int) -> int:
        r = s.tables.close.get(vec)
        if r is None:
            r = self.cache.close(s.key, vec)
        return r

    # --- recursive operations ----------------------------------------------

    def move(self, state: list[int], a: int, b: int, ch: str) -> int:
        """Move(A, b, ch): update A and its descendants, return A's accept bit."""
        subs = self._subs
        stack = [[a, self._move_local(subs[a], state[a], b, ch), 0, 0]]
        f = 0
        while stack:
            fr = stack[-1]
            s = subs[fr[0]]
            i = fr[2]
            if i < len(s.children):
                cid, tb, fb = s.children[i]
                fr[2] = i + 1
                bi = 1 if fr[1] & tb else 0
                stack.append([cid, self._move_local(subs[cid], state[cid], bi, ch), 0, fb])
                continue
            stack.pop()
            vec = fr[1]
            state[fr[0]] = vec
            f = 1 if vec & s.accept_bit else 0
            if f and stack:
                stack[-1][1] |= fr[3]
        return f

    def close(self, state: list[int], a: int, b: int) -> int:
        """Close(A, b): epsilon-closure pass over A and its descendants."""
        subs = self._subs
        stack = [[a, self._close_local(subs[a], state[a] | b), 0, 0]]
        f = 0
        while stack:
            fr = stack[-1]
            s = subs[fr[0]]
            i = fr[2]
            if i < len(s.children):
                cid, tb, fb = s.children[i]
                fr[2] = i + 1
                bi = 1 if fr[1] & tb else 0
                stack.append([cid, self._close_local(subs[cid], state[cid] | bi), 0, fb])
                continue
            stack.pop()
            vec = fr[1]
            state[fr[0]] = vec
            f = 1 if vec & s.accept_bit else 0
            if f and stack:
                parent = stack[-1]
                if not parent[1] & fr[3]:
                    parent[1] = self._close_local(subs[parent[0]], parent[1] | fr[3])
        return f

    # --- simulation ---------------------------------------------------------

    def initial_state(self) -> list[int]:
        state = [0] * len(self._subs)
        self.close(state, self.root, 1)
        self.close(state, self.root, 1)
        return state

    def step(self, state: list[int], ch: str) -> int:
        self.move(state, self.root, 0, ch)
        self.close(state, self.root, 0)
        return self.close(state, self.root, 0)

    def accepts(self, q: str) -> bool:
        state = self.initial_state()
        f = state[self.root] & self._subs[self.root].accept_bit
        for ch in q:
            f = self.step(state, ch)
        return bool(f)

    def states(self, q: str):
        """Yield the per-subautomaton state after each prefix of ``q``."""
        state = self.initial_state()
        yield list(state)
        for ch in q:
            self.step(state, ch)
            yield list(state)

    def global_nodes(self, state: list[int]) -> set[int]:
        out = set()
        for a, vec in zip(self.deco.subautomata, state):
            ids = a.node_ids
            while vec:
                low = vec & -vec
                out.add(ids[low.bit_length() - 1])
                vec ^= low
        return out

    def check_consistency(self, state: list[int]) -> None:
        """Shared start/accept bits must agree between parent and child."""
        subs = self.deco.subautomata
        for a in subs:
            for c, tb, fb in a.children:
                child = subs[c]
                assert (state[a.id] >> tb) & 1 == state[c] & 1
                assert (state[a.id] >> fb) & 1 == (state[c] >> (child.size - 1)) & 1


def match(pattern: str, q: str, k: int = DEFAULT_K, cache: Optional[TableCache] = None) -> bool:
    """True iff the whole of ``q`` is in the language of ``pattern``."""
    return TabulatedMatcher(pattern, k=k, cache=cache).accepts(q)
