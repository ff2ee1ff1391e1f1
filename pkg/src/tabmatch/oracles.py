"""Reference implementations and seeded random generators for the test suites."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .nfa import LimitExceeded, build_nfa, naive_close, naive_move
from .regex_ast import Op, ParseNode, ParseTree, escape, parse


# q of up to 4 characters at distance up to 5 needs strings of length 9
MAX_ENUM_LEN = 9


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 20061
    alphabet_sizes: tuple[int, ...] = (2, 8, 64, 256)
    max_pattern: int = 40
    max_text: int = 80
    iterations: int = 1000

    def rng(self, stream: int = 0) -> random.Random:
        # one generator per named stream keeps suites independent of each other
        return random.Random(self.seed * 1_000_003 + stream)


def make_alphabet(size: int) -> list[str]:
    """``size`` distinct characters; small alphabets are lowercase letters."""
    if size <= 26:
        return [chr(ord("a") + i) for i in range(size)]
    return [chr(i) for i in range(size)]


def gen_tree(rng: random.Random, size: int, alphabet: Sequence[str]) -> ParseTree:
    """Random parse tree with exactly ``size`` nodes."""
    labels: list[Op] = []
    chars: list[Optional[str]] = []
    kids: list[tuple[int, ...]] = []

    def add(label, char=None, ch=()):
        labels.append(label)
        chars.append(char)
        kids.append(ch)
        return len(labels) - 1

    # build bottom-up from a list of pending (node, size) requests
    def build(n: int) -> int:
        stack = [(n, 0, None)]
        results: list[int] = []
        while stack:
            n, phase, extra = stack.pop()
            if n == 1:
                results.append(add(Op.CHAR, rng.choice(alphabet)))
            elif phase == 0:
                if n == 2 or rng.random() < 0.2:
                    stack.append((n, 1, ("star",)))
                    stack.append((n - 1, 0, None))
                else:
                    left = rng.randint(1, n - 2)
                    op = Op.CAT if rng.random() < 0.55 else Op.UNION
                    stack.append((n, 1, (op,)))
                    stack.append((n - 1 - left, 0, None))
                    stack.append((left, 0, None))
            else:
                if extra[0] == "star":
                    c = results.pop()
                    results.append(add(Op.STAR, None, (c,)))
                else:
                    r = results.pop()
                    l_ = results.pop()
                    results.append(add(extra[0], None, (l_, r)))
        return results[0]

    root = build(size)
    parent: list[Optional[int]] = [None] * len(labels)
    for v, ks in enumerate(kids):
        for c in ks:
            parent[c] = v
    nodes = tuple(ParseNode(a, b, c, p) for a, b, c, p in zip(labels, chars, kids, parent))
    return ParseTree(nodes, root)


_PREC = {Op.UNION: 0, Op.CAT: 1, Op.STAR: 2, Op.CHAR: 3}


def to_minimal_string(tree: ParseTree) -> str:
    """Serialize with only the parentheses precedence and left-associativity need."""
    out: list[str] = []
    stack: list[object] = [tree.root]
    nodes = tree.nodes
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node = nodes[item]
        if node.label is Op.CHAR:
            out.append(escape(node.char))
            continue
        p = _PREC[node.label]
        if node.label is Op.STAR:
            (c,) = node.children
            wrap = nodes[c].label in (Op.CAT, Op.UNION)
            stack.append("*")
            stack.extend([")", c, "("] if wrap else [c])
            continue
        left, right = node.children
        sep = "|" if node.label is Op.UNION else ""
        wrap_r = _PREC[nodes[right].label] <= p  # right operand of a left-assoc op
        wrap_l = _PREC[nodes[left].label] < p
        stack.extend([")", right, "("] if wrap_r else [right])
        stack.append(sep)
        stack.extend([")", left, "("] if wrap_l else [left])
    return "".join(out)


def gen_regex(rng: random.Random, size: int, alphabet: Sequence[str] = "ab", max_chars: Optional[int] = None) -> str:
    """Random pattern built from a ``size``-node tree, rendered with minimal parentheses."""
    if size < 1:
        raise ValueError("size must be at least 1")
    while True:
        s = to_minimal_string(gen_tree(rng, size, alphabet))
        if max_chars is None or len(s) <= max_chars:
            return s
        size = max(1, size - 1)


def gen_string(rng: random.Random, length: int, alphabet: Sequence[str]) -> str:
    return "".join(rng.choice(alphabet) for _ in range(length))


def enumerate_language(pattern: str, max_len: int, cap: int = 200_000) -> set[str]:
    """All strings of length at most ``max_len`` matched by ``pattern``.

    Breadth-first search over (spelled string, node set) pairs of the
    pattern's automaton; strings whose node set dies are pruned.
    """
    if max_len > MAX_ENUM_LEN:
        raise ValueError(f"max_len is limited to {MAX_ENUM_LEN}")
    tree = parse(pattern)
    nfa = build_nfa(tree)
    sigma = sorted({n.char for n in tree.nodes if n.label is Op.CHAR})
    found: set[str] = set()
    queue = deque([("", frozenset(naive_close(nfa, {nfa.start})))])
    visited = 0
    while queue:
        s, states = queue.popleft()
        visited += 1
        if visited > cap:
            raise LimitExceeded(f"language enumeration exceeded {cap} strings")
        if nfa.accept in states:
            found.add(s)
        if len(s) == max_len:
            continue
        for ch in sigma:
            nxt = naive_close(nfa, naive_move(nfa, states, ch))
            if nxt:
                queue.append((s + ch, frozenset(nxt)))
    return found


def levenshtein(s: Sequence, t: Sequence) -> int:
    """Textbook full-matrix edit distance, used to cross-check faster code."""
    m, n = len(s), len(t)
    D = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        D[i][0] = i
    for j in range(n + 1):
        D[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            D[i][j] = min(D[i - 1][j - 1] + (s[i - 1] != t[j - 1]), D[i - 1][j] + 1, D[i][j - 1] + 1)
    return D[m][n]


def distance_to_language(pattern: str, q: str, d: int, cap: int = 2_000_000) -> Optional[int]:
    """Brute-force distance from ``q`` to the pattern's language, if it is <= d.

    Any string within distance d of ``q`` has length at most len(q) + d, so
    a breadth-first enumeration of the language up to that length is
    exhaustive.  Characters that do not occur in ``q`` all cost the same
    against ``q``, so they are enumerated as one wildcard class, and a prefix
    is dropped once every entry of its edit-distance row against ``q``
    exceeds d (rows never decrease along a string).
    """
    tree = parse(pattern)
    nfa = build_nfa(tree)
    sigma = {n.char for n in tree.nodes if n.label is Op.CHAR}
    in_q = sorted(sigma & set(q))
    others = sorted(sigma - set(q))
    classes: list[tuple[Optional[str], list[str]]] = [(c, [c]) for c in in_q]
    if others:
        classes.append((None, others))  # None never equals a character of q
    max_len = len(q) + d
    best: Optional[int] = None
    start = frozenset(naive_close(nfa, {nfa.start}))
    queue = deque([(start, list(range(len(q) + 1)), 0)])
    visited = 0
    while queue:
        states, row, depth = queue.popleft()
        visited += 1
        if visited > cap:
            raise LimitExceeded(f"distance enumeration exceeded {cap} strings")
        if nfa.accept in states and (best is None or row[-1] < best):
            best = row[-1]
        if depth == max_len:
            continue
        for sym, members in classes:
            nxt: set[int] = set()
            for ch in members:
                nxt |= naive_move(nfa, states, ch)
            if not nxt:
                continue
            new = [row[0] + 1]
            for j, b in enumerate(q, 1):
                new.append(min(row[j - 1] + (sym != b), row[j] + 1, new[j - 1] + 1))
            if min(new) <= d:
                queue.append((frozenset(naive_close(nfa, nxt)), new, depth + 1))
    if best is None or best > d:
        return None
    return best


@dataclass
class Corpus:
    """A reproducible list of generated cases, for determinism checks."""

    cases: list = field(default_factory=list)

    def digest(self) -> str:
        import hashlib

        h = hashlib.sha256()
        for c in self.cases:
            h.update(repr(c).encode("utf-8", "surrogatepass"))
        return h.hexdigest()
