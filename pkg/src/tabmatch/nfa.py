"""Thompson automata built from parse trees, plus the plain node-set simulation.

Node ids are handed out in a construction order that is also a topological
order of the automaton once back edges are ignored: every forward edge goes
from a smaller id to a larger one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .regex_ast import Op, ParseTree, parse

EPS = None  # label of an epsilon edge


class LimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    label: Optional[str]  # None for epsilon
    back: bool
    owner: int  # parse-tree node whose construction rule created the edge


@dataclass
class Nfa:
    n_nodes: int
    edges: list[Edge]
    start: int
    accept: int
    node_label: list[Optional[str]]
    tree_theta: list[int]
    tree_phi: list[int]
    out_edges: list[list[int]] = field(default_factory=list)
    in_edges: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.out_edges:
            self.out_edges = [[] for _ in range(self.n_nodes)]
            self.in_edges = [[] for _ in range(self.n_nodes)]
            for i, e in enumerate(self.edges):
                self.out_edges[e.src].append(i)
                self.in_edges[e.dst].append(i)

    @property
    def back_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.back]

    def to_text(self) -> str:
        """Plain-text dump: a node line followed by one line per edge."""
        lines = [f"nodes {self.n_nodes} start {self.start} accept {self.accept}"]
        for e in self.edges:
            lab = "eps" if e.label is None else repr(e.label)
            kind = "back" if e.back else "fwd"
            lines.append(f"{e.src} -> {e.dst} {lab} {kind}")
        return "\n".join(lines)


def build_nfa(tree: ParseTree) -> Nfa:
    """Thompson's construction, with concatenation merging nodes in place."""
    m = len(tree.nodes)
    theta = [-1] * m
    phi = [-1] * m
    edges: list[Edge] = []
    count = 0
    node_label: list[Optional[str]] = []

    def new() -> int:
        nonlocal count
        node_label.append(None)
        count += 1
        return count - 1

    # frames: (tree node, phase, preassigned start node or -1)
    stack = [(tree.root, 0, -1)]
    while stack:
        v, phase, start = stack.pop()
        node = tree.nodes[v]
        lab = node.label
        if lab is Op.CHAR:
            t = start if start >= 0 else new()
            f = new()
            edges.append(Edge(t, f, node.char, False, v))
            node_label[f] = node.char
            theta[v], phi[v] = t, f
        elif lab is Op.CAT:
            left, right = node.children
            if phase == 0:
                stack.append((v, 1, start))
                stack.append((left, 0, start))
            elif phase == 1:
                stack.append((v, 2, start))
                stack.append((right, 0, phi[left]))
            else:
                theta[v], phi[v] = theta[left], phi[right]
        elif lab is Op.UNION:
            left, right = node.children
            if phase == 0:
                theta[v] = start if start >= 0 else new()
                stack.append((v, 1, start))
                stack.append((left, 0, -1))
            elif phase == 1:
                stack.append((v, 2, start))
                stack.append((right, 0, -1))
            else:
                f = new()
                t = theta[v]
                edges.append(Edge(t, theta[left], EPS, False, v))
                edges.append(Edge(t, theta[right], EPS, False, v))
                edges.append(Edge(phi[left], f, EPS, False, v))
                edges.append(Edge(phi[right], f, EPS, False, v))
                phi[v] = f
        else:
            (s,) = node.children
            if phase == 0:
                theta[v] = start if start >= 0 else new()
                stack.append((v, 1, start))
                stack.append((s, 0, -1))
            else:
                f = new()
                t = theta[v]
                edges.append(Edge(t, theta[s], EPS, False, v))
                edges.append(Edge(t, f, EPS, False, v))
                edges.append(Edge(phi[s], f, EPS, False, v))
                edges.append(Edge(phi[s], theta[s], EPS, True, v))
                phi[v] = f

    return Nfa(count, edges, theta[tree.root], phi[tree.root], node_label, theta, phi)


def compile_pattern(pattern: str) -> Nfa:
    return build_nfa(parse(pattern))


def naive_move(nfa: Nfa, states: set[int], ch: str) -> set[int]:
    out = set()
    edges = nfa.edges
    for v in states:
        for i in nfa.out_edges[v]:
            e = edges[i]
            if e.label == ch:
                out.add(e.dst)
    return out


def naive_close(nfa: Nfa, states: set[int]) -> set[int]:
    seen = set(states)
    todo = list(states)
    edges = nfa.edges
    while todo:
        v = todo.pop()
        for i in nfa.out_edges[v]:
            e = edges[i]
            if e.label is None and e.dst not in seen:
                seen.add(e.dst)
                todo.append(e.dst)
    return seen


def simulate_naive(nfa: Nfa, q: str) -> Iterator[set[int]]:
    """Yield the node sets S_0, S_1, ..., S_n of the standard simulation."""
    s = naive_close(nfa, {nfa.start})
    yield s
    for ch in q:
        s = naive_close(nfa, naive_move(nfa, s, ch))
        yield s


def accepts_naive(nfa: Nfa, q: str) -> bool:
    s = naive_close(nfa, {nfa.start})
    for ch in q:
        if not s:
            return False
        s = naive_close(nfa, naive_move(nfa, s, ch))
    return nfa.accept in s


def enumerate_cycle_free_paths(nfa: Nfa, limit: int = 100_000) -> list[tuple[int, ...]]:
    """All simple paths starting at the start node, as tuples of edge indices.

    The empty tuple stands for the single-node path.  Raises LimitExceeded
    once more than ``limit`` paths have been produced.
    """
    paths: list[tuple[int, ...]] = []
    stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [
        (nfa.start, (), frozenset([nfa.start]))
    ]
    while stack:
        v, path, visited = stack.pop()
        paths.append(path)
        if len(paths) > limit:
            raise LimitExceeded(f"more than {limit} cycle-free paths")
        for i in nfa.out_edges[v]:
            w = nfa.edges[i].dst
            if w not in visited:
                stack.append((w, path + (i,), visited | {w}))
    return paths


def count_back_edges(nfa: Nfa, path: tuple[int, ...]) -> int:
    return sum(1 for i in path if nfa.edges[i].back)


def check_structure(nfa: Nfa, tree_size: int) -> None:
    """Assert the structural guarantees of Thompson's construction."""
    assert nfa.n_nodes <= 2 * tree_size
    assert len(nfa.edges) < 4 * tree_size
    assert not nfa.in_edges[nfa.start], "start node has incoming edges"
    assert not nfa.out_edges[nfa.accept], "accept node has outgoing edges"
    for v in range(nfa.n_nodes):
        assert len(nfa.out_edges[v]) <= 2
        labels = {nfa.edges[i].label for i in nfa.in_edges[v]}
        assert len(labels) <= 1, f"node {v} has mixed incoming labels"
    for e in nfa.edges:
        if e.back:
            assert e.dst < e.src
        else:
            assert e.src < e.dst
