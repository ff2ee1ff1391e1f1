"""Cluster partitions of parse trees and the induced subautomata.

A cluster is a connected set of at most ``x`` parse-tree nodes.  Each
cluster becomes a subautomaton: the Thompson automaton of the cluster's
nodes, with every child cluster collapsed to a pseudo-edge between that
child's start and accept nodes.  Local node indices follow the global
construction order, so the start node is local 0, the accept node is the
last local node, and each child's start and accept nodes are adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .nfa import Nfa
from .regex_ast import Op, ParseTree

# edge kinds inside a subautomaton
LEAF, EPS_FWD, EPS_BACK = 0, 1, 2


@dataclass
class ClusterPartition:
    clusters: list[list[int]]
    cluster_of: list[int]
    macro_parent: list[Optional[int]]
    roots: list[int]  # parse-tree root of each cluster
    x: int

    def __len__(self) -> int:
        return len(self.clusters)


@dataclass
class Subautomaton:
    id: int
    node_ids: list[int]  # global ids in local (topological) order
    local_edges: list[tuple[int, int, int]]  # (src, dst, kind), local indices
    children: list[tuple[int, int, int]]  # (child id, local theta, local phi)
    eq: dict[str, int]
    chunks: list[int] = field(default_factory=list)
    parent: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.node_ids)

    @property
    def start(self) -> int:
        return self.node_ids[0]

    @property
    def accept(self) -> int:
        return self.node_ids[-1]

    @property
    def pseudo_edges(self) -> list[tuple[int, int]]:
        return [(t, f) for _, t, f in self.children]


@dataclass
class Decomposition:
    partition: ClusterPartition
    subautomata: list[Subautomaton]
    root: int
    nfa: Nfa
    preorder: list[int]

    def to_text(self) -> str:
        lines = []
        for a in self.subautomata:
            kids = " ".join(str(c) for c, _, _ in a.children)
            lines.append(f"sub {a.id} parent {a.parent} size {a.size} children [{kids}]")
            lines.append("  nodes " + " ".join(map(str, a.node_ids)))
            for s, d, k in a.local_edges:
                lines.append(f"  {s} -> {d} {('leaf', 'eps', 'back')[k]}")
        return "\n".join(lines)


def cluster(tree: ParseTree, x: int) -> ClusterPartition:
    """Bottom-up greedy clustering into connected pieces of at most ``x`` nodes.

    Each node starts an open component containing itself and its children's
    still-open components.  If that would exceed ``x`` nodes, the larger
    child component is closed off as a cluster, then the other if needed.
    Every closed cluster except the root's holds at least ``x/2`` nodes.
    """
    if x < 1:
        raise ValueError("cluster capacity must be at least 1")
    nodes = tree.nodes
    pending: dict[int, list[int]] = {}
    clusters: list[list[int]] = []

    for v in tree.postorder():
        kids = [pending.pop(c) for c in nodes[v].children]
        total = 1 + sum(len(k) for k in kids)
        if total > x:
            kids.sort(key=len, reverse=True)
            while kids and 1 + sum(len(k) for k in kids) > x:
                clusters.append(kids.pop(0))
        comp = [v]
        for k in kids:
            comp.extend(k)
        pending[v] = comp
    clusters.append(pending.pop(tree.root))

    cluster_of = [-1] * len(nodes)
    for cid, members in enumerate(clusters):
        for v in members:
            cluster_of[v] = cid
    roots = []
    macro_parent: list[Optional[int]] = []
    for members in clusters:
        r = next(v for v in members if nodes[v].parent is None or cluster_of[nodes[v].parent] != cluster_of[v])
        roots.append(r)
        p = nodes[r].parent
        macro_parent.append(None if p is None else cluster_of[p])
    return ClusterPartition(clusters, cluster_of, macro_parent, roots, x)


def decompose(nfa: Nfa, tree: ParseTree, partition: ClusterPartition) -> Decomposition:
    """Derive one subautomaton per cluster, with pseudo-edges for child clusters."""
    cof = partition.cluster_of
    nodes = tree.nodes
    k = len(partition)
    child_roots: list[list[int]] = [[] for _ in range(k)]
    for cid, r in enumerate(partition.roots):
        par = partition.macro_parent[cid]
        if par is not None:
            child_roots[par].append(cid)

    owned_edges: list[list[int]] = [[] for _ in range(k)]
    for i, e in enumerate(nfa.edges):
        owned_edges[cof[e.owner]].append(i)

    subs: list[Subautomaton] = []
    for cid, members in enumerate(partition.clusters):
        glob = set()
        for v in members:
            glob.add(nfa.tree_theta[v])
            glob.add(nfa.tree_phi[v])
        kids = []
        for c in child_roots[cid]:
            r = partition.roots[c]
            glob.add(nfa.tree_theta[r])
            glob.add(nfa.tree_phi[r])
            kids.append((c, nfa.tree_theta[r], nfa.tree_phi[r]))
        order = sorted(glob)
        loc = {g: i for i, g in enumerate(order)}
        local_edges = []
        eq: dict[str, int] = {}
        for i in owned_edges[cid]:
            e = nfa.edges[i]
            if e.label is None:
                kind = EPS_BACK if e.back else EPS_FWD
            else:
                kind = LEAF
                eq[e.label] = eq.get(e.label, 0) | (1 << loc[e.dst])
            local_edges.append((loc[e.src], loc[e.dst], kind))
        children = sorted(((c, loc[t], loc[f]) for c, t, f in kids), key=lambda c: c[1])
        for _, t, f in children:
            local_edges.append((t, f, LEAF))
        local_edges.sort()
        a = Subautomaton(cid, order, local_edges, children, eq, parent=partition.macro_parent[cid])
        a.chunks = compute_chunks(a)
        subs.append(a)

    root = cof[tree.root]
    preorder = []
    stack = [root]
    while stack:
        a = stack.pop()
        preorder.append(a)
        stack.extend(c for c, _, _ in reversed(subs[a].children))
    return Decomposition(partition, subs, root, nfa, preorder)


def compute_chunks(a: Subautomaton) -> list[int]:
    """Chunk bitmasks L_1..L_{l+1} of ``a``.

    Chunk i covers the local interval after the previous child's accept node
    (or after the start node) up to and including child i's start node; the
    final chunk runs to the subautomaton's accept node.
    """
    chunks = []
    prev = 0
    for _, t, f in a.children:
        chunks.append(_interval_mask(prev + 1, t + 1))
        prev = f
    chunks.append(_interval_mask(prev + 1, a.size))
    return chunks


def _interval_mask(lo: int, hi: int) -> int:
    if hi <= lo:
        return 0
    return ((1 << (hi - lo)) - 1) << lo


def build_decomposition(nfa: Nfa, tree: ParseTree, x: int) -> Decomposition:
    return decompose(nfa, tree, cluster(tree, x))


def shape_edges_from_tree(tree: ParseTree, partition: ClusterPartition, cid: int) -> tuple[int, list[tuple[int, int, int]]]:
    """Local automaton of cluster ``cid`` generated from its tree shape alone.

    Child-cluster roots are treated as unlabeled leaves.  Returns the node
    count and the sorted edge list in local indices.  The result depends only
    on the label-erased shape, which is what makes it usable as a table key.
    """
    cof = partition.cluster_of
    nodes = tree.nodes
    count = 0
    edges: list[tuple[int, int, int]] = []
    theta: dict[int, int] = {}
    phi: dict[int, int] = {}

    def new() -> int:
        nonlocal count
        count += 1
        return count - 1

    stack = [(partition.roots[cid], 0, -1)]
    while stack:
        v, phase, start = stack.pop()
        node = nodes[v]
        if node.label is Op.CHAR or cof[v] != cid:
            t = start if start >= 0 else new()
            f = new()
            edges.append((t, f, LEAF))
            theta[v], phi[v] = t, f
        elif node.label is Op.CAT:
            left, right = node.children
            if phase == 0:
                stack += [(v, 1, start), (left, 0, start)]
            elif phase == 1:
                stack += [(v, 2, start), (right, 0, phi[left])]
            else:
                theta[v], phi[v] = theta[left], phi[right]
        elif node.label is Op.UNION:
            left, right = node.children
            if phase == 0:
                theta[v] = start if start >= 0 else new()
                stack += [(v, 1, start), (left, 0, -1)]
            elif phase == 1:
                stack += [(v, 2, start), (right, 0, -1)]
            else:
                f = new()
                t = theta[v]
                edges += [(t, theta[left], EPS_FWD), (t, theta[right], EPS_FWD),
                          (phi[left], f, EPS_FWD), (phi[right], f, EPS_FWD)]
                phi[v] = f
        else:
            (s,) = node.children
            if phase == 0:
                theta[v] = start if start >= 0 else new()
                stack += [(v, 1, start), (s, 0, -1)]
            else:
                f = new()
                t = theta[v]
                edges += [(t, theta[s], EPS_FWD), (t, f, EPS_FWD),
                          (phi[s], f, EPS_FWD), (phi[s], theta[s], EPS_BACK)]
                phi[v] = f
    edges.sort()
    return count, edges


def check_partition(tree: ParseTree, part: ClusterPartition, bound_const: int = 4) -> None:
    nodes = tree.nodes
    m = len(nodes)
    seen = [0] * m
    for cid, members in enumerate(part.clusters):
        assert 1 <= len(members) <= part.x
        for v in members:
            seen[v] += 1
        # connected: every member but the root has its parent inside
        roots = [v for v in members if nodes[v].parent is None or part.cluster_of[nodes[v].parent] != cid]
        assert len(roots) == 1, f"cluster {cid} is not connected"
    assert all(s == 1 for s in seen), "clusters must partition the tree"
    assert len(part) <= max(1, bound_const * m / part.x)


def check_decomposition(deco: Decomposition) -> None:
    """Structural checks: sizes, overlap, coverage, and chunk layout."""
    x = deco.partition.x
    nfa = deco.nfa
    covered: dict[int, int] = {}
    for a in deco.subautomata:
        assert a.size <= 6 * x
        assert len(a.children) <= x + 1  # < 2x whenever x >= 2
        assert a.node_ids == sorted(a.node_ids)
        thetas = [t for _, t, _ in a.children]
        assert thetas == sorted(thetas)
        for c, t, f in a.children:
            child = deco.subautomata[c]
            assert f == t + 1, "child start/accept not consecutive"
            assert child.start == a.node_ids[t] and child.accept == a.node_ids[f]
            assert child.parent == a.id
        for g in a.node_ids:
            covered[g] = covered.get(g, 0) + 1
        # chunks: disjoint, and cover everything except start and child accepts
        union = 0
        for ch in a.chunks:
            assert union & ch == 0
            union |= ch
        excluded = 1 | sum(1 << f for _, _, f in a.children)
        assert union == ((1 << a.size) - 1) & ~excluded
        assert len(a.chunks) == len(a.children) + 1
    assert set(covered) == set(range(nfa.n_nodes))
    shared = set()
    for a in deco.subautomata:
        for _, t, f in a.children:
            shared.add(a.node_ids[t])
            shared.add(a.node_ids[f])
    for g, cnt in covered.items():
        if cnt > 1:
            assert g in shared, f"node {g} overlaps outside child boundaries"
