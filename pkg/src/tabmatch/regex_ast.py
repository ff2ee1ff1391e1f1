"""Regular expression parser producing binary parse trees.

Supported syntax: literal characters, concatenation by juxtaposition,
``|`` (union), postfix ``*`` (star), ``(`` ``)`` for grouping, and ``\\``
to escape any of the metacharacters ``( ) | * \\``.  Star binds tightest,
then concatenation, then union; both binary operators associate to the left.

All traversals are iterative so patterns with tens of thousands of
characters do not hit the interpreter's recursion limit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

METACHARS = frozenset("()|*\\")


class Op(enum.Enum):
    CAT = "."
    UNION = "|"
    STAR = "*"
    CHAR = "c"


class PatternSyntaxError(SyntaxError):
    """Raised for malformed patterns; ``offset`` is the 0-based position."""

    def __init__(self, msg: str, offset: int, pattern: str = ""):
        super().__init__(f"{msg} at offset {offset}")
        self.msg = msg
        self.offset = offset
        self.pattern = pattern


@dataclass(frozen=True)
class ParseNode:
    label: Op
    char: Optional[str] = None
    children: tuple[int, ...] = ()
    parent: Optional[int] = None


@dataclass(frozen=True)
class ParseTree:
    nodes: tuple[ParseNode, ...]
    root: int

    def __len__(self) -> int:
        return len(self.nodes)

    def postorder(self) -> Iterator[int]:
        """Yield node indices children-first, left to right."""
        stack = [(self.root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                yield v
                continue
            stack.append((v, True))
            for c in reversed(self.nodes[v].children):
                stack.append((c, False))

    def preorder(self) -> Iterator[int]:
        stack = [self.root]
        while stack:
            v = stack.pop()
            yield v
            stack.extend(reversed(self.nodes[v].children))

    def leaves(self) -> list[int]:
        return [v for v in self.preorder() if self.nodes[v].label is Op.CHAR]

    def depth(self) -> int:
        best = 0
        stack = [(self.root, 0)]
        while stack:
            v, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in self.nodes[v].children)
        return best


def structurally_equal(a: ParseTree, b: ParseTree) -> bool:
    """Compare two trees by shape and labels, ignoring node numbering."""
    stack = [(a.root, b.root)]
    while stack:
        u, v = stack.pop()
        nu, nv = a.nodes[u], b.nodes[v]
        if nu.label is not nv.label or nu.char != nv.char:
            return False
        if len(nu.children) != len(nv.children):
            return False
        stack.extend(zip(nu.children, nv.children))
    return True


class _Builder:
    def __init__(self) -> None:
        self.labels: list[Op] = []
        self.chars: list[Optional[str]] = []
        self.kids: list[tuple[int, ...]] = []

    def add(self, label: Op, char: Optional[str] = None, kids: tuple[int, ...] = ()) -> int:
        self.labels.append(label)
        self.chars.append(char)
        self.kids.append(kids)
        return len(self.labels) - 1

    def finish(self, root: int) -> ParseTree:
        parent: list[Optional[int]] = [None] * len(self.labels)
        for v, ks in enumerate(self.kids):
            for c in ks:
                parent[c] = v
        nodes = tuple(
            ParseNode(lab, ch, ks, par)
            for lab, ch, ks, par in zip(self.labels, self.chars, self.kids, parent)
        )
        return ParseTree(nodes, root)


class _Frame:
    """Parser state for one parenthesis level."""

    __slots__ = ("union", "cat", "atom", "open_at")

    def __init__(self, open_at: int) -> None:
        self.union: Optional[int] = None
        self.cat: Optional[int] = None
        self.atom: Optional[int] = None
        self.open_at = open_at


def parse(pattern: str) -> ParseTree:
    """Parse ``pattern`` into its binary parse tree.

    Raises:
        PatternSyntaxError: on an empty pattern or branch, unbalanced
            parentheses, a star with no operand, or a trailing backslash.
    """
    b = _Builder()
    stack = [_Frame(-1)]

    def flush_atom(f: _Frame) -> None:
        if f.atom is not None:
            f.cat = f.atom if f.cat is None else b.add(Op.CAT, kids=(f.cat, f.atom))
            f.atom = None

    def close_branch(f: _Frame, pos: int) -> None:
        flush_atom(f)
        if f.cat is None:
            raise PatternSyntaxError("empty alternation branch", pos, pattern)
        f.union = f.cat if f.union is None else b.add(Op.UNION, kids=(f.union, f.cat))
        f.cat = None

    i = 0
    n = len(pattern)
    while i < n:
        ch = pattern[i]
        f = stack[-1]
        if ch == "\\":
            if i + 1 >= n:
                raise PatternSyntaxError("dangling escape", i, pattern)
            flush_atom(f)
            f.atom = b.add(Op.CHAR, pattern[i + 1])
            i += 2
            continue
        if ch == "(":
            flush_atom(f)
            stack.append(_Frame(i))
        elif ch == ")":
            if len(stack) == 1:
                raise PatternSyntaxError("unbalanced ')'", i, pattern)
            close_branch(f, i)
            stack.pop()
            parent = stack[-1]
            flush_atom(parent)
            parent.atom = f.union
        elif ch == "|":
            close_branch(f, i)
        elif ch == "*":
            if f.atom is None:
                raise PatternSyntaxError("star with no operand", i, pattern)
            f.atom = b.add(Op.STAR, kids=(f.atom,))
        else:
            flush_atom(f)
            f.atom = b.add(Op.CHAR, ch)
        i += 1

    if len(stack) > 1:
        raise PatternSyntaxError("unbalanced '('", stack[-1].open_at, pattern)
    close_branch(stack[0], n)
    return b.finish(stack[0].union)


def escape(ch: str) -> str:
    return "\\" + ch if ch in METACHARS else ch


def to_string(tree: ParseTree) -> str:
    """Serialize ``tree`` fully parenthesized; ``parse`` inverts it."""
    out: list[str] = []
    # items are either literal strings or node indices still to expand
    stack: list[object] = [tree.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node = tree.nodes[item]
        if node.label is Op.CHAR:
            out.append(escape(node.char))
        elif node.label is Op.STAR:
            stack.extend([")*", node.children[0], "("])
        else:
            mid = ")(" if node.label is Op.CAT else ")|("
            left, right = node.children
            stack.extend([")", right, mid, left, "("])
    return "".join(out)


def alphabet(tree: ParseTree) -> set[str]:
    return {n.char for n in tree.nodes if n.label is Op.CHAR}
