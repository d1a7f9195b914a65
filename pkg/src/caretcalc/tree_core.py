"""Finite rooted binary trees and tree pair diagrams.

A tree is stored as nested tuples: a caret is a pair ``(left, right)`` and a
missing child is ``None``.  The empty tree (a single exposed leaf) is ``None``.
Carets are numbered 1..n in infix order (left subtree, caret, right subtree)
and leaves 0..n from left to right.  The caret at the top has level 1.

Serialized form of a tree::

    tree := "." | "(" tree tree ")"

and a pair is ``negative "|" positive``.  Group elements are represented by
pairs of trees with equal caret counts; a pair is reduced when no caret is
exposed (two leaf children) in both trees over the same pair of leaf numbers.

Convention: a caret whose side lies on the left (right) boundary of its tree
is a left (right) caret, everything else is interior.  The top caret sits on
both boundaries; this module classifies it as a right caret throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import MalformedPairError, UnreducedDiagramError

# A tree node: None for a leaf, or a (left, right) tuple for a caret.
Node = Optional[tuple]

LEFT = "left"
RIGHT = "right"
INTERIOR = "interior"


def count_carets(node: Node) -> int:
    if node is None:
        return 0
    total = 0
    stack = [node]
    while stack:
        left, right = stack.pop()
        total += 1
        if left is not None:
            stack.append(left)
        if right is not None:
            stack.append(right)
    return total


def count_leaves(node: Node) -> int:
    return count_carets(node) + 1


def serialize_node(node: Node) -> str:
    if node is None:
        return "."
    parts: list[str] = []
    stack: list[object] = [node]
    while stack:
        item = stack.pop()
        if item is None:
            parts.append(".")
        elif isinstance(item, str):
            parts.append(item)
        else:
            left, right = item
            parts.append("(")
            stack.append(")")
            stack.append(right)
            stack.append(left)
    return "".join(parts)


def spine(n: int) -> Node:
    """Right spine with n carets (the all-right 'vine')."""
    node: Node = None
    for _ in range(n):
        node = (None, node)
    return node


def attach_at_leaf(node: Node, leaf: int, sub: Node) -> Node:
    """Replace leaf number ``leaf`` with the subtree ``sub``."""
    if node is None:
        if leaf != 0:
            raise IndexError(f"leaf {leaf} out of range")
        return sub
    left, right = node
    nl = count_leaves(left)
    if leaf < nl:
        return (attach_at_leaf(left, leaf, sub), right)
    return (left, attach_at_leaf(right, leaf - nl, sub))


def add_caret_at_leaf(node: Node, leaf: int) -> Node:
    return attach_at_leaf(node, leaf, (None, None))


def exposed_leaf_starts(node: Node) -> set[int]:
    """Left-leaf numbers of exposed carets (both children leaves)."""
    out: set[int] = set()

    def scan(nd: Node, offset: int) -> int:
        if nd is None:
            return 1
        left, right = nd
        nl = scan(left, offset)
        nr = scan(right, offset + nl)
        if left is None and right is None:
            out.add(offset)
        return nl + nr

    scan(node, 0)
    return out


def remove_exposed_at(node: Node, leaf: int) -> Node:
    """Collapse the exposed caret whose leaves are (leaf, leaf + 1)."""
    if node is None:
        raise ValueError("no caret to remove in an empty tree")
    left, right = node
    if left is None and right is None:
        if leaf != 0:
            raise ValueError(f"exposed caret does not start at leaf {leaf}")
        return None
    nl = count_leaves(left)
    # Both leaves of one exposed caret sit on the same side of this node;
    # a caret spanning the split could only be this node itself, which the
    # base case above already handled.
    if leaf + 1 < nl:
        return (remove_exposed_at(left, leaf), right)
    if leaf >= nl:
        return (left, remove_exposed_at(right, leaf - nl))
    raise ValueError(f"no exposed caret at leaves ({leaf}, {leaf + 1})")


@dataclass(frozen=True)
class CaretInfo:
    """Per-caret facts from one infix numbering pass."""

    index: int
    level: int
    kind: str  # one of LEFT / RIGHT / INTERIOR
    left_exposed: bool
    right_exposed: bool


class TreeSurvey:
    """Structural tables for one tree, indexed by infix caret number.

    Index 0 is unused so that ``left_child[p]`` works directly with caret
    numbers 1..n.  ``on_left_spine`` / ``on_right_spine`` include the top
    caret on both spines; ``kind`` resolves the tie to RIGHT.
    """

    __slots__ = (
        "carets",
        "left_child",
        "right_child",
        "parent",
        "level",
        "kind",
        "on_left_spine",
        "on_right_spine",
        "exposed",
        "_next",
    )

    def __init__(self, root: Node):
        n = count_carets(root)
        self.carets = n
        self.left_child: list[Optional[int]] = [None] * (n + 1)
        self.right_child: list[Optional[int]] = [None] * (n + 1)
        self.parent: list[Optional[int]] = [None] * (n + 1)
        self.level = [0] * (n + 1)
        self.kind = [""] * (n + 1)
        self.on_left_spine = [False] * (n + 1)
        self.on_right_spine = [False] * (n + 1)
        self.exposed = [False] * (n + 1)
        self._next = 1
        if root is not None:
            self._walk(root, 1, True, True)
        del self._next

    def _walk(self, node: tuple, level: int, on_left: bool, on_right: bool) -> int:
        left, right = node
        li = self._walk(left, level + 1, on_left, False) if left is not None else None
        idx = self._next
        self._next += 1
        ri = self._walk(right, level + 1, False, on_right) if right is not None else None
        self.left_child[idx] = li
        self.right_child[idx] = ri
        if li is not None:
            self.parent[li] = idx
        if ri is not None:
            self.parent[ri] = idx
        self.level[idx] = level
        self.on_left_spine[idx] = on_left
        self.on_right_spine[idx] = on_right
        if on_right or level == 1:
            self.kind[idx] = RIGHT
        elif on_left:
            self.kind[idx] = LEFT
        else:
            self.kind[idx] = INTERIOR
        self.exposed[idx] = left is None and right is None
        return idx


@dataclass(frozen=True)
class CaretTree:
    """Immutable wrapper around a tree node."""

    root: Node

    @property
    def carets(self) -> int:
        return count_carets(self.root)

    @property
    def leaves(self) -> int:
        return count_carets(self.root) + 1

    @property
    def is_empty(self) -> bool:
        return self.root is None

    def serialize(self) -> str:
        return serialize_node(self.root)

    def survey(self) -> TreeSurvey:
        return TreeSurvey(self.root)


def infix_numbering(tree: CaretTree) -> list[CaretInfo]:
    """CaretInfo for carets 1..n in infix order; empty tree gives []."""
    sv = tree.survey()
    out = []
    for idx in range(1, sv.carets + 1):
        left_exposed = sv.left_child[idx] is None
        right_exposed = sv.right_child[idx] is None
        out.append(
            CaretInfo(
                index=idx,
                level=sv.level[idx],
                kind=sv.kind[idx],
                left_exposed=left_exposed,
                right_exposed=right_exposed,
            )
        )
    return out


@dataclass(frozen=True)
class TreePairDiagram:
    """A pair (negative, positive) of trees with equal caret counts.

    The ``reduced`` flag is trusted by internal callers that construct
    already-reduced pairs; use :meth:`of` for external input.
    """

    negative: CaretTree
    positive: CaretTree
    reduced: bool

    @classmethod
    def of(cls, negative: CaretTree, positive: CaretTree) -> "TreePairDiagram":
        if negative.carets != positive.carets:
            raise MalformedPairError(
                f"caret counts differ: negative has {negative.carets}, "
                f"positive has {positive.carets}"
            )
        flag = not _common_exposed(negative.root, positive.root)
        return cls(negative, positive, flag)

    @classmethod
    def from_nodes(cls, negative: Node, positive: Node) -> "TreePairDiagram":
        return cls.of(CaretTree(negative), CaretTree(positive))

    @property
    def carets(self) -> int:
        return self.negative.carets

    @property
    def is_identity(self) -> bool:
        return self.negative.root is None and self.positive.root is None

    def serialize(self) -> str:
        return self.negative.serialize() + "|" + self.positive.serialize()


def _common_exposed(neg: Node, pos: Node) -> list[int]:
    common = exposed_leaf_starts(neg) & exposed_leaf_starts(pos)
    return sorted(common)


def is_reduced(pair: TreePairDiagram) -> bool:
    return not _common_exposed(pair.negative.root, pair.positive.root)


def reduce(pair: TreePairDiagram) -> TreePairDiagram:
    """Cancel matching exposed carets until none remain.

    Repeatedly removes the lowest-numbered caret that is exposed in both
    trees over the same leaf pair; leaf and caret numbers are recomputed
    from scratch after each removal.  The result is independent of the
    removal order.
    """
    neg = pair.negative.root
    pos = pair.positive.root
    if count_carets(neg) != count_carets(pos):
        raise MalformedPairError(
            f"caret counts differ: negative has {count_carets(neg)}, "
            f"positive has {count_carets(pos)}"
        )
    while True:
        common = _common_exposed(neg, pos)
        if not common:
            break
        leaf = common[0]
        neg = remove_exposed_at(neg, leaf)
        pos = remove_exposed_at(pos, leaf)
    return TreePairDiagram(CaretTree(neg), CaretTree(pos), True)


def canonical_encode(pair: TreePairDiagram) -> str:
    """Serialized reduced pair, usable as a dictionary key."""
    if not pair.reduced:
        raise UnreducedDiagramError(
            "canonical_encode requires a reduced pair; call reduce() first"
        )
    return pair.serialize()


def iter_subtrees(node: Node) -> Iterator[Node]:
    """All caret nodes of a tree, preorder."""
    if node is None:
        return
    stack = [node]
    while stack:
        nd = stack.pop()
        yield nd
        left, right = nd
        if right is not None:
            stack.append(right)
        if left is not None:
            stack.append(left)
