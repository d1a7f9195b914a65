"""Group arithmetic on tree pair diagrams.

The generator with index i has, on its negative side, a right spine of i
carets with one extra caret hanging left at the bottom, and on its positive
side a right spine of i + 2 carets.  For the product g * h we grow both
diagrams until the positive tree of g equals the negative tree of h, then
keep g's negative and h's positive tree and reduce.  With this composition
the defining relations hold, e.g. x0^-1 x1 x0 = x2; the relator tests pin
the orientation, so do not flip either convention independently.

Right multiplication by a single generator only rearranges three adjacent
subtrees along the right spine of the positive tree; apply_generator does
that surgery directly, and multiplying by the generator's diagram must give
the identical result (both routes are kept and tested against each other).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .tree_core import (
    CaretTree,
    Node,
    TreePairDiagram,
    add_caret_at_leaf,
    attach_at_leaf,
    count_leaves,
    reduce,
    spine,
)

Letter = tuple[int, int]  # (generator index, sign in {+1, -1})


@dataclass(frozen=True)
class GeneratorWord:
    """A word in the generators, as a tuple of (index, sign) letters."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for index, sign in self.letters:
            if index < 0:
                raise ValueError(f"generator index must be >= 0, got {index}")
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters)


@dataclass(frozen=True)
class GeneratingSet:
    """Distinct generator indices, sorted ascending; must contain 0."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("generator indices must be distinct")
        if tuple(sorted(self.indices)) != self.indices:
            raise ValueError("generator indices must be sorted ascending")
        if not self.indices or self.indices[0] != 0:
            raise ValueError("a generating set must contain index 0")
        if any(i < 0 for i in self.indices):
            raise ValueError("generator indices must be nonnegative")

    @classmethod
    def of(cls, indices) -> "GeneratingSet":
        return cls(tuple(sorted(set(indices))))

    @property
    def max_index(self) -> int:
        return self.indices[-1]

    @property
    def is_consecutive(self) -> bool:
        return self.indices == tuple(range(len(self.indices)))

    def letters(self) -> tuple[Letter, ...]:
        out: list[Letter] = []
        for i in self.indices:
            out.append((i, 1))
            out.append((i, -1))
        return tuple(out)

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def __iter__(self):
        return iter(self.indices)


def identity() -> TreePairDiagram:
    return TreePairDiagram(CaretTree(None), CaretTree(None), True)


@lru_cache(maxsize=None)
def _generator_nodes(index: int) -> tuple[Node, Node]:
    hang: Node = ((None, None), None)
    negative = _attach_rightmost(spine(index), hang)
    positive = spine(index + 2)
    return negative, positive


def _attach_rightmost(node: Node, sub: Node) -> Node:
    if node is None:
        return sub
    left, right = node
    return (left, _attach_rightmost(right, sub))


def generator_diagram(index: int, sign: int) -> TreePairDiagram:
    """Reduced diagram of the generator x_index or its inverse."""
    if index < 0:
        raise ValueError(f"generator index must be >= 0, got {index}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    negative, positive = _generator_nodes(index)
    if sign == 1:
        return TreePairDiagram(CaretTree(negative), CaretTree(positive), True)
    return TreePairDiagram(CaretTree(positive), CaretTree(negative), True)


def invert(pair: TreePairDiagram) -> TreePairDiagram:
    """Swap the two trees; reduced pairs stay reduced."""
    return TreePairDiagram(pair.positive, pair.negative, pair.reduced)


def _join(a: Node, b: Node) -> Node:
    """Smallest tree containing both arguments as refinements."""
    if a is None:
        return b
    if b is None:
        return a
    return (_join(a[0], b[0]), _join(a[1], b[1]))


def _overhang(base: Node, refined: Node) -> list[tuple[int, Node]]:
    """Subtrees of ``refined`` sticking out below each leaf of ``base``."""
    out: list[tuple[int, Node]] = []

    def go(b: Node, r: Node, offset: int) -> int:
        if b is None:
            if r is not None:
                out.append((offset, r))
            return 1
        nl = go(b[0], r[0], offset)
        nr = go(b[1], r[1], offset + nl)
        return nl + nr

    go(base, refined, 0)
    return out


def _graft(node: Node, extras: list[tuple[int, Node]]) -> Node:
    for leaf, sub in sorted(extras, reverse=True):
        node = attach_at_leaf(node, leaf, sub)
    return node


def multiply(g: TreePairDiagram, h: TreePairDiagram) -> TreePairDiagram:
    """Reduced product g * h via a common refinement of the middle trees."""
    if not g.reduced:
        g = reduce(g)
    if not h.reduced:
        h = reduce(h)
    middle = _join(g.positive.root, h.negative.root)
    new_negative = _graft(g.negative.root, _overhang(g.positive.root, middle))
    new_positive = _graft(h.positive.root, _overhang(h.negative.root, middle))
    return reduce(TreePairDiagram.from_nodes(new_negative, new_positive))


def _spine_split(node: Node) -> list[Node]:
    """Left subtrees hanging off the right spine, top to bottom."""
    out: list[Node] = []
    while node is not None:
        out.append(node[0])
        node = node[1]
    return out


def _spine_build(subtrees: list[Node], rest: Node = None) -> Node:
    node = rest
    for sub in reversed(subtrees):
        node = (sub, node)
    return node


def rearrange_positive(tree: Node, index: int, sign: int) -> Node:
    """Subtree rearrangement of a right multiplication on the positive tree.

    For sign +1 the caret at right-spine position index + 1 must carry a
    caret on its left; its two subtrees and everything below slide one
    notch:  (A ^ B) ^ C  ->  A ^ (B ^ C)  at that position.  Sign -1 is the
    inverse move and needs spine length at least index + 2.  Callers pad
    the tree first; this function raises if the shape is missing.
    """
    parts = _spine_split(tree)
    if sign == 1:
        if len(parts) < index + 1 or parts[index] is None:
            raise ValueError("tree lacks the caret to unhook; pad it first")
        a, b = parts[index]
        rest = _spine_build(parts[index + 1 :])
        return _spine_build(parts[:index], (a, (b, rest)))
    if len(parts) < index + 2:
        raise ValueError("right spine too short; pad the tree first")
    a = parts[index]
    b = parts[index + 1]
    rest = _spine_build(parts[index + 2 :])
    return _spine_build(parts[:index], ((a, b), rest))


def apply_generator(pair: TreePairDiagram, index: int, sign: int) -> TreePairDiagram:
    """Right-multiply by x_index^sign using direct subtree surgery."""
    if index < 0:
        raise ValueError(f"generator index must be >= 0, got {index}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if not pair.reduced:
        pair = reduce(pair)
    neg = pair.negative.root
    pos = pair.positive.root

    # Pad the right spine of the positive tree; the negative tree gains a
    # caret at the same leaf number to keep representing the same element.
    need = index + 1 if sign == 1 else index + 2
    parts = _spine_split(pos)
    while len(parts) < need:
        last = count_leaves(pos) - 1
        pos = add_caret_at_leaf(pos, last)
        neg = add_caret_at_leaf(neg, last)
        parts.append(None)
    if sign == 1 and parts[index] is None:
        at = sum(count_leaves(p) for p in parts[:index])
        pos = add_caret_at_leaf(pos, at)
        neg = add_caret_at_leaf(neg, at)
        parts[index] = (None, None)

    new_pos = rearrange_positive(pos, index, sign)
    return reduce(TreePairDiagram.from_nodes(neg, new_pos))


def evaluate_word(word: GeneratorWord) -> TreePairDiagram:
    """Fold the word left to right starting from the identity."""
    pair = identity()
    for index, sign in word:
        pair = apply_generator(pair, index, sign)
    return pair


def _leaf_exponents(node: Node) -> list[int]:
    """Exponent of each leaf: carets off the right spine whose leftmost
    descendant leaf is that leaf."""
    counts = [0] * count_leaves(node)

    def go(nd: Node, base_leaf: int, on_right_spine: bool) -> int:
        if nd is None:
            return 1
        left, right = nd
        if not on_right_spine:
            counts[base_leaf] += 1
        nl = go(left, base_leaf, False)
        nr = go(right, base_leaf + nl, on_right_spine)
        return nl + nr

    go(node, 0, True)
    return counts


def normal_form(pair: TreePairDiagram) -> GeneratorWord:
    """Unique positive-then-negative word for the element.

    The positive part reads the negative tree's leaf exponents in ascending
    index order; the negative part reads the positive tree's in descending
    order.  Evaluating the word returns the original reduced pair.
    """
    if not pair.reduced:
        pair = reduce(pair)
    letters: list[Letter] = []
    pos_part = _leaf_exponents(pair.negative.root)
    for k, count in enumerate(pos_part):
        letters.extend([(k, 1)] * count)
    neg_part = _leaf_exponents(pair.positive.root)
    for k in range(len(neg_part) - 1, -1, -1):
        letters.extend([(k, -1)] * neg_part[k])
    return GeneratorWord(tuple(letters))
