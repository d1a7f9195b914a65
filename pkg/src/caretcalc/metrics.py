"""Word-length machinery for consecutive generating sets {x_0, ..., x_n}.

The exact word length of a reduced pair g splits as

    length(g, n) = l_infinity(g) + 2 * penalty_weight(g, n)

where ``l_infinity`` counts carets off the right spine in both trees and the
penalty weight is the minimum, over all valid penalty trees, of the number
of vertices that sit at depth >= 2 and still have a descendant leaf at
distance >= n - 1.

A penalty tree is an oriented tree rooted at the phantom vertex 0 (the
space left of either tree) whose edges follow the caret adjacency order,
which contains every penalty caret, and whose leaves are all penalty
carets (the bare root being the one exception).  Carets that are not
penalty carets may appear as interior routing vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    InvalidPenaltyTreeError,
    SearchCapExceededError,
    UnreducedDiagramError,
)
from .tree_core import INTERIOR, RIGHT, TreePairDiagram, TreeSurvey

DEFAULT_PENALTY_CAP = 10_000_000

TYPE_N_NEGATIVE = "TypeN-negative"
TYPE_N_POSITIVE = "TypeN-positive"
RIGHT_IN_BOTH = "Right-in-both-not-final"


def _require_reduced(pair: TreePairDiagram, op: str) -> None:
    if not pair.reduced:
        raise UnreducedDiagramError(f"{op} requires a reduced pair")


def l_infinity(pair: TreePairDiagram) -> int:
    """Carets that are not right carets, summed over both trees.

    The top caret counts as a right caret.  This is the word length with
    respect to the full infinite generating set.
    """
    _require_reduced(pair, "l_infinity")
    total = 0
    for tree in (pair.negative, pair.positive):
        sv = tree.survey()
        total += sum(1 for k in sv.kind[1:] if k != RIGHT)
    return total


@dataclass(frozen=True)
class AdjacencyRelation:
    """Caret order: (p, q) present when the space of caret p touches the
    space of caret q along a shared edge in either tree.  Vertex 0 stands
    for the space left of the trees and precedes every left-boundary caret.
    """

    carets: int
    edges: frozenset[tuple[int, int]]

    def predecessors(self, q: int) -> list[int]:
        return sorted(p for p, qq in self.edges if qq == q)

    def successors(self, p: int) -> list[int]:
        return sorted(q for pp, q in self.edges if pp == p)


def _tree_edges(sv: TreeSurvey, edges: set[tuple[int, int]]) -> None:
    for p in range(1, sv.carets + 1):
        # the spaces below p's right edge: p comes before every caret on
        # the left spine of its right subtree
        q = sv.right_child[p]
        while q is not None:
            edges.add((p, q))
            q = sv.left_child[q]
        # the spaces above p's left edge: every caret on the right spine
        # of p's left subtree comes before p
        s = sv.left_child[p]
        while s is not None:
            edges.add((s, p))
            s = sv.right_child[s]
        if sv.on_left_spine[p]:
            edges.add((0, p))


def adjacency(pair: TreePairDiagram) -> AdjacencyRelation:
    edges: set[tuple[int, int]] = set()
    _tree_edges(pair.negative.survey(), edges)
    _tree_edges(pair.positive.survey(), edges)
    return AdjacencyRelation(carets=pair.carets, edges=frozenset(edges))


@dataclass(frozen=True)
class PenaltyCaretSet:
    """Caret indexes flagged as penalty carets, with the rule that fired."""

    flags: tuple[tuple[int, str], ...]

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.flags)

    def reasons(self, index: int) -> tuple[str, ...]:
        return tuple(r for i, r in self.flags if i == index)


def penalty_carets(pair: TreePairDiagram) -> PenaltyCaretSet:
    """Flag carets that force detours for consecutive generating sets.

    A caret p is flagged when the next caret p + 1 is interior and hangs
    inside p's right subtree (in either tree), or when p is a right caret
    in both trees and is not the final caret.
    """
    n = pair.carets
    sv_neg = pair.negative.survey()
    sv_pos = pair.positive.survey()
    flags: list[tuple[int, str]] = []
    for p in range(1, n + 1):
        if sv_neg.right_child[p] is not None and sv_neg.kind[p + 1] == INTERIOR:
            flags.append((p, TYPE_N_NEGATIVE))
        if sv_pos.right_child[p] is not None and sv_pos.kind[p + 1] == INTERIOR:
            flags.append((p, TYPE_N_POSITIVE))
        if p != n and sv_neg.kind[p] == RIGHT and sv_pos.kind[p] == RIGHT:
            flags.append((p, RIGHT_IN_BOTH))
    return PenaltyCaretSet(flags=tuple(flags))


@dataclass(frozen=True)
class PenaltyTree:
    """Oriented tree rooted at vertex 0, stored as (child, parent) edges.

    ``adjacency`` and ``required`` carry the context the tree was built
    against, so that its construction rules can be revalidated later.
    """

    parents: tuple[tuple[int, int], ...]
    adjacency: Optional[AdjacencyRelation] = None
    required: Optional[frozenset] = None

    @property
    def parent_map(self) -> dict[int, int]:
        return dict(self.parents)

    @property
    def vertices(self) -> frozenset:
        return frozenset({0} | {c for c, _ in self.parents})

    @property
    def leaves(self) -> frozenset:
        used = {p for _, p in self.parents}
        return frozenset(v for v in self.vertices if v not in used)

    def depths(self) -> dict[int, int]:
        pm = self.parent_map
        depth = {0: 0}
        for v in sorted(pm):
            depth[v] = depth[pm[v]] + 1
        return depth

    def heights(self) -> dict[int, int]:
        pm = self.parent_map
        height = {v: 0 for v in self.vertices}
        for v in sorted(pm, reverse=True):
            height[pm[v]] = max(height[pm[v]], height[v] + 1)
        return height


def _validate_penalty_tree(tree: PenaltyTree) -> None:
    pm = tree.parent_map
    if len(pm) != len(tree.parents):
        raise InvalidPenaltyTreeError("a vertex appears with two parents")
    if 0 in pm:
        raise InvalidPenaltyTreeError("vertex 0 is the root and has no parent")
    vertices = tree.vertices
    for child, parent in pm.items():
        if child < 1:
            raise InvalidPenaltyTreeError(f"bad vertex index {child}")
        if parent not in vertices:
            raise InvalidPenaltyTreeError(f"parent {parent} of {child} not in tree")
        if parent >= child:
            raise InvalidPenaltyTreeError(
                f"edge {parent} -> {child} does not increase the caret index"
            )
    if tree.adjacency is not None:
        for child, parent in pm.items():
            if child > tree.adjacency.carets:
                raise InvalidPenaltyTreeError(f"vertex {child} is not a caret")
            if (parent, child) not in tree.adjacency.edges:
                raise InvalidPenaltyTreeError(
                    f"edge {parent} -> {child} not allowed by the caret order"
                )
    if tree.required is not None:
        missing = set(tree.required) - set(vertices)
        if missing:
            raise InvalidPenaltyTreeError(
                f"penalty carets {sorted(missing)} missing from the tree"
            )
        if vertices != {0}:
            for leaf in tree.leaves:
                if leaf not in tree.required:
                    raise InvalidPenaltyTreeError(
                        f"leaf {leaf} is not a penalty caret"
                    )


def penalty_weight_of_tree(tree: PenaltyTree, n: int) -> int:
    """Vertices at depth >= 2 whose subtree still reaches down n - 1 steps."""
    if n < 1:
        raise ValueError(f"generating-set index n must be >= 1, got {n}")
    _validate_penalty_tree(tree)
    depth = tree.depths()
    height = tree.heights()
    return sum(1 for v in depth if depth[v] >= 2 and height[v] >= n - 1)


def penalty_weight(
    pair: TreePairDiagram, n: int, cap: int = DEFAULT_PENALTY_CAP
) -> tuple[int, PenaltyTree]:
    """Exact minimum weight over all penalty trees, with a witness.

    Exhaustive depth-first search over parent assignments in increasing
    caret order, pruned with the best weight found so far (the weight of a
    partial tree never decreases as vertices are added).  The chain
    0 -> 1 -> ... -> max penalty caret is always valid and seeds the bound.
    Raises SearchCapExceededError instead of returning a possibly wrong
    minimum when the cap is hit.
    """
    if n < 1:
        raise ValueError(f"generating-set index n must be >= 1, got {n}")
    _require_reduced(pair, "penalty_weight")
    adj = adjacency(pair)
    pen = penalty_carets(pair)
    required = pen.indices
    if not required:
        return 0, PenaltyTree((), adjacency=adj, required=required)

    top = max(required)
    is_required = bytearray(top + 1)
    for c in required:
        is_required[c] = 1
    preds: list[list[int]] = [[] for _ in range(top + 1)]
    succs: list[list[int]] = [[] for _ in range(top + 1)]
    for p, q in adj.edges:
        if q <= top:
            preds[q].append(p)
            if p >= 1:
                succs[p].append(q)
    for lst in preds:
        lst.sort()

    # A caret only helps as a routing vertex if some chain of allowed
    # edges leads from it to a penalty caret.
    useful = bytearray(top + 1)
    for c in range(top, 0, -1):
        useful[c] = is_required[c] or any(useful[q] for q in succs[c])
    last_child_option = [-1] * (top + 1)
    for c in range(1, top + 1):
        options = [q for q in succs[c] if useful[q]]
        if options:
            last_child_option[c] = max(options)

    included = bytearray(top + 1)
    included[0] = 1
    parent = [-1] * (top + 1)
    depth = [0] * (top + 1)
    height = [0] * (top + 1)
    nchild = [0] * (top + 1)

    chain_parents = tuple((c, c - 1) for c in range(1, top + 1))
    best_weight = sum(1 for v in range(2, top + 1) if top - v >= n - 1)
    best_parents = chain_parents
    if best_weight == 0:
        witness = PenaltyTree(chain_parents, adjacency=adj, required=required)
        return 0, witness

    weight = 0
    states = 0

    class _Done(Exception):
        pass

    def attach(c: int, p: int):
        nonlocal weight
        included[c] = 1
        parent[c] = p
        depth[c] = depth[p] + 1
        height[c] = 0
        nchild[p] += 1
        log: list[tuple[int, int]] = []
        added = 0
        if depth[c] >= 2 and 0 >= n - 1:
            weight += 1
            added += 1
        a, k = p, 1
        while height[a] < k:
            log.append((a, height[a]))
            if depth[a] >= 2 and height[a] < n - 1 <= k:
                weight += 1
                added += 1
            height[a] = k
            if a == 0:
                break
            a = parent[a]
            k += 1
        return c, p, log, added

    def detach(token) -> None:
        nonlocal weight
        c, p, log, added = token
        for a, old in reversed(log):
            height[a] = old
        weight -= added
        nchild[p] -= 1
        included[c] = 0
        parent[c] = -1

    def search(c: int) -> None:
        nonlocal best_weight, best_parents, states
        if weight >= best_weight:
            return
        for v in range(1, c):
            if included[v] and nchild[v] == 0 and not is_required[v]:
                if last_child_option[v] < c:
                    return
        if c > top:
            best_weight = weight
            best_parents = tuple(
                (v, parent[v]) for v in range(1, top + 1) if included[v]
            )
            if best_weight == 0:
                raise _Done
            return
        states += 1
        if states > cap:
            raise SearchCapExceededError(
                f"penalty search exceeded {cap} states", states
            )
        if not is_required[c]:
            search(c + 1)
            if not useful[c]:
                return
        candidates = [p for p in preds[c] if included[p]]
        if not candidates:
            return
        candidates.sort(key=lambda p: depth[p])
        for p in candidates:
            token = attach(c, p)
            search(c + 1)
            detach(token)

    try:
        search(1)
    except _Done:
        pass
    witness = PenaltyTree(best_parents, adjacency=adj, required=required)
    return best_weight, witness


@dataclass(frozen=True)
class LengthReport:
    """Exact length of one element for the generating set {x_0, ..., x_n}."""

    encoding: str
    n: int
    l_infinity: int
    penalty_weight: int
    length: int
    witness: PenaltyTree = field(compare=False)

    def serialize(self) -> str:
        if self.witness.parents:
            pairs = ",".join(f"{p}>{c}" for c, p in self.witness.parents)
        else:
            pairs = "-"
        return (
            f"{self.encoding}\tn={self.n}\tl_inf={self.l_infinity}"
            f"\tpenalty={self.penalty_weight}\tlength={self.length}"
            f"\twitness={pairs}"
        )


def length_consecutive(
    pair: TreePairDiagram, n: int, cap: int = DEFAULT_PENALTY_CAP
) -> LengthReport:
    """Exact word length for the consecutive generating set {x_0, ..., x_n}."""
    _require_reduced(pair, "length_consecutive")
    flat = l_infinity(pair)
    weight, witness = penalty_weight(pair, n, cap=cap)
    return LengthReport(
        encoding=pair.serialize(),
        n=n,
        l_infinity=flat,
        penalty_weight=weight,
        length=flat + 2 * weight,
        witness=witness,
    )
