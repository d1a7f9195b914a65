"""Independent oracles and random generators shared across the tests.

Everything here is deliberately written against the *meaning* of the
operations, not their implementations: adjacency from leaf intervals
instead of child-pointer walks, penalty-tree weights from explicit path
distances, reduction by trying every removal order.  The tests compare
the package against these.
"""

import random

from caretcalc import TreePairDiagram, evaluate_word
from caretcalc.tree_core import Node


def random_letters(rng: random.Random, max_index=3, max_len=10):
    return [
        (rng.randrange(0, max_index + 1), rng.choice((1, -1)))
        for _ in range(rng.randrange(0, max_len + 1))
    ]


def random_element(rng: random.Random, max_index=3, max_len=10) -> TreePairDiagram:
    return evaluate_word(random_letters(rng, max_index, max_len))


def random_node(rng: random.Random, carets: int) -> Node:
    if carets == 0:
        return None
    left = rng.randrange(0, carets)
    return (random_node(rng, left), random_node(rng, carets - 1 - left))


# ---------------------------------------------------------------------------
# adjacency oracle: leaf intervals
#
# Caret p covers the leaf interval [lo_p, hi_p] and splits it at mid_p
# (the boundary between its left and right subtrees).  p comes directly
# before q in one tree exactly when q sits inside p with lo_q == mid_p,
# or p sits inside q with hi_p == mid_q; vertex 0 precedes any caret
# whose interval starts at leaf 0.


def _intervals(node: Node):
    """infix caret index -> (lo, mid, hi) in leaf coordinates."""
    table = {}
    counter = [0]  # next caret index
    def walk(nd, lo):
        # returns number of leaves under nd
        if nd is None:
            return 1
        left, right = nd
        left_leaves = walk(left, lo)
        counter[0] += 1
        index = counter[0]
        right_leaves = walk(right, lo + left_leaves)
        table[index] = (lo, lo + left_leaves, lo + left_leaves + right_leaves)
        return left_leaves + right_leaves
    walk(node, 0)
    return table


def interval_adjacency(pair: TreePairDiagram) -> frozenset:
    edges = set()
    for tree in (pair.negative, pair.positive):
        iv = _intervals(tree.root)
        for p, (lo_p, mid_p, hi_p) in iv.items():
            if lo_p == 0:
                edges.add((0, p))
            for q, (lo_q, mid_q, hi_q) in iv.items():
                if q == p:
                    continue
                if lo_q == mid_p and hi_q <= hi_p:
                    edges.add((p, q))
                if hi_q == mid_p and lo_q >= lo_p:
                    edges.add((q, p))
    return frozenset(edges)


# ---------------------------------------------------------------------------
# penalty-tree weight oracle: explicit path distances


def naive_tree_weight(parents, n: int) -> int:
    parent = dict(parents)
    vertices = [0] + sorted(parent)
    children = {}
    for c, p in parent.items():
        children.setdefault(p, []).append(c)
    leaves = [v for v in vertices if v not in children]

    def chain(v):
        out = [v]
        while out[-1] != 0:
            out.append(parent[out[-1]])
        return out

    weighted = 0
    for v in vertices:
        if len(chain(v)) - 1 < 2:
            continue
        for leaf in leaves:
            up = chain(leaf)
            if v in up and up.index(v) >= n - 1:
                weighted += 1
                break
    return weighted


def brute_force_min_weight(pair: TreePairDiagram, n: int):
    """Minimum penalty weight by enumerating every valid tree outright."""
    from caretcalc import penalty_carets

    edges = interval_adjacency(pair)
    required = penalty_carets(pair).indices
    if not required:
        return 0
    top = max(required)
    preds = {c: sorted(p for p, q in edges if q == c) for c in range(1, top + 1)}
    best = [None]
    parent = {}

    def complete_ok():
        children = set(parent.values())
        return all(v in children or v in required for v in parent)

    def rec(c):
        if c > top:
            if complete_ok():
                w = naive_tree_weight(tuple(parent.items()), n)
                if best[0] is None or w < best[0]:
                    best[0] = w
            return
        if c not in required:
            rec(c + 1)
        for p in preds[c]:
            if p == 0 or p in parent:
                parent[c] = p
                rec(c + 1)
                del parent[c]

    rec(1)
    return best[0]


# ---------------------------------------------------------------------------
# reduction oracle: every removal order gives the same answer


def reductions_all_orders(pair: TreePairDiagram, limit=2000) -> set:
    """Serializations of fully reduced diagrams over all removal orders."""
    from caretcalc.tree_core import (
        CaretTree,
        exposed_leaf_starts,
        remove_exposed_at,
    )

    results = set()
    budget = [limit]

    def step(neg, pos):
        if budget[0] <= 0:
            raise AssertionError("all-orders reduction budget exhausted")
        budget[0] -= 1
        common = exposed_leaf_starts(neg) & exposed_leaf_starts(pos)
        if not common:
            results.add(
                TreePairDiagram(CaretTree(neg), CaretTree(pos), True).serialize()
            )
            return
        for leaf in common:
            step(remove_exposed_at(neg, leaf), remove_exposed_at(pos, leaf))

    step(pair.negative.root, pair.positive.root)
    return results
