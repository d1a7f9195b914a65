import random

import pytest

from caretcalc.errors import MalformedPairError, UnreducedDiagramError
from caretcalc.tree_core import (
    INTERIOR,
    LEFT,
    RIGHT,
    CaretTree,
    TreePairDiagram,
    add_caret_at_leaf,
    canonical_encode,
    count_carets,
    count_leaves,
    exposed_leaf_starts,
    infix_numbering,
    is_reduced,
    reduce,
    remove_exposed_at,
    serialize_node,
    spine,
)
from helpers import random_node, reductions_all_orders, random_element


def test_serialize_basics():
    assert serialize_node(None) == "."
    assert serialize_node((None, None)) == "(..)"
    assert serialize_node(((None, None), None)) == "((..).)"
    assert serialize_node((None, (None, None))) == "(.(..))"


def test_counts():
    assert count_carets(None) == 0
    assert count_leaves(None) == 1
    for n in range(8):
        s = spine(n)
        assert count_carets(s) == n
        assert count_leaves(s) == n + 1


def test_spine_shape():
    assert spine(0) is None
    assert serialize_node(spine(3)) == "(.(.(..)))"


def test_add_caret_at_leaf():
    # growing the rightmost leaf of a spine extends the spine
    assert add_caret_at_leaf(spine(2), 2) == spine(3)
    # growing leaf 0 hangs the new caret bottom-left, leaf 1 bottom-right
    assert serialize_node(add_caret_at_leaf(spine(1), 0)) == "((..).)"
    assert serialize_node(add_caret_at_leaf(spine(1), 1)) == "(.(..))"


def test_exposed_leaf_starts():
    assert exposed_leaf_starts(None) == set()
    assert exposed_leaf_starts((None, None)) == {0}
    # spine of 3: only the deepest caret is exposed, at leaves (2,3)
    assert exposed_leaf_starts(spine(3)) == {2}
    two_hats = ((None, None), (None, None))
    assert exposed_leaf_starts(two_hats) == {0, 2}


def test_remove_exposed_at():
    two_hats = ((None, None), (None, None))
    assert remove_exposed_at(two_hats, 0) == (None, (None, None))
    assert remove_exposed_at(two_hats, 2) == ((None, None), None)
    with pytest.raises(ValueError):
        remove_exposed_at(two_hats, 1)
    with pytest.raises(ValueError):
        remove_exposed_at(None, 0)


def test_remove_inverts_add():
    rng = random.Random(11)
    for _ in range(200):
        node = random_node(rng, rng.randrange(1, 12))
        exposed = sorted(exposed_leaf_starts(node))
        leaf = rng.choice(exposed)
        shrunk = remove_exposed_at(node, leaf)
        assert add_caret_at_leaf(shrunk, leaf) == node


def test_infix_numbering_right_spine():
    info = infix_numbering(CaretTree(spine(3)))
    assert [c.kind for c in info] == [RIGHT, RIGHT, RIGHT]
    assert [c.level for c in info] == [1, 2, 3]


def test_infix_numbering_left_comb():
    # left comb: every caret on the left boundary; the top one counts Right
    comb = None
    for _ in range(3):
        comb = (comb, None)
    info = infix_numbering(CaretTree(comb))
    assert [c.kind for c in info] == [LEFT, LEFT, RIGHT]
    assert [c.level for c in info] == [3, 2, 1]


def test_infix_numbering_mixed():
    # (( . (..) ) .) : caret 1 at the top-left, caret 2 hanging interior
    tree = CaretTree(((None, (None, None)), None))
    info = infix_numbering(tree)
    assert [(c.index, c.level, c.kind) for c in info] == [
        (1, 2, LEFT),
        (2, 3, INTERIOR),
        (3, 1, RIGHT),
    ]


def test_survey_tables_consistent():
    rng = random.Random(23)
    for _ in range(100):
        tree = CaretTree(random_node(rng, rng.randrange(1, 15)))
        sv = tree.survey()
        for idx in range(1, sv.carets + 1):
            li, ri = sv.left_child[idx], sv.right_child[idx]
            if li is not None:
                assert sv.parent[li] == idx
                assert li < idx
                assert sv.level[li] == sv.level[idx] + 1
            if ri is not None:
                assert sv.parent[ri] == idx
                assert ri > idx
                assert sv.level[ri] == sv.level[idx] + 1
            assert sv.exposed[idx] == (li is None and ri is None)
        roots = [i for i in range(1, sv.carets + 1) if sv.parent[i] is None]
        assert len(roots) == 1
        assert sv.level[roots[0]] == 1
        # number of Right carets in a right spine of length n is n
        assert sum(1 for k in sv.kind[1:] if k == RIGHT) >= 1


def test_pair_construction_and_encoding():
    ident = TreePairDiagram.from_nodes(None, None)
    assert ident.is_identity and ident.reduced
    assert canonical_encode(ident) == ".|."
    with pytest.raises(MalformedPairError):
        TreePairDiagram.from_nodes((None, None), None)


def test_canonical_encode_requires_reduced():
    unreduced = TreePairDiagram.from_nodes((None, None), (None, None))
    assert not unreduced.reduced
    with pytest.raises(UnreducedDiagramError):
        canonical_encode(unreduced)
    assert canonical_encode(reduce(unreduced)) == ".|."


def test_reduce_only_cancels_matching_leaves():
    # same caret counts, exposures at different leaf numbers: nothing cancels
    pair = TreePairDiagram.from_nodes(
        ((None, None), None), (None, (None, None))
    )
    assert is_reduced(pair)
    assert reduce(pair).serialize() == pair.serialize()


def test_reduce_confluent_all_orders():
    rng = random.Random(5)
    for _ in range(200):
        # random unreduced-ish pair with equal caret counts
        n = rng.randrange(1, 8)
        pair = TreePairDiagram.from_nodes(random_node(rng, n), random_node(rng, n))
        outcomes = reductions_all_orders(pair)
        assert len(outcomes) == 1
        assert outcomes == {reduce(pair).serialize()}


def test_reduce_idempotent_on_elements():
    rng = random.Random(6)
    for _ in range(100):
        g = random_element(rng)
        assert reduce(g).serialize() == g.serialize()
