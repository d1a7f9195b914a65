"""Brute-force word metrics on the Cayley graph, for arbitrary finite
generating subsets {x_i : i in X} with 0 in X.

Everything here is search: balls are enumerated breadth-first with
elements deduplicated by their canonical encodings, so the lengths are
exact and serve as the independent oracle for the closed-form machinery
in :mod:`caretcalc.metrics`.  On top of the ball index sit three probes:

* ``probe_mac`` builds the witness pair whose in-ball distance blows up
  (the obstruction to minimal almost convexity) and checks its three
  defining properties by search;
* ``coarse_isometry_check`` measures the largest observed additive gap
  between two word metrics and compares it against the claimed constant
  when one set is a shifted copy of the other;
* ``probe_subset_monotonicity`` confirms that enlarging the generating
  set never increases word length.

State caps make every search abort loudly (SearchCapExceededError)
instead of returning a silently truncated answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import SearchCapExceededError
from .group_ops import (
    GeneratingSet,
    Letter,
    apply_generator,
    evaluate_word,
    identity,
    invert,
    multiply,
)
from .metrics import length_consecutive
from .tree_core import TreePairDiagram, canonical_encode, reduce

DEFAULT_STATE_CAP = 5_000_000

CONFIRMED = "witness-confirmed"
REFUTED = "refuted"


@dataclass(frozen=True)
class BallIndex:
    """All elements with l_X <= radius: encoding -> (length, letter, pair).

    The letter is the last generator of some geodesic spelling (None for
    the identity), so walking letters backwards always descends one
    length level per step.
    """

    gens: GeneratingSet
    radius: int
    table: dict

    @property
    def size(self) -> int:
        return len(self.table)

    def __contains__(self, item) -> bool:
        return self._key(item) in self.table

    def _key(self, item) -> str:
        if isinstance(item, TreePairDiagram):
            return canonical_encode(item if item.reduced else reduce(item))
        return item

    def length_of(self, item) -> int:
        return self.table[self._key(item)][0]

    def pair_of(self, encoding: str) -> TreePairDiagram:
        return self.table[encoding][2]

    def elements(self) -> Iterable[tuple[str, int, TreePairDiagram]]:
        for enc, (length, _, pair) in self.table.items():
            yield enc, length, pair

    def sphere_sizes(self) -> list[int]:
        counts = [0] * (self.radius + 1)
        for length, _, _ in self.table.values():
            counts[length] += 1
        return counts

    def export_lines(self) -> list[str]:
        rows = sorted((length, enc) for enc, (length, _, _) in self.table.items())
        return [f"{enc}\t{length}" for length, enc in rows]


def _expand(
    table: dict,
    frontier: list[TreePairDiagram],
    length: int,
    letters: tuple[Letter, ...],
    cap: int,
) -> list[TreePairDiagram]:
    """One breadth-first shell; mutates table, returns the new frontier."""
    new: list[TreePairDiagram] = []
    for g in frontier:
        for index, sign in letters:
            h = apply_generator(g, index, sign)
            key = canonical_encode(h)
            if key not in table:
                if len(table) >= cap:
                    raise SearchCapExceededError(
                        f"ball enumeration exceeded the state cap of {cap} "
                        f"elements at radius {length}",
                        len(table),
                    )
                table[key] = (length, (index, sign), h)
                new.append(h)
    return new


def ball(gens: GeneratingSet, radius: int, cap: int = DEFAULT_STATE_CAP) -> BallIndex:
    """Exact breadth-first enumeration of the ball of the given radius."""
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    letters = gens.letters()
    start = identity()
    table: dict = {canonical_encode(start): (0, None, start)}
    frontier = [start]
    for r in range(1, radius + 1):
        frontier = _expand(table, frontier, r, letters, cap)
    return BallIndex(gens=gens, radius=radius, table=table)


def lengths_for(
    targets: Iterable[TreePairDiagram],
    gens: GeneratingSet,
    cap: int = DEFAULT_STATE_CAP,
) -> dict[str, int]:
    """Exact lengths of several elements at once, by a single expanding
    search from the identity that stops when every target has been seen."""
    wanted = set()
    for t in targets:
        wanted.add(canonical_encode(t if t.reduced else reduce(t)))
    letters = gens.letters()
    start = identity()
    table: dict = {canonical_encode(start): (0, None, start)}
    frontier = [start]
    missing = wanted - set(table)
    r = 0
    while missing:
        r += 1
        frontier = _expand(table, frontier, r, letters, cap)
        if not frontier:
            raise ValueError(
                f"{len(missing)} targets unreachable with generators "
                f"{list(gens)} (search closed at radius {r - 1})"
            )
        missing -= set(table)
    return {enc: table[enc][0] for enc in wanted}


def bfs_length(
    pair: TreePairDiagram, gens: GeneratingSet, cap: int = DEFAULT_STATE_CAP
) -> int:
    """Exact word length of one element, by search."""
    enc = canonical_encode(pair if pair.reduced else reduce(pair))
    return lengths_for([pair], gens, cap=cap)[enc]


def in_ball_geodesic(
    a: TreePairDiagram,
    b: TreePairDiagram,
    gens: GeneratingSet,
    radius: int,
    ball_index: Optional[BallIndex] = None,
    cap: int = DEFAULT_STATE_CAP,
) -> Optional[int]:
    """Length of the shortest path from a to b that never leaves the ball.

    Both endpoints must lie in the ball.  Breadth-first search over the
    in-ball subgraph only; vertices outside the ball are never expanded.
    Returns None only if the search exhausts without reaching b, which
    cannot happen for a genuine ball (it is connected through the
    identity) but is reported rather than asserted.
    """
    if ball_index is None:
        ball_index = ball(gens, radius, cap=cap)
    elif ball_index.gens != gens or ball_index.radius < radius:
        raise ValueError("ball index does not cover the requested ball")

    def key_of(p: TreePairDiagram) -> str:
        return canonical_encode(p if p.reduced else reduce(p))

    def inside(enc: str) -> bool:
        return enc in ball_index.table and ball_index.table[enc][0] <= radius

    start, goal = key_of(a), key_of(b)
    for name, enc in (("a", start), ("b", goal)):
        if not inside(enc):
            raise ValueError(f"endpoint {name} lies outside the ball of radius {radius}")
    if start == goal:
        return 0
    letters = gens.letters()
    seen = {start}
    frontier = [ball_index.pair_of(start)]
    steps = 0
    while frontier:
        steps += 1
        new: list[TreePairDiagram] = []
        for g in frontier:
            for index, sign in letters:
                h = apply_generator(g, index, sign)
                enc = canonical_encode(h)
                if enc in seen or not inside(enc):
                    continue
                if enc == goal:
                    return steps
                if len(seen) >= cap:
                    raise SearchCapExceededError(
                        f"in-ball search exceeded the state cap of {cap}",
                        len(seen),
                    )
                seen.add(enc)
                new.append(h)
        frontier = new
    return None


@dataclass(frozen=True)
class MacProbeReport:
    """Outcome of one minimal-almost-convexity witness check."""

    gens: GeneratingSet
    k: int
    g_encoding: str
    h_encoding: str
    g_length: int
    h_length: int
    distance: int
    min_in_ball_path: Optional[int]
    formula_g_length: Optional[int]
    formula_h_length: Optional[int]
    verdict: str

    @property
    def confirmed(self) -> bool:
        return self.verdict == CONFIRMED

    def to_dict(self) -> dict:
        return {
            "gens": list(self.gens),
            "k": self.k,
            "g": self.g_encoding,
            "h": self.h_encoding,
            "g_length": self.g_length,
            "h_length": self.h_length,
            "distance": self.distance,
            "min_in_ball_path": self.min_in_ball_path,
            "formula_g_length": self.formula_g_length,
            "formula_h_length": self.formula_h_length,
            "verdict": self.verdict,
        }


def mac_witness_pair(
    gens: GeneratingSet, k: int
) -> tuple[TreePairDiagram, TreePairDiagram]:
    """The two elements whose in-ball distance defeats minimal almost
    convexity: g = x_1^{k+1} x_{k+m+1} x_0^{-k} with m = max(X), which
    equals x_m x_1^{k+1} x_0^{-k}, and h = x_1^{k+1} x_0^{-(k+1)}.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if 1 not in gens or gens.max_index < 2:
        raise ValueError(
            "the witness family needs x_0, x_1 and one more generator: "
            f"got indices {list(gens)}"
        )
    m = gens.max_index
    up = [(1, 1)] * (k + 1)
    g = evaluate_word(up + [(k + m + 1, 1)] + [(0, -1)] * k)
    g_alt = evaluate_word([(m, 1)] + up + [(0, -1)] * k)
    if canonical_encode(g) != canonical_encode(g_alt):
        raise AssertionError("the two spellings of the witness disagree")
    h = evaluate_word(up + [(0, -1)] * (k + 1))
    return g, h


def probe_mac(
    gens: GeneratingSet,
    k: int,
    cap: int = DEFAULT_STATE_CAP,
    ball_index: Optional[BallIndex] = None,
) -> MacProbeReport:
    """Check the witness pair: both on the sphere of radius 2k+2, at
    distance 2 from each other, yet at in-ball distance >= 4k+4."""
    g, h = mac_witness_pair(gens, k)
    radius = 2 * k + 2
    if ball_index is None:
        ball_index = ball(gens, radius, cap=cap)
    elif ball_index.gens != gens or ball_index.radius < radius:
        raise ValueError("ball index does not cover the requested ball")

    def exact_length(p: TreePairDiagram) -> int:
        if p in ball_index:
            return ball_index.length_of(p)
        return bfs_length(p, gens, cap=cap)

    g_length = exact_length(g)
    h_length = exact_length(h)
    distance = bfs_length(multiply(invert(g), h), gens, cap=cap)
    min_path: Optional[int] = None
    if g_length <= radius and h_length <= radius:
        min_path = in_ball_geodesic(
            g, h, gens, radius, ball_index=ball_index, cap=cap
        )
    formula_g = formula_h = None
    if gens.is_consecutive:
        n = gens.max_index
        formula_g = length_consecutive(g, n).length
        formula_h = length_consecutive(h, n).length
    ok = (
        g_length == radius
        and h_length == radius
        and distance == 2
        and min_path is not None
        and min_path >= 4 * k + 4
        and formula_g in (None, radius)
        and formula_h in (None, radius)
    )
    return MacProbeReport(
        gens=gens,
        k=k,
        g_encoding=canonical_encode(g),
        h_encoding=canonical_encode(h),
        g_length=g_length,
        h_length=h_length,
        distance=distance,
        min_in_ball_path=min_path,
        formula_g_length=formula_g,
        formula_h_length=formula_h,
        verdict=CONFIRMED if ok else REFUTED,
    )


@dataclass(frozen=True)
class CoarseIsometryReport:
    """Largest observed gap between two word metrics over finite balls."""

    x_gens: GeneratingSet
    y_gens: GeneratingSet
    radius: int
    elements_checked: int
    max_difference: int
    claimed_bound: Optional[int]

    @property
    def within_bound(self) -> Optional[bool]:
        if self.claimed_bound is None:
            return None
        return self.max_difference <= self.claimed_bound

    def to_dict(self) -> dict:
        return {
            "gens_a": list(self.x_gens),
            "gens_b": list(self.y_gens),
            "radius": self.radius,
            "elements_checked": self.elements_checked,
            "max_difference": self.max_difference,
            "claimed_bound": self.claimed_bound,
            "within_bound": self.within_bound,
        }


def _shift_down(gens: GeneratingSet) -> Optional[tuple[int, GeneratingSet]]:
    """Slide the nonzero indices so the smallest becomes 1; the additive
    constant 2*(smallest - 1) relates the two word metrics."""
    nonzero = [i for i in gens if i != 0]
    if not nonzero:
        return None
    first = nonzero[0]
    return first, GeneratingSet.of([0] + [i - first + 1 for i in nonzero])


def claimed_additive_bound(
    x_gens: GeneratingSet, y_gens: GeneratingSet
) -> Optional[int]:
    if x_gens == y_gens:
        return 0
    down_x = _shift_down(x_gens)
    if down_x is not None and down_x[1] == y_gens:
        return 2 * (down_x[0] - 1)
    down_y = _shift_down(y_gens)
    if down_y is not None and down_y[1] == x_gens:
        return 2 * (down_y[0] - 1)
    return None


def coarse_isometry_check(
    x_gens: GeneratingSet,
    y_gens: GeneratingSet,
    radius: int,
    cap: int = DEFAULT_STATE_CAP,
) -> CoarseIsometryReport:
    """Sweep both balls of the given radius and measure max |l_X - l_Y|."""
    ball_x = ball(x_gens, radius, cap=cap)
    ball_y = ball(y_gens, radius, cap=cap)
    lengths_x = {enc: length for enc, length, _ in ball_x.elements()}
    lengths_y = {enc: length for enc, length, _ in ball_y.elements()}
    only_y = [ball_y.pair_of(e) for e in lengths_y.keys() - lengths_x.keys()]
    only_x = [ball_x.pair_of(e) for e in lengths_x.keys() - lengths_y.keys()]
    if only_y:
        lengths_x.update(lengths_for(only_y, x_gens, cap=cap))
    if only_x:
        lengths_y.update(lengths_for(only_x, y_gens, cap=cap))
    universe = set(lengths_x) | set(lengths_y)
    max_diff = max(
        (abs(lengths_x[e] - lengths_y[e]) for e in universe), default=0
    )
    return CoarseIsometryReport(
        x_gens=x_gens,
        y_gens=y_gens,
        radius=radius,
        elements_checked=len(universe),
        max_difference=max_diff,
        claimed_bound=claimed_additive_bound(x_gens, y_gens),
    )


def probe_subset_monotonicity(
    small: GeneratingSet,
    large: GeneratingSet,
    radius: int,
    cap: int = DEFAULT_STATE_CAP,
) -> bool:
    """True when l_large(g) <= l_small(g) for every g in the small ball."""
    if not set(small.indices) <= set(large.indices):
        raise ValueError(
            f"{list(small)} is not a subset of {list(large)}"
        )
    ball_small = ball(small, radius, cap=cap)
    ball_large = ball(large, radius, cap=cap)
    for enc, length, _ in ball_small.elements():
        if enc not in ball_large or ball_large.length_of(enc) > length:
            return False
    return True
