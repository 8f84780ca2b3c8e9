"""Exhaustive detectors for the forbidden configurations.

All searches enumerate edge-index tuples in lexicographic order and return
the first hit, so results are deterministic.  The depth-first enumeration
prunes a prefix as soon as it cannot be extended, which does not change the
order in which complete tuples are visited.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exact import (
    Point2, Segment2, SharedEndpoint, ccw_triangle, clip_convex_by_triangle,
    segments_cross, triangles_disjoint_3d,
)
from .hypergraph import GeometricHypergraph, HypergraphError, is_convex_clockwise, require


class PatternKind(Enum):
    STRONGLY_CROSSING = "strongly-crossing"
    PAIRWISE_DISJOINT = "disjoint"
    PAIRWISE_CROSSING = "pairwise-crossing"
    CONVEX_CLOCKWISE = "convex"


@dataclass(frozen=True)
class PatternSpec:
    kind: PatternKind
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("pattern multiplicity must be at least 2")

    @property
    def label(self) -> str:
        prefix = {PatternKind.STRONGLY_CROSSING: "SC", PatternKind.PAIRWISE_DISJOINT: "D"}
        return "%s_%d" % (prefix.get(self.kind, self.kind.value), self.k)


@dataclass(frozen=True)
class Witness:
    edges: Tuple[int, ...]
    certificate: Optional[Point2] = None


class NotConvexPosition(HypergraphError):
    pass


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError("k must be at least 2")


def common_point(triangles: Sequence[Sequence[Point2]]) -> Optional[Point2]:
    """Lexicographically smallest vertex of the common intersection, or None."""
    poly = list(ccw_triangle(triangles[0]))
    for t in triangles[1:]:
        poly = clip_convex_by_triangle(poly, t)
        if not poly:
            return None
    return min(poly)


def _first_tuple(m: int, k: int, edges, extend: Callable, state0):
    """Lexicographically first k-tuple of indices accepted by ``extend``.

    ``extend(state, i)`` returns the new state, or None to reject index ``i``
    after the current prefix.
    """
    chosen: List[int] = []

    def rec(start, used, state):
        if len(chosen) == k:
            return state
        for i in range(start, m - (k - len(chosen)) + 1):
            e = edges[i]
            if used.intersection(e):
                continue
            nxt = extend(state, i)
            if nxt is None:
                continue
            chosen.append(i)
            res = rec(i + 1, used.union(e), nxt)
            if res is not None:
                return res
            chosen.pop()
        return None

    final = rec(0, frozenset(), state0)
    return (tuple(chosen), final) if final is not None else None


def find_strongly_crossing(H: GeometricHypergraph, k: int) -> Optional[Witness]:
    """k pairwise vertex-disjoint plane triangles with a common point."""
    require(H, 2, 3)
    _check_k(k)
    if H.n < 3 * k:
        return None
    tris = [H.simplex(i) for i in range(len(H))]

    def extend(poly, i):
        if poly is None:
            return list(ccw_triangle(tris[i]))
        out = clip_convex_by_triangle(poly, tris[i])
        return out or None

    hit = _first_tuple(len(H), k, H.edges, extend, None)
    if hit is None:
        return None
    idx, poly = hit
    return Witness(idx, min(poly))


def find_pairwise_disjoint(H: GeometricHypergraph, k: int) -> Optional[Witness]:
    """k space triangles, pairwise vertex-disjoint and pairwise geometrically disjoint."""
    require(H, 3, 3)
    _check_k(k)
    if H.n < 3 * k:
        return None
    tris = [H.simplex(i) for i in range(len(H))]
    cache: Dict[Tuple[int, int], bool] = {}

    def disjoint(i, j):
        key = (i, j) if i < j else (j, i)
        if key not in cache:
            cache[key] = triangles_disjoint_3d(tris[i], tris[j])
        return cache[key]

    def extend(chosen, i):
        if all(disjoint(j, i) for j in chosen):
            return chosen + (i,)
        return None

    hit = _first_tuple(len(H), k, H.edges, extend, ())
    return Witness(hit[0]) if hit else None


def _crosses(s: Segment2, t: Segment2) -> bool:
    try:
        return segments_cross(s, t)
    except SharedEndpoint:
        return False


def find_pairwise_crossing_segments(segments: Sequence[Segment2], k: int) -> Optional[Tuple[int, ...]]:
    _check_k(k)
    ends = [(s.a, s.b) for s in segments]
    cache: Dict[Tuple[int, int], bool] = {}

    def crosses(i, j):
        key = (i, j) if i < j else (j, i)
        if key not in cache:
            cache[key] = _crosses(segments[key[0]], segments[key[1]])
        return cache[key]

    def extend(chosen, i):
        if all(crosses(j, i) for j in chosen):
            return chosen + (i,)
        return None

    hit = _first_tuple(len(segments), k, ends, extend, ())
    return hit[0] if hit else None


def is_block_pattern(edges: Sequence[Sequence[int]]) -> bool:
    """Vertices, read in cyclic position order, follow x_1..x_m y_1..y_m z_1..z_m.

    Equivalently the edge labels along the boundary are periodic with
    period m, which is invariant under cyclic rotation.
    """
    m = len(edges)
    owner = {}
    for label, e in enumerate(edges):
        for v in e:
            if v in owner:
                return False
            owner[v] = label
    seq = [owner[v] for v in sorted(owner)]
    n = len(seq)
    return all(seq[j] == seq[(j + m) % n] for j in range(n))


def find_convex_pattern(H: GeometricHypergraph, k: int) -> Optional[Witness]:
    """k edges whose vertices interleave as x_1..x_k y_1..y_k z_1..z_k clockwise.

    Vertex indices are positions along the boundary: the point set must be
    stored in clockwise convex order.
    """
    require(H, 2, 3)
    _check_k(k)
    if not is_convex_clockwise(H.points.points):
        raise NotConvexPosition("points are not in clockwise convex position")
    if H.n < 3 * k:
        return None

    def extend(chosen, i):
        nxt = chosen + (H.edges[i],)
        return nxt if len(nxt) < 2 or is_block_pattern(nxt) else None

    hit = _first_tuple(len(H), k, H.edges, extend, ())
    return Witness(hit[0]) if hit else None


def detect(H: GeometricHypergraph, pattern: PatternSpec) -> Optional[Witness]:
    if pattern.kind is PatternKind.STRONGLY_CROSSING:
        return find_strongly_crossing(H, pattern.k)
    if pattern.kind is PatternKind.PAIRWISE_DISJOINT:
        return find_pairwise_disjoint(H, pattern.k)
    if pattern.kind is PatternKind.CONVEX_CLOCKWISE:
        return find_convex_pattern(H, pattern.k)
    require(H, 2, 2)
    idx = find_pairwise_crossing_segments([H.segment(i) for i in range(len(H))], pattern.k)
    return Witness(idx) if idx is not None else None
