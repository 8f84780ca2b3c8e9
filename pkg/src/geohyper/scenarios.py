"""Random configurations that satisfy the extractors' preconditions.

Bases are long segments with left ends in the left 40% of the box and right
ends in the right 40%; apexes live in the middle strip, so every apex is
strictly inside every base's x-range and the segment really is the base.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .exact import Point2, Point3, Segment2, segments_cross
from .hypergraph import (
    GeneralPositionError, GenerationFailed, GeometricHypergraph, PointSet,
)


def _crossing_family(rng: random.Random, k: int, box: int, max_tries: int = 10000):
    lo, hi = 4 * box // 10, 6 * box // 10
    for _ in range(max_tries):
        # reversed height orders at the two ends make most pairs cross; the check below is exact
        left = sorted(rng.randint(0, box) for _ in range(k))
        right = sorted((rng.randint(0, box) for _ in range(k)), reverse=True)
        order = list(range(k))
        rng.shuffle(order)
        segs = [Segment2(Point2(rng.randint(0, lo), left[i]), Point2(rng.randint(hi, box), right[i]))
                for i in order]
        ends = [p for s in segs for p in (s.a, s.b)]
        if len(set(p.x for p in ends)) < 2 * k:
            continue
        try:
            if all(segments_cross(s, t) for s, t in combinations(segs, 2)):
                return segs
        except ValueError:
            continue
    raise GenerationFailed("no pairwise crossing family of %d segments" % k)


def random_crossing_segments(k: int, seed: int, box: int = 1000) -> List[Segment2]:
    return _crossing_family(random.Random(seed), k, box)


def _max_line_y(segs: Sequence[Segment2], x) -> object:
    return max(s.line().y_at(x) for s in segs)


def _above_point(rng, segs, box):
    lo, hi = 4 * box // 10, 6 * box // 10
    x = rng.randint(lo + 1, hi - 1)
    y = _max_line_y(segs, x)
    return Point2(x, int(y) + rng.randint(1, box))


def four_crossing_config(seed: int, extra_apexes: int = 8, box: int = 1000, max_tries: int = 200):
    """``(H, v, bases)`` with four crossing bases in the link graph of ``v``.

    Every base also carries ``extra_apexes`` further apexes at random
    heights, so the two partner groups can always avoid vertex collisions.
    """
    rng = random.Random(seed)
    lo, hi = 4 * box // 10, 6 * box // 10
    for _ in range(max_tries):
        segs = _crossing_family(rng, 4, box)
        v = _above_point(rng, segs, box)
        extra = [Point2(rng.randint(lo + 1, hi - 1), rng.randint(-box, 2 * box)) for _ in range(extra_apexes)]
        pts = [p for s in segs for p in (s.a, s.b)] + [v] + extra
        try:
            ps = PointSet(tuple(pts), seed=seed)
        except GeneralPositionError:
            continue
        bases = [(2 * i, 2 * i + 1) for i in range(4)]
        vi = 8
        edges = set()
        for b in bases:
            for a in range(8, len(pts)):
                edges.add(tuple(sorted(b + (a,))))
        return GeometricHypergraph(ps, 3, tuple(sorted(edges))), vi, bases
    raise GenerationFailed("no four-crossing configuration for seed %d" % seed)


def greedy_helly_config(k: int, seed: int, box: int = 1000, noise: int = 0, max_tries: int = 200):
    """``(H, bases, apexes)``: k crossing bases, k apexes above all of them, all k*k triangles present."""
    rng = random.Random(seed)
    lo, hi = 4 * box // 10, 6 * box // 10
    for _ in range(max_tries):
        segs = _crossing_family(rng, k, box)
        apexes = [_above_point(rng, segs, box) for _ in range(k)]
        extra = [Point2(rng.randint(lo + 1, hi - 1), rng.randint(-box, 2 * box)) for _ in range(noise)]
        pts = [p for s in segs for p in (s.a, s.b)] + apexes + extra
        try:
            ps = PointSet(tuple(pts), seed=seed)
        except GeneralPositionError:
            continue
        bases = [(2 * i, 2 * i + 1) for i in range(k)]
        apex_ids = list(range(2 * k, 3 * k))
        edges = {tuple(sorted(b + (a,))) for b in bases for a in range(2 * k, len(pts))}
        return GeometricHypergraph(ps, 3, tuple(sorted(edges))), bases, apex_ids
    raise GenerationFailed("no greedy-selection configuration for seed %d" % seed)


def random_hypergraph_3d(n: int, density: float, seed: int, box: int = 1000) -> GeometricHypergraph:
    from .hypergraph import generate_random, random_hypergraph

    ps = generate_random(3, n, seed, box=box)
    return random_hypergraph(ps, 3, density, seed + 1)
