import math
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geohyper import hypergraph as hg
from geohyper.arrangement import (
    NotPairwiseCrossing, ParallelLines, PointNotOnArrangement, VerticalLine, XInterval,
    helly_1d, level_of, segment_on_top_level, top_level, triangle_on_top_level,
)
from geohyper.exact import Line2, Point2, Segment2
from geohyper.scenarios import random_crossing_segments

from oracles import segment_clip_by_triangle

FIX = Path(__file__).parent / "fixtures"


def P(x, y):
    return Point2(x, y)


def four_segments():
    H = hg.loads((FIX / "four_segments.json").read_text())
    return [H.segment(i) for i in range(len(H))]


def midpoints(L, pad=1):
    """One sample x strictly inside every piece."""
    xs = [b.x for b in L.breakpoints]
    if not xs:
        return [Fraction(0)]
    out = [xs[0] - pad]
    out += [(a + b) / 2 for a, b in zip(xs, xs[1:])]
    out.append(xs[-1] + pad)
    return out


class TestLevel:
    UP = Line2.through(P(0, 0), P(1, 1))
    DOWN = Line2.through(P(0, 0), P(1, -1))

    def test_upper_piece(self):
        assert level_of([self.UP, self.DOWN], P(-1, 1)) == 1

    def test_crossing_point(self):
        assert level_of([self.UP, self.DOWN], P(0, 0)) == 0

    def test_concurrent_far_right(self):
        lines = [Line2.through(P(0, 0), P(1, s)) for s in (-2, -1, 1, 3)]
        assert level_of(lines, P(10, 30)) == 3

    def test_errors(self):
        with pytest.raises(PointNotOnArrangement):
            level_of([self.UP], P(0, 5))
        with pytest.raises(VerticalLine):
            level_of([Line2.through(P(0, 0), P(0, 1))], P(0, 0))


class TestTopLevel:
    def test_single(self):
        L = top_level([Segment2(P(0, 0), P(2, 1))])
        assert L.order == (0,) and L.breakpoints == ()

    def test_two_lines(self):
        L = top_level([Segment2(P(-1, -1), P(1, 1)), Segment2(P(-2, 2), P(2, -2))])
        assert L.breakpoints == (P(0, 0),)
        assert [l.slope for l in L.pieces] == [-1, 1]

    def test_four_segments_fixture(self):
        segs = four_segments()
        L = top_level(segs)
        # tangents to y = x^2 at a and b meet at ((a + b) / 2, a * b)
        assert L.breakpoints == (P(-2, 3), P(0, -1), P(2, 3))
        assert len(L.order) == 4
        slopes = [l.slope for l in L.pieces]
        assert slopes == sorted(slopes) and len(set(slopes)) == 4
        lines = [s.line() for s in segs]
        for x in midpoints(L):
            assert level_of(lines, L.point_at(x)) == 3

    def test_breakpoints_on_adjacent_lines(self):
        for seed in range(50):
            segs = random_crossing_segments(5, seed)
            L = top_level(segs)
            for i, b in enumerate(L.breakpoints):
                assert L.pieces[i].value(b) == 0 and L.pieces[i + 1].value(b) == 0

    def test_breakpoint_level(self):
        # two lines pass through a breakpoint, so only k - 2 are strictly below it
        segs = four_segments()
        L = top_level(segs)
        lines = [s.line() for s in segs]
        assert all(level_of(lines, b) == 2 for b in L.breakpoints)

    def test_order_independent(self):
        rng = random.Random(1)
        for seed in range(30):
            segs = random_crossing_segments(5, seed)
            L1 = top_level(segs)
            perm = segs[:]
            rng.shuffle(perm)
            L2 = top_level(perm)
            assert L1.pieces == L2.pieces and L1.breakpoints == L2.breakpoints

    def test_not_crossing(self):
        with pytest.raises(NotPairwiseCrossing):
            top_level([Segment2(P(0, 0), P(1, 1)), Segment2(P(2, 0), P(3, -1))])

    def test_parallel(self):
        with pytest.raises(ParallelLines):
            top_level([Segment2(P(0, 0), P(1, 1)), Segment2(P(2, 0), P(3, 1))])

    def test_vertical(self):
        with pytest.raises(VerticalLine):
            top_level([Segment2(P(0, 0), P(0, 1)), Segment2(P(-1, 0), P(1, 1))])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6), st.integers(2, 6))
    def test_convex_and_level(self, seed, k):
        segs = random_crossing_segments(k, seed)
        L = top_level(segs)
        slopes = [l.slope for l in L.pieces]
        assert all(a < b for a, b in zip(slopes, slopes[1:]))
        assert L.pieces[0].slope == min(s.line().slope for s in segs)
        assert L.pieces[-1].slope == max(s.line().slope for s in segs)
        lines = [s.line() for s in segs]
        for x in midpoints(L):
            assert level_of(lines, L.point_at(x)) == k - 1


def _oracle_intervals(L, t, far=10 ** 9):
    """Split L at its breakpoints, clip each bounded piece by t, merge touching pieces."""
    xs = [Fraction(-far)] + [b.x for b in L.breakpoints] + [Fraction(far)]
    parts = []
    for i in range(len(xs) - 1):
        lo, hi = xs[i], xs[i + 1]
        p, q = (lo, L.pieces[i].y_at(lo)), (hi, L.pieces[i].y_at(hi))
        r = segment_clip_by_triangle(p, q, [(v.x, v.y) for v in t])
        if r is not None:
            parts.append([lo + r[0] * (hi - lo), lo + r[1] * (hi - lo)])
    merged = []
    for a, b in parts:
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return [tuple(m) for m in merged]


class TestTriangleOnTopLevel:
    def test_below_is_empty(self):
        L = top_level(four_segments())
        assert triangle_on_top_level(L, (P(-1, -100), P(1, -100), P(0, -90))) == []

    def test_around_breakpoint(self):
        L = top_level(four_segments())
        # the breakpoint (0, -1) sits inside; the triangle sides cut L twice
        t = (P(-1, -3), P(1, -3), P(0, 10))
        ivs = triangle_on_top_level(L, t)
        assert len(ivs) == 1
        assert ivs[0].lo < 0 < ivs[0].hi
        assert [(iv.lo, iv.hi) for iv in ivs] == _oracle_intervals(L, t)

    def test_random_against_per_piece_oracle(self):
        rng = random.Random(7)
        checked = 0
        for seed in range(200):
            segs = random_crossing_segments(rng.randint(2, 5), seed)
            L = top_level(segs)
            for _ in range(5):
                t = [P(rng.randint(0, 1000), rng.randint(-500, 1500)) for _ in range(3)]
                if (t[1].x - t[0].x) * (t[2].y - t[0].y) == (t[1].y - t[0].y) * (t[2].x - t[0].x):
                    continue
                got = triangle_on_top_level(L, t)
                assert [(iv.lo, iv.hi) for iv in got] == _oracle_intervals(L, t)
                assert all(a.hi < b.lo for a, b in zip(got, got[1:]))
                checked += 1
        assert checked > 900

    def test_segment_on_top_level(self):
        L = top_level(four_segments())
        # the piece of slope -2 between x=-2 and x=0 is y = -2x - 1
        ivs = segment_on_top_level(L, P(-1, 1), P(-Fraction(1, 2), 0))
        assert [(iv.lo, iv.hi) for iv in ivs] == [(-1, Fraction(-1, 2))]


class TestHelly:
    def test_examples(self):
        assert helly_1d([XInterval(0, 2), XInterval(1, 3), XInterval(1, 5)]) == 1
        assert helly_1d([XInterval(0, 1), XInterval(2, 3)]) is None

    def test_empty_input(self):
        assert helly_1d([]) is None

    def test_unbounded(self):
        assert helly_1d([XInterval(-math.inf, 4), XInterval(2, math.inf)]) == 2
        assert helly_1d([XInterval(-math.inf, 4)]) == 4

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            XInterval(3, 1)

    @given(st.lists(st.tuples(st.integers(-20, 20), st.integers(0, 20)), min_size=1, max_size=8))
    def test_pairwise_implies_common(self, raw):
        ivs = [XInterval(a, a + w) for a, w in raw]
        pairwise = all(a.intersects(b) for a in ivs for b in ivs)
        x = helly_1d(ivs)
        assert (x is not None) == pairwise
        if x is not None:
            assert all(x in iv for iv in ivs)
