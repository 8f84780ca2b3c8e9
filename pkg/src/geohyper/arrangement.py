"""Levels of line arrangements and the top level of pairwise-crossing segments."""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .exact import (
    GeometryError, Line2, Point2, Segment2, SharedEndpoint, ccw_triangle, segments_cross,
)

Bound = Union[Fraction, float]  # float only for +/-inf


class VerticalLine(GeometryError):
    pass


class PointNotOnArrangement(GeometryError):
    pass


class NotPairwiseCrossing(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


@dataclass(frozen=True)
class XInterval:
    lo: Bound
    hi: Bound

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval [%s, %s]" % (self.lo, self.hi))

    def intersects(self, other: "XInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def level_of(lines: Sequence[Line2], p: Point2) -> int:
    """Number of lines strictly below ``p``."""
    if any(l.vertical for l in lines):
        raise VerticalLine("level undefined with vertical lines")
    ys = [l.y_at(p.x) for l in lines]
    if p.y not in ys:
        raise PointNotOnArrangement("%r lies on none of the lines" % (p,))
    return sum(1 for y in ys if y < p.y)


@dataclass(frozen=True)
class TopLevel:
    """Upper envelope of ``lines``.

    ``order[i]`` is the line index of the i-th piece from the left and
    ``breakpoints[i]`` separates pieces ``i`` and ``i + 1``.
    """

    lines: Tuple[Line2, ...]
    order: Tuple[int, ...]
    breakpoints: Tuple[Point2, ...]

    @property
    def pieces(self) -> Tuple[Line2, ...]:
        return tuple(self.lines[i] for i in self.order)

    @property
    def visited(self) -> Tuple[int, ...]:
        return self.order

    def piece_range(self, i: int) -> Tuple[Bound, Bound]:
        lo = self.breakpoints[i - 1].x if i > 0 else -math.inf
        hi = self.breakpoints[i].x if i < len(self.breakpoints) else math.inf
        return lo, hi

    def piece_at(self, x: Fraction) -> int:
        """Index of the piece containing ``x`` (the right one at a breakpoint)."""
        return bisect_right([b.x for b in self.breakpoints], x)

    def y_at(self, x: Fraction) -> Fraction:
        return self.lines[self.order[self.piece_at(x)]].y_at(x)

    def point_at(self, x: Fraction) -> Point2:
        return Point2(x, self.y_at(x))


def upper_envelope(lines: Sequence[Line2]) -> TopLevel:
    if not lines:
        raise ValueError("empty arrangement")
    if any(l.vertical for l in lines):
        raise VerticalLine("vertical supporting line")
    idx = sorted(range(len(lines)), key=lambda i: lines[i].slope)
    for a, b in zip(idx, idx[1:]):
        if lines[a].slope == lines[b].slope:
            raise ParallelLines("lines %d and %d are parallel" % (a, b))
    stack: List[int] = []
    for c in idx:
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if lines[a].intersect(lines[c]).x <= lines[a].intersect(lines[b]).x:
                stack.pop()
            else:
                break
        stack.append(c)
    bps = tuple(lines[a].intersect(lines[b]) for a, b in zip(stack, stack[1:]))
    return TopLevel(tuple(lines), tuple(stack), bps)


def top_level(segments: Sequence[Segment2]) -> TopLevel:
    """Top level of a pairwise-crossing segment family (envelope of the supporting lines)."""
    lines = [s.line() for s in segments]
    if any(l.vertical for l in lines):
        raise VerticalLine("vertical segment")
    for i in range(len(segments)):
        for j in range(i + 1, len(segments)):
            if lines[i].slope == lines[j].slope:
                raise ParallelLines("segments %d and %d are parallel" % (i, j))
            try:
                ok = segments_cross(segments[i], segments[j])
            except SharedEndpoint:
                ok = False
            if not ok:
                raise NotPairwiseCrossing("segments %d and %d do not cross" % (i, j))
    return upper_envelope(lines)


def _merge(intervals: List[XInterval]) -> List[XInterval]:
    intervals.sort(key=lambda iv: iv.lo)
    out: List[XInterval] = []
    for iv in intervals:
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = XInterval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


def _restrict(lo: Bound, hi: Bound, alpha: Fraction, beta: Fraction):
    """Intersect ``[lo, hi]`` with ``{x : alpha*x + beta >= 0}``; None if empty."""
    if alpha > 0:
        lo = max(lo, -beta / alpha)
    elif alpha < 0:
        hi = min(hi, -beta / alpha)
    elif beta < 0:
        return None
    return (lo, hi) if lo <= hi else None


def triangle_on_top_level(L: TopLevel, t: Sequence[Point2]) -> List[XInterval]:
    """x-projection of the part of ``L`` inside the closed triangle, as sorted disjoint intervals."""
    a, b, c = ccw_triangle(t)
    found = []
    for i, li in enumerate(L.order):
        m, q = L.lines[li].slope, L.lines[li].intercept
        rng = L.piece_range(i)
        for u, v in ((a, b), (b, c), (c, a)):
            ex, ey = v.x - u.x, v.y - u.y
            # cross(v - u, (x, m x + q) - u) as alpha * x + beta
            rng = _restrict(rng[0], rng[1], ex * m - ey, ex * (q - u.y) + ey * u.x)
            if rng is None:
                break
        if rng is not None:
            found.append(XInterval(*rng))
    return _merge(found)


def segment_on_top_level(L: TopLevel, p: Point2, q: Point2) -> List[XInterval]:
    """x-projection of ``segment(p, q) ∩ L`` for a non-vertical segment."""
    if p.x == q.x:
        raise VerticalLine("vertical segment")
    seg = Line2.through(p, q)
    x0, x1 = min(p.x, q.x), max(p.x, q.x)
    found = []
    for i, li in enumerate(L.order):
        line = L.lines[li]
        lo, hi = L.piece_range(i)
        lo, hi = max(lo, x0), min(hi, x1)
        if lo > hi:
            continue
        dm = seg.slope - line.slope
        dq = seg.intercept - line.intercept
        if dm == 0:
            if dq == 0:
                found.append(XInterval(lo, hi))
            continue
        x = -dq / dm
        if lo <= x <= hi:
            found.append(XInterval(x, x))
    return _merge(found)


def helly_1d(intervals: Sequence[XInterval]) -> Optional[Fraction]:
    """A common point of closed intervals (the largest left end), or None."""
    if not intervals:
        return None
    lo = max(iv.lo for iv in intervals)
    hi = min(iv.hi for iv in intervals)
    if lo > hi:
        return None
    if lo == -math.inf:
        return hi if hi != math.inf else Fraction(0)
    return lo
