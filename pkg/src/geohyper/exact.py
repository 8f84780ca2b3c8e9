"""Exact rational geometry: points, lines, planes and sign predicates.

Every coordinate is a :class:`fractions.Fraction`; nothing in this module
ever rounds.  Predicates return enum members whose integer value is the sign
of the underlying determinant, so ``int(orient2(p, q, r))`` is -1, 0 or 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Number = Union[int, str, Fraction]


class GeometryError(ValueError):
    """Base class for precondition failures of the exact predicates."""


class SharedEndpoint(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class ParallelOverlap(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Orientation3(IntEnum):
    NEGATIVE = -1
    COPLANAR = 0
    POSITIVE = 1


class Side(IntEnum):
    BELOW = -1
    ON = 0
    ABOVE = 1


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _fast(v: Fraction):
    # integral Fractions become ints: int arithmetic is an order of magnitude faster
    return v.numerator if v.denominator == 1 else v


def as_fraction(v: Number) -> Fraction:
    # Fraction(float) is exact, but floats are almost always a caller mistake here
    if isinstance(v, float):
        raise TypeError("floats are not accepted as exact coordinates: %r" % v)
    return v if type(v) is Fraction else Fraction(v)


@dataclass(frozen=True, order=True, slots=True)
class Point2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_fraction(self.x))
        object.__setattr__(self, "y", as_fraction(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: "Point2") -> Tuple[Fraction, Fraction]:
        return (_fast(self.x) - _fast(other.x), _fast(self.y) - _fast(other.y))

    def __repr__(self):
        return "Point2(%s, %s)" % (self.x, self.y)


@dataclass(frozen=True, order=True, slots=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_fraction(self.x))
        object.__setattr__(self, "y", as_fraction(self.y))
        object.__setattr__(self, "z", as_fraction(self.z))

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __sub__(self, other: "Point3") -> Tuple[Fraction, Fraction, Fraction]:
        return (_fast(self.x) - _fast(other.x), _fast(self.y) - _fast(other.y),
                _fast(self.z) - _fast(other.z))

    def __repr__(self):
        return "Point3(%s, %s, %s)" % (self.x, self.y, self.z)


@dataclass(frozen=True, slots=True)
class Segment2:
    a: Point2
    b: Point2

    def __post_init__(self):
        if self.a == self.b:
            raise GeometryError("segment endpoints coincide: %r" % (self.a,))

    @property
    def left(self) -> Point2:
        return min(self.a, self.b)

    @property
    def right(self) -> Point2:
        return max(self.a, self.b)

    def line(self) -> "Line2":
        return Line2.through(self.a, self.b)


@dataclass(frozen=True, slots=True)
class Line2:
    """The line ``A*x + B*y + C = 0``, scaled so the leading nonzero coefficient is 1."""

    A: Fraction
    B: Fraction
    C: Fraction

    def __post_init__(self):
        A, B, C = as_fraction(self.A), as_fraction(self.B), as_fraction(self.C)
        if A == 0 and B == 0:
            raise GeometryError("degenerate line coefficients")
        lead = A if A != 0 else B
        object.__setattr__(self, "A", A / lead)
        object.__setattr__(self, "B", B / lead)
        object.__setattr__(self, "C", C / lead)

    @classmethod
    def through(cls, p: Point2, q: Point2) -> "Line2":
        if p == q:
            raise GeometryError("a line needs two distinct points")
        A = q.y - p.y
        B = p.x - q.x
        return cls(A, B, -(A * p.x + B * p.y))

    @property
    def vertical(self) -> bool:
        return self.B == 0

    @property
    def slope(self) -> Fraction:
        if self.B == 0:
            raise GeometryError("vertical line has no slope")
        return -self.A / self.B

    @property
    def intercept(self) -> Fraction:
        if self.B == 0:
            raise GeometryError("vertical line has no intercept")
        return -self.C / self.B

    def y_at(self, x: Fraction) -> Fraction:
        return -(self.A * x + self.C) / self.B

    def value(self, p: Point2) -> Fraction:
        return self.A * p.x + self.B * p.y + self.C

    def intersect(self, other: "Line2") -> Point2:
        det = self.A * other.B - other.A * self.B
        if det == 0:
            raise ParallelOverlap("parallel lines")
        x = (self.B * other.C - other.B * self.C) / det
        y = (other.A * self.C - self.A * other.C) / det
        return Point2(x, y)


@dataclass(frozen=True, slots=True)
class Plane3:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    def __post_init__(self):
        for name in ("A", "B", "C", "D"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.A == 0 and self.B == 0 and self.C == 0:
            raise GeometryError("degenerate plane normal")

    @classmethod
    def through(cls, p: Point3, q: Point3, r: Point3) -> "Plane3":
        n = cross(q - p, r - p)
        if n == (0, 0, 0):
            raise DegenerateTriangle("collinear points span no plane")
        return cls(n[0], n[1], n[2], -(n[0] * p.x + n[1] * p.y + n[2] * p.z))

    @property
    def normal(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.A, self.B, self.C)

    def value(self, p: Point3) -> Fraction:
        return self.A * p.x + self.B * p.y + self.C * p.z + self.D


# ---------------------------------------------------------------- vectors

def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def det3(u, v, w):
    return dot(u, cross(v, w))


# ---------------------------------------------------------------- predicates

_ORIENT = (Orientation.COLLINEAR, Orientation.CCW, Orientation.CW)


def orient2(p: Point2, q: Point2, r: Point2) -> Orientation:
    ux, uy = q - p
    vx, vy = r - p
    d = ux * vy - uy * vx
    return _ORIENT[(d > 0) - (d < 0)]


def orient3(p: Point3, q: Point3, r: Point3, s: Point3) -> Orientation3:
    return Orientation3(_sign(det3(q - p, r - p, s - p)))


def plane_side(h: Plane3, p: Point3) -> Side:
    return Side(_sign(h.value(p)))


def _on_segment(a: Point2, b: Point2, p: Point2) -> bool:
    """``p`` collinear with ``ab`` lies within its bounding box."""
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def closed_segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    """Closed segments ``ab`` and ``cd`` share a point (shared endpoints allowed)."""
    o1, o2 = orient2(a, b, c), orient2(a, b, d)
    o3, o4 = orient2(c, d, a), orient2(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def segments_cross(s1: Segment2, s2: Segment2) -> bool:
    """True iff the closed segments meet.

    Raises :class:`SharedEndpoint` when the segments have a common endpoint;
    such pairs are never crossing and callers must decide that explicitly.
    """
    if s1.a in (s2.a, s2.b) or s1.b in (s2.a, s2.b):
        raise SharedEndpoint("segments share an endpoint")
    return closed_segments_intersect(s1.a, s1.b, s2.a, s2.b)


def segment_intersection_point(s1: Segment2, s2: Segment2) -> Point2:
    if not closed_segments_intersect(s1.a, s1.b, s2.a, s2.b):
        raise NoIntersection("segments do not meet")
    dx1, dy1 = s1.b - s1.a
    dx2, dy2 = s2.b - s2.a
    den = dx1 * dy2 - dy1 * dx2
    if den == 0:
        raise ParallelOverlap("collinear overlapping segments have no single intersection point")
    ex, ey = s2.a - s1.a
    t = Fraction(ex * dy2 - ey * dx2) / den
    return Point2(s1.a.x + t * dx1, s1.a.y + t * dy1)


def ccw_triangle(t: Sequence[Point2]) -> Tuple[Point2, Point2, Point2]:
    a, b, c = t
    o = orient2(a, b, c)
    if o == Orientation.COLLINEAR:
        raise DegenerateTriangle("triangle vertices are collinear")
    return (a, b, c) if o == Orientation.CCW else (a, c, b)


def triangle_contains_2d(t: Sequence[Point2], p: Point2) -> bool:
    """Closed-triangle membership."""
    a, b, c = ccw_triangle(t)
    return orient2(a, b, p) >= 0 and orient2(b, c, p) >= 0 and orient2(c, a, p) >= 0


def _dedupe_cycle(pts):
    out = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def clip_by_halfplane(poly: Sequence[Point2], a: Point2, b: Point2):
    """Keep the part of ``poly`` in the closed half-plane left of ``a -> b``."""
    if not poly:
        return []
    ex, ey = b.x - a.x, b.y - a.y
    vals = [ex * (p.y - a.y) - ey * (p.x - a.x) for p in poly]
    out = []
    m = len(poly)
    for i in range(m):
        cur, nxt = poly[i], poly[(i + 1) % m]
        fc, fn = vals[i], vals[(i + 1) % m]
        if fc >= 0:
            out.append(cur)
        if (fc > 0 and fn < 0) or (fc < 0 and fn > 0):
            s = fc / (fc - fn)
            out.append(Point2(cur.x + s * (nxt.x - cur.x), cur.y + s * (nxt.y - cur.y)))
    return _dedupe_cycle(out)


def clip_convex_by_triangle(poly: Sequence[Point2], t: Sequence[Point2]):
    """Intersect a CCW convex polygon with a closed triangle (Sutherland-Hodgman).

    The result keeps degenerate pieces: a shared edge or a single touching
    point come back as 2- or 1-vertex polygons, because the simplices are closed.
    """
    a, b, c = ccw_triangle(t)
    out = list(poly)
    for u, v in ((a, b), (b, c), (c, a)):
        out = clip_by_halfplane(out, u, v)
        if not out:
            break
    return out


def intersect_triangles(triangles: Iterable[Sequence[Point2]]):
    """Common intersection of closed triangles as a (possibly degenerate) CCW polygon."""
    it = iter(triangles)
    poly = list(ccw_triangle(next(it)))
    for t in it:
        poly = clip_convex_by_triangle(poly, t)
        if not poly:
            return []
    return poly


def convex_polygon_contains(poly: Sequence[Point2], p: Point2) -> bool:
    """Closed membership in a CCW convex polygon, including degenerate 1/2-gons."""
    if not poly:
        return False
    if len(poly) == 1:
        return poly[0] == p
    if len(poly) == 2:
        return orient2(poly[0], poly[1], p) == 0 and _on_segment(poly[0], poly[1], p)
    m = len(poly)
    return all(orient2(poly[i], poly[(i + 1) % m], p) >= 0 for i in range(m))


def polygon_area2(poly: Sequence[Point2]) -> Fraction:
    """Twice the signed shoelace area."""
    m = len(poly)
    return sum((poly[i].x * poly[(i + 1) % m].y - poly[(i + 1) % m].x * poly[i].y
                for i in range(m)), Fraction(0))


# ---------------------------------------------------------------- 3-space

def _triangle_normal(t: Sequence[Point3]):
    a, b, c = t
    n = cross(b - a, c - a)
    if n == (0, 0, 0):
        raise DegenerateTriangle("triangle vertices are collinear")
    return n


def _separated(axis, t1, t2) -> bool:
    p1 = [dot(axis, (p.x, p.y, p.z)) for p in t1]
    p2 = [dot(axis, (p.x, p.y, p.z)) for p in t2]
    return max(p1) < min(p2) or max(p2) < min(p1)


def triangles_disjoint_3d(t1: Sequence[Point3], t2: Sequence[Point3]) -> bool:
    """True iff two closed triangles in 3-space share no point.

    Separating-axis test over the full candidate set for flat polytopes:
    the two face normals, the nine edge-edge cross products and the six
    in-plane edge normals (the latter matter only for coplanar pairs).
    """
    n1, n2 = _triangle_normal(t1), _triangle_normal(t2)
    e1 = [t1[(i + 1) % 3] - t1[i] for i in range(3)]
    e2 = [t2[(i + 1) % 3] - t2[i] for i in range(3)]
    axes = [n1, n2]
    axes += [cross(u, v) for u in e1 for v in e2]
    axes += [cross(n1, u) for u in e1] + [cross(n2, v) for v in e2]
    for axis in axes:
        if axis != (0, 0, 0) and _separated(axis, t1, t2):
            return True
    return False
