"""Geometric r-hypergraphs: point sets in general position and simplex edges.

General position is stricter than usual so that the "base" of a plane
triangle is always defined:

* plane: no two points share an x-coordinate, no three are collinear;
* space: no two points share an (x, y) projection, no three are collinear,
  no four are coplanar.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .exact import (
    Orientation, Point2, Point3, Segment2, Side, cross, orient2, orient3,
)

Point = Union[Point2, Point3]
Simplex = Tuple[int, ...]


class HypergraphError(ValueError):
    pass


class GeneralPositionError(HypergraphError):
    def __init__(self, violation: "Violation"):
        super().__init__("general position violated: %s at %s" % (violation.kind, violation.indices))
        self.violation = violation


class TieBreak(HypergraphError):
    pass


class GenerationFailed(HypergraphError):
    pass


class UniformityMismatch(HypergraphError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # "equal-x", "equal-xy", "collinear" or "coplanar"
    indices: Tuple[int, ...]


# ---------------------------------------------------------------- general position

def _collinear3(p: Point3, q: Point3, r: Point3) -> bool:
    return cross(q - p, r - p) == (0, 0, 0)


def _violation_with_last(points: Sequence[Point], dimension: int) -> Optional[Violation]:
    """Violations involving the last point only; earlier points are assumed clean."""
    j = len(points) - 1
    pj = points[j]
    if dimension == 2:
        for i in range(j):
            if points[i].x == pj.x:
                return Violation("equal-x", (i, j))
        for a, b in combinations(range(j), 2):
            if orient2(points[a], points[b], pj) == Orientation.COLLINEAR:
                return Violation("collinear", (a, b, j))
        return None
    for i in range(j):
        if points[i].x == pj.x and points[i].y == pj.y:
            return Violation("equal-xy", (i, j))
    for a, b in combinations(range(j), 2):
        if _collinear3(points[a], points[b], pj):
            return Violation("collinear", (a, b, j))
    for a, b, c in combinations(range(j), 3):
        if orient3(points[a], points[b], points[c], pj) == 0:
            return Violation("coplanar", (a, b, c, j))
    return None


def _dimension_of(points: Sequence[Point]) -> int:
    if all(isinstance(p, Point2) for p in points):
        return 2
    if all(isinstance(p, Point3) for p in points):
        return 3
    raise HypergraphError("points must be all Point2 or all Point3")


def validate_general_position(points) -> Optional[Violation]:
    """Return the first violation (in index order), or ``None`` when the points are fine.

    Accepts a :class:`PointSet` or a plain sequence of points.
    """
    if isinstance(points, PointSet):
        points = points.points
    points = list(points)
    if not points:
        return None
    dim = _dimension_of(points)
    for j in range(1, len(points)):
        v = _violation_with_last(points[: j + 1], dim)
        if v is not None:
            return v
    return None


@dataclass(frozen=True)
class PointSet:
    points: Tuple[Point, ...]
    seed: Optional[int] = None
    dimension: int = field(init=False)

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dimension", _dimension_of(pts) if pts else 2)
        v = validate_general_position(pts)
        if v is not None:
            raise GeneralPositionError(v)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


# ---------------------------------------------------------------- hypergraph

@dataclass(frozen=True)
class GeometricHypergraph:
    points: PointSet
    r: int
    edges: Tuple[Simplex, ...]

    def __post_init__(self):
        if not isinstance(self.points, PointSet):
            object.__setattr__(self, "points", PointSet(tuple(self.points)))
        if self.r < 2 or self.r > self.dimension + 1:
            raise HypergraphError("uniformity %d impossible in dimension %d" % (self.r, self.dimension))
        n = len(self.points)
        edges = []
        seen = set()
        for e in self.edges:
            s = tuple(sorted(e))
            if len(s) != self.r or len(set(s)) != self.r:
                raise HypergraphError("edge %r is not %d distinct vertices" % (e, self.r))
            if s[0] < 0 or s[-1] >= n:
                raise HypergraphError("edge %r out of range" % (e,))
            if s in seen:
                raise HypergraphError("duplicate edge %r" % (e,))
            seen.add(s)
            edges.append(s)
        object.__setattr__(self, "edges", tuple(edges))
        # 3-point edges are non-degenerate because no three points are collinear

    @property
    def dimension(self) -> int:
        return self.points.dimension

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self):
        return len(self.edges)

    def simplex(self, i: int) -> Tuple[Point, ...]:
        return tuple(self.points[v] for v in self.edges[i])

    def segment(self, i: int) -> Segment2:
        a, b = self.simplex(i)
        return Segment2(a, b)

    @cached_property
    def edge_index(self) -> Dict[Simplex, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def subgraph(self, indices: Iterable[int]) -> "GeometricHypergraph":
        return GeometricHypergraph(self.points, self.r, tuple(self.edges[i] for i in indices))

    def with_edges(self, edges: Iterable[Simplex]) -> "GeometricHypergraph":
        return GeometricHypergraph(self.points, self.r, tuple(edges))


def require(H: GeometricHypergraph, dimension: int, r: int) -> None:
    if H.dimension != dimension or H.r != r:
        raise UniformityMismatch("expected d=%d, r=%d; got d=%d, r=%d"
                                 % (dimension, r, H.dimension, H.r))


def vertex_disjoint(e: Simplex, f: Simplex) -> bool:
    return not set(e).intersection(f)


# ---------------------------------------------------------------- bases

@dataclass(frozen=True)
class BaseInfo:
    """Base decomposition of one plane triangle.

    ``base`` is the canonical ``(u, v)`` with ``u < v``; ``left_end`` and
    ``right_end`` are the base endpoints ordered by x.
    """

    base: Tuple[int, int]
    left_end: int
    right_end: int
    apex: int
    left_side: Tuple[int, int]
    right_side: Tuple[int, int]
    position: Side


def classify_base(ps: PointSet, e: Simplex) -> BaseInfo:
    if ps.dimension != 2 or len(e) != 3:
        raise UniformityMismatch("base classification needs plane triangles")
    sides = [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])]
    spans = [abs(ps[a].x - ps[b].x) for a, b in sides]
    best = max(spans)
    if spans.count(best) > 1:
        raise TieBreak("two sides of %r have equal x-projection" % (e,))
    u, v = sides[spans.index(best)]
    apex = next(w for w in e if w not in (u, v))
    left, right = (u, v) if ps[u].x < ps[v].x else (v, u)
    o = orient2(ps[left], ps[right], ps[apex])
    position = Side.ABOVE if o == Orientation.CCW else Side.BELOW
    return BaseInfo((min(u, v), max(u, v)), left, right, apex, (left, apex), (apex, right), position)


@dataclass(frozen=True)
class BaseGroup:
    base: Tuple[int, int]
    edges: Tuple[int, ...]


def base_table(H: GeometricHypergraph) -> List[BaseInfo]:
    require(H, 2, 3)
    return [classify_base(H.points, e) for e in H.edges]


def group_by_base(H: GeometricHypergraph) -> List[BaseGroup]:
    groups: Dict[Tuple[int, int], List[int]] = {}
    for i, info in enumerate(base_table(H)):
        groups.setdefault(info.base, []).append(i)
    return [BaseGroup(b, tuple(groups[b])) for b in sorted(groups)]


@dataclass(frozen=True)
class LinkGraph:
    apex: int
    bases: Tuple[Tuple[int, int], ...]
    edges: Tuple[int, ...]  # originating hyperedge per base

    def __len__(self):
        return len(self.bases)

    def segments(self, ps: PointSet) -> List[Segment2]:
        return [Segment2(ps[a], ps[b]) for a, b in self.bases]


def link_graph(H: GeometricHypergraph, v: int, above_only: bool = False) -> LinkGraph:
    """Bases of the edges whose apex is ``v``.

    With ``above_only`` only edges whose apex lies strictly above the base are
    kept, which is the graph the crossing arguments actually use.
    """
    bases, idx = [], []
    for i, info in enumerate(base_table(H)):
        if info.apex != v:
            continue
        if above_only and info.position != Side.ABOVE:
            continue
        bases.append(info.base)
        idx.append(i)
    return LinkGraph(v, tuple(bases), tuple(idx))


# ---------------------------------------------------------------- constructions

def star_construction(ps: PointSet, c: int, r: int = 3) -> GeometricHypergraph:
    others = [i for i in range(len(ps)) if i != c]
    edges = [tuple(sorted((c,) + rest)) for rest in combinations(others, r - 1)]
    return GeometricHypergraph(ps, r, tuple(sorted(edges)))


def complete_hypergraph(ps: PointSet, r: int = 3) -> GeometricHypergraph:
    return GeometricHypergraph(ps, r, tuple(combinations(range(len(ps)), r)))


def random_hypergraph(ps: PointSet, r: int, density: float, seed: int) -> GeometricHypergraph:
    rng = random.Random(seed)
    edges = [e for e in combinations(range(len(ps)), r) if rng.random() < density]
    return GeometricHypergraph(ps, r, tuple(edges))


DEFAULT_BOX = 2 ** 20


def generate_random(d: int, n: int, seed: int, box: int = DEFAULT_BOX,
                    max_tries: int = 1000) -> PointSet:
    """Integer points drawn uniformly from ``[-box, box]^d``, resampled until in general position."""
    if d not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    rng = random.Random(seed)
    make = Point2 if d == 2 else Point3
    pts: List[Point] = []
    for _ in range(n):
        for _attempt in range(max_tries):
            p = make(*(rng.randint(-box, box) for _ in range(d)))
            if _violation_with_last(pts + [p], d) is None:
                pts.append(p)
                break
        else:
            raise GenerationFailed("no general-position point after %d tries" % max_tries)
    return PointSet(tuple(pts), seed=seed)


def generate_convex(n: int, seed: int, radius: int = 10 ** 6, max_tries: int = 1000) -> PointSet:
    """Integer points near a circle, in convex and general position, stored clockwise.

    Candidates are rounded from random angles; convexity and general
    position are then checked exactly and the draw is repeated on failure.
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        angles = sorted((rng.uniform(0.0, 2 * math.pi) for _ in range(n)), reverse=True)
        pts = [Point2(round(radius * math.cos(a)), round(radius * math.sin(a))) for a in angles]
        if len(set(pts)) < n or not is_convex_clockwise(pts):
            continue
        if validate_general_position(pts) is None:
            return PointSet(tuple(pts), seed=seed)
    raise GenerationFailed("could not place %d convex points" % n)


def is_convex_clockwise(points: Sequence[Point2]) -> bool:
    """Every point lies strictly right of every directed hull edge ``p_i -> p_{i+1}``."""
    m = len(points)
    if m < 3:
        return True
    for i in range(m):
        a, b = points[i], points[(i + 1) % m]
        for j in range(m):
            if j != i and j != (i + 1) % m and orient2(a, b, points[j]) != Orientation.CW:
                return False
    return True


# ---------------------------------------------------------------- JSON

def _frac_str(v: Fraction) -> str:
    return "%d/%d" % (v.numerator, v.denominator)


def to_json_dict(obj: Union[PointSet, GeometricHypergraph]) -> dict:
    ps = obj.points if isinstance(obj, GeometricHypergraph) else obj
    out = {
        "dimension": ps.dimension,
        "points": [[_frac_str(c) for c in p] for p in ps.points],
    }
    if isinstance(obj, GeometricHypergraph):
        out["uniformity"] = obj.r
        out["edges"] = [list(e) for e in obj.edges]
    if ps.seed is not None:
        out["seed"] = ps.seed
    return out


def from_json_dict(data: dict) -> Union[PointSet, GeometricHypergraph]:
    try:
        dim = int(data["dimension"])
        make = {2: Point2, 3: Point3}[dim]
        pts = []
        for row in data["points"]:
            if len(row) != dim:
                raise HypergraphError("point %r has wrong dimension" % (row,))
            pts.append(make(*(Fraction(str(c)) for c in row)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, HypergraphError):
            raise
        raise HypergraphError("malformed point-set JSON: %s" % exc) from exc
    ps = PointSet(tuple(pts), seed=data.get("seed"))
    if "edges" not in data:
        return ps
    return GeometricHypergraph(ps, int(data["uniformity"]), tuple(tuple(e) for e in data["edges"]))


def dumps(obj) -> str:
    return json.dumps(to_json_dict(obj), indent=1, sort_keys=True) + "\n"


def loads(text: str):
    return from_json_dict(json.loads(text))
