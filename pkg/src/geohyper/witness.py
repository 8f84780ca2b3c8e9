"""Witness extraction: the crossing and disjointness arguments run on real inputs.

Each extractor builds its configuration the way the counting argument
does and re-verifies the result with the detectors before returning it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .arrangement import (
    NotPairwiseCrossing, ParallelLines, TopLevel, VerticalLine, XInterval, helly_1d,
    segment_on_top_level, top_level, triangle_on_top_level,
)
from .detect import Witness, find_pairwise_disjoint, find_strongly_crossing
from .exact import (
    Plane3, Point2, Segment2, Side, cross, det3, dot, plane_side, segment_intersection_point,
    triangle_contains_2d, triangles_disjoint_3d,
)
from .hypergraph import (
    BaseInfo, GeometricHypergraph, HypergraphError, Simplex, base_table, require,
)

Vector = Tuple[Fraction, Fraction, Fraction]


class ExtractionError(HypergraphError):
    pass


class PreconditionUnmet(ExtractionError):
    pass


class CaseFallthrough(ExtractionError):
    """A branch the argument rules out was reached: a predicate is wrong."""


class IntervalDisconnected(ExtractionError):
    pass


class HellyEmpty(ExtractionError):
    pass


class NoSeparatingRed(ExtractionError):
    pass


class SharedVertex(ExtractionError):
    pass


class GeneralPositionViolation(HypergraphError):
    pass


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class _BaseIndex:
    """Lookup of plane edges by (base, apex)."""

    def __init__(self, H: GeometricHypergraph):
        self.H = H
        self.info: List[BaseInfo] = base_table(H)
        self.by_pair: Dict[Tuple[Tuple[int, int], int], int] = {}
        self.apexes: Dict[Tuple[int, int], List[int]] = {}
        for i, inf in enumerate(self.info):
            self.by_pair[(inf.base, inf.apex)] = i
            self.apexes.setdefault(inf.base, []).append(inf.apex)
        for b in self.apexes:
            self.apexes[b].sort()

    def edge(self, base: Tuple[int, int], apex: int) -> Optional[int]:
        return self.by_pair.get((base, apex))

    def above(self, base: Tuple[int, int], apex: int) -> bool:
        i = self.edge(base, apex)
        return i is not None and self.info[i].position == Side.ABOVE


def _q(v) -> str:
    """Rational as "p/q"; infinite interval ends as "-inf" / "inf"."""
    if isinstance(v, float):
        return "inf" if v > 0 else "-inf"
    v = Fraction(v)
    return "%d/%d" % (v.numerator, v.denominator)


def _canon(b: Sequence[int]) -> Tuple[int, int]:
    u, v = b
    if u == v:
        raise PreconditionUnmet("degenerate base %r" % (b,))
    return (u, v) if u < v else (v, u)


def _top_level_or_fail(segs: Sequence[Segment2]) -> TopLevel:
    try:
        return top_level(segs)
    except (NotPairwiseCrossing, ParallelLines, VerticalLine) as exc:
        raise PreconditionUnmet("bases are not pairwise crossing: %s" % exc) from exc


def _reverify(H: GeometricHypergraph, indices: Sequence[int]) -> Witness:
    w = find_strongly_crossing(H.subgraph(indices), len(indices))
    if w is None:
        raise CaseFallthrough("extracted edges %r are not strongly crossing" % (tuple(indices),))
    return w


# ---------------------------------------------------------------- four crossing bases

@dataclass(frozen=True)
class FourCrossingExtraction:
    case: int                          # number of bases the top level visits, minus one
    branch: str
    visited: Tuple[Tuple[int, int], ...]  # bases along the top level, left to right
    point: Point2
    edges: Tuple[Simplex, ...]
    edge_indices: Tuple[int, ...]
    witness: Witness

    def trace(self) -> dict:
        return {
            "case": self.case,
            "top_level_visits": len(self.visited),
            "branch": self.branch,
            "visited_bases": [list(b) for b in self.visited],
            "point": [_q(self.point.x), _q(self.point.y)],
            "edges": [list(e) for e in self.edges],
            "edge_indices": list(self.edge_indices),
        }


def extract_sc3_from_four_crossing(H: GeometricHypergraph, v: int, bases: Sequence[Sequence[int]],
                                   min_apexes: int = 3) -> FourCrossingExtraction:
    """Turn four pairwise crossing bases of the link graph of ``v`` into three strongly crossing edges.

    The top level of the four bases visits two, three or four of them;
    each count fixes a crossing point ``p`` of two visited bases and a
    third base whose triangle with ``v`` contains ``p``.  Two further edges
    on the crossing bases, with fresh apexes, complete the triple.
    """
    require(H, 2, 3)
    if len(bases) != 4:
        raise PreconditionUnmet("exactly four bases are required")
    idx = _BaseIndex(H)
    P = H.points
    bs = [_canon(b) for b in bases]
    for b in bs:
        if not idx.above(b, v):
            raise PreconditionUnmet("base %r is not in the link graph of %d with %d strictly above" % (b, v, v))
    segs = [Segment2(P[a], P[b]) for a, b in bs]
    L = _top_level_or_fail(segs)
    order = L.order
    visited = tuple(bs[i] for i in order)

    def tri(i):
        return (P[v], P[bs[i][0]], P[bs[i][1]])

    def meet(i, j):
        return segment_intersection_point(segs[i], segs[j])

    if len(order) == 2:
        case = 1
        b1, b2 = order
        p = meet(b1, b2)
        rest = [i for i in range(4) if i not in order]
        holder = next((i for i in rest if triangle_contains_2d(tri(i), p)), None)
        if holder is None:
            raise CaseFallthrough("no remaining triangle holds the crossing of the two visited bases")
        partners = (b1, b2)
        branch = "below-crossing"
    elif len(order) == 3:
        case = 2
        b1, b2, b3 = order
        b4 = next(i for i in range(4) if i not in order)
        q = meet(b4, b2)
        left_x, right_x = L.breakpoints[0].x, L.breakpoints[1].x
        if q.x >= right_x:
            branch, partners = "right", (b2, b3)
        elif q.x <= left_x:
            branch, partners = "left", (b1, b2)
        else:
            raise CaseFallthrough("fourth base meets the visited middle base on the top level")
        p = meet(*partners)
        holder = b4
        if not triangle_contains_2d(tri(holder), p):
            raise CaseFallthrough("triangle of the unvisited base misses the crossing point")
    elif len(order) == 4:
        case = 3
        b1, b2, b3, b4 = order
        p = meet(b2, b3)
        if triangle_contains_2d(tri(b1), p):
            holder, branch = b1, "first"
        elif triangle_contains_2d(tri(b4), p):
            holder, branch = b4, "last"
        else:
            raise CaseFallthrough("neither outer triangle holds the middle crossing")
        partners = (b2, b3)
    else:
        raise CaseFallthrough("top level of four crossing lines visits %d of them" % len(order))

    groups = [idx.apexes.get(bs[i], []) for i in partners]
    for i, g in zip(partners, groups):
        if len(g) < min_apexes:
            raise PreconditionUnmet("base %r has %d apexes, need %d" % (bs[i], len(g), min_apexes))
    forbidden = {v, *bs[holder], *bs[partners[0]], *bs[partners[1]]}
    choice = None
    for x in groups[0]:
        if x in forbidden:
            continue
        y = next((y for y in groups[1] if y not in forbidden and y != x), None)
        if y is not None:
            choice = (x, y)
            break
    if choice is None:
        raise PreconditionUnmet("apex supply too small to avoid vertex collisions")
    picks = [(bs[holder], v), (bs[partners[0]], choice[0]), (bs[partners[1]], choice[1])]
    edge_ids = tuple(idx.edge(b, a) for b, a in picks)
    w = _reverify(H, edge_ids)
    return FourCrossingExtraction(case, branch, visited, p,
                                  tuple(H.edges[i] for i in edge_ids), edge_ids, w)


def find_four_crossing_configuration(H: GeometricHypergraph, min_apexes: int = 3):
    """Some ``(v, bases)`` with four pairwise crossing bases in the link graph of ``v``, or None."""
    from .detect import find_pairwise_crossing_segments

    require(H, 2, 3)
    idx = _BaseIndex(H)
    for v in range(H.n):
        bases = sorted(inf.base for inf in idx.info if inf.apex == v and inf.position == Side.ABOVE)
        bases = [b for b in bases if len(idx.apexes[b]) >= min_apexes]
        if len(bases) < 4:
            continue
        segs = [Segment2(H.points[a], H.points[b]) for a, b in bases]
        hit = find_pairwise_crossing_segments(segs, 4)
        if hit is not None:
            return v, [bases[i] for i in hit]
    return None


# ---------------------------------------------------------------- greedy selection on the top level

@dataclass(frozen=True)
class GreedyHellyResult:
    bases: Tuple[Tuple[int, int], ...]   # in increasing slope order
    apexes: Tuple[int, ...]              # apex chosen for each base
    edges: Tuple[Simplex, ...]
    edge_indices: Tuple[int, ...]
    intervals: Tuple[XInterval, ...]
    pairwise_ok: bool
    point: Point2
    witness: Witness

    def trace(self) -> dict:
        return {
            "bases": [list(b) for b in self.bases],
            "apexes": list(self.apexes),
            "edges": [list(e) for e in self.edges],
            "edge_indices": list(self.edge_indices),
            "intervals": [[_q(iv.lo), _q(iv.hi)] for iv in self.intervals],
            "pairwise_intersecting": self.pairwise_ok,
            "point": [_q(self.point.x), _q(self.point.y)],
        }


def greedy_helly_selection(H: GeometricHypergraph, bases: Sequence[Sequence[int]],
                           apexes: Sequence[int]) -> GreedyHellyResult:
    """k strongly crossing edges from k crossing bases that share k apexes.

    Bases are taken in slope order; for each one the unused apex whose
    right side reaches furthest right along the top level is consumed.  The
    chosen triangles meet the top level in pairwise intersecting intervals,
    so the 1-D Helly point lifted onto the top level is common to all.
    """
    require(H, 2, 3)
    k = len(bases)
    if k < 2 or len(apexes) != k or len(set(apexes)) != k:
        raise PreconditionUnmet("need k >= 2 bases and k distinct apexes")
    idx = _BaseIndex(H)
    P = H.points
    bs = [_canon(b) for b in bases]
    for b in bs:
        for a in apexes:
            if not idx.above(b, a):
                raise PreconditionUnmet("conv(%d + %r) is not an edge with apex above base" % (a, b))
    bs.sort(key=lambda b: Segment2(P[b[0]], P[b[1]]).line().slope)
    segs = [Segment2(P[a], P[b]) for a, b in bs]
    L = _top_level_or_fail(segs)

    remaining = sorted(apexes)
    chosen: List[int] = []
    for b in bs:
        right_end = idx.info[idx.edge(b, remaining[0])].right_end
        best, best_x = None, None
        for a in remaining:
            hits = segment_on_top_level(L, P[a], P[right_end])
            if not hits:
                raise CaseFallthrough("right side from apex %d never reaches the top level" % a)
            x = hits[-1].hi
            if best_x is None or x > best_x:
                best, best_x = a, x
        chosen.append(best)
        remaining.remove(best)

    edge_ids = tuple(idx.edge(b, a) for b, a in zip(bs, chosen))
    intervals = []
    for i in edge_ids:
        ivs = triangle_on_top_level(L, H.simplex(i))
        if len(ivs) != 1:
            if not ivs:
                raise HellyEmpty("edge %r misses the top level" % (H.edges[i],))
            raise IntervalDisconnected("edge %r meets the top level in %d pieces" % (H.edges[i], len(ivs)))
        intervals.append(ivs[0])
    pairwise_ok = all(s.intersects(t) for s, t in combinations(intervals, 2))
    x = helly_1d(intervals)
    if x is None:
        raise HellyEmpty("chosen edges have no common point on the top level")
    point = L.point_at(x)
    if not all(triangle_contains_2d(H.simplex(i), point) for i in edge_ids):
        raise CaseFallthrough("lifted Helly point is outside a chosen edge")
    w = _reverify(H, edge_ids)
    return GreedyHellyResult(tuple(bs), tuple(chosen), tuple(H.edges[i] for i in edge_ids), edge_ids,
                             tuple(intervals), pairwise_ok, point, w)


# ---------------------------------------------------------------- red/blue coloring in 3-space

class Color(Enum):
    RED = "red"
    BLUE = "blue"


@dataclass(frozen=True)
class EdgeColoring:
    colors: Tuple[Color, ...]
    blue_degree: Tuple[int, ...]
    groups: Dict[Tuple[int, int], Tuple[int, ...]]
    group_red: Dict[Tuple[int, int], Tuple[int, ...]]  # red members decided inside each pair group

    @property
    def red(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.colors) if c is Color.RED)

    @property
    def blue(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.colors) if c is Color.BLUE)

    def summary(self) -> dict:
        return {
            "red": len(self.red),
            "blue": len(self.blue),
            "max_group_red": max((len(r) for r in self.group_red.values()), default=0),
            "blue_degree": list(self.blue_degree),
        }


def red_blue_color(H: GeometricHypergraph) -> EdgeColoring:
    """An edge is red when, inside some pair group, every member lies on one closed side of its plane."""
    require(H, 3, 3)
    P = H.points
    groups: Dict[Tuple[int, int], List[int]] = {}
    for i, e in enumerate(H.edges):
        for pair in combinations(e, 2):
            groups.setdefault(pair, []).append(i)
    planes = [Plane3.through(*H.simplex(i)) for i in range(len(H))]
    red = [False] * len(H)
    group_red = {}
    for pair, members in groups.items():
        reds = []
        for t in members:
            sides = set()
            for s in members:
                third = next(w for w in H.edges[s] if w not in pair)
                sides.add(plane_side(planes[t], P[third]))
            if not (Side.ABOVE in sides and Side.BELOW in sides):
                reds.append(t)
                red[t] = True
        group_red[pair] = tuple(reds)
    colors = tuple(Color.RED if r else Color.BLUE for r in red)
    degree = [0] * H.n
    for i, c in enumerate(colors):
        if c is Color.BLUE:
            for w in H.edges[i]:
                degree[w] += 1
    return EdgeColoring(colors, tuple(degree), {p: tuple(m) for p, m in groups.items()}, group_red)


# ---------------------------------------------------------------- sphere link

@dataclass(frozen=True)
class SphereGraph:
    """Link of a vertex: unnormalised direction vectors joined by shorter great-circle arcs."""

    directions: Dict[int, Vector]
    arcs: Tuple[Tuple[int, int], ...]
    center: Optional[int] = None
    arc_edges: Tuple[int, ...] = ()

    def __post_init__(self):
        keys = sorted(self.directions)
        for k in keys:
            if tuple(self.directions[k]) == (0, 0, 0):
                raise GeneralPositionViolation("zero direction for %r" % k)
        for a, b in combinations(keys, 2):
            if cross(self.directions[a], self.directions[b]) == (0, 0, 0):
                raise GeneralPositionViolation("directions %r and %r are parallel" % (a, b))
        for a, b, c in combinations(keys, 3):
            if det3(self.directions[a], self.directions[b], self.directions[c]) == 0:
                raise GeneralPositionViolation("directions %r, %r, %r lie on a great circle" % (a, b, c))
        for a, b in self.arcs:
            if a not in self.directions or b not in self.directions or a == b:
                raise GeneralPositionViolation("arc (%r, %r) has bad endpoints" % (a, b))

    @property
    def n(self) -> int:
        return len(self.directions)

    def arc_vectors(self, i: int) -> Tuple[Vector, Vector]:
        a, b = self.arcs[i]
        return self.directions[a], self.directions[b]


def build_sphere_link(H: GeometricHypergraph, v: int, blue_edges: Sequence[int],
                      coloring: Optional[EdgeColoring] = None) -> SphereGraph:
    require(H, 3, 3)
    P = H.points
    directions: Dict[int, Vector] = {}
    arcs, owners = [], []
    for i in blue_edges:
        e = H.edges[i]
        if v not in e:
            raise PreconditionUnmet("edge %r does not contain %d" % (e, v))
        if coloring is not None and coloring.colors[i] is not Color.BLUE:
            raise PreconditionUnmet("edge %r is not blue" % (e,))
        x, y = (w for w in e if w != v)
        for w in (x, y):
            if w not in directions:
                directions[w] = P[w] - P[v]
        arcs.append((x, y))
        owners.append(i)
    return SphereGraph(directions, tuple(arcs), v, tuple(owners))


def arcs_avoiding(u1: Vector, w1: Vector, u2: Vector, w2: Vector) -> bool:
    """Each arc lies strictly on one side of the other's great circle."""
    n1, n2 = cross(u1, w1), cross(u2, w2)
    s1, s2 = _sign(dot(n1, u2)), _sign(dot(n1, w2))
    if s1 == 0 or s1 != s2:
        return False
    t1, t2 = _sign(dot(n2, u1)), _sign(dot(n2, w1))
    return t1 != 0 and t1 == t2


def iter_avoiding_pairs(G: SphereGraph) -> Iterator[Tuple[int, int]]:
    for i, j in combinations(range(len(G.arcs)), 2):
        if arcs_avoiding(*G.arc_vectors(i), *G.arc_vectors(j)):
            yield (i, j)


def find_avoiding_pair(G: SphereGraph) -> Optional[Tuple[int, int]]:
    """Lexicographically first pair of avoiding arcs (indices into ``G.arcs``)."""
    return next(iter_avoiding_pairs(G), None)


# ---------------------------------------------------------------- disjoint pair

@dataclass(frozen=True)
class DisjointPair:
    blue_edge: int      # conv(x, y, v)
    red_edge: int       # conv(w, z, p), separated from the blue edge by plane(w, z, v)
    x_y: Tuple[int, int]
    w_z: Tuple[int, int]
    p: int
    simplices: Tuple[Simplex, Simplex] = ()

    @property
    def edges(self) -> Tuple[int, int]:
        return tuple(sorted((self.blue_edge, self.red_edge)))


def extract_disjoint_pair(H: GeometricHypergraph, coloring: EdgeColoring, v: int,
                          arcs: Sequence[Sequence[int]]) -> DisjointPair:
    """Two disjoint edges from a pair of avoiding arcs in the blue link of ``v``.

    With ``h`` the plane of the blue edge ``conv(w, z, v)``, the other blue
    edge ``conv(x, y, v)`` sits on one side of ``h``; a red member
    ``conv(w, z, p)`` of the ``wz`` group with ``p`` strictly on the other
    side is separated from it by ``h``.
    """
    require(H, 3, 3)
    P = H.points
    (a1, a2), (b1, b2) = arcs
    lookup = H.edge_index
    e_first = lookup.get(tuple(sorted((v, a1, a2))))
    e_second = lookup.get(tuple(sorted((v, b1, b2))))
    for e in (e_first, e_second):
        if e is None or coloring.colors[e] is not Color.BLUE:
            raise PreconditionUnmet("arcs must come from blue edges through %d" % v)
    collided = False
    for (x, y), (w, z), blue in (((a1, a2), (b1, b2), e_first), ((b1, b2), (a1, a2), e_second)):
        h = Plane3.through(P[w], P[z], P[v])
        sx, sy = plane_side(h, P[x]), plane_side(h, P[y])
        if sx == Side.ON or sx != sy:
            continue
        wz = (min(w, z), max(w, z))
        candidates = []
        for r in coloring.group_red.get(wz, ()):
            p = next(u for u in H.edges[r] if u not in wz)
            if plane_side(h, P[p]) == -sx:
                candidates.append((p, r))
        for p, r in sorted(candidates):
            if p in (x, y, v):
                collided = True
                continue
            if not triangles_disjoint_3d(H.simplex(blue), H.simplex(r)):
                raise CaseFallthrough("separated edges %r and %r intersect" % (H.edges[blue], H.edges[r]))
            return DisjointPair(blue, r, (x, y), (w, z), p, (H.edges[blue], H.edges[r]))
    if collided:
        raise SharedVertex("every separating red edge reuses a vertex of the blue edge")
    raise NoSeparatingRed("no red edge of the pair group lies strictly across the plane")


@dataclass(frozen=True)
class DisjointPipelineResult:
    coloring: EdgeColoring
    vertex: Optional[int]
    link_size: int
    avoiding: Optional[Tuple[Tuple[int, int], Tuple[int, int]]]
    pair: Optional[DisjointPair]
    attempts: int = 0

    def trace(self) -> dict:
        out = {
            "coloring": self.coloring.summary(),
            "vertex": self.vertex,
            "link_arcs": self.link_size,
            "avoiding_pair": [list(a) for a in self.avoiding] if self.avoiding else None,
            "attempts": self.attempts,
            "found": self.pair is not None,
        }
        if self.pair is not None:
            out["disjoint_edges"] = [list(e) for e in self.pair.simplices]
            out["blue_edge"] = self.pair.blue_edge
            out["red_edge"] = self.pair.red_edge
            out["p"] = self.pair.p
        return out


def disjoint_pair_pipeline(H: GeometricHypergraph) -> DisjointPipelineResult:
    """Color, link the blue edges at each vertex (largest blue degree first), extract from avoiding arcs."""
    coloring = red_blue_color(H)
    order = sorted(range(H.n), key=lambda u: (-coloring.blue_degree[u], u))
    attempts = 0
    first_vertex, first_size = None, 0
    for v in order:
        blue = [i for i in coloring.blue if v in H.edges[i]]
        if not blue:
            break
        G = build_sphere_link(H, v, blue, coloring)
        if first_vertex is None:
            first_vertex, first_size = v, len(G.arcs)
        for i, j in iter_avoiding_pairs(G):
            attempts += 1
            try:
                pair = extract_disjoint_pair(H, coloring, v, (G.arcs[i], G.arcs[j]))
            except (NoSeparatingRed, SharedVertex):
                continue
            w = find_pairwise_disjoint(H.subgraph(pair.edges), 2)
            if w is None:
                raise CaseFallthrough("extracted pair fails the disjointness detector")
            return DisjointPipelineResult(coloring, v, len(G.arcs), (G.arcs[i], G.arcs[j]), pair, attempts)
    return DisjointPipelineResult(coloring, first_vertex, first_size, None, None, attempts)
