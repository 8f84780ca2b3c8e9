"""Extremal search over candidate edges, and closed-form bound evaluators.

The exact search is a maximum independent set in the conflict hypergraph:
candidates are all C(n, 3) triangles on a point set and a conflict is a
k-tuple that realises the forbidden pattern.  Values are per-configuration
maxima; the true extremal number is a max over all configurations and is
never claimed here.
"""
from __future__ import annotations

import decimal
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .detect import PatternKind, PatternSpec, detect
from .exact import ccw_triangle, clip_convex_by_triangle, triangles_disjoint_3d
from .hypergraph import GeometricHypergraph, PointSet, Simplex, _frac_str, star_construction

DEFAULT_BUDGET = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded("work budget of %d exceeded" % self.limit)


def _check_pattern(ps: PointSet, pattern: PatternSpec) -> None:
    if pattern.kind is PatternKind.STRONGLY_CROSSING and ps.dimension == 2:
        return
    if pattern.kind is PatternKind.PAIRWISE_DISJOINT and ps.dimension == 3:
        return
    raise ValueError("pattern %s is not supported in dimension %d" % (pattern.kind.value, ps.dimension))


class _Relation:
    """Lazy pairwise relation between candidate triangles (crossing, or disjoint in space)."""

    def __init__(self, ps: PointSet, candidates: Sequence[Simplex], pattern: PatternSpec, budget: _Budget):
        self.tris = [tuple(ps[v] for v in e) for e in candidates]
        self.sets = [frozenset(e) for e in candidates]
        self.kind = pattern.kind
        self.budget = budget
        self.cache: Dict[Tuple[int, int], bool] = {}

    def __call__(self, i: int, j: int) -> bool:
        key = (i, j) if i < j else (j, i)
        hit = self.cache.get(key)
        if hit is None:
            self.budget.spend()
            if self.sets[i] & self.sets[j]:
                hit = False
            elif self.kind is PatternKind.STRONGLY_CROSSING:
                hit = bool(clip_convex_by_triangle(list(ccw_triangle(self.tris[i])), self.tris[j]))
            else:
                hit = triangles_disjoint_3d(self.tris[i], self.tris[j])
            self.cache[key] = hit
        return hit

    def completes(self, members: Sequence[int], poly) -> Optional[list]:
        """Polygon state after adding the last member; None when the common point vanishes."""
        if self.kind is not PatternKind.STRONGLY_CROSSING:
            return poly
        self.budget.spend()
        out = clip_convex_by_triangle(poly, self.tris[members[-1]])
        return out or None

    def start(self, i: int):
        if self.kind is PatternKind.STRONGLY_CROSSING:
            return list(ccw_triangle(self.tris[i]))
        return None


def _forbidden_extensions(rel: _Relation, k: int, pool: Sequence[int], anchor: int, limit: Optional[int] = None):
    """k-tuples (as sorted index tuples) containing ``anchor`` plus k-1 members of ``pool``."""
    nbrs = [j for j in pool if j != anchor and rel(anchor, j)]
    found = []

    def rec(start, chosen, state):
        if len(chosen) == k:
            found.append(tuple(sorted(chosen)))
            return limit is not None and len(found) >= limit
        for t in range(start, len(nbrs)):
            j = nbrs[t]
            if not all(rel(j, c) for c in chosen if c != anchor):
                continue
            nxt = rel.completes(chosen + [j], state)
            if nxt is None and rel.kind is PatternKind.STRONGLY_CROSSING:
                continue
            if rec(t + 1, chosen + [j], nxt):
                return True
        return False

    rec(0, [anchor], rel.start(anchor))
    return found


@dataclass(frozen=True)
class ConflictSet:
    pattern: PatternSpec
    candidates: Tuple[Simplex, ...]
    tuples: Tuple[Tuple[int, ...], ...]

    def __len__(self):
        return len(self.tuples)


def candidate_edges(ps: PointSet, r: int = 3) -> Tuple[Simplex, ...]:
    return tuple(combinations(range(len(ps)), r))


def enumerate_conflicts(ps: PointSet, pattern: PatternSpec, budget: Optional[int] = DEFAULT_BUDGET) -> ConflictSet:
    """All forbidden k-tuples among the C(n, 3) candidate triangles."""
    _check_pattern(ps, pattern)
    cands = candidate_edges(ps)
    k = pattern.k
    if len(ps) < 3 * k:
        return ConflictSet(pattern, cands, ())
    b = _Budget(budget)
    rel = _Relation(ps, cands, pattern, b)
    out = []
    for i in range(len(cands)):
        # anchor on the smallest index so each tuple is produced once
        out.extend(_forbidden_extensions(rel, k, range(i + 1, len(cands)), i))
    return ConflictSet(pattern, cands, tuple(sorted(out)))


@dataclass(frozen=True)
class ExtremalResult:
    points: PointSet
    pattern: PatternSpec
    count: int
    edges: Tuple[Simplex, ...]
    exact: bool
    source: str = "search"
    nodes: int = 0

    def hypergraph(self) -> GeometricHypergraph:
        return GeometricHypergraph(self.points, 3, self.edges)

    def summary(self) -> dict:
        return {
            "n": len(self.points),
            "pattern": self.pattern.label,
            "count": self.count,
            "exact": self.exact,
            "source": self.source,
            "edges": [list(e) for e in self.edges],
        }


def star_count(n: int, r: int = 3) -> int:
    return comb(n - 1, r - 1)


def max_independent_set(m: int, k: int, tuples: Sequence[Sequence[int]], lower: Sequence[int] = (),
                        budget: Optional[int] = DEFAULT_BUDGET) -> Tuple[List[int], int]:
    """Largest subset of ``range(m)`` containing no tuple entirely; returns (members, nodes).

    Branch and bound: candidates by conflict degree, highest first; the bound
    is current size plus undecided candidates.  A candidate all of whose
    tuples already hold an excluded member is only ever included, which
    cannot lose optimality.
    """
    b = _Budget(budget)
    of: List[List[int]] = [[] for _ in range(m)]
    for t, tup in enumerate(tuples):
        for v in tup:
            of[v].append(t)
    order = sorted(range(m), key=lambda v: (-len(of[v]), v))
    inc = [0] * len(tuples)
    exc = [0] * len(tuples)
    best = list(lower)
    chosen: List[int] = []

    def rec(i):
        nonlocal best
        b.spend()
        if len(chosen) + (m - i) <= len(best):
            return
        if i == m:
            best = list(chosen)
            return
        v = order[i]
        ts = of[v]
        if all(inc[t] < k - 1 for t in ts):
            for t in ts:
                inc[t] += 1
            chosen.append(v)
            rec(i + 1)
            chosen.pop()
            for t in ts:
                inc[t] -= 1
            if all(exc[t] > 0 for t in ts):
                return
        for t in ts:
            exc[t] += 1
        rec(i + 1)
        for t in ts:
            exc[t] -= 1

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, m + 100))
    try:
        rec(0)
    finally:
        sys.setrecursionlimit(limit)
    return sorted(best), b.used


def _verify(ps: PointSet, pattern: PatternSpec, edges: Sequence[Simplex]) -> None:
    if detect(GeometricHypergraph(ps, 3, tuple(edges)), pattern) is not None:
        raise AssertionError("result edge set contains the forbidden pattern")


def extremal_exact(ps: PointSet, pattern: PatternSpec, budget: Optional[int] = DEFAULT_BUDGET,
                   verify: bool = True) -> ExtremalResult:
    conflicts = enumerate_conflicts(ps, pattern, budget)
    cands = conflicts.candidates
    index = {e: i for i, e in enumerate(cands)}
    star = [index[e] for e in star_construction(ps, 0).edges]
    members, nodes = max_independent_set(len(cands), pattern.k, conflicts.tuples, star, budget)
    edges = tuple(cands[i] for i in members)
    if verify:
        _verify(ps, pattern, edges)
    return ExtremalResult(ps, pattern, len(edges), edges, True, "branch-and-bound", nodes)


def extremal_greedy(ps: PointSet, pattern: PatternSpec, seed: int, budget: Optional[int] = None,
                    verify: bool = False) -> ExtremalResult:
    """Random-order greedy maximal conflict-free set; falls back to the star when that is larger."""
    _check_pattern(ps, pattern)
    cands = candidate_edges(ps)
    order = list(range(len(cands)))
    random.Random(seed).shuffle(order)
    b = _Budget(budget)
    rel = _Relation(ps, cands, pattern, b)
    kept: List[int] = []
    for c in order:
        if len(kept) < pattern.k - 1 or not _forbidden_extensions(rel, pattern.k, kept, c, limit=1):
            kept.append(c)
    edges = tuple(sorted(cands[i] for i in kept))
    source = "greedy"
    if len(edges) < star_count(len(ps)):
        edges, source = star_construction(ps, 0).edges, "star"
    if verify:
        _verify(ps, pattern, edges)
    return ExtremalResult(ps, pattern, len(edges), edges, False, source, b.used)


# ---------------------------------------------------------------- bounds

@dataclass(frozen=True)
class BoundEstimate:
    theorem: str
    params: Dict[str, object]
    exponent: Optional[Fraction]
    value: Optional[Union[int, Fraction]]  # exact value when available
    decimal: str
    precision: int
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": {k: str(v) for k, v in self.params.items()},
            "exponent": _frac_str(self.exponent) if self.exponent is not None else None,
            "value": _frac_str(self.value) if self.value is not None else None,
            "decimal": self.decimal,
            "precision_digits": self.precision,
            "notes": list(self.notes),
        }


def _ctx(precision: int) -> decimal.Context:
    return decimal.Context(prec=precision)


def _dec(q: Union[int, Fraction], ctx: decimal.Context) -> decimal.Decimal:
    q = Fraction(q)
    return ctx.divide(decimal.Decimal(q.numerator), decimal.Decimal(q.denominator))


def _power(base: Union[int, Fraction], exponent: Fraction, ctx: decimal.Context) -> decimal.Decimal:
    base = Fraction(base)
    if base == 0:
        return decimal.Decimal(0) if exponent > 0 else decimal.Decimal(1)
    return ctx.exp(ctx.multiply(ctx.ln(_dec(base, ctx)), _dec(exponent, ctx)))


def iroot(x: int, r: int) -> Optional[int]:
    """Exact integer r-th root of ``x >= 0``, or None."""
    if x < 0:
        return None
    if x < 2:
        return x
    lo, hi = 0, 1 << (x.bit_length() // r + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** r <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** r == x else None


def _exact_root(q: Fraction, r: int) -> Optional[Fraction]:
    num, den = iroot(q.numerator, r), iroot(q.denominator, r)
    return Fraction(num, den) if num is not None and den is not None else None


def _power_estimate(theorem, params, exponent, n, precision, notes=()):
    ctx = _ctx(precision)
    exact = None
    if exponent.denominator == 1 and exponent >= 0:
        exact = Fraction(n) ** int(exponent)
    dec = _dec(exact, ctx) if exact is not None else _power(n, exponent, ctx)
    return BoundEstimate(theorem, params, exponent, exact, str(+dec), precision, tuple(notes))


def bound_tverberg(d: int, k: int, n: int, precision: int = 30) -> BoundEstimate:
    """Colored-Tverberg exponent d + 1 - 1/(2k-1)^d for strongly crossing edges."""
    if d < 1 or k < 2:
        raise ValueError("need d >= 1 and k >= 2")
    e = d + 1 - Fraction(1, (2 * k - 1) ** d)
    return _power_estimate("tverberg", {"d": d, "k": k, "n": n}, e, n, precision,
                           ("upper bound up to a constant factor",))


def bound_akiyama_alon(d: int, k: int, n: int, precision: int = 30) -> BoundEstimate:
    """Exponent d - (1/k)^(d-1) for edge sets with no k pairwise disjoint edges."""
    if d < 1 or k < 2:
        raise ValueError("need d >= 1 and k >= 2")
    e = d - Fraction(1, k) ** (d - 1)
    return _power_estimate("akiyama-alon", {"d": d, "k": k, "n": n}, e, n, precision)


def bound_kst(n: int, m: int, r: int, s: Union[int, Fraction], precision: int = 50) -> BoundEstimate:
    """(s-1)^(1/r) * n * m^(1-1/r) + (r-1) * m, exact when the root is rational."""
    if n < 1 or m < 1 or r < 1 or s < 1:
        raise ValueError("need n, m, r, s >= 1")
    s = Fraction(s)
    ctx = _ctx(precision)
    radicand = (s - 1) * Fraction(m) ** (r - 1)   # (s-1)^(1/r) m^(1-1/r) = radicand^(1/r)
    tail = (r - 1) * m
    root = _exact_root(radicand, r)
    params = {"n": n, "m": m, "r": r, "s": s}
    if root is not None:
        value = root * n + tail
        return BoundEstimate("kst", params, None, value, str(+_dec(value, ctx)), precision)
    head = ctx.multiply(_power(radicand, Fraction(1, r), ctx), decimal.Decimal(n))
    return BoundEstimate("kst", params, None, None, str(ctx.add(head, decimal.Decimal(tail))), precision)


def bound_kst_crossing_mode(n: int, k: int, c_k: Union[int, Fraction, None] = None,
                       precision: int = 50) -> Tuple[BoundEstimate, BoundEstimate]:
    """The bipartite count with m = n^2, r = k, s = c_k n, and its leading form.

    ``c_k`` is not given by the source; the default 1 is a placeholder and
    is flagged in the notes.
    """
    notes = []
    if c_k is None:
        c_k = 1
        notes.append("c_k unspecified by source; placeholder 1 used")
    full = bound_kst(n, n * n, k, Fraction(c_k) * n, precision)
    full = BoundEstimate(full.theorem, dict(full.params, c_k=c_k), full.exponent, full.value,
                         full.decimal, precision, tuple(notes))
    ctx = _ctx(precision)
    e = 3 - Fraction(1, k)
    lead = ctx.multiply(_power(c_k, Fraction(1, k), ctx), _power(n, e, ctx))
    asym = ctx.add(lead, decimal.Decimal((k - 1) * n * n))
    form = BoundEstimate("kst-crossing-asymptotic", {"n": n, "k": k, "c_k": c_k}, e, None,
                         str(asym), precision, tuple(notes) + ("c_k^(1/k) n^(3-1/k) + (k-1) n^2",))
    return full, form


# ---------------------------------------------------------------- experiments

CSV_HEADER = ("seed", "n", "pattern", "k", "star_count", "greedy_count", "exact_count",
              "exact_flag", "runtime_ms")


def experiment_row(pattern: PatternSpec, n: int, seed: int, exact_budget: Optional[int] = DEFAULT_BUDGET,
                   run_exact: bool = True, timing: bool = False) -> Dict[str, object]:
    """One CSV row.  ``runtime_ms`` stays empty unless ``timing`` so reruns are byte-identical."""
    from .hypergraph import generate_random

    d = 2 if pattern.kind is PatternKind.STRONGLY_CROSSING else 3
    t0 = time.perf_counter()
    ps = generate_random(d, n, seed)
    greedy = extremal_greedy(ps, pattern, seed)
    exact_count, flag = "", "false"
    if run_exact:
        try:
            res = extremal_exact(ps, pattern, exact_budget)
            exact_count, flag = res.count, "true"
        except BudgetExceeded:
            exact_count, flag = "budget_exceeded", "false"
    return {
        "seed": seed, "n": n, "pattern": pattern.label, "k": pattern.k,
        "star_count": star_count(n), "greedy_count": greedy.count,
        "exact_count": exact_count, "exact_flag": flag,
        "runtime_ms": "%d" % round(1000 * (time.perf_counter() - t0)) if timing else "",
    }


def ensemble_lower_bound(rows: Sequence[Dict[str, object]]) -> Dict[int, Dict[str, object]]:
    """Per n, the best count found across seeds: an ensemble lower bound on ex, nothing more."""
    out: Dict[int, Dict[str, object]] = {}
    for row in rows:
        counts = [row["greedy_count"]] + ([row["exact_count"]] if row["exact_flag"] == "true" else [])
        best = max(int(c) for c in counts)
        cur = out.setdefault(int(row["n"]), {"label": "ensemble lower bound on ex", "value": 0})
        cur["value"] = max(cur["value"], best)
    return out
