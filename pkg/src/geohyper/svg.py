"""Plain SVG pictures: segment arrangements with their top level, and count-vs-n plots.

Presentation only; coordinates are rounded to floats here and nowhere else.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple
from xml.sax.saxutils import escape

from .arrangement import TopLevel, top_level
from .exact import Segment2

MARGIN = 0.05
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _viewbox(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float, float, float]:
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
    return x0 - MARGIN * w, y0 - MARGIN * h, w * (1 + 2 * MARGIN), h * (1 + 2 * MARGIN)


def _fmt(v: float) -> str:
    return ("%.6g" % v)


def _stroke(px: float) -> str:
    return 'stroke-width="%s" vector-effect="non-scaling-stroke"' % _fmt(px)


def _doc(box, body: List[str], aspect: str = "xMidYMid meet") -> str:
    x, y, w, h = box
    head = ('<svg xmlns="http://www.w3.org/2000/svg" viewBox="%s %s %s %s" width="600" height="450" '
            'preserveAspectRatio="%s">' % (_fmt(x), _fmt(y), _fmt(w), _fmt(h), aspect))
    return "\n".join([head] + body + ["</svg>"]) + "\n"


def arrangement_svg(segments: Sequence[Segment2], L: TopLevel = None) -> str:
    """Segments thin, the top level of their supporting lines thick over the segments' x-range."""
    if L is None:
        L = top_level(segments)
    xs = [float(p.x) for s in segments for p in (s.a, s.b)]
    ys = [float(p.y) for s in segments for p in (s.a, s.b)]
    lo = min(p.x for s in segments for p in (s.a, s.b))
    hi = max(p.x for s in segments for p in (s.a, s.b))
    cuts = [lo] + [b.x for b in L.breakpoints if lo < b.x < hi] + [hi]
    env = [(float(x), float(L.y_at(x))) for x in cuts]
    box = _viewbox(xs, ys)
    flip = box[1] * 2 + box[3]   # mirror y so that up is up
    body = []
    for i, s in enumerate(segments):
        body.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" %s/>' % (
            _fmt(float(s.a.x)), _fmt(flip - float(s.a.y)), _fmt(float(s.b.x)), _fmt(flip - float(s.b.y)),
            COLORS[i % len(COLORS)], _stroke(1)))
    pts = " ".join("%s,%s" % (_fmt(x), _fmt(flip - y)) for x, y in env)
    body.append('<polyline class="top-level" points="%s" fill="none" stroke="black" %s/>'
                % (pts, _stroke(4)))
    return _doc(box, body)


def counts_svg(series: Dict[str, Sequence[Tuple[int, float]]], title: str = "") -> str:
    """One polyline per named series of (n, count) points."""
    xs = [float(n) for pts in series.values() for n, _ in pts]
    ys = [float(c) for pts in series.values() for _, c in pts] + [0.0]
    box = _viewbox(xs, ys)
    flip = box[1] * 2 + box[3]
    body = []
    if title:
        body.append('<title>%s</title>' % escape(title))
    for i, (name, pts) in enumerate(sorted(series.items())):
        if not pts:
            continue
        coords = " ".join("%s,%s" % (_fmt(float(n)), _fmt(flip - float(c))) for n, c in sorted(pts))
        body.append('<polyline class="%s" points="%s" fill="none" stroke="%s" %s/>'
                    % (escape(name), coords, COLORS[i % len(COLORS)], _stroke(2)))
    return _doc(box, body, aspect="none")
