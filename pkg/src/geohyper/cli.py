"""Command-line front end.

    geohyper generate   --dim 2 --n 10 --seed 7 [--convex] [--edges star|complete|random]
    geohyper detect     INPUT --pattern strongly-crossing --k 3
    geohyper witness    INPUT [--bases 0,1:2,3 --apexes 4,5] [--emit-svg arrangements]
    geohyper extremal   --dim 2 --n 7 --seed 1 --pattern strongly-crossing --k 2 [--greedy]
    geohyper experiment --pattern strongly-crossing --k 3 --n-min 9 --n-max 13 --seeds 5

Exit codes: 0 completed (verdict in payload), 2 precondition or parse
failure, 3 budget exceeded.  JSON payloads use sorted keys and rationals as
"p/q" strings, so identical runs give identical bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import hypergraph as hg
from .arrangement import top_level
from .detect import PatternKind, PatternSpec, detect
from .exact import Segment2, triangle_contains_2d
from .hypergraph import GeometricHypergraph, HypergraphError, PointSet
from .search import (
    CSV_HEADER, DEFAULT_BUDGET, BudgetExceeded, bound_akiyama_alon, bound_kst,
    bound_kst_crossing_mode, bound_tverberg, extremal_exact, extremal_greedy, experiment_row,
)
from .svg import arrangement_svg, counts_svg

EXIT_OK, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3

PATTERNS = {k.value: k for k in PatternKind}


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    dimension: Optional[int] = None
    n: Optional[int] = None
    uniformity: int = 3
    pattern: Optional[PatternSpec] = None
    seed: int = 0
    budget: Optional[int] = DEFAULT_BUDGET
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    precision: int = 50

    def validate(self) -> None:
        if self.dimension is not None and self.dimension not in (2, 3):
            raise CliError("dimension must be 2 or 3")
        if self.n is not None and self.n < 1:
            raise CliError("n must be positive")
        p = self.pattern
        if p is None or self.dimension is None:
            return
        if p.kind is PatternKind.PAIRWISE_DISJOINT and self.dimension != 3:
            raise CliError("the disjoint pattern needs points in 3-space")
        if p.kind is not PatternKind.PAIRWISE_DISJOINT and self.dimension != 2:
            raise CliError("pattern %s needs points in the plane" % p.kind.value)


def _json(payload) -> str:
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _load(path: str):
    try:
        with open(path) as fh:
            return hg.loads(fh.read())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError("cannot read %s: %s" % (path, exc)) from exc


def _load_hypergraph(path: str) -> GeometricHypergraph:
    obj = _load(path)
    if not isinstance(obj, GeometricHypergraph):
        raise CliError("%s holds a point set without edges" % path)
    return obj


def _frac(v) -> str:
    return hg._frac_str(v)


def _point(p) -> List[str]:
    return [_frac(c) for c in p]


# ---------------------------------------------------------------- commands

def cmd_generate(cfg: RunConfig, args) -> int:
    if args.convex:
        if cfg.dimension != 2:
            raise CliError("convex position is only generated in the plane")
        ps = hg.generate_convex(cfg.n, cfg.seed)
    else:
        ps = hg.generate_random(cfg.dimension, cfg.n, cfg.seed, box=args.box)
    assert hg.validate_general_position(ps) is None
    obj = ps
    if args.edges == "star":
        obj = hg.star_construction(ps, args.center, cfg.uniformity)
    elif args.edges == "complete":
        obj = hg.complete_hypergraph(ps, cfg.uniformity)
    elif args.edges == "random":
        obj = hg.random_hypergraph(ps, cfg.uniformity, args.density, cfg.seed)
    _emit(hg.dumps(obj), cfg.output)
    return EXIT_OK


def _verified_payload(H: GeometricHypergraph, pattern: PatternSpec, w) -> dict:
    payload = {"pattern": pattern.kind.value, "k": pattern.k, "found": w is not None}
    if w is None:
        return payload
    sub = H.subgraph(w.edges)
    if detect(sub, pattern) is None:
        raise AssertionError("witness failed re-verification")
    payload["witness"] = {"edge_indices": list(w.edges), "edges": [list(H.edges[i]) for i in w.edges]}
    if w.certificate is not None:
        if not all(triangle_contains_2d(H.simplex(i), w.certificate) for i in w.edges):
            raise AssertionError("certificate is not a common point")
        payload["certificate"] = _point(w.certificate)
    return payload


def cmd_detect(cfg: RunConfig, args) -> int:
    H = _load_hypergraph(cfg.inputs[0])
    cfg.dimension = H.dimension
    cfg.validate()
    w = detect(H, cfg.pattern)
    _emit(_json(_verified_payload(H, cfg.pattern, w)), cfg.output)
    return EXIT_OK


def _parse_bases(text: str):
    try:
        return [tuple(int(v) for v in part.split(",")) for part in text.split(":")]
    except ValueError as exc:
        raise CliError("bases look like 0,1:2,3") from exc


def cmd_witness(cfg: RunConfig, args) -> int:
    from . import witness as wt

    H = _load_hypergraph(cfg.inputs[0])
    svg_segments = None
    if H.dimension == 3:
        res = wt.disjoint_pair_pipeline(H)
        payload = dict(res.trace(), procedure="disjoint-pair")
    elif args.bases:
        bases = _parse_bases(args.bases)
        apexes = [int(v) for v in args.apexes.split(",")] if args.apexes else []
        res = wt.greedy_helly_selection(H, bases, apexes)
        payload = dict(res.trace(), procedure="greedy-helly", found=True)
        svg_segments = [Segment2(H.points[a], H.points[b]) for a, b in res.bases]
    else:
        hit = wt.find_four_crossing_configuration(H)
        if hit is None:
            raise wt.PreconditionUnmet("no four pairwise crossing bases in any link graph")
        v, bases = hit
        res = wt.extract_sc3_from_four_crossing(H, v, bases)
        payload = dict(res.trace(), procedure="four-crossing", vertex=v, found=True,
                       bases=[list(b) for b in bases])
        svg_segments = [Segment2(H.points[a], H.points[b]) for a, b in bases]
    if payload.get("found") and "edge_indices" in payload:
        pattern = PatternSpec(PatternKind.STRONGLY_CROSSING, len(payload["edge_indices"]))
        if detect(H.subgraph(payload["edge_indices"]), pattern) is None:
            raise AssertionError("extracted edges failed re-verification")
    _emit(_json(payload), cfg.output)
    if args.emit_svg == "arrangements":
        if svg_segments is None:
            raise CliError("arrangement pictures are drawn for planar inputs only")
        _emit(arrangement_svg(svg_segments), args.svg_out)
    return EXIT_OK


def cmd_extremal(cfg: RunConfig, args) -> int:
    if cfg.inputs:
        obj = _load(cfg.inputs[0])
        ps = obj.points if isinstance(obj, GeometricHypergraph) else obj
        cfg.dimension, cfg.n = ps.dimension, len(ps)
    else:
        if cfg.dimension is None or cfg.n is None:
            raise CliError("give an input file or --dim and --n")
        ps = hg.generate_random(cfg.dimension, cfg.n, cfg.seed)
    cfg.validate()
    if cfg.pattern.kind not in (PatternKind.STRONGLY_CROSSING, PatternKind.PAIRWISE_DISJOINT):
        raise CliError("extremal search supports strongly-crossing and disjoint patterns")
    if args.greedy:
        res = extremal_greedy(ps, cfg.pattern, cfg.seed, verify=True)
    else:
        res = extremal_exact(ps, cfg.pattern, cfg.budget)
    payload = res.summary()
    payload["seed"] = cfg.seed
    _emit(_json(payload), cfg.output)
    return EXIT_OK


def cmd_bounds(cfg: RunConfig, args) -> int:
    n, k = args.n, args.k
    out = [bound_tverberg(args.dim, k, n).to_dict(), bound_akiyama_alon(args.dim, k, n).to_dict()]
    c_k = Fraction(args.c_k) if args.c_k is not None else None
    out += [b.to_dict() for b in bound_kst_crossing_mode(n, k, c_k, cfg.precision)]
    if args.m is not None:
        out.append(bound_kst(n, args.m, args.r, args.s, cfg.precision).to_dict())
    _emit(_json(out), cfg.output)
    return EXIT_OK


def cmd_experiment(cfg: RunConfig, args) -> int:
    if args.emit_svg == "arrangements":
        from .scenarios import random_crossing_segments

        if cfg.inputs:
            H = _load_hypergraph(cfg.inputs[0])
            hg.require(H, 2, 2)
            segs = [H.segment(i) for i in range(len(H))]
        else:
            segs = random_crossing_segments(4, cfg.seed)
        _emit(arrangement_svg(segs, top_level(segs)), args.svg_out)
        return EXIT_OK
    if args.n_min > args.n_max or args.seeds < 1:
        raise CliError("empty experiment range")
    cfg.dimension = 3 if cfg.pattern.kind is PatternKind.PAIRWISE_DISJOINT else 2
    cfg.validate()
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for seed in range(cfg.seed, cfg.seed + args.seeds):
            rows.append(experiment_row(cfg.pattern, n, seed, cfg.budget, not args.no_exact, args.timing))
    rows.sort(key=lambda r: (r["n"], r["seed"]))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), cfg.output)
    if args.emit_svg == "counts":
        best = {"star": {}, "greedy": {}, "exact": {}}
        for r in rows:
            cells = [("star", r["star_count"]), ("greedy", r["greedy_count"])]
            if r["exact_flag"] == "true":
                cells.append(("exact", r["exact_count"]))
            for name, c in cells:
                best[name][r["n"]] = max(best[name].get(r["n"], 0), c)
        series = {name: sorted(d.items()) for name, d in best.items()}
        _emit(counts_svg(series, title=cfg.pattern.label + " (best per n)"), args.svg_out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_pattern(p, required=True):
    p.add_argument("--pattern", choices=sorted(PATTERNS), required=required)
    p.add_argument("--k", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geohyper", description="Exact geometric hypergraph toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="random point set, optionally with edges")
    g.add_argument("--dim", type=int, default=2)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--convex", action="store_true", help="clockwise convex position (plane only)")
    g.add_argument("--box", type=int, default=hg.DEFAULT_BOX)
    g.add_argument("--edges", choices=["none", "star", "complete", "random"], default="none")
    g.add_argument("--uniformity", type=int, default=3)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--center", type=int, default=0)
    g.add_argument("--out")

    d = sub.add_parser("detect", help="look for a forbidden pattern")
    d.add_argument("input")
    _add_pattern(d)
    d.add_argument("--out")

    w = sub.add_parser("witness", help="run an extraction procedure and print its trace")
    w.add_argument("input")
    w.add_argument("--bases", help="greedy selection: bases as 0,1:2,3")
    w.add_argument("--apexes", help="greedy selection: apexes as 4,5")
    w.add_argument("--emit-svg", choices=["arrangements"])
    w.add_argument("--svg-out")
    w.add_argument("--out")

    e = sub.add_parser("extremal", help="maximum edge set avoiding a pattern on one point set")
    e.add_argument("input", nargs="?")
    e.add_argument("--dim", type=int)
    e.add_argument("--n", type=int)
    e.add_argument("--seed", type=int, default=0)
    _add_pattern(e)
    e.add_argument("--greedy", action="store_true", help="randomized greedy instead of exact search")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--out")

    b = sub.add_parser("bounds", help="closed-form upper bounds")
    b.add_argument("--dim", type=int, default=2)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--c-k", dest="c_k")
    b.add_argument("--m", type=int)
    b.add_argument("--r", type=int, default=2)
    b.add_argument("--s", type=int, default=2)
    b.add_argument("--precision", type=int, default=50)
    b.add_argument("--out")

    x = sub.add_parser("experiment", help="CSV sweep over n and seeds")
    _add_pattern(x, required=False)
    x.add_argument("--n-min", type=int, default=6)
    x.add_argument("--n-max", type=int, default=8)
    x.add_argument("--seeds", type=int, default=3)
    x.add_argument("--seed", type=int, default=0, help="first seed")
    x.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    x.add_argument("--no-exact", action="store_true")
    x.add_argument("--timing", action="store_true", help="fill runtime_ms (breaks byte-identical reruns)")
    x.add_argument("--emit-svg", choices=["counts", "arrangements"])
    x.add_argument("--svg-out")
    x.add_argument("--input", dest="input_file", help="segment fixture for --emit-svg arrangements")
    x.add_argument("--out")
    return parser


def _config(args) -> RunConfig:
    pattern = None
    if getattr(args, "pattern", None):
        pattern = PatternSpec(PATTERNS[args.pattern], args.k)
    inputs = [p for p in (getattr(args, "input", None), getattr(args, "input_file", None)) if p]
    return RunConfig(
        command=args.command,
        dimension=getattr(args, "dim", None) if args.command != "bounds" else None,
        n=getattr(args, "n", None),
        uniformity=getattr(args, "uniformity", 3),
        pattern=pattern,
        seed=getattr(args, "seed", 0),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        inputs=inputs,
        output=args.out,
        precision=getattr(args, "precision", 50),
    )


COMMANDS = {
    "generate": cmd_generate,
    "detect": cmd_detect,
    "witness": cmd_witness,
    "extremal": cmd_extremal,
    "bounds": cmd_bounds,
    "experiment": cmd_experiment,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "experiment" and args.emit_svg != "arrangements" and not args.pattern:
            raise CliError("--pattern is required")
        cfg = _config(args)
        if args.command in ("generate",):
            cfg.validate()
        return COMMANDS[args.command](cfg, args)
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except (CliError, HypergraphError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
