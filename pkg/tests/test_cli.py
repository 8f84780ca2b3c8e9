import csv
import json
from math import comb
from pathlib import Path

import pytest

from geohyper import hypergraph as hg
from geohyper.cli import EXIT_BUDGET, EXIT_OK, EXIT_PRECONDITION, main
from geohyper.hypergraph import is_convex_clockwise, star_construction

FIX = Path(__file__).parent / "fixtures"


def run(*argv):
    return main([str(a) for a in argv])


def read_json(path):
    return json.loads(Path(path).read_text())


class TestGenerate:
    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for p in (a, b):
            assert run("generate", "--n", 20, "--seed", 4, "--edges", "random", "--out", p) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        H = hg.loads(a.read_text())
        assert H.n == 20 and H.r == 3

    def test_convex(self, tmp_path):
        out = tmp_path / "c.json"
        assert run("generate", "--n", 9, "--convex", "--out", out) == EXIT_OK
        assert is_convex_clockwise(hg.loads(out.read_text()).points)

    def test_convex_needs_plane(self, tmp_path):
        assert run("generate", "--n", 9, "--dim", 3, "--convex") == EXIT_PRECONDITION

    def test_star(self, tmp_path):
        out = tmp_path / "s.json"
        run("generate", "--n", 8, "--dim", 3, "--edges", "star", "--out", out)
        assert len(hg.loads(out.read_text())) == comb(7, 2)


class TestDetect:
    def test_star_disjoint(self, tmp_path):
        src, out = tmp_path / "s.json", tmp_path / "d.json"
        run("generate", "--n", 8, "--dim", 3, "--edges", "star", "--out", src)
        assert run("detect", src, "--pattern", "disjoint", "--k", 2, "--out", out) == EXIT_OK
        assert read_json(out)["found"] is False

    def test_three_strongly_crossing(self, tmp_path):
        out = tmp_path / "d.json"
        run("detect", FIX / "three_strongly_crossing.json", "--pattern", "strongly-crossing", "--k", 3,
            "--out", out)
        res = read_json(out)
        assert res["found"] is True and sorted(res["witness"]["edge_indices"]) == [0, 1, 2]
        assert res["certificate"] is not None

    def test_empty_core(self, tmp_path):
        out = tmp_path / "d.json"
        src = FIX / "pairwise_crossing_empty_core.json"
        run("detect", src, "--pattern", "strongly-crossing", "--k", 3, "--out", out)
        assert read_json(out)["found"] is False
        run("detect", src, "--pattern", "strongly-crossing", "--k", 2, "--out", out)
        assert read_json(out)["found"] is True

    def test_wrong_dimension(self):
        assert run("detect", FIX / "disjoint8.json", "--pattern", "strongly-crossing") == EXIT_PRECONDITION


class TestWitness:
    def test_four_crossing_trace(self, tmp_path):
        out = tmp_path / "w.json"
        assert run("witness", FIX / "case2_right.json", "--out", out) == EXIT_OK
        t = read_json(out)
        assert t["case"] == 2 and t["top_level_visits"] == 3 and t["branch"] == "right"
        assert all("/" in c for c in t["point"])

    def test_greedy(self, tmp_path):
        from geohyper.scenarios import greedy_helly_config

        H, bases, apexes = greedy_helly_config(3, 1)
        src, out = tmp_path / "g.json", tmp_path / "w.json"
        src.write_text(hg.dumps(H))
        spec = ":".join("%d,%d" % b for b in bases)
        assert run("witness", src, "--bases", spec, "--apexes", ",".join(map(str, apexes)),
                   "--out", out) == EXIT_OK
        t = read_json(out)
        assert t["pairwise_intersecting"] is True and len(t["edges"]) == 3

    def test_star_is_a_precondition_failure(self, tmp_path):
        src = tmp_path / "s.json"
        src.write_text(hg.dumps(star_construction(hg.generate_random(2, 9, 0), 0)))
        assert run("witness", src) == EXIT_PRECONDITION

    def test_space_pipeline(self, tmp_path):
        out = tmp_path / "w.json"
        assert run("witness", FIX / "disjoint8.json", "--out", out) == EXIT_OK
        t = read_json(out)
        assert t["procedure"] == "disjoint-pair" and t["found"] is True
        assert t["coloring"]["max_group_red"] <= 2
        a, b = t["disjoint_edges"]
        assert not set(a) & set(b)

    def test_arrangement_svg(self, tmp_path):
        out, svg = tmp_path / "w.json", tmp_path / "a.svg"
        run("witness", FIX / "case1_below-crossing.json", "--emit-svg", "arrangements",
            "--svg-out", svg, "--out", out)
        assert 'class="top-level"' in svg.read_text()


class TestExtremal:
    def test_exact(self, tmp_path):
        out = tmp_path / "e.json"
        assert run("extremal", "--dim", 2, "--n", 7, "--seed", 1, "--pattern", "strongly-crossing",
                   "--k", 2, "--out", out) == EXIT_OK
        res = read_json(out)
        assert res["count"] == 20 and res["exact"] is True

    def test_budget_exit_code(self):
        assert run("extremal", "--dim", 2, "--n", 8, "--seed", 1, "--pattern", "strongly-crossing",
                   "--budget", 1000) == EXIT_BUDGET

    def test_disjoint_needs_space(self):
        assert run("extremal", "--dim", 2, "--n", 6, "--pattern", "disjoint") == EXIT_PRECONDITION


class TestBounds:
    def test_output(self, tmp_path):
        out = tmp_path / "b.json"
        assert run("bounds", "--n", 100, "--k", 2, "--m", 100, "--r", 2, "--s", 2, "--out", out) == EXIT_OK
        res = read_json(out)
        assert res[0]["exponent"] == "26/9"
        assert res[-1]["value"] == "1100/1"


class TestExperiment:
    def test_csv_rows(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for p in (a, b):
            assert run("experiment", "--pattern", "strongly-crossing", "--k", 3, "--n-min", 9, "--n-max", 10,
                       "--seeds", 2, "--no-exact", "--out", p) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        rows = list(csv.DictReader(a.open()))
        assert len(rows) == 4
        for r in rows:
            assert int(r["star_count"]) == comb(int(r["n"]) - 1, 2)
            assert int(r["greedy_count"]) >= int(r["star_count"])
            assert r["exact_flag"] == "false" and r["runtime_ms"] == ""

    def test_full_sweep(self, tmp_path):
        out = tmp_path / "s.csv"
        assert run("experiment", "--pattern", "strongly-crossing", "--k", 3, "--n-min", 9, "--n-max", 13,
                   "--seeds", 5, "--no-exact", "--out", out) == EXIT_OK
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 25
        assert all(int(r["star_count"]) == comb(int(r["n"]) - 1, 2) for r in rows)

    def test_counts_svg(self, tmp_path):
        svg = tmp_path / "c.svg"
        run("experiment", "--pattern", "strongly-crossing", "--k", 2, "--n-min", 5, "--n-max", 6,
            "--seeds", 1, "--emit-svg", "counts", "--svg-out", svg, "--out", tmp_path / "x.csv")
        assert svg.read_text().startswith("<svg")

    def test_arrangements_svg(self, tmp_path):
        svg = tmp_path / "a.svg"
        assert run("experiment", "--pattern", "strongly-crossing", "--emit-svg", "arrangements",
                   "--input", FIX / "four_segments.json", "--svg-out", svg) == EXIT_OK
        text = svg.read_text()
        assert 'class="top-level"' in text and "viewBox" in text

    def test_empty_range(self):
        assert run("experiment", "--pattern", "strongly-crossing", "--n-min", 9, "--n-max", 8) == EXIT_PRECONDITION
