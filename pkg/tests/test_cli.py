import json

import pytest

from semicut.main import main
from semicut.services.digraph import (
    Ordering,
    backward_arcs,
    gen_random_semicomplete,
    gen_random_tournament,
    gen_transitive,
    is_tournament,
    read_digraph,
    write_digraph,
)
from tests.helpers import random_instance

TRIANGLE_FILE = "semicomplete 3\n010\n001\n100\n"


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text(TRIANGLE_FILE)
    return str(path)


@pytest.fixture
def write_instance(tmp_path):
    def write(T, name="instance.txt"):
        path = tmp_path / name
        path.write_text(write_digraph(T))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_transitive_to_file(self, tmp_path, capsys):
        out = tmp_path / "trans10.txt"
        code, _, _ = run(capsys, "gen", "transitive", "--n", "10", "--out", str(out))
        assert code == 0
        T = read_digraph(out.read_text())
        assert T.n == 10
        assert is_tournament(T)

    def test_noisy(self, capsys):
        code, out, _ = run(capsys, "gen", "noisy", "--n", "30", "--flips", "5", "--seed", "7")
        assert code == 0
        T = read_digraph(out)
        assert len(backward_arcs(T, Ordering.natural(30))) == 5

    def test_semicomplete_deterministic(self, capsys):
        argv = ("gen", "semicomplete", "--n", "8", "--pdouble", "0.2", "--seed", "1")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_weighted(self, capsys):
        _, out, _ = run(capsys, "gen", "tournament", "--n", "5", "--max-weight", "3")
        T = read_digraph(out)
        assert T.is_weighted
        assert max(T.weights.values()) <= 3

    def test_invalid_parameter(self, capsys):
        code, _, err = run(capsys, "gen", "noisy", "--n", "3", "--flips", "9")
        assert code == 2
        assert "r must lie" in err


class TestSolve:
    def test_fas_yes(self, capsys, triangle_file):
        code, out, _ = run(capsys, "solve", "fas", triangle_file, "--k", "1", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["report"]["answer"] == "yes"
        assert len(report["arcs"]) == 1

    def test_fas_text_output(self, capsys, triangle_file):
        code, out, _ = run(capsys, "solve", "fas", triangle_file, "--k", "1")
        assert code == 0
        assert "answer: yes" in out
        assert out.count("->") == 1

    def test_ola_no(self, capsys, triangle_file):
        code, out, _ = run(capsys, "solve", "ola", triangle_file, "--k", "1")
        assert code == 1
        assert "answer: no" in out

    def test_cutwidth_minimize(self, capsys, write_instance):
        path = write_instance(gen_transitive(10), "trans10.txt")
        code, out, _ = run(capsys, "solve", "cutwidth", path, "--minimize", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["report"]["k_star"] == 0
        assert report["ordering"] == list(range(10))

    def test_weighted_rational_budget(self, capsys, tmp_path):
        path = tmp_path / "weighted.txt"
        path.write_text("semicomplete 3 weighted\n010\n001\n100\n0 1 3/2\n1 2 3/2\n2 0 3/2\n")
        code, out, _ = run(capsys, "solve", "fas", str(path), "--k", "3/2", "--weighted", "--json")
        assert code == 0
        report = json.loads(out)["report"]
        assert report["objective"] == "3/2"
        assert report["k"] == "3/2"

    def test_engines_agree_on_float_weights(self, capsys, tmp_path):
        # natural order costs 3 * 1.1, which sums to slightly more than 3.3 in floating point
        path = tmp_path / "float.txt"
        arcs = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 0)]
        path.write_text(
            "semicomplete 4 weighted\n0110\n0011\n0001\n1000\n"
            + "".join(f"{u} {v} 1.1\n" for u, v in arcs)
        )
        for extra in (("--k", "3.3"), ("--minimize",)):
            argv = ("solve", "ola", str(path), *extra, "--weighted", "--json")
            cuts_code, cuts, _ = run(capsys, *argv)
            brute_code, brute, _ = run(capsys, *argv, "--engine", "brute")
            assert cuts_code == brute_code == 0
            cuts, brute = json.loads(cuts)["report"], json.loads(brute)["report"]
            assert cuts["answer"] == brute["answer"] == "yes"
            assert cuts["k_star"] == brute["k_star"]
            assert cuts["objective"] == pytest.approx(brute["objective"])

    def test_cutwidth_weighted_rejected(self, capsys, triangle_file):
        code, _, _ = run(capsys, "solve", "cutwidth", triangle_file, "--k", "1", "--weighted")
        assert code == 2

    def test_k_or_minimize_required(self, capsys, triangle_file):
        code, _, _ = run(capsys, "solve", "fas", triangle_file)
        assert code == 2

    @pytest.mark.parametrize("seed", range(8))
    def test_engines_agree(self, capsys, write_instance, seed):
        path = write_instance(random_instance(seed, 4 + seed % 5))
        for problem in ("fas", "cutwidth", "ola"):
            _, cuts, _ = run(capsys, "solve", problem, path, "--minimize", "--json")
            _, brute, _ = run(capsys, "solve", problem, path, "--minimize", "--json", "--engine", "brute")
            assert json.loads(cuts)["report"]["k_star"] == json.loads(brute)["report"]["k_star"]
            assert json.loads(cuts)["report"]["objective"] == json.loads(brute)["report"]["objective"]

    def test_brute_engine_decision(self, capsys, triangle_file):
        code, out, _ = run(capsys, "solve", "ola", triangle_file, "--k", "2", "--engine", "brute", "--json")
        assert code == 0
        assert json.loads(out)["ordering"] == [0, 1, 2]


class TestCountCuts:
    @pytest.mark.parametrize("n,k,expected", [(4, 1, 8), (6, 0, 7)])
    def test_transitive(self, capsys, write_instance, n, k, expected):
        path = write_instance(gen_transitive(n))
        code, out, _ = run(capsys, "count-cuts", path, "--k", str(k), "--json")
        assert code == 0
        report = json.loads(out)
        assert report["count"] == expected
        assert not report["capped"]

    def test_triangle(self, capsys, triangle_file):
        _, out, _ = run(capsys, "count-cuts", triangle_file, "--k", "0")
        assert out.startswith("count: 2\n")

    def test_capped(self, capsys, write_instance):
        path = write_instance(gen_transitive(6))
        _, out, _ = run(capsys, "count-cuts", path, "--k", "2", "--cap", "3", "--json")
        report = json.loads(out)
        assert report["count"] is None
        assert report["capped"]

    def test_stdin(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(TRIANGLE_FILE))
        code, out, _ = run(capsys, "count-cuts", "-", "--k", "1")
        assert code == 0
        assert out.startswith("count: 8\n")


class TestBench:
    def test_header_only(self, capsys):
        code, out, _ = run(capsys, "bench", "--n", "8", "--k", "3..2")
        assert code == 0
        assert out == "family,n,k,seed,cuts,cap_fas,cap_cutwidth,capped,ms\n"

    def test_rows_to_file(self, capsys, tmp_path):
        out = tmp_path / "bench.csv"
        code, _, _ = run(
            capsys, "bench", "--families", "transitive,noisy", "--n", "6..7", "--k", "0,2",
            "--seeds", "0..1", "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 2 * 2 * 2 * 2


class TestErrors:
    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "count-cuts", str(tmp_path / "nope.txt"), "--k", "0")
        assert code == 2
        assert "cannot access" in err

    def test_parse_error(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("semicomplete 3\n010\n0x1\n100\n")
        code, _, err = run(capsys, "solve", "fas", str(path), "--k", "1")
        assert code == 2
        assert "line 3" in err

    def test_invalid_instance(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("semicomplete 2\n00\n00\n")
        code, _, _ = run(capsys, "count-cuts", str(path), "--k", "0")
        assert code == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2

    def test_invalid_configuration(self, capsys, monkeypatch, triangle_file):
        monkeypatch.setenv("SEMICUT_FLOAT_TOLERANCE", "1")
        code, _, err = run(capsys, "count-cuts", triangle_file, "--k", "0")
        assert code == 2
        assert "invalid configuration" in err


class TestDeterminism:
    def test_json_and_csv_are_byte_identical(self, capsys, write_instance):
        path = write_instance(gen_random_semicomplete(7, 0.2, 3))
        commands = [
            ("solve", "ola", path, "--minimize", "--json", "--no-timing"),
            ("solve", "fas", path, "--k", "3", "--json", "--no-timing"),
            ("count-cuts", path, "--k", "2", "--json", "--no-timing"),
            ("bench", "--families", "tournament,semicomplete", "--n", "5..6", "--k", "1..2", "--no-timing"),
        ]
        for argv in commands:
            _, first, _ = run(capsys, *argv)
            _, second, _ = run(capsys, *argv)
            assert first == second

    def test_timing_disabled_by_settings(self, capsys, monkeypatch, write_instance):
        monkeypatch.setenv("SEMICUT_RECORD_TIMINGS", "false")
        path = write_instance(gen_random_tournament(6, 2))
        _, out, _ = run(capsys, "count-cuts", path, "--k", "2", "--json")
        assert json.loads(out)["wall_time_ms"] == 0.0
