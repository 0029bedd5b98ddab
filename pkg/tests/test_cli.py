"""Command-line interface: exit codes, JSONL records, determinism."""

import json

import pytest
from click.testing import CliRunner

from pentaq.cli import main
from pentaq.kernels import IndexParams, sample_index


@pytest.fixture
def runner():
    return CliRunner()


def jsonl(output):
    return [json.loads(line) for line in output.strip().splitlines()
            if line.startswith("{")]


class TestVerify:
    def test_classical_exits_zero(self, runner):
        res = runner.invoke(main, ["verify", "--identity", "classical",
                                   "--random", "10", "--seed", "7"])
        assert res.exit_code == 0, res.output
        records = jsonl(res.output)
        assert records[0]["kind"] == "run_header"
        assert records[0]["schema_version"] == 1
        assert records[-1]["kind"] == "summary"
        assert records[-1]["failed"] == 0

    def test_operator_runs_fixed_q_set(self, runner):
        res = runner.invoke(main, ["verify", "--identity", "operator",
                                   "--max-degree", "6"])
        assert res.exit_code == 0, res.output
        points = [r for r in jsonl(res.output) if r["kind"] == "point"]
        assert len(points) == 3

    def test_operator_rejects_random(self, runner):
        res = runner.invoke(main, ["verify", "--identity", "operator",
                                   "--random", "5"])
        assert res.exit_code != 0

    def test_params_and_random_mutually_exclusive(self, runner, tmp_path):
        f = tmp_path / "pts.jsonl"
        f.write_text("{}\n")
        res = runner.invoke(main, ["verify", "--identity", "classical",
                                   "--params", str(f), "--random", "3"])
        assert res.exit_code != 0

    def test_params_file_round_trip(self, runner, tmp_path, rng):
        pts = [sample_index(rng) for _ in range(2)]
        f = tmp_path / "pts.jsonl"
        f.write_text("".join(json.dumps(p.to_record()) + "\n" for p in pts))
        res = runner.invoke(main, ["verify", "--identity", "index",
                                   "--params", str(f)])
        assert res.exit_code == 0, res.output
        points = [r for r in jsonl(res.output) if r["kind"] == "point"]
        assert len(points) == 2

    def test_params_file_constraint_violation_reported(self, runner,
                                                       tmp_path, rng):
        rec = sample_index(rng).to_record()
        rec["n"] = [1, 1, 1]  # spins no longer sum to zero
        f = tmp_path / "bad.jsonl"
        f.write_text(json.dumps(rec) + "\n")
        res = runner.invoke(main, ["verify", "--identity", "index",
                                   "--params", str(f)])
        assert res.exit_code != 0
        assert "bad.jsonl:1" in res.output

    def test_beta_exits_nonzero(self, runner):
        res = runner.invoke(main, ["verify", "--identity", "beta",
                                   "--random", "2"])
        assert res.exit_code == 1
        summary = jsonl(res.output)[-1]
        assert summary["failed"] == 2

    def test_deterministic_for_seed(self, runner):
        args = ["verify", "--identity", "index", "--random", "3",
                "--seed", "11"]
        out1 = runner.invoke(main, args).output
        out2 = runner.invoke(main, args).output
        pts1 = [r for r in jsonl(out1) if r["kind"] == "point"]
        pts2 = [r for r in jsonl(out2) if r["kind"] == "point"]
        assert [p["parameters"] for p in pts1] == \
            [p["parameters"] for p in pts2]

    def test_tol_override_can_force_failure(self, runner):
        res = runner.invoke(main, ["verify", "--identity", "hyperbolic",
                                   "--random", "1", "--tol", "1e-30"])
        assert res.exit_code == 1

    def test_report_file_written(self, runner, tmp_path):
        out = tmp_path / "report.jsonl"
        res = runner.invoke(main, ["verify", "--identity", "classical",
                                   "--random", "2", "--report", str(out)])
        assert res.exit_code == 0
        records = [json.loads(line) for line in
                   out.read_text().strip().splitlines()]
        assert records[0]["kind"] == "run_header"

    def test_threads_give_same_results(self, runner):
        base = ["verify", "--identity", "gamma", "--random", "3",
                "--seed", "4"]
        seq = runner.invoke(main, base)
        par = runner.invoke(main, base + ["--threads", "3"])
        assert seq.exit_code == par.exit_code == 0
        sp = [r for r in jsonl(seq.output) if r["kind"] == "point"]
        pp = [r for r in jsonl(par.output) if r["kind"] == "point"]
        assert [p["lhs"] for p in sp] == [p["lhs"] for p in pp]


class TestLimitStudy:
    @pytest.mark.parametrize("kind", ["q-to-1", "omega"])
    def test_exits_zero(self, runner, kind):
        res = runner.invoke(main, ["limit-study", kind])
        assert res.exit_code == 0, res.output
        records = jsonl(res.output)
        assert any(r.get("passed") for r in records)


class TestExpandOperator:
    def test_exact_zero_exit(self, runner):
        res = runner.invoke(main, ["expand-operator", "--max-degree", "5"])
        assert res.exit_code == 0, res.output

    def test_malformed_q_usage_error(self, runner):
        res = runner.invoke(main, ["expand-operator", "--q", "zebra"])
        assert res.exit_code != 0


class TestSelfcheck:
    def test_bundled_vectors_pass(self, runner):
        res = runner.invoke(main, ["selfcheck"])
        assert res.exit_code == 0, res.output

    def test_tol_scale_can_force_failure(self, runner):
        res = runner.invoke(main, ["selfcheck", "--tol", "1e-12"])
        assert res.exit_code != 0

    def test_corrupted_vector_file_reports_line(self, runner, tmp_path):
        f = tmp_path / "vec.jsonl"
        f.write_text('{"function": "log_gamma", "args": [2.0]\n')
        res = runner.invoke(main, ["selfcheck", "--vectors", str(f)])
        assert res.exit_code != 0
        assert "1" in res.output
