import json
import subprocess
import sys

import pytest

from cakelab.cli import main


@pytest.fixture()
def measures_file(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("alice: x\nbob: x^5\n")
    return str(path)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def leaves(node):
    if isinstance(node, dict):
        for v in node.values():
            yield from leaves(v)
    elif isinstance(node, list):
        for v in node:
            yield from leaves(v)
    else:
        yield node


class TestExitCodes:
    def test_grid(self, capsys):
        # the full certificate grid keeps its contract
        for d in range(1, 13):
            code, out, _ = run_cli(["check-impossibility", "equitable", "--d", str(d)], capsys)
            if d <= 4:
                assert code == 2 and "NO-OBSTRUCTION-FOUND" in out
            else:
                assert code == 0 and "IMPOSSIBLE" in out

    def test_uncovered_case(self, capsys):
        code, _, err = run_cli(["check-impossibility", "equitable", "--d", "35"], capsys)
        assert code == 3 and "uncovered" in err

    def test_input_error(self, capsys):
        code, _, err = run_cli(["run-protocol", "--protocol", "even-paz", "--measures", "/nonexistent"], capsys)
        assert code == 1 and err

    def test_invalid_measure_error(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("a: x - 1\n")
        code, _, err = run_cli(["isolate-cutpoint", "--measures", str(p)], capsys)
        assert code == 1 and "f(0)" in err

    def test_welfare_certificate(self, capsys):
        code, out, _ = run_cli(["check-impossibility", "welfare", "--n", "2", "--p", "3"], capsys)
        assert code == 0 and "IMPOSSIBLE" in out

    def test_verify_tower_pass(self, capsys, measures_file):
        code, out, _ = run_cli(
            ["verify-tower", "--measures", measures_file, "--protocol", "even-paz", "--prime", "5"],
            capsys,
        )
        assert code == 0 and "passed: True" in out

    def test_verify_tower_violation(self, capsys, measures_file):
        code, out, _ = run_cli(
            ["verify-tower", "--measures", measures_file, "--protocol", "even-paz", "--prime", "3"],
            capsys,
        )
        assert code == 2 and "passed: False" in out


class TestCommands:
    def test_run_protocol(self, capsys, measures_file):
        code, out, _ = run_cli(
            ["run-protocol", "--protocol", "cut-and-choose", "--measures", measures_file], capsys
        )
        assert code == 0
        assert "guarantees_hold: True" in out
        assert "#0 player1 cut" in out

    def test_check_fairness(self, capsys, measures_file):
        code, out, _ = run_cli(
            ["check-fairness", "--measures", measures_file, "--cuts", "1/2"], capsys
        )
        assert code == 0
        assert "proportional: True" in out
        assert "equitable: False" in out

    def test_max_welfare(self, capsys, measures_file):
        code, out, _ = run_cli(["max-welfare", "--measures", measures_file], capsys)
        assert code == 0
        assert "welfare" in out

    def test_analyze_trinomial(self, capsys):
        code, out, _ = run_cli(["analyze-trinomial", "--d", "6"], capsys)
        assert code == 0
        assert "irreducible; Galois group S_6; not solvable by radicals" in out

    def test_isolate_cutpoint(self, capsys, measures_file):
        code, out, _ = run_cli(["isolate-cutpoint", "--measures", measures_file], capsys)
        assert code == 0
        assert "0.754877666246" in out
        assert "x^3 + x^2 - 1" in out
        assert "degree: 3" in out


class TestFormats:
    def test_structured_is_json_with_version(self, capsys, measures_file):
        code, out, _ = run_cli(
            ["--format", "structured", "check-impossibility", "equitable", "--d", "5"], capsys
        )
        data = json.loads(out)
        assert data["format_version"] == 1
        assert data["verdict"] == "IMPOSSIBLE"
        assert sorted(f["factor"] for f in data["factorization"]) == [
            "x^2 - x + 1",
            "x^3 + x^2 - 1",
        ]

    def test_text_and_structured_agree_field_by_field(self, capsys, measures_file):
        for args in (
            ["check-impossibility", "equitable", "--d", "5"],
            ["run-protocol", "--protocol", "even-paz", "--measures", measures_file],
            ["analyze-trinomial", "--d", "7"],
        ):
            _, text_out, _ = run_cli(args, capsys)
            _, json_out, _ = run_cli(["--format", "structured"] + args, capsys)
            data = json.loads(json_out)
            data.pop("format_version")
            for leaf in leaves(data):
                assert str(leaf) in text_out, f"missing {leaf!r} in text output"


class TestDegreeCapEnv:
    def test_env_override(self, monkeypatch, capsys):
        import cakelab.algebraic as alg

        old = alg.degree_cap()
        monkeypatch.setenv("CAKELAB_DEGREE_CAP", "14")
        try:
            code, _, _ = run_cli(["analyze-trinomial", "--d", "6"], capsys)
            assert code == 0
            assert alg.degree_cap() == 14
        finally:
            alg.set_degree_cap(old)

    def test_env_invalid(self, monkeypatch, capsys):
        monkeypatch.setenv("CAKELAB_DEGREE_CAP", "not-a-number")
        code, _, err = run_cli(["analyze-trinomial", "--d", "6"], capsys)
        assert code == 1 and "CAKELAB_DEGREE_CAP" in err


class TestDeterminism:
    def test_byte_identical_runs(self, measures_file):
        commands = [
            ["check-impossibility", "equitable", "--d", "5"],
            ["--format", "structured", "run-protocol", "--protocol", "selfridge-conway",
             "--measures", None],  # placeholder replaced below
        ]
        three = measures_file.replace("m.txt", "three.txt")
        with open(three, "w") as fh:
            fh.write("a: x\nb: x\nc: x^5\n")
        commands[1][-1] = three
        for cmd in commands:
            outs = set()
            for _ in range(2):
                res = subprocess.run(
                    [sys.executable, "-m", "cakelab"] + cmd,
                    capture_output=True,
                    text=True,
                )
                assert res.returncode == 0
                outs.add(res.stdout)
            assert len(outs) == 1
