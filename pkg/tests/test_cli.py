"""CLI surface: dispatch, formats, exit codes."""

import json
from fractions import Fraction

import pytest

from noninv import ChainSpec, expected_degree_chain
from noninv.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExpected:
    def test_plain(self, capsys):
        code, out, _ = invoke(capsys, "expected", "--sizes", "2,2,2")
        assert code == 0
        assert out.strip() == "7/4"

    def test_integer_prints_without_denominator(self, capsys):
        code, out, _ = invoke(capsys, "expected", "--sizes", "3,1,3")
        assert code == 0
        assert out.strip() == "3"

    def test_decimals(self, capsys):
        code, out, _ = invoke(
            capsys, "expected", "--sizes", "2,2", "--decimals", "3"
        )
        assert code == 0
        assert out.strip() == "3/2 (1.500)"

    def test_json_round_trip(self, capsys):
        code, out, _ = invoke(capsys, "expected", "--sizes", "2,2,2", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "expected"
        value = doc["results"][0]["expected_degree"]
        fresh = expected_degree_chain(ChainSpec((2, 2, 2)))
        assert Fraction(value["numerator"], value["denominator"]) == fresh

    def test_json_always_carries_denominator(self, capsys):
        code, out, _ = invoke(capsys, "expected", "--sizes", "3,1,3", "--json")
        value = json.loads(out)["results"][0]["expected_degree"]
        assert value == {"numerator": 3, "denominator": 1, "decimal": None}

    def test_bad_sizes(self, capsys):
        code, _, err = invoke(capsys, "expected", "--sizes", "2,x")
        assert code == 2
        assert "error" in err

    def test_too_few_sizes(self, capsys):
        code, _, err = invoke(capsys, "expected", "--sizes", "5")
        assert code == 2


class TestExpectedQ:
    def test_plain(self, capsys):
        code, out, _ = invoke(
            capsys, "expected-q", "--n", "2", "--m", "2", "--q", "3"
        )
        assert code == 0
        assert out.strip() == "5/2"

    def test_invalid_exponent(self, capsys):
        code, _, err = invoke(
            capsys, "expected-q", "--n", "2", "--m", "2", "--q", "0"
        )
        assert code == 2


class TestDeg:
    def test_text_file(self, capsys, tmp_path):
        path = tmp_path / "f.fn"
        path.write_text("3 3 : 1 1 2\n")
        code, out, _ = invoke(capsys, "deg", "--file", str(path))
        assert code == 0
        assert out.strip() == "5/3"

    def test_json_file_and_q(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        path.write_text('{"domain": 3, "codomain": 3, "images": [0, 0, 1]}')
        code, out, _ = invoke(capsys, "deg", "--file", str(path), "--q", "3")
        assert code == 0
        assert out.strip() == "3"

    def test_missing_file(self, capsys):
        code, _, err = invoke(capsys, "deg", "--file", "missing.fn")
        assert code == 2
        assert "error" in err

    def test_malformed_file_reports_position(self, capsys, tmp_path):
        path = tmp_path / "bad.fn"
        path.write_text("2 2 : 0 1\n")
        code, _, err = invoke(capsys, "deg", "--file", str(path))
        assert code == 2
        assert "line 1" in err and "column" in err


class TestVerify:
    def test_chain(self, capsys):
        code, out, _ = invoke(capsys, "verify", "chain", "--sizes", "2,2,2")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        assert all("match=true" in line for line in lines)

    def test_chain_budget_skips_enumeration(self, capsys):
        code, out, _ = invoke(capsys, "verify", "chain", "--sizes", "8,8")
        assert code == 0
        assert "chain-multinomial" in out
        assert "skipped" in out

    def test_chain_json_envelope(self, capsys):
        code, out, _ = invoke(
            capsys, "verify", "chain", "--sizes", "2,2", "--json"
        )
        doc = json.loads(out)
        assert doc["all_match"] is True
        assert {r["check"] for r in doc["results"]} == {
            "chain-enumeration",
            "chain-multinomial",
        }

    def test_degq(self, capsys):
        code, out, _ = invoke(
            capsys, "verify", "degq", "--n", "3", "--m", "3", "--qmax", "5"
        )
        assert code == 0
        assert "match=false" not in out
        assert "degq-enumeration" in out and "degq-power-sum" in out

    def test_en(self, capsys):
        code, out, _ = invoke(
            capsys, "verify", "en", "--m", "4", "--parts", "1,2,0"
        )
        assert code == 0
        assert "square-moment" in out and "match=true" in out

    def test_corollary(self, capsys):
        code, out, _ = invoke(capsys, "verify", "corollary", "--qmax", "30")
        assert code == 0
        assert out.count("stirling-identity") == 30
        assert "match=false" not in out


class TestStirling:
    def test_second_rows(self, capsys):
        code, out, _ = invoke(capsys, "stirling", "--kind", "second",
                              "--rows", "4")
        assert code == 0
        assert out.strip().splitlines()[4] == "4: 0 1 7 6 1"

    def test_first_rows(self, capsys):
        code, out, _ = invoke(capsys, "stirling", "--kind", "first",
                              "--rows", "4")
        assert out.strip().splitlines()[4] == "4: 0 6 11 6 1"

    def test_signed_rows(self, capsys):
        code, out, _ = invoke(capsys, "stirling", "--kind", "first-signed",
                              "--rows", "3")
        assert out.strip().splitlines()[3] == "3: 0 2 -3 1"

    def test_transform(self, capsys):
        code, out, _ = invoke(capsys, "stirling", "--transform", "1,1,1")
        assert code == 0
        assert out.strip() == "1 2 5"


class TestBounds:
    def test_files(self, capsys, tmp_path):
        outer = tmp_path / "f.fn"
        outer.write_text("3 3 : 1 1 2\n")
        inner = tmp_path / "g.fn"
        inner.write_text("3 3 : 1 2 2\n")
        code, out, _ = invoke(capsys, "bounds", str(outer), str(inner))
        assert code == 0
        assert "new_holds=true" in out

    def test_exhaustive(self, capsys):
        code, out, _ = invoke(capsys, "bounds", "--exhaustive", "--n", "3")
        assert code == 0
        assert "pairs=729" in out
        assert "new_violations=0" in out

    def test_missing_arguments(self, capsys):
        code, _, err = invoke(capsys, "bounds")
        assert code == 2


class TestSimulate:
    def test_chain(self, capsys):
        code, out, _ = invoke(
            capsys, "simulate", "chain", "--sizes", "2,2",
            "--samples", "2000", "--seed", "42",
        )
        assert code == 0
        assert "closed=3/2" in out and "seed=42" in out

    def test_chain_json(self, capsys):
        code, out, _ = invoke(
            capsys, "simulate", "chain", "--sizes", "2,2",
            "--samples", "1000", "--seed", "7", "--json",
        )
        doc = json.loads(out)
        result = doc["results"][0]
        assert result["samples"] == 1000 and result["seed"] == 7
        assert result["closed_form"] == {
            "numerator": 3, "denominator": 2, "decimal": None
        }

    def test_chain_reproducible(self, capsys):
        args = ("simulate", "chain", "--sizes", "3,3", "--samples", "500",
                "--seed", "9")
        _, first, _ = invoke(capsys, *args)
        _, second, _ = invoke(capsys, *args)
        assert first == second

    def test_maxfiber(self, capsys):
        code, out, _ = invoke(
            capsys, "simulate", "maxfiber", "--n", "10",
            "--samples", "500", "--seed", "3",
        )
        assert code == 0
        assert "theta_ratio=" in out

    def test_maxfiber_guard(self, capsys):
        code, _, err = invoke(
            capsys, "simulate", "maxfiber", "--n", "2",
            "--samples", "10", "--seed", "1",
        )
        assert code == 2


class TestUsage:
    def test_no_arguments(self, capsys):
        assert run([]) == 2

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_missing_required_flag(self, capsys):
        assert run(["expected"]) == 2
