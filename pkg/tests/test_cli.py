from __future__ import annotations

import json

import pytest

from zetakit import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bernoulli_table_csv(capsys):
    code, out, _ = run(["bernoulli", "table", "--max-s", "4", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["s,B", "0,1/1", "1,-1/2", "2,1/6", "3,0/1", "4,-1/30"]


def test_zeta_value_json_uses_pi_encoding(capsys):
    code, out, _ = run(["zeta", "value", "--family", "zeta", "--arg", "14"], capsys)
    assert code == 0
    assert json.loads(out) == [{"arg": 14, "family": "zeta",
                                "value": {"coeff": "2/18243225", "pi_pow": 14}}]


def test_mcl_vectors(capsys):
    code, out, _ = run(["mcl", "delta", "--s", "2", "--h=1/2,-1"], capsys)
    # Delta_2 = h1^2 - h2
    assert code == 0 and json.loads(out)[0]["value"] == "5/4"


def test_mcl_short_vector_is_usage_error(capsys):
    code, _, err = run(["mcl", "delta", "--s", "3", "--h=1,2"], capsys)
    assert code == 2 and "at least 3" in err


def test_roots_csv_columns(capsys):
    code, out, _ = run(["ramanujan", "roots", "--r", "5", "--precision", "128", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "re,im,modulus,residual" and len(lines) == 7


def test_li_compute_rows(capsys):
    code, out, _ = run(["li", "compute", "--n-max", "3", "--precision", "128"], capsys)
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == [1, 2, 3]
    assert set(rows[0]) == {"n", "lambda", "spread", "routes"}
    assert set(rows[0]["routes"]) == {"rec", "comp", "det"}


def test_hp_zeta_digits(capsys):
    code, out, _ = run(["hp", "zeta", "--s", "2", "--precision", "128"], capsys)
    row = json.loads(out)[0]
    assert code == 0 and row["re"].startswith("1.6449340668482264364724151666460251892")


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, err = run(["frobnicate"], capsys)
    assert code == 2 and "invalid choice" in err


def test_low_precision_exit_code(capsys):
    assert run(["hp", "zeta", "--s", "2", "--precision", "32"], capsys)[0] == 3
    assert run(["pseudo", "verify", "--which", "thm15", "--s-min", "17", "--s-max", "17",
                "--precision", "80"], capsys)[0] == 3


def test_failure_exit_code(monkeypatch, capsys):
    from zetakit.report import Report, check

    def broken(cfg):
        rep = Report("zetafam")
        rep.add(check("always", "test", False))
        return rep
    monkeypatch.setitem(cli.SUITES, "zetafam", broken)
    code, out, _ = run(["verify", "zetafam"], capsys)
    assert code == 1 and json.loads(out)["passed"] is False


def test_env_overrides_and_flag_precedence(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv("ZETAKIT_FORMAT", "csv")
    code, out, _ = run(["bernoulli", "table", "--max-s", "1"], capsys)
    assert out.startswith("s,B")
    code, out, _ = run(["bernoulli", "table", "--max-s", "1", "--format", "json"], capsys)
    assert json.loads(out)[0]["s"] == 0
    target = tmp_path / "t.txt"
    monkeypatch.setenv("ZETAKIT_OUT", str(target))
    run(["--format", "text", "bernoulli", "table", "--max-s", "1"], capsys)
    assert target.read_text().splitlines()[0] == "s\tB"


def test_bad_env_value_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("ZETAKIT_SEED", "forty")
    assert run(["verify", "zetafam"], capsys)[0] == 2


def test_flags_before_and_after_subcommand(capsys):
    a = run(["--seed", "5", "mcl", "verify", "--trials", "5", "--max-s", "6"], capsys)
    b = run(["mcl", "verify", "--trials", "5", "--max-s", "6", "--seed", "5"], capsys)
    assert a == b and a[0] == 0 and '"seed": "5"' in a[1]


def test_suite_report_is_sorted_and_timing_free(capsys):
    code, out, _ = run(["verify", "zetafam"], capsys)
    body = json.loads(out)
    ids = [c["id"] for c in body["suites"][0]["cases"]]
    assert code == 0 and ids == sorted(ids)
    assert "wall_time" not in body["suites"][0]
    code, out, _ = run(["verify", "zetafam", "--timings"], capsys)
    assert "wall_time" in json.loads(out)["suites"][0]


def test_run_config_validation():
    with pytest.raises(cli.UsageError):
        cli.RunConfig("verify", seed=-1)
    with pytest.raises(cli.UsageError):
        cli.RunConfig("verify", format="xml")
    assert cli.RunConfig("verify").seed == cli.DEFAULT_SEED
