"""Command line behaviour and exit codes."""

from __future__ import annotations

import json

import pytest

from lhc import parse_lhc, lambda_z4, gen_semilinear, serialize_lhc
from lhc.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gen_iterated_and_count(tmp_path, capsys):
    path = tmp_path / "q3.lhc"
    rc, _, _ = run(capsys, "gen", "iterated", "--group", "z22", "--n", "3", "--q", "4", "-o", str(path))
    assert rc == 0
    rc, out, _ = run(capsys, "transversals", str(path))
    assert rc == 0
    assert "transversals: 256" in out
    assert "nodes visited:" in out


def test_gen_semilinear_matches_library(tmp_path, capsys):
    path = tmp_path / "s.lhc"
    rc, _, _ = run(capsys, "gen", "semilinear", "--lambda", "0111", "-o", str(path))
    assert rc == 0
    assert parse_lhc(path.read_text()) == gen_semilinear(lambda_z4(2))


def test_gen_semilinear_requires_lambda(capsys):
    rc, _, err = run(capsys, "gen", "semilinear")
    assert rc == 2
    assert "lambda" in err


def test_gen_compose_from_spec(tmp_path, capsys):
    spec = tmp_path / "tree.sexp"
    spec.write_text('(op "0 1 2 3 1 0 3 2 2 3 0 1 3 2 1 0" (var 1) (var 2))\n')
    out = tmp_path / "c.lhc"
    rc, _, _ = run(capsys, "gen", "compose", "--spec", str(spec), "-o", str(out))
    assert rc == 0
    rc, text, _ = run(capsys, "transversals", str(out))
    assert "transversals: 8" in text


def test_validate_ok_and_violations(tmp_path, capsys):
    good = tmp_path / "good.lhc"
    good.write_text("LHC 2 2\n0 1\n1 0\n")
    rc, out, _ = run(capsys, "validate", str(good))
    assert rc == 0 and "ok" in out
    bad = tmp_path / "bad.lhc"
    bad.write_text("LHC 2 2\n0 0\n1 0\n")
    rc, out, _ = run(capsys, "validate", str(bad))
    assert rc == 1
    assert "not latin" in out


def test_parse_error_exit_code(tmp_path, capsys):
    broken = tmp_path / "broken.lhc"
    broken.write_text("LHC 2 2\n0 1 1\n")
    rc, _, err = run(capsys, "transversals", str(broken))
    assert rc == 3
    assert "input error" in err


def test_missing_file_exit_code(tmp_path, capsys):
    rc, _, err = run(capsys, "classify", str(tmp_path / "nope.lhc"))
    assert rc == 3


def test_envelope_exit_code(tmp_path, capsys):
    path = tmp_path / "q7.lhc"
    path.write_text("LHC 1 7\n0 1 2 3 4 5 6\n")
    rc, _, err = run(capsys, "transversals", str(path))
    assert rc == 2
    assert "order" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_transversals_list_limit(tmp_path, capsys):
    path = tmp_path / "q2.lhc"
    run(capsys, "gen", "iterated", "--group", "z22", "--n", "2", "--q", "4", "-o", str(path))
    rc, out, _ = run(capsys, "transversals", str(path), "--mode", "list", "--limit", "1")
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln]
    assert len(lines) == 1
    assert lines[0].startswith("(0,")


def test_classify_iterated_xor(tmp_path, capsys):
    path = tmp_path / "q3.lhc"
    run(capsys, "gen", "iterated", "--group", "z22", "--n", "3", "--q", "4", "-o", str(path))
    rc, out, _ = run(capsys, "classify", str(path))
    assert rc == 0
    assert "standardly semilinear: yes" in out
    assert "lambda: 00000000" in out
    assert "plane parity: all-even" in out
    assert "reducible: yes" in out


def test_classify_sigma_transform_even_arity(tmp_path, capsys):
    z4 = tmp_path / "z4.lhc"
    run(capsys, "gen", "iterated", "--group", "z4", "--n", "4", "--q", "4", "-o", str(z4))
    moved = tmp_path / "moved.lhc"
    sigma = "0,2,1,3"
    rc, out, _ = run(
        capsys, "apply", str(z4), "--isotopy", sigma, sigma, sigma, sigma, sigma, "-o", str(moved)
    )
    assert rc == 0
    rc, out, _ = run(capsys, "classify", str(moved))
    assert rc == 0
    assert "lambda: 0111111011101000" in out
    assert "plane parity: all-odd" in out
    assert "zero-transversal criterion: no-transversals" in out


def test_classify_reducible_non_semilinear_cube(tmp_path, capsys):
    from lhc.fixtures import EXAMPLE_CUBE_2, load_fixture

    path = tmp_path / "c2.lhc"
    path.write_text(serialize_lhc(load_fixture(EXAMPLE_CUBE_2)))
    rc, out, _ = run(capsys, "classify", str(path))
    assert rc == 0
    assert "standardly semilinear: no" in out
    assert "reducible: yes (inner variables 1,2)" in out


def test_apply_identity_is_byte_identical(tmp_path, capsys):
    src = tmp_path / "src.lhc"
    run(capsys, "gen", "iterated", "--group", "cyclic", "--n", "2", "--q", "3", "-o", str(src))
    dst = tmp_path / "dst.lhc"
    rc, _, _ = run(capsys, "apply", str(src), "-o", str(dst))
    assert rc == 0
    assert dst.read_text() == serialize_lhc(parse_lhc(src.read_text()))


def test_apply_show_counts_invariance(tmp_path, capsys):
    src = tmp_path / "src.lhc"
    run(capsys, "gen", "iterated", "--group", "z22", "--n", "2", "--q", "4", "-o", str(src))
    rc, out, _ = run(
        capsys,
        "apply", str(src), "--parastrophe", "2,0,1", "--show-counts", "-o", str(tmp_path / "out.lhc"),
    )
    assert rc == 0
    assert "transversals before: 8" in out
    assert "transversals after: 8" in out


def test_apply_bad_permutation_is_usage_error(tmp_path, capsys):
    src = tmp_path / "src.lhc"
    run(capsys, "gen", "iterated", "--group", "z22", "--n", "2", "--q", "4", "-o", str(src))
    rc, _, err = run(capsys, "apply", str(src), "--parastrophe", "0,1,x", "-o", str(tmp_path / "o.lhc"))
    assert rc == 2
    rc, _, err = run(capsys, "apply", str(src), "--isotopy", "0,1,2,3", "-o", str(tmp_path / "o.lhc"))
    assert rc == 2  # wrong number of permutations


def test_quadruples_report(capsys):
    rc, out, _ = run(capsys, "quadruples", "--lambda", "0" * 16)
    assert rc == 0
    assert "twin quadruples: 0" in out
    assert "brindled quadruples: 40" in out
    assert "zero-sum brindled quadruples: 40" in out
    assert "formula transversal count: 5120" in out
    assert "zero-transversal criterion: has-transversals" in out


def test_verify_subset(tmp_path, capsys):
    sidecar = tmp_path / "report.json"
    rc, out, _ = run(capsys, "verify", "--claim", "C01", "C05", "--json", str(sidecar))
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("C")]
    assert len(lines) == 2
    for ln in lines:
        parts = [p.strip() for p in ln.split("|")]
        assert len(parts) == 6
        assert parts[4] == "PASS"
    payload = json.loads(sidecar.read_text())
    assert payload["all_passed"] is True
    assert {c["claim_id"] for c in payload["claims"]} == {"C01", "C05"}


def test_verify_unknown_claim(tmp_path, capsys):
    rc, _, err = run(capsys, "verify", "--claim", "C99", "--json", str(tmp_path / "r.json"))
    assert rc == 2
    assert "unknown claim" in err


def test_verify_skip_slow_reports_reason(tmp_path, capsys):
    rc, out, _ = run(
        capsys, "verify", "--claim", "C03", "--skip-slow", "--json", str(tmp_path / "r.json")
    )
    assert rc == 0
    assert "SKIP" in out
    assert "skipped:" in out
