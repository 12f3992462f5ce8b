"""Presentation files and the `aqg` command line (exit codes, reports, determinism)."""
import json

import pytest

from aqg.cli import main
from aqg.fileformat import PresentationError, dump_presentation, parse_presentation

from conftest import FINITE_EXAMPLES, example


@pytest.mark.parametrize("spec", FINITE_EXAMPLES)
def test_round_trip(spec):
    text = dump_presentation(example(spec))
    p = parse_presentation(text)
    assert dump_presentation(p) == text


Z2 = dump_presentation(example("group:C[Z2]"))


@pytest.mark.parametrize("text, msg", [
    ("nonsense\n", "header"),
    (Z2.replace("[star]", "[stars]"), "unknown section"),
    (Z2.replace("u_g u_g u_e 1", "u_g u_g u_e 1.0"), "float"),
    (Z2.replace("u_g u_g u_e 1", "u_g u_g u_x 1"), "not declared"),
    (Z2.replace("u_g 0", "u_g zero"), "not an integer"),
    (Z2 + "u_e 1\n", "duplicate"),
])
def test_malformed(text, msg):
    with pytest.raises(PresentationError, match=msg) as info:
        parse_presentation(text)
    assert info.value.report is None


def test_corrupted_file_rejected_with_witness():
    bad = Z2.replace("u_g u_g u_e 1", "u_g u_g u_e -1")
    with pytest.raises(PresentationError) as info:
        parse_presentation(bad)
    assert info.value.report is not None and not info.value.report.ok
    assert any(c.witness for c in info.value.report.failures())


def test_uncertified_load_allowed():
    p = parse_presentation(Z2.replace("u_g u_g u_e 1", "u_g u_g u_e -1"), certify=False)
    assert p.family == "loaded"


# -- CLI ---------------------------------------------------------------------------------

def test_cli_verify_ok(tmp_path, capsys):
    js, md = tmp_path / "r.json", tmp_path / "r.md"
    rc = main(["verify", "--example", "group:C[Z4]", "--suite", "all",
               "--report-json", str(js), "--report-md", str(md)])
    out = capsys.readouterr().out
    assert rc == 0 and "checks passed" in out
    data = json.loads(js.read_text())
    assert data["ok"] and all(c["status"] in ("pass", "info") for c in data["checks"])
    assert "wall_time" not in js.read_text()
    assert md.read_text().startswith("#")


def test_cli_json_deterministic(tmp_path):
    paths = [tmp_path / f"{k}.json" for k in range(2)]
    for p in paths:
        assert main(["verify", "--example", "group:F[S3]", "--quiet", "--report-json", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_cli_timing_opt_in(tmp_path):
    p = tmp_path / "t.json"
    main(["verify", "--example", "group:C[Z2]", "--suite", "axioms", "--quiet", "--timing",
          "--report-json", str(p)])
    assert "wall_time" in p.read_text()


@pytest.mark.parametrize("argv", [
    ["verify", "--q", "5/4", "--suite", "axioms"],
    ["verify", "--q", "abc"],
    ["verify", "--q", "3/7", "--exact-polar"],
    ["verify", "--example", "group:C[Q8]"],
    ["verify", "--suite", "nope"],
    ["verify", "--presentation-file", "/nonexistent/file.aqg"],
])
def test_cli_usage_errors(argv, capsys):
    try:
        rc = main(argv)
    except SystemExit as exc:  # argparse
        rc = exc.code
    assert rc == 2
    assert capsys.readouterr().err


def test_cli_exact_polar_message(capsys):
    assert main(["verify", "--q", "3/7", "--exact-polar"]) == 2
    assert "not a rational square" in capsys.readouterr().err


def test_cli_rejects_corrupted_file(tmp_path, capsys):
    f = tmp_path / "bad.aqg"
    f.write_text(Z2.replace("u_g u_g u_e 1", "u_g u_g u_e -1"))
    assert main(["verify", "--presentation-file", str(f)]) == 1
    assert "FAIL" in capsys.readouterr().err


def test_cli_loaded_file(tmp_path):
    f = tmp_path / "s3.aqg"
    f.write_text(dump_presentation(example("group:F[S3]")))
    assert main(["verify", "--presentation-file", str(f), "--quiet"]) == 0


def test_cli_env_tolerance(monkeypatch, tmp_path):
    monkeypatch.setenv("AQG_DEFAULT_TOLERANCE", "1e-11")
    p = tmp_path / "r.json"
    main(["verify", "--example", "group:C[Z2]", "--suite", "axioms", "--quiet", "--report-json", str(p)])
    assert json.loads(p.read_text())["environment"]["tolerance"] == 1e-11


def test_cli_audit(capsys):
    assert main(["audit", "--example", "group:C[Z4]"]) == 0
    assert "unmapped propositions: 0" in capsys.readouterr().out
