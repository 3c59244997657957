import json
import subprocess
import sys

import pytest

from surfloops.cli import Report, build_report, census_words, main, run_suite
from surfloops.freegroup import parse_word
from surfloops.surface import parse_surface

from .conftest import WORKED_SURFACE, WORKED_WORD


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_worked_example(capsys):
    code, out, _ = run(capsys, "compute", "--surface", WORKED_SURFACE,
                       "--word", WORKED_WORD, "--format", "json")
    assert code == 0
    r = Report.from_json(out)
    assert (r.m, r.t, r.delta, r.is_power_of_simple) == (2, 4, [], False)
    assert len(r.mu) == 4


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--surface", "genus:1,boundary:1", "--word", "a1")
    assert code == 0
    assert "m: 0" in out and "power of simple: true" in out and "delta: 0" in out


def test_compute_type2(capsys):
    code, out, _ = run(capsys, "compute", "--surface", "genus:1,boundary:1",
                       "--word", "a1.a2.a1.a2", "--format", "json", "--include-type2")
    r = Report.from_json(out)
    assert r.exponent == 2 and r.m == 1 and r.mu == [] and len(r.type2_raw) == 2


@pytest.mark.parametrize("argv", [
    ["compute", "--surface", "genus:1,boundary:1", "--word", "a1.A1"],
    ["compute", "--surface", "genus:1,boundary:1", "--word", "b2"],
    ["compute", "--surface", "genus:1,boundary:1", "--word", "a3"],
    ["compute", "--surface", "genus:3", "--word", "a1"],
    ["compute", "--word", "a1"],
    ["verify", "--suite", "nonsense"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_trivial_class_message(capsys):
    _, _, err = run(capsys, "compute", "--surface", "spheres:3", "--word", "a1.A1")
    assert "trivial" in err


def test_report_round_trip():
    m = parse_surface(WORKED_SURFACE)
    r = build_report(parse_word(WORKED_WORD), m, include_type2=True)
    again = Report.from_json(r.to_json())
    assert again == r
    assert again.to_json() == r.to_json()


def test_bracket(capsys):
    code, out, _ = run(capsys, "bracket", "--surface", "spheres:3", "--words", "a1", "a2")
    assert code == 0 and out.strip() == "0"
    _, ab, _ = run(capsys, "bracket", "--surface", "genus:1,boundary:1",
                   "--words", "a1.a1.a2", "a2", "--format", "json")
    _, ba, _ = run(capsys, "bracket", "--surface", "genus:1,boundary:1",
                   "--words", "a2", "a1.a1.a2", "--format", "json")
    ab, ba = json.loads(ab)["bracket"], json.loads(ba)["bracket"]
    assert ab and [(t["class"], -t["coefficient"]) for t in ab] == \
        [(t["class"], t["coefficient"]) for t in ba]
    _, same, _ = run(capsys, "bracket", "--surface", "genus:1,boundary:1",
                     "--words", "a1.a2", "a1.a2")
    assert same.strip() == "0"


def test_census_flags_worked_example(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text(WORKED_WORD + "\n")
    out = tmp_path / "out.jsonl"
    code, summary, _ = run(capsys, "census", "--surface", WORKED_SURFACE,
                           "--input", str(src), "--out", str(out))
    assert code == 0
    (line,) = out.read_text().splitlines()
    rec = json.loads(line)
    assert rec["delta_zero_mu_nonzero"] and rec["m"] == 2
    assert json.loads(summary)["delta_zero_mu_nonzero"] == 1


def test_census_short_words(tmp_path, capsys):
    out = tmp_path / "out.jsonl"
    code, _, _ = run(capsys, "census", "--surface", "genus:1,boundary:1",
                     "--max-len", "2", "--out", str(out))
    assert code == 0
    recs = [json.loads(x) for x in out.read_text().splitlines()]
    assert recs and all(r["t"] % 2 == 0 and "m" in r for r in recs)
    words = [r["word"] for r in recs]
    assert len(words) == len(set(words))


def test_census_empty_input(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("")
    out = tmp_path / "out.jsonl"
    code, summary, _ = run(capsys, "census", "--surface", "spheres:3",
                           "--input", str(src), "--out", str(out))
    assert code == 0 and out.read_text() == ""
    assert json.loads(summary) == {"classes": 0, "delta_zero_mu_nonzero": 0,
                                   "power_of_simple": 0}


def test_census_unwritable(tmp_path, capsys):
    code, _, err = run(capsys, "census", "--surface", "spheres:3", "--max-len", "1",
                       "--out", str(tmp_path / "missing" / "out.jsonl"))
    assert code == 1 and "cannot write" in err


def test_census_parallel_matches_serial(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "census", "--surface", "spheres:3", "--max-len", "5", "--out", str(a))
    run(capsys, "census", "--surface", "spheres:3", "--max-len", "5", "--out", str(b),
        "--jobs", "3")
    assert a.read_bytes() == b.read_bytes()


def test_census_inverse_identification():
    plain = census_words(2, 3, False)
    merged = census_words(2, 3, True)
    assert len(merged) < len(plain)


@pytest.mark.parametrize("suite", ["coskew", "cojacobi", "factorization", "conjugacy-oracle"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--trials", "20", "--seed", "3")
    assert code == 0
    assert out.strip().endswith("20/20 pass (seed 3)")


def test_run_suite_is_deterministic():
    assert run_suite("cojacobi", 15, 7, ["spheres:3"]) == run_suite("cojacobi", 15, 7, ["spheres:3"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "surfloops", "compute", "--surface",
                           "spheres:3", "--word", "a1.a1.A2", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["m"] == 2
