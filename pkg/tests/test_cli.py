import json
import subprocess
import sys

import pytest

from abbrep import field
from abbrep.cli import main
from abbrep.projective import point_to_json
from abbrep.subobjects import abb_image, subline_canonical
from abbrep.verify import CheckParams, Report, run_check


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 18
    assert lines[0].split()[0] == "L1.1" and lines[-1].split()[0] == "R4"


def test_verify_json_is_library_report(capsys):
    code, out, _ = run(capsys, "verify", "--stmt", "T2.6", "--p", "3", "--h", "1", "--n", "3", "--k", "3",
                       "--mode", "sample", "--samples", "100", "--seed", "7", "--format", "json")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1
    d = json.loads(lines[0])
    assert d["verdict"] == "pass" and d["checked"] == 100
    lib = run_check(CheckParams("T2.6", 3, 1, 3, 3, "sample", 100, 7))
    assert Report.from_json(d).dumps(timing=False) == lib.dumps(timing=False)
    # parse and re-serialise is byte-identical
    assert Report.from_json(d).dumps() == lines[0]


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--stmt", "L2.1", "--p", "3", "--n", "2", "--mode", "exhaustive")
    assert code == 0 and "L2.1" in out and "pass" in out


def test_census_text(capsys):
    code, out, _ = run(capsys, "census", "--kind", "external-triples", "--p", "3", "--h", "1", "--n", "3")
    assert code == 0
    assert "computed 2808 vs formula 2808" in out


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--kind", "allowable-B", "--p", "3", "--n", "3", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["computed"] == d["formula"] == 12


@pytest.mark.parametrize("argv, code", [
    (["verify", "--stmt", "Z1", "--p", "3", "--n", "2"], 2),
    (["verify", "--stmt", "T2.3", "--p", "3"], 2),
    (["verify", "--stmt", "T2.3", "--p", "4", "--n", "2"], 2),
    (["verify", "--stmt", "T2.3", "--p", "3", "--n", "2", "--mode", "all"], 2),
    (["frobnicate"], 2),
    ([], 2),
    (["census", "--kind", "external-triples", "--p", "2", "--n", "1", "--h", "11"], 2),
    (["verify", "--stmt", "T2.6", "--p", "2", "--n", "3"], 3),
    (["verify", "--stmt", "R2", "--p", "3", "--n", "3"], 3),
    (["verify", "--stmt", "T2.3", "--p", "3", "--n", "4", "--k", "3"], 3),
    (["census", "--kind", "scroll-curves", "--p", "3", "--n", "2"], 3),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_unknown_statement_lists_valid_ids(capsys):
    _, _, err = run(capsys, "verify", "--stmt", "Z1", "--p", "3", "--n", "2")
    assert "T2.10" in err and "R4" in err


def test_failing_check_exits_one(capsys, monkeypatch):
    from abbrep.verify import line_checks

    monkeypatch.setattr(line_checks, "_external_structure", lambda ctx, m: ["forced"])
    code, out, _ = run(capsys, "verify", "--stmt", "T2.6", "--p", "3", "--n", "2", "--samples", "2",
                       "--format", "json")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_field_spec_and_output(tmp_path, capsys):
    spec = tmp_path / "f.json"
    spec.write_text(json.dumps({"p": 3, "h": 1, "n": 2, "irreducible": [2, 1, 1]}))
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--stmt", "L2.2", "--field-spec", str(spec), "--samples", "3",
                     "--format", "json", "--output", str(out))
    assert code == 0
    d = json.loads(out.read_text())
    assert d["verdict"] == "pass"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 3, "h": 1, "n": 2, "irreducible": [1, 0, 0]}))
    assert run(capsys, "verify", "--stmt", "L2.2", "--field-spec", str(bad))[0] == 2


def test_classify_file(tmp_path, capsys):
    ctx = field(3, 1, 3)
    pts = abb_image(ctx, subline_canonical(ctx, ctx.generator, 1).points)
    path = tmp_path / "pts.json"
    path.write_text(json.dumps({"field": ctx.spec(), "points": [point_to_json(ctx, P) for P in sorted(pts)]}))
    code, out, _ = run(capsys, "classify", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["match"] == "external subline"
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps([point_to_json(ctx, P) for P in sorted(pts)]))
    code, out, _ = run(capsys, "classify", str(bare), "--p", "3", "--n", "3")
    assert code == 0 and out.startswith("external subline")
    assert run(capsys, "classify", str(tmp_path / "missing.json"), "--p", "3", "--n", "3")[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "abbrep", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and len(r.stdout.splitlines()) == 18
    r = subprocess.run([sys.executable, "-m", "abbrep", "verify", "--stmt", "T2.6", "--p", "2", "--n", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 3
