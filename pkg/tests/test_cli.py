import json
import subprocess
import sys

import pytest

from zzlie.cli import main
from zzlie.gmatrix import Matrix, elementary


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_text(capsys):
    code, out, _ = run(capsys, "build", "zz-sl:1,1,1,0")
    assert code == 0
    assert out.count("\n\n") == 8
    blocks = out.strip().split("\n\n")[1:]
    for block in blocks:
        header, *rows = block.splitlines()
        assert Matrix.from_text("\n".join(rows)).shape == (3, 3)


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "zz-so-even:2,1", "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["basis"]) == 6
    assert [1, 1] not in [b["degree"] for b in doc["basis"]]


@pytest.mark.parametrize("argv", [["build", "zz-sl:1,1,1"], ["build", "zz-sl:1,1,a,0"], ["dims", "foo:1"]])
def test_bad_specs_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error:" in err and out == ""


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "zz-so-odd:2,1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["built"] == doc["formula"] == [2, 2, 2, 4] and doc["total"] == 10


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "zz-sp:3,1", "--checks=all")
    assert code == 0 and out.startswith("zz-sp:3,1: PASS")
    code, out, _ = run(capsys, "verify", "zz-so-odd-b:2,1", "--checks=jacobi", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["reports"][0]["checked"] == 1000


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "zz-sp:3,1", "--checks=jacobi,foo")
    assert code == 2 and "foo" in err


def test_examples(capsys):
    code, out, _ = run(capsys, "examples", "gell-mann")
    assert code == 0 and "GM: 12/12 pass" in out
    code, out, _ = run(capsys, "examples", "parafermion", "3", "2")
    assert code == 0 and "PF: 72/72 pass" in out and "PFrel: 96/96 pass" in out
    code, out, _ = run(capsys, "examples", "a-stat", "3", "1", "--json")
    assert code == 0 and json.loads(out)["passed"]


@pytest.mark.parametrize("argv", [["parafermion", "2", "2"], ["parafermion", "2"], ["a-stat", "x", "1"], ["nope"]])
def test_examples_usage(capsys, argv):
    code, _, _ = run(capsys, "examples", *argv)
    assert code == 2


def test_structure_constants_json(capsys):
    code, out, _ = run(capsys, "structure-constants", "zz-sl:1,1,1,0", "--format=json")
    doc = json.loads(out)
    assert code == 0
    labels = [b["label"] for b in doc["basis"]]
    degrees = [tuple(b["degree"]) for b in doc["basis"]]
    # an anticommutator of a (0,1) and a (1,0) element with coefficient 1 on a (1,1) element
    hits = [
        br for br in doc["brackets"]
        if degrees[br["i"]] == (0, 1) and degrees[br["j"]] == (1, 0)
        and any(degrees[t["k"]] == (1, 1) and t["c"].startswith("1/1 ") for t in br["terms"])
    ]
    assert hits and len(labels) == 8


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "zz-so-odd:2,1", "zz-so-even:2,1")
    assert code == 1 and "NotIsomorphicSignature" in out
    code, out, _ = run(capsys, "iso", "zz-so-odd:2,1", "zz-so-odd-b:2,1", "--json")
    assert code == 0 and json.loads(out)["found"]
    code, out, _ = run(capsys, "iso", "zz-so-odd:2,1", "zz-so-odd-b:2,1", "--budget", "2")
    assert code == 1 and "NotFoundWithinBudget" in out


def _write_generators(path, mats):
    path.write_text("\n\n".join(m.to_text() for m in mats) + "\n")


def test_search(capsys, tmp_path):
    f = tmp_path / "gens.txt"
    e = lambda j, k: elementary(3, 3, j, k)  # noqa: E731
    _write_generators(f, [e(1, 2), e(2, 1), e(1, 3), e(3, 1)])
    code, out, _ = run(capsys, "search", "sl:2", str(f), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["colorings"] == 7
    hit = [r for r in doc["results"] if r["valid"]]
    assert hit[0]["signature"] == [2, 2, 2, 2] and hit[0]["matched_family"] == "zz-sl:1,1,1,0"

    _write_generators(f, [e(1, 2), e(2, 1), e(1, 3), e(3, 1), e(2, 3), e(3, 2)])
    code, out, _ = run(capsys, "search", "sl:2", str(f))
    assert code == 1 and out.startswith("sl:2: 31 colorings, 0 valid")


def test_search_bad_inputs(capsys, tmp_path):
    code, _, _ = run(capsys, "search", "sl:2", str(tmp_path / "missing.txt"))
    assert code == 2
    f = tmp_path / "bad.txt"
    f.write_text("1, 0\n0\n")
    code, _, _ = run(capsys, "search", "sl:2", str(f))
    assert code == 2
    f.write_text("1, 0\n0, 1\n")
    code, _, _ = run(capsys, "search", "sl:2", str(f))
    assert code == 2


def test_argparse_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "verify", "zz-sp:2,1", "--jobs", "0")[0] == 2
    assert run(capsys)[0] == 2


def test_jobs_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("GLA_JOBS", "2")
    code, out, _ = run(capsys, "verify", "zz-sl:1,1,1,0", "--checks=jacobi", "--json")
    assert code == 0 and json.loads(out)["reports"][0]["checked"] == 512


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "zzlie", "structure-constants", "zz-so-odd:2,1", "--format=json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
