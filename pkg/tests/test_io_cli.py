import json
import subprocess
import sys

import pytest

from qgroupoid.cli import main
from qgroupoid.io import (MalformedInput, dump_algebra, dump_context, dump_weak, dumps, load_algebra,
                          load_context, load_file, load_weak, parse_text)
from qgroupoid.algebra import make_multimatrix
from qgroupoid.morita import canonical_context, verify_context
from qgroupoid.towers import tl_algebra
from qgroupoid.weak import verify_weak_bialgebra

from conftest import fixture_path
from corpus import instance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", ["pair2", "dual_pair2", "null"])
def test_weak_round_trip(name):
    H = instance(name)
    text = dumps(dump_weak(H))
    H2 = load_weak(parse_text(text))
    assert H2.algebra.same_structure(H.algebra)
    assert H2.comult == H.comult and H2.counit == H.counit
    assert verify_weak_bialgebra(H2) == []
    assert dumps(dump_weak(H2)) == text


def test_quadratic_algebra_round_trip():
    A = tl_algebra(2, 3).algebra
    B = load_algebra(parse_text(dumps(dump_algebra(A))))
    assert B.same_structure(A) and B.field == 5


def test_context_round_trip():
    ctx = canonical_context(make_multimatrix((2, 1)))
    ctx2 = load_context(parse_text(dumps(dump_context(ctx))))
    assert verify_context(ctx2) == []


@pytest.mark.parametrize("text,where", [
    ("", "line 1"),
    ("{\n \"kind\": \"algebra\",\n", "line 3"),
    ("[1, 2]", "line 1"),
    ("{\"kind\": \"spaceship\"}", "kind"),
])
def test_malformed_diagnostics(text, where):
    with pytest.raises(MalformedInput) as e:
        parse_text(text)
    assert e.value.where.startswith(where)


def test_field_diagnostics():
    obj = json.loads(dumps(dump_weak(instance("pair2"))))
    obj["algebra"]["mult"][0][2] = {"0": "x/y"}
    with pytest.raises(MalformedInput) as e:
        load_weak(obj)
    assert e.value.where.startswith("algebra.mult[0]")
    del obj["counit"]
    obj["algebra"]["mult"][0][2] = {"0": "1"}
    with pytest.raises(MalformedInput) as e:
        load_weak(obj)
    assert e.value.where == "counit"


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", fixture_path("pair_groupoid2.json"))[0] == 0
    code, out, _ = run(capsys, "verify", fixture_path("broken_counit.json"))
    assert code == 1 and "FAIL  weak bialgebra axioms  (counit" in out
    code, _, err = run(capsys, "verify", fixture_path("empty.json"))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "verify", fixture_path("truncated.json"))
    assert code == 2 and "line 3" in err
    assert run(capsys, "verify", fixture_path("no-such-file.json"))[0] == 2


@pytest.mark.parametrize("name", ["groupoid_pair2.json", "groupoid_explicit.json", "cyclic2.json",
                                  "pair_groupoid3.json", "context_canonical_2_1.json", "context_full_2_1.json",
                                  "pairing_pair2.json", "algebra_m2.json", "tower_n2.json"])
def test_verify_fixtures_pass(capsys, name):
    code, out, _ = run(capsys, "verify", fixture_path(name), "--no-timing")
    assert code == 0, out


def test_verify_json_and_determinism(capsys):
    a = run(capsys, "verify", fixture_path("pair_groupoid2.json"), "--format", "json", "--no-timing")
    b = run(capsys, "verify", fixture_path("pair_groupoid2.json"), "--format", "json", "--no-timing")
    assert a == b
    rep = json.loads(a[1])
    assert rep["status"] == "pass" and "timing" not in rep
    assert all(c["outcome"] == "pass" for c in rep["checks"])


def test_tower_command(capsys):
    code, out, _ = run(capsys, "tower", "--n", "3", "--emit", "table")
    assert code == 0 and out.rstrip().splitlines()[-1] == "dim H = 122"
    code, out, _ = run(capsys, "tower", "--n", "3", "--base-change")
    assert out.rstrip().splitlines()[-1] == "dim H̃ = 24"
    code, out, _ = run(capsys, "tower", "--n", "2")
    assert out.rstrip().splitlines()[-1] == "dim H = 13"
    code, out, _ = run(capsys, "tower", "--n", "3", "--emit", "dot")
    assert out.startswith("graph tower_n3 {")
    assert run(capsys, "tower", "--n", "5")[0] == 1
    code, out, _ = run(capsys, "tower", "--n", "3", "--format", "json", "--base-change")
    d = json.loads(out)
    assert d["dim_H"] == 122 and d["dim_H_tilde"] == 24 and d["middle_solutions"] == 1


def test_base_change_command(capsys, tmp_path):
    out_file = tmp_path / "back.json"
    code, out, _ = run(capsys, "base-change", fixture_path("pair_groupoid2_amplified.json"),
                       "--context", "canonical", "--out", str(out_file), "--no-timing")
    assert code == 0
    assert "dim before = 25" in out and "dim after = 4" in out
    assert "inclusion matrix invariance: ok" in out
    back = load_weak(load_file(str(out_file)))
    assert back.dim == 4 and verify_weak_bialgebra(back) == []


def test_base_change_file_context(capsys):
    code, out, _ = run(capsys, "base-change", fixture_path("pair_groupoid2_amplified.json"),
                       "--context", fixture_path("context_full_2_1.json"), "--no-timing", "--quick")
    assert code == 0 and "dim after = 4" in out


def test_base_change_trivial_and_amplify(capsys):
    code, out, _ = run(capsys, "base-change", fixture_path("pair_groupoid2.json"), "--context", "trivial",
                       "--format", "json", "--no-timing")
    d = json.loads(out)
    assert code == 0 and d["dim_before"] == d["dim_after"] == 4
    code, out, _ = run(capsys, "base-change", fixture_path("groupoid_pair2.json"), "--context", "amplify:2,1",
                       "--quick", "--no-timing")
    assert code == 0 and "dim after = 25" in out


def test_base_change_tower_mode(capsys):
    code, out, _ = run(capsys, "base-change", fixture_path("tower_n2.json"), "--no-timing")
    assert code == 0 and "dim before = 13" in out and "dim after = 13" in out
    code, out, _ = run(capsys, "base-change", fixture_path("tower_n3.json"), "--no-timing")
    assert "dim after = 24" in out


def test_base_change_errors(capsys):
    code, _, err = run(capsys, "base-change", fixture_path("pair_groupoid3.json"), "--context", "amplify:2,1")
    assert code == 1 and "BaseMismatch" in err
    assert run(capsys, "base-change", fixture_path("empty.json"))[0] == 2
    assert run(capsys, "base-change", fixture_path("pair_groupoid2.json"), "--context", "amplify:x")[0] == 2


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "qgroupoid.cli", "tower", "--n", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.rstrip().endswith("dim H = 13")
