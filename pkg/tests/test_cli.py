import json
import subprocess
import sys

import pytest

from tknots.cli import RunConfig, main, run
from tknots.errors import InputError


def ok(argv):
    status, text = run(argv)
    assert status == 0, text
    return json.loads(text)


def err(argv, status=2):
    code, text = run(argv)
    assert code == status, text
    return json.loads(text)


def test_check_builtin():
    assert ok(["check", "builtin:dihedral3"]) == {"passed": True}
    assert ok(["check", "builtin:dihedral3-shadow"]) == {"passed": True}
    assert ok(["check", "builtin:trefoil"]) == {"passed": True}


def test_check_reports_violations(tmp_path):
    obj = json.loads(open(__import__("tknots").verify.data_path("dihedral3-shadow")).read())
    obj["biquandle"]["under"][0][0] = 1
    f = tmp_path / "broken.json"
    f.write_text(json.dumps(obj))
    out = err(["check", str(f)], status=1)
    assert out["passed"] is False and out["violations"]


def test_derive_tribracket():
    out = ok(["derive-tribracket", "builtin:dihedral3"])
    table = out["tribracket"]["table"]
    assert table[0][1][2] == (0 - 1 + 2) % 3
    assert out["axioms"]["passed"]


def test_derive_tribracket_needs_strong_connectivity(tmp_path):
    f = tmp_path / "d4.json"
    f.write_text('{"kind": "dihedral", "n": 4}')
    assert err(["derive-tribracket", str(f)])["error"] == "not_strongly_connected"


def test_homology_sb_and_lb_agree():
    a = ok(["homology", "builtin:dihedral3", "--degree", "2", "--mod", "3"])
    b = ok(["homology", "builtin:dihedral3", "--degree", "2", "--mod", "3", "--theory", "lb"])
    assert a["torsion"] == b["torsion"] == [3]
    z = ok(["homology", "builtin:dihedral3", "--degree", "2"])
    assert z["free_rank"] == 0 and z["torsion"] == [3]


def test_cocycles_requires_mod():
    assert err(["cocycles", "builtin:dihedral3"])["error"] == "usage_error"
    out = ok(["cocycles", "builtin:dihedral3", "--mod", "3"])
    assert out["basis"]


def test_mochizuki_forms():
    sb = ok(["mochizuki", "--n", "3"])
    assert sb["degree"] == 2 and sb["mod"] == 3
    assert ok(["mochizuki", "--n", "3", "--degree", "3"])["degree"] == 3
    assert ok(["mochizuki", "--n", "5", "--form", "lb"])["theory"] == "LB"
    assert ok(["mochizuki", "--n", "5", "--form", "n"])["theory"] == "N"
    assert err(["mochizuki", "--n", "3", "--degree", "4"])["error"] == "invalid_parameter"


def test_colorings():
    sb = ok(["colorings", "builtin:trefoil", "builtin:dihedral3"])
    lb = ok(["colorings", "builtin:trefoil", "builtin:dihedral3", "--theory", "lb"])
    assert sb["count"] == lb["count"] == 27
    assert len(sb["colorings"]) == 27


def test_invariant_and_compare():
    out = ok(["invariant", "builtin:trefoil", "builtin:dihedral3", "--cocycle", "mochizuki:3"])
    assert out["phi"] == [[0, 9], [1, 18]]
    assert out["H"] == [[[0], 9], [[1], 18]]
    lb = ok(["invariant", "builtin:trefoil", "builtin:dihedral3", "--cocycle", "mochizuki:3", "--theory", "lb",
             "--no-homology"])
    assert lb["colorings"] == 27 and lb["phi"] == out["phi"]
    cmp_ = ok(["compare", "builtin:trefoil", "builtin:dihedral3", "--cocycle", "mochizuki:3"])
    assert cmp_["passed"] and cmp_["phi_equal"]
    surf = ok(["compare", "builtin:two-triple-points", "builtin:dihedral3", "--cocycle", "mochizuki:3"])
    assert surf["passed"] and surf["W_closed"] is False


def test_invariant_with_cochain_file(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"kind": "cochain", "theory": "SB", "mod": 3, "degree": 2, "values": []}))
    out = ok(["invariant", "builtin:figure8", "builtin:dihedral3", "--cocycle", str(f), "--no-homology"])
    assert out["colorings"] == 9 and out["phi"] == [[0, 9]]
    g = tmp_path / "d.json"
    g.write_text(json.dumps({"kind": "dihedral", "n": 3}))
    assert err(["invariant", "builtin:figure8", "builtin:dihedral3", "--cocycle", str(g)])["error"] == \
        "invalid_structure"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["check", "missing.json"], "file_not_found"),
        (["check", "builtin:nothing"], "file_not_found"),
        (["bogus"], "usage_error"),
        (["colorings", "builtin:trefoil", "builtin:dihedral3", "--jobs", "0"], "usage_error"),
        (["homology", "builtin:dihedral3", "--mod", "1"], "usage_error"),
        (["colorings", "builtin:dihedral3", "builtin:trefoil"], "invalid_structure"),
        (["invariant", "builtin:trefoil", "builtin:dihedral3", "--cocycle", "mochizuki:5"], "size_mismatch"),
    ],
)
def test_errors(argv, code):
    out = err(argv)
    assert out["error"] == code and out["message"]


def test_output_file(tmp_path):
    f = tmp_path / "out.json"
    status, text = run(["colorings", "builtin:kink", "builtin:dihedral3", "-o", str(f)])
    assert status == 0 and f.read_text() == text + "\n"


def test_output_is_independent_of_jobs():
    args = ["colorings", "builtin:figure8", "builtin:dihedral5"]
    assert run(args + ["--jobs", "1"]) == run(args + ["--jobs", "2"])


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig("x", (), "sb", None, None, None, 0)
    with pytest.raises(InputError):
        RunConfig("x", (), "sb", 0, None, None, 1)


def test_main_streams(capsys):
    assert main(["check", "builtin:dihedral3"]) == 0
    assert json.loads(capsys.readouterr().out) == {"passed": True}
    assert main(["check", "nope.json"]) == 2
    assert "file_not_found" in capsys.readouterr().err
    assert main(["--version"]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tknots", "verify", "--quick"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["passed"] is True
