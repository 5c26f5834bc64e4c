import json
import subprocess
import sys

import pytest

from toricproj.cli import main

SIMPLEX = {"kind": "polytope", "points": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], "name": "P"}
TETRA = {"kind": "polytope", "points": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]], "name": "P'"}
DELTA3 = {
    "kind": "polytope",
    "points": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "lattice_basis": [["1", "0", "0"], ["0", "1", "0"], ["1/2", "1/2", "1/2"]],
}


@pytest.fixture
def write(tmp_path):
    def _write(name, data):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_is_generating(write, capsys):
    code, doc, err = run(capsys, "is-generating", write("s.json", SIMPLEX))
    assert code == 0 and doc["generating"] is True and doc["divisors"] == [1, 1, 1]
    assert "affinely generating" in err
    pts = {"kind": "points", "points": TETRA["points"]}
    code, doc, _ = run(capsys, "is-generating", write("t.json", pts))
    assert code == 0 and doc["generating"] is False and doc["divisors"] == [1, 1, 2]
    code, doc, _ = run(capsys, "is-generating", write("one.json", {"kind": "points", "points": [[3, 4]]}))
    assert doc["generating"] is False and doc["rank"] == 0


def test_reduce(write, capsys):
    code, doc, _ = run(capsys, "reduce", write("a.json", {"kind": "points", "points": [[0, 0], [1, 1]]}))
    assert code == 0 and doc["points"] == [[0], [1]] and doc["e"] == 1
    code, doc, _ = run(capsys, "reduce", write("b.json", {"kind": "points", "points": [[0], [2]]}))
    assert doc["points"] == [[0], [1]] and doc["iso_matrix"] == [["1/2"]]
    code, doc, _ = run(capsys, "reduce", write("c.json", SIMPLEX))
    assert doc["e"] == 3


def test_equiv_projective_and_affine(write, capsys):
    a, b = write("p.json", SIMPLEX), write("q.json", TETRA)
    code, doc, _ = run(capsys, "equiv", a, b, "--mode", "projective")
    assert code == 0 and doc["equivalent"] and doc["certificate"]["level"] == "reduced"
    assert doc["N"] == 3
    code, doc, err = run(capsys, "equiv", a, b, "--mode", "affine")
    assert code == 1 and not doc["equivalent"]
    assert doc["obstruction"] == "elementary divisors (1,1,1) vs (1,1,2)"
    assert "not affinely equivalent" in err


@pytest.mark.parametrize("mode", ["affine", "projective"])
def test_equiv_self_identity_certificate(write, capsys, mode):
    a = write("p.json", SIMPLEX)
    code, doc, _ = run(capsys, "equiv", a, a, "--mode", mode)
    assert code == 0
    assert doc["certificate"]["A"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert doc["certificate"]["b"] == [0, 0, 0]


def test_certificate_round_trip(write, capsys, tmp_path):
    a = write("a.json", {"kind": "points", "points": [[0, 0], [1, 0], [0, 1], [3, 2]]})
    b = write("b.json", {"kind": "points", "points": [[5, 5], [6, 7], [5, 6], [8, 13]]})
    for mode in ("affine", "projective"):
        cert = str(tmp_path / f"cert-{mode}.json")
        code, _, _ = run(capsys, "equiv", a, b, "--mode", mode, "--output", cert, "--quiet")
        assert code == 0
        code, doc, _ = run(capsys, "verify-certificate", a, b, cert)
        assert code == 0 and doc["valid"]
        code, doc, _ = run(capsys, "equiv", a, b, "--verify-certificate", cert)
        assert code == 0 and doc["valid"]


def test_forged_certificate_rejected(write, capsys):
    a = write("a.json", {"kind": "points", "points": [[0], [1], [3]]})
    b = write("b.json", {"kind": "points", "points": [[0], [2], [3]]})
    cert = write("cert.json", {"A": [[1]], "b": [0], "level": "ambient"})
    code, doc, _ = run(capsys, "verify-certificate", a, b, cert)
    assert code == 1 and doc["valid"] is False
    good = write("good.json", {"certificate": {"A": [[-1]], "b": [3], "level": "ambient"}})
    code, doc, _ = run(capsys, "verify-certificate", a, b, good)
    assert code == 0 and doc["valid"]


def test_zsolid(write, capsys):
    code, doc, _ = run(capsys, "zsolid", write("s.json", SIMPLEX))
    assert doc["z_solid"] is True
    code, doc, _ = run(capsys, "zsolid", write("t.json", TETRA))
    assert doc["z_solid"] is False and doc["n_lattice_points"] == 4
    code, doc, _ = run(capsys, "zsolid", write("d.json", DELTA3))
    assert code == 0 and doc["solid"] is True and doc["z_solid"] is False


def test_points(write, capsys):
    sq = {"kind": "polytope", "points": [[0, 0], [1, 0], [0, 1], [1, 1]]}
    assert run(capsys, "points", write("sq.json", sq))[1]["n_lattice_points"] == 4
    tri = {"kind": "polytope", "points": [[0, 0], [2, 0], [0, 2]]}
    assert run(capsys, "points", write("tri.json", tri))[1]["n_lattice_points"] == 6
    _, doc, _ = run(capsys, "points", write("t.json", TETRA))
    assert doc["points"] == [[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 2]]
    d2 = {"kind": "polytope", "points": [[0, 0], [1, 0], [0, 1]],
          "lattice_basis": [["1", "0"], ["1/2", "1/2"]]}
    _, doc, _ = run(capsys, "points", write("d2.json", d2))
    assert doc["n_lattice_points"] == 4 and ["1/2", "1/2"] in doc["ambient_points"]


def test_fingerprint(write, capsys):
    _, doc, _ = run(capsys, "fingerprint", write("c.json", {"kind": "points", "points": [[0], [1], [2]]}))
    assert doc["relations"] == [[1, -2, 1]]
    assert doc["variety_dimension"] == 1 and doc["span_dimension"] == 2
    _, doc, _ = run(capsys, "fingerprint", write("s.json", SIMPLEX))
    assert doc["relations"] == [] and doc["variety_dimension"] == 3 and doc["span_dimension"] == 3
    _, doc, _ = run(capsys, "fingerprint", write("o.json", {"kind": "points", "points": [[2, 2]]}))
    assert doc["variety_dimension"] == 0 and doc["span_dimension"] == 0


@pytest.mark.parametrize(
    "payload, field",
    [
        ("{not json", "invalid JSON"),
        ({"kind": "cloud", "points": [[0]]}, "kind"),
        ({"kind": "points"}, "points"),
        ({"kind": "points", "points": []}, "points"),
        ({"kind": "points", "points": [[0, 1], [1]]}, "points[1]"),
        ({"kind": "points", "points": [[0, "x"]]}, "points[0][1]"),
        ({"kind": "points", "points": [[0, 1.5]]}, "points[0][1]"),
        ({"kind": "polytope", "points": [[0, 0]], "lattice_basis": [["1", "2"], ["2", "4"]]}, "lattice_basis"),
        ({"kind": "polytope", "points": [[0, 0]], "lattice_basis": [["1", "0"]]}, "lattice_basis"),
        ({"kind": "polytope", "points": [["1/3", 0]], "lattice_basis": [["1", "0"], ["0", "1"]]}, "points"),
        ({"kind": "points", "points": [[0]], "extra": 1}, "extra"),
    ],
)
def test_malformed_input_exits_2(write, capsys, payload, field):
    code, doc, err = run(capsys, "is-generating", write("bad.json", payload))
    assert code == 2 and doc is None
    assert field in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "zsolid", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_zsolid_needs_polytope(write, capsys):
    code, _, err = run(capsys, "zsolid", write("p.json", {"kind": "points", "points": [[0]]}))
    assert code == 2 and "kind" in err


def test_affine_mode_precondition_exits_2(write, capsys):
    a = write("a.json", {"kind": "points", "points": [[0, 0], [1, 1]]})
    b = write("b.json", {"kind": "points", "points": [[0, 0], [2, 1]]})
    code, _, err = run(capsys, "equiv", a, b, "--mode", "affine")
    assert code == 2 and "reduce it first" in err


def test_projective_N_too_small_exits_2(write, capsys):
    a = write("a.json", SIMPLEX)
    code, _, err = run(capsys, "equiv", a, a, "--mode", "projective", "--N", "2")
    assert code == 2 and "N+1" in err


def test_quiet_and_deterministic(write, capsys):
    a, b = write("p.json", SIMPLEX), write("q.json", TETRA)
    main(["equiv", a, b, "--mode", "projective", "--quiet"])
    out1, err1 = capsys.readouterr()
    main(["equiv", a, b, "--mode", "projective", "--quiet"])
    out2, _ = capsys.readouterr()
    assert out1 == out2 and err1 == ""


def test_big_integers_are_strings(write, capsys):
    big = 2**60
    _, doc, _ = run(capsys, "reduce", write("b.json", {"kind": "points", "points": [[0], [1], [big]]}))
    assert doc["points"][-1] == [str(big)]


def test_module_entry_point(write):
    a = write("p.json", SIMPLEX)
    proc = subprocess.run([sys.executable, "-m", "toricproj", "zsolid", a], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["z_solid"] is True
    assert "Z-solid" in proc.stderr
