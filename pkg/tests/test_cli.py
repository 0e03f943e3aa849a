import csv
import io
import json

import numpy as np
import pytest

from chgeom.cli import main, verdict_from_dict
from chgeom.detector import certify
from chgeom.fixtures import B_BLOCK, B_REAL, ELLIPTIC_E, LOX_A
from chgeom.formats import dumps, generator_document, load_generator_file, vector_entries
from chgeom.words import GroupPresentation, ball_size


def run(argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


def report(argv):
    code, text = run(argv)
    assert code == 0
    return json.loads(text)


@pytest.fixture
def write_group(tmp_path):
    def write(name, items):
        path = tmp_path / name
        path.write_text(dumps(generator_document(items)))
        return path

    return write


@pytest.fixture
def write_points(tmp_path):
    def write(name, configurations):
        path = tmp_path / name
        path.write_text(json.dumps({"configurations": configurations}))
        return path

    return write


def test_validate_statuses(write_group):
    path = write_group("g.json", [("A", LOX_A.matrix), ("bad", np.diag([2.0, 1, 1])),
                                  ("scaled", 2 * LOX_A.matrix)])
    rows = report(["validate", path])["result"]["generators"]
    assert [r["status"] for r in rows] == ["valid", "BadDeterminant", "BadDeterminant"]
    assert rows[0]["identity_grid_max_residual"] == 0
    assert "error" in rows[1]["normalization"]
    assert rows[2]["normalization"]["divided_by"] == pytest.approx([2.0, 0.0])
    assert rows[2]["normalization"]["normalized_matrix"][0][0] == pytest.approx([2.0, 0.0])


def test_classify(write_group):
    path = write_group("g.json", [("A", LOX_A.matrix), ("B", B_REAL.matrix), ("E", ELLIPTIC_E.matrix)])
    rows = report(["classify", path])["result"]["generators"]
    assert [r["class"] for r in rows] == ["loxodromic", "elliptic", "elliptic"]
    tokens = [fp["point"] for fp in rows[0]["fixed_points"] if fp["class"] == "boundary"]
    assert "inf" in tokens and [[0.0, 0.0], [0.0, 0.0]] in tokens


def test_cartan_examples(write_points):
    path = write_points("p.json", [
        [[0, 0], "inf", [-0.5, 1]],
        [[0, 0], "inf", [[0, 1], 0]],
        [[0, 0], [0, 0], "inf"],
    ])
    rows = report(["cartan", path])["result"]["configurations"]
    assert rows[0]["angle"] == 0
    assert rows[1]["angle"] == pytest.approx(-np.pi / 2)
    assert rows[2]["degenerate"].startswith("DegenerateTriple")


def test_cross_on_real_orbit(write_points):
    b = B_REAL.matrix
    quad = [{"lift": vector_entries(b @ [0, 0, 1])}, "inf", [0, 0], {"lift": vector_entries(b @ [1, 0, 0])}]
    row = report(["cross", write_points("q.json", [quad])])["result"]["configurations"][0]
    assert row["coplanarity"] == "lagrangian"
    assert row["X1"] == pytest.approx([0.25, 0.0])


def test_audit_and_detect(write_group):
    real = write_group("r.json", [("A", LOX_A.matrix), ("B", B_REAL.matrix)])
    audit = report(["audit", real, "--radius", 3])["result"]
    assert audit["words_checked"] == ball_size(2, 3) and audit["witness"] is None
    v = report(["detect", real])["result"]["verdict"]
    assert v["kind"] == "RFuchsian" and v["certification"]["passed"]

    block = write_group("c.json", [("A", LOX_A.matrix), ("B", B_BLOCK.matrix)])
    v = report(["detect", block])["result"]["verdict"]
    assert v["kind"] == "CFuchsian"
    np.testing.assert_allclose(v["polar"], [[0, 0], [1, 0], [0, 0]], atol=1e-12)

    mixed = write_group("m.json", [("A", LOX_A.matrix), ("B", B_REAL.matrix), ("E", ELLIPTIC_E.matrix)])
    v = report(["detect", mixed])["result"]["verdict"]
    assert v["kind"] == "NotFuchsian" and v["witness"] == "E"


def test_detect_report_round_trip(write_group, rng):
    from chgeom.fixtures import conjugated, random_element

    q = random_element(rng)
    for base in (B_REAL, B_BLOCK):
        gens = conjugated([LOX_A, base], q)
        path = write_group("g.json", [("A", gens[0].matrix), ("B", gens[1].matrix)])
        v = report(["detect", path])["result"]["verdict"]
        items, _, _, _ = load_generator_file(path)
        group = GroupPresentation.from_matrices(items)
        assert certify(verdict_from_dict(v, group), group).passed


def test_tolerance_flags_echoed(write_group):
    path = write_group("r.json", [("A", LOX_A.matrix), ("B", B_REAL.matrix)])
    rep = report(["detect", path, "--tol-cert", "1e-6", "--tol-tr", "1e-7", "--tol", "1e-9"])
    assert rep["tolerances"]["cert"] == 1e-6
    assert rep["tolerances"]["tr"] == 1e-7
    assert rep["tolerances"]["entry"] == 1e-9
    assert "wall_time_s" not in rep
    assert "wall_time_s" in report(["--timing", "detect", path])


def test_detect_is_deterministic(write_group):
    path = write_group("m.json", [("A", LOX_A.matrix), ("B", B_REAL.matrix), ("E", ELLIPTIC_E.matrix)])
    assert run(["detect", path])[1] == run(["detect", path])[1]
    one = report(["detect", path, "--jobs", 1])["result"]
    many = report(["detect", path, "--jobs", 4])["result"]
    assert one == many


@pytest.mark.parametrize("kind,expected", [("r", {"RFuchsian"}), ("c", {"CFuchsian"}),
                                           ("near-miss", {"NotFuchsian", "Inconclusive"})])
def test_fixtures_round_trip(tmp_path, kind, expected):
    files = report(["fixtures", "--kind", kind, "--seed", 7, "--count", 3, "--out-dir", tmp_path])
    files = files["result"]["files"]
    assert len(files) == 3
    for f in files:
        assert report(["detect", f])["result"]["verdict"]["kind"] in expected
    again = tmp_path / "again"
    report(["fixtures", "--kind", kind, "--seed", 7, "--count", 3, "--out-dir", again])
    assert (again / files[0].split("/")[-1]).read_bytes() == open(files[0], "rb").read()


def orbit_rows(argv):
    code, text = run(argv)
    assert code == 0
    return list(csv.reader(io.StringIO(text)))


def test_orbit_fixed_point(write_group):
    path = write_group("a.json", [("A", LOX_A.matrix)])
    rows = orbit_rows(["orbit", path, "--point", "0,0", "--radius", 3])
    assert rows[0] == ["word", "re_z1", "im_z1", "re_z2", "im_z2"]
    assert len(rows) - 1 == ball_size(1, 3)
    assert all(float(x) == 0 for r in rows[1:] for x in r[1:])


def test_orbit_stays_on_real_plane(write_group, tmp_path):
    path = write_group("r.json", [("A", LOX_A.matrix), ("B", B_REAL.matrix)])
    out = tmp_path / "orbit.csv"
    assert run(["orbit", path, "--point=-0.5,1", "--radius", 3, "--out", out])[0] == 0
    rows = list(csv.reader(out.open()))[1:]
    assert len(rows) == ball_size(2, 3)
    finite = [r for r in rows if r[1] != "inf"]
    assert all(abs(float(r[2])) <= 1e-9 and abs(float(r[4])) <= 1e-9 for r in finite)


def test_operational_failures_exit_one(tmp_path, write_group):
    assert run(["detect", tmp_path / "missing.json"])[0] == 1
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(["validate", broken])[0] == 1
    nonunitary = write_group("n.json", [("N", np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1.0]]))])
    assert run(["detect", nonunitary])[0] == 1
    assert run(["orbit", write_group("a.json", [("A", LOX_A.matrix)]), "--point", "junk"])[0] == 1
