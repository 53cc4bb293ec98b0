import json

import pytest

from reflmon.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("argv,order", [
    (["--family", "boolean", "--type", "B", "--n", "2"], 17),
    (["--family", "boolean", "--type", "A", "--n", "3", "--method", "enumerate"], 34),
    (["--family", "arrangement", "--type", "A", "--n", "4", "--method", "isotropy"], 131),
    (["--family", "arrangement", "--type", "D", "--n", "4"], 3105),
    (["--family", "arrangement", "--type", "F4", "--method", "orbit-data"], 54241),
    (["--family", "arrangement", "--type", "G2", "--method", "isotropy"], 49),
    (["--family", "set", "--type", "A", "--n", "4", "--method", "enumerate"], 209),
])
def test_order(capsys, argv, order):
    code, out = run(capsys, "order", "--json", *argv)
    assert code == 0
    assert json.loads(out)["order"] == order


def test_order_table_output(capsys):
    code, out = run(capsys, "order", "--family", "boolean", "--type", "A", "--n", "2")
    assert code == 0 and out.split("\n")[0].split()[-1] == "order" and "7" in out.split("\n")[1]


def test_json_is_deterministic(capsys):
    argv = ["enumerate", "--family", "boolean", "--type", "B", "--n", "2", "--json"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert a == b and len(json.loads(a)) == 17


def test_usage_errors(capsys):
    assert main(["order", "--family", "boolean"]) == 2
    assert main(["order", "--family", "boolean", "--type", "A"]) == 2
    assert main(["order", "--family", "boolean", "--type", "F4", "--method", "isotropy"]) == 2
    assert main(["verify", "--iso", "nope", "--n", "2"]) == 2
    assert main(["bogus"]) == 2
    capsys.readouterr()


def test_cap_exit(capsys):
    assert main(["order", "--family", "arrangement", "--type", "E7", "--method", "isotropy"]) == 3
    assert main(["enumerate", "--family", "boolean", "--type", "B", "--n", "3", "--cap", "10"]) == 3
    capsys.readouterr()


def test_orbit_data_mismatch(tmp_path, capsys):
    from reflmon import formulas as fm
    data = json.loads(fm.orbit_data_to_json(fm.F4_ORBIT_DATA))
    data[1]["size"] += 1
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, out = run(capsys, "order", "--family", "arrangement", "--type", "F4", "--method", "orbit-data",
                    "--orbit-data", str(p), "--json")
    assert code == 1 and json.loads(out)["status"] == "MISMATCH"


def test_verify(capsys):
    code, out = run(capsys, "verify", "--iso", "all", "--n", "3")
    assert code == 0 and out.count("PASS") == 3


def test_green(capsys):
    code, out = run(capsys, "green", "--family", "arrangement", "--type", "B", "--n", "2")
    assert code == 0 and "no" not in out.split()


def test_cone(tmp_path, capsys):
    p = tmp_path / "square.json"
    p.write_text(json.dumps({
        "generators": [[1, 1, 1], [-1, 1, 1], [-1, -1, 1], [1, -1, 1]],
        "group_generators": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[-1, 0, 0], [0, 1, 0], [0, 0, 1]]],
    }))
    code, out = run(capsys, "cone", "--cone", str(p), "--json")
    row = json.loads(out)
    assert code == 0
    assert row["faces"] == 10 and row["group_order"] == 8 and not row["theta_iso"] and not row["simplicial"]


def test_seed_system(tmp_path, capsys):
    p = tmp_path / "seed.json"
    p.write_text(json.dumps({"generators": [[[0, 1], [1, 0]]], "seeds": [[[1, 0]], [[0, 1]]]}))
    code, out = run(capsys, "order", "--seed-system", str(p), "--method", "enumerate", "--json")
    assert code == 0 and json.loads(out)["order"] == 7


def test_exceptional(capsys):
    code, out = run(capsys, "exceptional", "--json")
    rows = {r["type"]: r["order"] for r in json.loads(out)}
    assert code == 0 and rows["F4"] == 54241 and rows["E8"] == 11 * 79 * 55099865069
