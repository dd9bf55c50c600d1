import json

import pytest

from latmass.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_car_count(capsys):
    code, out, _ = run(capsys, "car", "--n", "8", "--count")
    assert code == 0 and out.strip() == "224"


def test_car_listing(capsys):
    code, out, _ = run(capsys, "car", "--n", "1")
    assert code == 0 and out.split() == ["1", "2"]


def test_mu(capsys):
    code, out, _ = run(capsys, "mu", "--n", "8")
    assert code == 0 and out.strip() == "1/696729600"
    code, _, err = run(capsys, "mu", "--n", "12")
    assert code == 1 and "error" in err


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--poly", "1^24", "--lambda", "2")
    assert code == 0 and out.strip() == "299"
    code, _, err = run(capsys, "trace", "--poly", "bogus", "--lambda", "2")
    assert code == 1


def test_masses_catalog(capsys):
    code, out, _ = run(capsys, "masses", "--catalog", "leech")
    assert code == 0
    obj = json.loads(out)
    assert obj["degree"] == 24 and len(obj["entries"]) == 160
    code, _, err = run(capsys, "masses", "--catalog", "nonsense")
    assert code == 1


def test_masses_gram_file(tmp_path, capsys):
    path = tmp_path / "a2.json"
    path.write_text("[[2,-1],[-1,2]]")
    code, out, _ = run(capsys, "masses", "--gram", str(path))
    assert code == 0
    obj = json.loads(out)
    assert obj["entries"]["1^2"] == "1/12"
    code_a, out_a, _ = run(capsys, "masses", "--gram", str(path), "--algo", "A")
    assert code_a == 0 and json.loads(out_a) == obj


def test_masses_deterministic(capsys):
    _, out1, _ = run(capsys, "masses", "--gram-name", "D4")
    _, out2, _ = run(capsys, "masses", "--gram-name", "D4")
    assert out1 == out2


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--n", "24", "--lmax", "1", "--json")
    assert code == 0
    rows = json.loads(out)
    byl = {tuple(r["lambda"]): (r["dim"], r["dim_associate"]) for r in rows}
    assert byl[()] == (24, 1)


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["car"])
    assert exc.value.code == 2
