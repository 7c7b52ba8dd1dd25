import io
import json
import math

import pytest

from idqm import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_qdilog_eval_json(capsys):
    code, out, _ = run(["qdilog", "eval", "--gamma", "0.7", "--z", "0.5,0.2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["method"] == "integral"
    assert doc["est_error"] < 1e-10


def test_qdilog_eval_pole_exit_code(capsys):
    z = f"0,{0.7 + math.pi}"
    code, out, err = run(["qdilog", "eval", "--gamma", "0.7", "--z", z], capsys)
    assert code == 1
    doc = json.loads(err)
    assert doc["error"]["type"] == "PoleError"


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["qdilog", "eval", "--gamma", "0.7"])  # missing --z
    assert exc.value.code == 2


def test_qseries_phi21(capsys):
    code, out, _ = run(
        [
            "qseries", "phi21", "--gamma", "0.6",
            "--a", "0.4,0.1", "--b", "0.3,-0.2", "--c", "1.2,0", "--z", "0.5,0.15",
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["converged"] is True
    assert doc["tail_bound"] < 1e-9


def test_refless_table_empty_seeds_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[]"))
    code, out, _ = run(
        ["refless", "table", "--gamma", "0.5", "--seeds", "-", "--x-range", "0:1:0.5"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "x,re_V,im_V,calU"
    for line in lines[2:]:
        cols = line.split(",")
        assert float(cols[1]) == 1.0 and float(cols[2]) == 0.0  # V identically 1


def test_refless_table_deterministic(tmp_path, capsys):
    seeds = tmp_path / "seeds.json"
    seeds.write_text(json.dumps([{"k": 1.0, "c_tilde": 1.0}, {"k": 2.0, "c_tilde": -0.8}]))
    argv = [
        "refless", "table", "--gamma", "0.5", "--seeds", str(seeds),
        "--x-range=-1:1:0.5",
    ]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2
    assert len(out1.strip().splitlines()) == 2 + 5  # meta + header + 5 x values


def test_solvable_eigen_residual_column(capsys):
    code, out, _ = run(
        [
            "solvable", "eigen", "--gamma", "0.4", "--h", "2.3", "--n", "1",
            "--x-range=-1:1:1",
        ],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "x,re_phi,im_phi,residual"
    for line in lines[2:]:
        assert float(line.split(",")[3]) < 1e-9


def test_solvable_identify(capsys):
    code, out, _ = run(["solvable", "identify", "--gamma", "0.5", "--N", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert doc["max_potential_deviation"] < 1e-10


def test_scatter_amplitudes_defects(capsys):
    code, out, _ = run(
        ["scatter", "amplitudes", "--gamma", "0.5", "--h", "2", "--k-grid", "0.1:6:10"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "k,re_t,im_t,re_r,im_r,defect"
    assert len(lines) == 2 + 10
    for line in lines[2:]:
        assert float(line.split(",")[5]) < 1e-8


def test_scatter_amplitudes_json(capsys):
    code, out, _ = run(
        [
            "scatter", "amplitudes", "--gamma", "0.5", "--h", "2",
            "--k-grid", "0.5:2:3", "--out", "json",
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["columns"][0] == "k"
    assert len(doc["rows"]) == 3


def test_scatter_verify_conjecture_terminating(capsys):
    code, out, _ = run(
        ["scatter", "verify-conjecture", "--suite", "terminating", "--tol", "1e-9"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    assert len(doc["cases"]) == 7


def test_output_to_file(tmp_path, capsys):
    path = tmp_path / "amps.csv"
    code, out, _ = run(
        [
            "scatter", "amplitudes", "--gamma", "0.5", "--h", "2",
            "--k-grid", "0.5:2:3", "--output", str(path),
        ],
        capsys,
    )
    assert code == 0
    assert out == ""
    assert path.read_text().startswith("# scatter amplitudes")
