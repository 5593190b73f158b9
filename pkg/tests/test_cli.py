"""Command-line behaviour: outputs, exit codes, determinism."""

import json

import numpy as np
import pytest

from yukawa_circuits.cli import main, parse_boson_state


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(path):
    return np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding=None)


def test_strings(capsys):
    code, out, _ = run(["strings", "-N", "1"], capsys)
    assert code == 0 and out == "X\ncount 1\n"
    code, out, _ = run(["strings", "-N", "4"], capsys)
    assert out.splitlines()[-1] == "count 32"


def test_cost(capsys):
    code, out, _ = run(["cost", "-N", "3", "--methods", "exact,heuristic,bound"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert [int(r[2]) for r in rows if r[1] == "BOUND"] == [2, 8, 24]
    assert [r[2] for r in rows if r[0] == "2" and r[1] == "EXACT"] == ["7"]


def test_cost_skips_exact_past_cap(capsys):
    code, out, _ = run(["cost", "-N", "4", "--methods", "exact"], capsys)
    assert code == 0 and "4,EXACT,,status=skipped" in out


def test_synth_targets(capsys, tmp_path):
    code, out, _ = run(["synth", "--target", "compressed", "--t", "2.3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["cnot_count"] == 2 and rep["verification_distance"] < 1e-9
    code, out, _ = run(["synth", "--target", "trotter3", "--dt", "0.1"], capsys)
    assert json.loads(out)["cnot_count"] == 8
    f = tmp_path / "order.txt"
    f.write_text("XX\nZZ\n")
    code, out, _ = run(["synth", "--target", "strings", "--strings-file", str(f)], capsys)
    rep = json.loads(out)
    assert rep["cnot_count"] == 6 and rep["verification_distance"] < 1e-9


def test_dynamics_compressed_matches_exact(tmp_path, capsys):
    base = ["dynamics", "--M-over-m", "7", "--eta-over-m", "1.7", "-N", "1", "--fermion", "1", "--boson", "0"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(base + ["--method", "compressed", "-o", str(a)]) == 0
    assert main(base + ["--method", "exact", "-o", str(b)]) == 0
    summary = capsys.readouterr().out
    assert "max |n_b - n_b exact|" in summary
    ca, cb = read_csv(a), read_csv(b)
    assert ca["n_boson"][0] == 0
    assert np.max(np.abs(ca["n_boson"] - cb["n_boson"])) <= 1e-9


def test_dynamics_fermion_plus_matches_zero(tmp_path):
    outs = []
    for fermion in ("+", "0"):
        path = tmp_path / f"f{fermion}.csv"
        assert main(["dynamics", "--fermion", fermion, "--boson", "0", "-o", str(path)]) == 0
        outs.append(read_csv(path)["n_boson"])
    assert np.max(np.abs(outs[0] - outs[1])) <= 1e-9


def test_dynamics_json_and_state_file(tmp_path, capsys):
    state = tmp_path / "s.json"
    state.write_text(json.dumps({"amplitudes": [[0, 0], [1, 0], [0, 0], [0, 0]]}))
    code, out, _ = run(["dynamics", "--state-json", str(state), "--format", "json", "--n-points", "3"], capsys)
    rows = json.loads(out)
    assert code == 0 and len(rows) == 3 and rows[0]["n_fermion"] == 1


def test_boson_mini_language():
    assert np.allclose(parse_boson_state("amps:0.8660254,0,0.5,0", 2), [np.sqrt(3) / 2, 0, 0.5, 0])
    assert np.allclose(parse_boson_state("+", 1), [2 ** -0.5] * 2)
    assert np.allclose(parse_boson_state("3", 2), np.eye(4)[3])


@pytest.mark.parametrize("argv,field", [
    (["dynamics", "--boson", "5"], "--boson"),
    (["dynamics", "--boson", "amps:1,1"], "--boson"),
    (["dynamics", "--boson", "amps:1,x"], "--boson"),
    (["dynamics", "--fermion", "2"], "--fermion"),
    (["dynamics", "--n-points", "1"], "time grid"),
    (["dynamics", "--M-over-m", "-1"], "model parameters"),
    (["synth", "--target", "nope"], "--target"),
    (["cost", "-N", "2", "--methods", "fast"], "--methods"),
])
def test_parse_errors_exit_2(argv, field, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and field in err


def test_unknown_flag_and_help(capsys):
    assert main(["strings", "-N", "1", "--bogus"]) == 2
    assert main(["dynamics", "--help"]) == 0
    capsys.readouterr()


def test_resource_cap_exit_3(capsys):
    code, _, err = run(["dynamics", "-N", "12", "--n-points", "2"], capsys)
    assert code == 3 and "cap" in err
