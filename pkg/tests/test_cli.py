import json
import math

import pytest

from fibspec import cli
from fibspec.errors import BandIsolationError

COMMANDS = [
    ["spectrum", "--lambda", "5", "--k", "6"],
    ["oracle", "--lambda", "5", "--n", "89", "--k", "8"],
    ["dim", "--lambda", "5", "--k", "8"],
    ["sum", "--lambda", "8", "--k", "8"],
    ["periodic", "--a", "1"],
    ["periodic", "--scan", "0", "1", "--grid", "11", "--qmax", "50"],
    ["ifs", "--ratios", "0.25,0.25", "--offsets", "0,0.75", "--depth", "4"],
    ["ifs", "--resonance", "0.25", "0.5"],
    ["sweep", "--command", "dim", "--start", "6", "--stop", "8", "--count",
     "3", "--k", "7"],
]


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_spectrum_cover_example(capsys):
    code, out = run(["spectrum", "--lambda", "3", "--k", "0"], capsys)
    assert code == 0
    doc = json.loads(out)
    cover = doc["result"]["cover"]["intervals"]
    assert len(cover) == 1
    assert cover[0] == pytest.approx([-2.0, 5.0], abs=1e-10)


def test_periodic_log_ratio_example(capsys):
    code, out = run(["periodic", "--a", "0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["log_ratio"] == pytest.approx(2 / 3, abs=1e-10)


def test_sum_small_coupling_single_interval(capsys):
    code, out = run(["sum", "--lambda", "0.2", "--k", "14"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["result"]["sum_cover"]["intervals"]) == 1
    assert doc["result"]["sum_dim"]["value"] >= 0.98


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_byte_identical_reruns(argv, capsys):
    code1, out1 = run(argv, capsys)
    code2, out2 = run(argv, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.endswith("\n")


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_json_shape_and_roundtrip(argv, capsys):
    _, out = run(argv, capsys)
    doc = json.loads(out)
    assert list(doc) == ["command", "config", "result", "caveats",
                         "runtime_ms"]
    assert doc["command"] == argv[0]
    assert doc["runtime_ms"] is None
    assert isinstance(doc["caveats"], list)
    # serialization must preserve every float exactly
    assert json.loads(json.dumps(doc)) == doc


def test_invalid_arguments_exit_one(capsys):
    assert cli.main(["bogus"]) == 1
    assert cli.main(["spectrum"]) == 1
    assert cli.main(["dim", "--lambda", "5", "--k", "1"]) == 1
    assert cli.main(["periodic", "--a", "-2"]) == 1
    capsys.readouterr()


def test_numeric_failure_exit_two(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise BandIsolationError(20.0, 9, 54, 55)
    monkeypatch.setattr(cli, "check_theorem_rect", boom)
    assert cli.main(["sum", "--lambda", "20", "--k", "9"]) == 2
    capsys.readouterr()


def test_size_cap_exit_three(capsys):
    code = cli.main(["ifs", "--ratios", "0.4,0.4", "--offsets", "0,0.6",
                     "--depth", "30"])
    assert code == 3
    capsys.readouterr()


def test_csv_for_interval_commands(capsys):
    code, out = run(["spectrum", "--lambda", "5", "--k", "4",
                     "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "set,index,lo,hi"
    counts = sum(1 for ln in lines if ln.startswith("sigma_k,"))
    assert counts == 5  # F_4 bands at level 4


def test_csv_refused_for_scalar_commands(capsys):
    assert cli.main(["periodic", "--a", "1", "--format", "csv"]) == 1
    capsys.readouterr()


def test_output_file_matches_stdout(tmp_path, capsys):
    _, straight = run(["dim", "--lambda", "5", "--k", "7"], capsys)
    target = tmp_path / "out.json"
    code = cli.main(["dim", "--lambda", "5", "--k", "7", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    assert target.read_text() == straight


def test_sweep_rows_in_grid_order(capsys):
    _, out = run(["sweep", "--command", "periodic", "--start", "0",
                  "--stop", "2", "--count", "5"], capsys)
    doc = json.loads(out)
    assert doc["result"]["param"] == "a"
    assert doc["result"]["values"] == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])
    assert [r["a"] for r in doc["result"]["results"]] == doc["result"]["values"]


def test_sweep_parallel_equals_serial(capsys):
    base = ["sweep", "--command", "periodic", "--start", "0.1", "--stop",
            "1.1", "--count", "4"]
    _, serial = run(base + ["--jobs", "1"], capsys)
    _, parallel = run(base + ["--jobs", "2"], capsys)
    assert json.loads(serial)["result"] == json.loads(parallel)["result"]


def test_jobs_env_default(monkeypatch, capsys):
    monkeypatch.setenv("FIBSPEC_JOBS", "2")
    base = ["sweep", "--command", "periodic", "--start", "0.1", "--stop",
            "0.5", "--count", "3"]
    _, with_env = run(base, capsys)
    monkeypatch.delenv("FIBSPEC_JOBS")
    _, without = run(base, capsys)
    assert json.loads(with_env)["result"] == json.loads(without)["result"]


def test_float_formatting_is_shortest_exact():
    s = cli.to_json({"x": 0.1, "y": 1 / 3, "z": 1e300})
    parsed = json.loads(s)
    assert parsed["x"] == 0.1
    assert parsed["y"] == 1 / 3
    assert parsed["z"] == 1e300


def test_to_json_rejects_non_finite():
    with pytest.raises(ValueError):
        cli.to_json({"x": math.inf})
    with pytest.raises(ValueError):
        cli.to_json({"x": math.nan})
