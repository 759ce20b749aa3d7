import json

import pytest

from voltsched import bundled_scenario_path
from voltsched.cli import EXIT_GUARD, EXIT_IO, EXIT_OK, EXIT_VALIDATION, main


@pytest.fixture
def scenario_path():
    return str(bundled_scenario_path())


@pytest.fixture
def small_scenario(scenario_path, tmp_path):
    doc = json.loads(open(scenario_path).read())
    doc["K"] = 8
    p = tmp_path / "small.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_schedule_roundrobin_output(scenario_path, tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["schedule", "--scenario", scenario_path, "--method", "roundrobin", "--out", str(out)])
    assert code == EXIT_OK
    text = (out / "schedule_round_robin.txt").read_text()
    assert text.split()[:6] == ["2", "3", "1", "2", "3", "1"]
    assert len(text.split()) == 40
    sidecar = json.loads((out / "schedule_round_robin.txt.json").read_text())
    assert len(sidecar["per_step_trace"]) == 40
    assert "sequence:" in capsys.readouterr().out


def test_schedule_window_writes_manifest(scenario_path, tmp_path):
    out = tmp_path / "out"
    code = main(["schedule", "--scenario", scenario_path, "--method", "window", "--out", str(out)])
    assert code == EXIT_OK
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["method"] == "window"
    assert manifest["command"] == "schedule"
    listed = {name.rsplit("/", 1)[-1] for name in manifest["files"]}
    assert listed == {"schedule_sliding_window.txt", "schedule_sliding_window.txt.json"}
    for name in listed:
        assert (out / name).exists()
    assert "search" in manifest["timings_seconds"]


def test_schedule_brute_guard_exit(scenario_path, tmp_path, capsys):
    code = main(["schedule", "--scenario", scenario_path, "--method", "brute", "--out", str(tmp_path)])
    assert code == EXIT_GUARD
    assert str(3**40) in capsys.readouterr().err


def test_schedule_window_override_d(small_scenario, tmp_path):
    out1, out2 = tmp_path / "d1", tmp_path / "d8"
    assert main(["schedule", "--scenario", small_scenario, "--method", "window", "--d", "1", "--out", str(out1)]) == EXIT_OK
    assert main(["schedule", "--scenario", small_scenario, "--method", "window", "--d", "8", "--out", str(out2)]) == EXIT_OK
    obj1 = json.loads((out1 / "schedule_sliding_window.txt.json").read_text())["objective"]
    obj8 = json.loads((out2 / "schedule_sliding_window.txt.json").read_text())["objective"]
    assert obj8 <= obj1 + 1e-9


def test_schedule_bad_d_rejected(small_scenario, tmp_path, capsys):
    code = main(["schedule", "--scenario", small_scenario, "--method", "window", "--d", "9", "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION
    assert "--d" in capsys.readouterr().err


def test_missing_scenario_is_io_error(tmp_path, capsys):
    code = main(["schedule", "--scenario", str(tmp_path / "nope.json"), "--method", "roundrobin", "--out", str(tmp_path)])
    assert code == EXIT_IO


def test_invalid_scenario_lists_violations(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    doc = json.loads(open(str(bundled_scenario_path())).read())
    doc["Q"] = [[0.05, 1.0, 0.0], [0.0, 0.02, 0.0], [0.0, 0.0, 0.01]]
    bad.write_text(json.dumps(doc))
    code = main(["schedule", "--scenario", str(bad), "--method", "roundrobin", "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION
    assert "Q" in capsys.readouterr().err


def test_compare_writes_all_artifacts(small_scenario, tmp_path, capsys):
    out = tmp_path / "cmp"
    code = main(["compare", "--scenario", small_scenario, "--runs", "20", "--seed", "7", "--out", str(out)])
    assert code == EXIT_OK
    for name in ("episode_sliding_window.csv", "episode_round_robin.csv", "summary.csv", "manifest.json"):
        assert (out / name).exists()
    assert "cost reduction:" in capsys.readouterr().out
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["runs"] == 20
    assert manifest["seed"] == 7
    assert {"schedule", "monte_carlo"} <= set(manifest["timings_seconds"])


def test_compare_data_outputs_are_reproducible(small_scenario, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert main(["compare", "--scenario", small_scenario, "--runs", "10", "--seed", "3", "--out", str(out)]) == EXIT_OK
    for name in ("episode_sliding_window.csv", "episode_round_robin.csv", "summary.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_simulate_custom_schedule(small_scenario, tmp_path, capsys):
    sched = tmp_path / "seq.txt"
    sched.write_text("1 2 3 1 2 3 1 2\n")
    out = tmp_path / "sim"
    code = main(["simulate", "--scenario", small_scenario, "--schedule", str(sched), "--seed", "0", "--out", str(out)])
    assert code == EXIT_OK
    assert (out / "episode.csv").exists()
    lines = (out / "episode.csv").read_text().strip().splitlines()
    assert len(lines) == 1 + 8
    assert "episode written" in capsys.readouterr().out


def test_simulate_wrong_length_reports_both(small_scenario, tmp_path, capsys):
    sched = tmp_path / "seq.txt"
    sched.write_text("1 2 3\n")
    code = main(["simulate", "--scenario", small_scenario, "--schedule", str(sched), "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION
    err = capsys.readouterr().err
    assert "3" in err and "8" in err


def test_simulate_bad_index_rejected(small_scenario, tmp_path, capsys):
    sched = tmp_path / "seq.txt"
    sched.write_text("1 2 3 1 2 3 1 9\n")
    code = main(["simulate", "--scenario", small_scenario, "--schedule", str(sched), "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION
    assert "1..3" in capsys.readouterr().err


def test_simulate_garbage_schedule_file(small_scenario, tmp_path, capsys):
    sched = tmp_path / "seq.txt"
    sched.write_text("one two three\n")
    code = main(["simulate", "--scenario", small_scenario, "--schedule", str(sched), "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "voltsched" in capsys.readouterr().out
