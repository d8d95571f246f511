import csv
import json

import pytest

from dynroute.cli import main
from dynroute.harness import table4_timeline
from dynroute.timeline import load_timeline, write_timeline


@pytest.fixture
def t4_file(tmp_path):
    path = tmp_path / "t4.timeline"
    write_timeline(path, table4_timeline())
    return path


def test_replay(capsys):
    assert main(["replay-table4"]) == 0
    out = capsys.readouterr().out
    assert "dynamic path: 0 -> 1 -> 3 -> 7 -> 9" in out
    assert "dynamic total: 36.0" in out
    assert "static planned total: 43.0" in out
    assert "static experienced total: 49.0" in out


def test_route_dynamic(capsys, t4_file):
    assert main(["route", "--timeline", str(t4_file),
                 "--source", "0", "--destination", "9"]) == 0
    out = capsys.readouterr().out
    assert "path: 0 -> 1 -> 3 -> 7 -> 9" in out
    assert "total_time: 36.0" in out
    assert "hop: 0-1 depart=0.0 weight=8.0" in out
    assert "hop: 1-3 depart=8.0 weight=12.0" in out
    assert "hop: 3-7 depart=20.0 weight=12.0" in out
    assert "hop: 7-9 depart=32.0 weight=4.0" in out


def test_route_static(capsys, t4_file):
    assert main(["route", "--timeline", str(t4_file), "--source", "0",
                 "--destination", "9", "--static"]) == 0
    out = capsys.readouterr().out
    assert "path: 0 -> 2 -> 4 -> 6 -> 9" in out
    assert "total_time: 43.0" in out
    assert "experienced_time: 49.0" in out


def test_route_json_output(tmp_path, t4_file, capsys):
    assert main(["route", "--timeline", str(t4_file), "--source", "0",
                 "--destination", "9", "--format", "json",
                 "--out", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "route.json").read_text())
    assert payload["path"] == [0, 1, 3, 7, 9]
    assert payload["total_time"] == 36.0
    assert payload["hops"][0] == {"edge": "0-1", "depart": 0.0, "weight": 8.0}


def test_route_unreachable_exit_code(tmp_path, capsys):
    path = tmp_path / "split.timeline"
    path.write_text("0\n0,1,4.0\n1,0,4.0\n2,3,4.0\n3,2,4.0\n")
    assert main(["route", "--timeline", str(path),
                 "--source", "0", "--destination", "3"]) == 1
    assert "unreachable" in capsys.readouterr().err


def test_route_same_endpoints_exit_code(t4_file, capsys):
    assert main(["route", "--timeline", str(t4_file),
                 "--source", "4", "--destination", "4"]) == 1
    assert "error:" in capsys.readouterr().err


def test_route_missing_args_is_usage_error(t4_file):
    with pytest.raises(SystemExit) as exc:
        main(["route", "--timeline", str(t4_file)])
    assert exc.value.code == 2


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["teleport"])
    assert exc.value.code == 2


def test_simulate_outputs(tmp_path, capsys):
    assert main(["simulate", "--vehicles", "15", "--ticks", "10",
                 "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "ticks: 10" in out
    events = list(csv.reader((tmp_path / "events.csv").open()))
    assert events[0] == ["tick", "event_kind", "vehicle_id", "node_or_edge_id"]
    snaps = list(csv.reader((tmp_path / "snapshots.csv").open()))
    assert len(snaps) == 1 + 10 * 13  # header + per-tick rows for 13 roads
    aggs = list(csv.reader((tmp_path / "aggregates.csv").open()))
    assert aggs[0] == ["tick", "edge_id", "dir", "k", "u", "q", "tt"]
    assert len(aggs) == 1 + 10 * 26


def test_simulate_dot_output(tmp_path):
    assert main(["simulate", "--vehicles", "5", "--ticks", "2",
                 "--format", "dot", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "network.dot").read_text().startswith("graph network {")


def test_simulate_synthetic_graph(tmp_path):
    assert main(["simulate", "--synthetic", "8,10", "--vehicles", "10",
                 "--ticks", "5", "--out", str(tmp_path)]) == 0


def test_simulate_bad_synthetic_spec(tmp_path, capsys):
    assert main(["simulate", "--synthetic", "8", "--out", str(tmp_path)]) == 1
    assert "N,E" in capsys.readouterr().err


def test_graph_flags_must_pair(tmp_path, capsys):
    assert main(["simulate", "--nodes", "x.csv", "--out", str(tmp_path)]) == 1
    assert "together" in capsys.readouterr().err


def test_predict_roundtrip(tmp_path, capsys):
    assert main(["predict", "--vehicles", "20", "--horizon", "12",
                 "--out", str(tmp_path)]) == 0
    tl = load_timeline(tmp_path / "predicted.timeline")
    assert list(tl.keys) == list(range(13))
    assert tl.node_count == 10


def test_compare_with_timeline_file(tmp_path, t4_file, capsys):
    assert main(["compare", "--timeline", str(t4_file), "--pairs", "20",
                 "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "mean_delta:" in out
    rows = list(csv.reader((tmp_path / "comparisons.csv").open()))
    assert rows[0] == ["src", "dst", "T", "tau", "delta"]
    assert len(rows) == 21


def test_compare_live_prediction(tmp_path, capsys):
    assert main(["compare", "--vehicles", "15", "--horizon", "10",
                 "--pairs", "10", "--out", str(tmp_path)]) == 0
    assert "mean_delta:" in capsys.readouterr().out
    assert (tmp_path / "comparisons.csv").exists()


def test_compare_json(tmp_path, t4_file):
    assert main(["compare", "--timeline", str(t4_file), "--pairs", "5",
                 "--format", "json", "--out", str(tmp_path)]) == 0
    rows = json.loads((tmp_path / "comparisons.json").read_text())
    assert len(rows) == 5


def test_sweep_outputs(tmp_path, capsys):
    assert main(["sweep", "--vehicles", "15", "--horizon", "10", "--pairs", "5",
                 "--alphas", "0.3,0.5", "--betas", "0.7",
                 "--out", str(tmp_path)]) == 0
    rows = list(csv.reader((tmp_path / "sweep.csv").open()))
    assert rows[0] == ["alpha", "beta", "lambda", "n", "seed"]
    assert len(rows) == 3


def test_sweep_all_rejected(tmp_path, capsys):
    assert main(["sweep", "--alphas", "0.9", "--betas", "0.5",
                 "--vehicles", "5", "--horizon", "5",
                 "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "skipping alpha=0.9 beta=0.5" in err
    assert "error:" in err


def test_config_file_applies(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"vehicles": 7, "horizon": 8}')
    assert main(["predict", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    tl = load_timeline(tmp_path / "predicted.timeline")
    assert list(tl.keys) == list(range(9))


def test_missing_file_is_data_error(capsys):
    assert main(["route", "--timeline", "/nonexistent/t.timeline",
                 "--source", "0", "--destination", "1"]) == 1
    assert "error:" in capsys.readouterr().err
