"""CLI: CSV schemas, manifests, config merging, determinism, exit codes."""
import csv
import json

import pytest

from steanesim.cli import (
    EXIT_OK,
    derive_seed,
    main,
    parse_grid,
    parse_int_grid,
)
from steanesim.engine import p_ne


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def read_manifest(path):
    with open(str(path) + ".manifest.json") as fh:
        return json.load(fh)


def test_parse_grid_forms():
    assert parse_grid("1e-4,2e-4") == [1e-4, 2e-4]
    pts = parse_grid("1e-4:1e-3:5")
    assert len(pts) == 5 and pts[0] == pytest.approx(1e-4)
    assert pts[-1] == pytest.approx(1e-3)
    assert parse_int_grid("1,10,100") == [1, 10, 100]


def test_derive_seed_is_stable_and_keyed():
    assert derive_seed(0, 1, 2) == derive_seed(0, 1, 2)
    assert derive_seed(0, 1, 2) != derive_seed(0, 1, 3)
    assert derive_seed(0, 1, 2) != derive_seed(1, 1, 2)


def test_baseline_csv_matches_formula(tmp_path):
    out = tmp_path / "base.csv"
    code = main(["baseline", "--eps", "2e-4", "--t-max", "10", "--out", str(out)])
    assert code == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["t", "pne"]
    assert len(rows) == 10
    for t, pne_str in rows:
        assert float(pne_str) == pytest.approx(p_ne(2e-4, int(t)), rel=1e-12)
    mf = read_manifest(out)
    assert mf["command"] == "baseline"
    assert mf["aborted_trials"] == 0
    assert {"config", "master_seed", "version", "duration_seconds"} <= set(mf)


def test_baseline_mc_columns(tmp_path):
    out = tmp_path / "base_mc.csv"
    code = main(
        ["baseline", "--eps", "1e-3", "--t-max", "5", "--mc",
         "--trials", "2000", "--out", str(out)]
    )
    assert code == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["t", "pne", "pne_mc", "pne_mc_err"]
    assert len(rows) == 5


TS_ARGS = [
    "timeseries", "--eps", "1e-3", "--gamma", "1e-3", "--ancilla", "simple",
    "--dt", "2", "--t-max", "6", "--trials", "400", "--seed", "11",
]


def test_timeseries_schema_and_thread_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(TS_ARGS + ["--threads", "1", "--out", str(a)]) == EXIT_OK
    assert main(TS_ARGS + ["--threads", "3", "--out", str(b)]) == EXIT_OK
    header, rows = read_csv(a)
    assert header == ["t", "f0", "f0_err", "f1", "f1_err", "pnc", "pnc_err", "n"]
    assert [r[0] for r in rows] == ["2", "4", "6"]
    assert a.read_bytes() == b.read_bytes()


def test_timeseries_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(TS_ARGS + ["--out", str(a)])
    main(TS_ARGS + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_sweep_eps_schema_and_fit_manifest(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep-eps", "--eps-grid", "5e-3,1e-2,2e-2", "--c-ratio", "1.0",
         "--ancilla", "steane-par", "--t-pre", "4", "--trials", "400",
         "--trials-floor-frac", "1.0", "--out", str(out), "--threads", "1"]
    )
    assert code == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["eps", "pnc", "pnc_err", "n"]
    assert [float(r[0]) for r in rows] == [5e-3, 1e-2, 2e-2]
    mf = read_manifest(out)
    assert mf["fit"]["d"] > 0
    assert mf["config"]["c_ratio"] == 1.0


def test_sweep_dt_schema(tmp_path):
    out = tmp_path / "dt.csv"
    code = main(
        ["sweep-dt", "--dt-grid", "2,4", "--eps", "1e-3", "--c-ratio", "1.0",
         "--ancilla", "simple", "--t-max", "8", "--trials", "300",
         "--out", str(out), "--threads", "1"]
    )
    assert code == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["dt", "pnc", "pnc_err", "n"]
    assert [r[0] for r in rows] == ["2", "4"]


def test_threshold_schema(tmp_path):
    out = tmp_path / "th.csv"
    code = main(
        ["threshold", "--c-grid", "1.0", "--eps-grid", "5e-3,1e-2",
         "--ancilla", "steane-par", "--t-pre", "4", "--trials", "300",
         "--trials-floor-frac", "1.0", "--out", str(out), "--threads", "1"]
    )
    assert code == EXIT_OK
    header, rows = read_csv(out)
    assert header == ["c", "d", "eps_th_lin", "eps_th_cross"]
    assert len(rows) == 1
    c, d, lin, cross = (float(v) for v in rows[0])
    assert c == 1.0 and d > 0
    assert lin == pytest.approx(16.0 / (3.0 * d), rel=1e-9)


def test_threshold_points_out_dir(tmp_path):
    out = tmp_path / "th.csv"
    code = main(
        ["threshold", "--c-grid", "1.0", "--eps-grid", "5e-3,1e-2",
         "--ancilla", "steane-par", "--t-pre", "4", "--trials", "300",
         "--trials-floor-frac", "1.0", "--out", str(out), "--threads", "1",
         "--points-out-dir", str(tmp_path)]
    )
    assert code == EXIT_OK
    header, rows = read_csv(tmp_path / "threshold_c100.csv")
    assert header == ["eps", "pnc", "pnc_err", "n"]
    assert [float(r[0]) for r in rows] == [5e-3, 1e-2]


def test_config_file_merge_and_flag_priority(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"eps": 5e-3, "t-max": 4, "trials": 200}))
    out = tmp_path / "o.csv"
    # flag --eps overrides the file; t-max and trials come from the file
    code = main(
        ["timeseries", "--config", str(cfg), "--eps", "1e-3",
         "--ancilla", "simple", "--out", str(out), "--threads", "1"]
    )
    assert code == EXIT_OK
    mf = read_manifest(out)
    assert mf["config"]["eps"] == 1e-3
    assert mf["config"]["t_max"] == 4
    assert mf["config"]["trials"] == 200


def test_unknown_config_key_is_usage_error(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"no-such-flag": 1}))
    with pytest.raises(SystemExit) as exc:
        main(["timeseries", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
    assert exc.value.code == 2


def test_bad_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["timeseries", "--ancilla", "not-a-kind"])
    assert exc.value.code == 2


def test_missing_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
