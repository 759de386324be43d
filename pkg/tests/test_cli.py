"""CLI contract: parsing, artifact schemas, determinism, exit codes."""

import csv
import json

import numpy as np
import pytest

from ringcat.cli import main, parse_float_grid, parse_phase, parse_phase_grid


def run(tmp_path, *argv):
    return main([str(a) for a in argv])


def read_csv(path):
    meta, header, rows = [], None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                meta.append(line)
            elif header is None:
                header = line
            else:
                rows.append(line.split(","))
    return meta, header, rows


def test_parse_phase_symbolic_and_numeric():
    assert parse_phase("pi/3") == pytest.approx(np.pi / 3)
    assert parse_phase("2pi/3") == pytest.approx(2 * np.pi / 3)
    assert parse_phase("0.5pi") == pytest.approx(np.pi / 2)
    assert parse_phase("-pi/6") == pytest.approx(-np.pi / 6)
    assert parse_phase("pi") == pytest.approx(np.pi)
    assert parse_phase("1.25") == 1.25
    with pytest.raises(ValueError):
        parse_phase("three")
    with pytest.raises(ValueError):
        parse_phase("pi/0")


def test_parse_grids():
    g = parse_phase_grid("0:2pi/3:5")
    assert len(g) == 5 and g[-1] == pytest.approx(2 * np.pi / 3)
    assert list(parse_phase_grid("0,pi/3")) == pytest.approx([0.0, np.pi / 3])
    lg = parse_float_grid("0.01:100:5:log")
    assert lg[0] == pytest.approx(0.01) and lg[-1] == pytest.approx(100.0)
    assert np.allclose(np.diff(np.log(lg)), np.diff(np.log(lg))[0])
    assert list(parse_float_grid("1,2,5")) == [1.0, 2.0, 5.0]
    with pytest.raises(ValueError):
        parse_phase_grid("0:1:0")
    with pytest.raises(ValueError):
        parse_phase_grid("1:0:5")
    with pytest.raises(ValueError):
        parse_float_grid("0:1:5:log")
    with pytest.raises(ValueError):
        parse_float_grid("1:2:4:cubic")


def test_spectrum_scan_schema_and_crossing(tmp_path):
    out = tmp_path / "levels.csv"
    assert (
        run(
            tmp_path,
            "spectrum-scan",
            "--atoms", 3, "--u-over-j", 0.5, "--levels", 4,
            "--phi-grid", "0:2pi/3:61", "--out", out,
        )
        == 0
    )
    meta, header, rows = read_csv(out)
    assert header == "phi_rad,phi_in_2pi_over_3,E0,E1,E2,E3"
    assert len(rows) == 61
    assert meta[0].startswith("# ringcat ")
    assert any("subcommand: spectrum-scan" in m for m in meta)
    gaps = [float(r[3]) - float(r[2]) for r in rows]
    i = int(np.argmin(gaps))
    assert float(rows[i][0]) == pytest.approx(np.pi / 3, abs=1e-9)
    assert float(rows[i][1]) == pytest.approx(0.5, abs=1e-12)
    assert gaps[i] > 1e-6
    assert float(rows[-1][1]) == pytest.approx(1.0, abs=1e-12)


def test_flow_dist_schema_and_normalization(tmp_path):
    out = tmp_path / "dist.csv"
    assert run(tmp_path, "flow-dist", "--atoms", 6, "--u-over-j", 0.5,
               "--phi", "pi/3", "--out", out) == 0
    _, header, rows = read_csv(out)
    assert header == "n_beta,n_gamma,probability"
    assert len(rows) == 28
    keys = [(int(r[0]), int(r[1])) for r in rows]
    assert keys == sorted(keys)
    assert sum(float(r[2]) for r in rows) == pytest.approx(1.0, abs=1e-10)


def test_cat_scan_schema(tmp_path):
    out = tmp_path / "cats.csv"
    assert run(tmp_path, "cat-scan", "--atoms", 3,
               "--j-over-u-grid", "0.1:10:4:log", "--out", out) == 0
    _, header, rows = read_csv(out)
    assert header == "j_over_u,cat_fidelity,theta_opt,gap"
    assert len(rows) == 4
    fids = [float(r[1]) for r in rows]
    assert all(0 <= f <= 1 for f in fids)
    assert fids[-1] > fids[0]


def test_ramp_schema_and_time_axis(tmp_path):
    out = tmp_path / "trace.csv"
    assert run(tmp_path, "ramp", "--atoms", 3, "--target-j-over-u", 2.0,
               "--stage-durations", "2,2,2", "--smooth-chunks", 4,
               "--steps-per-segment", 8, "--out", out) == 0
    _, header, rows = read_csv(out)
    assert header == "t,norm_error,gs_overlap,cat_fidelity,energy"
    assert len(rows) == 1 + (4 + 1 + 4) * 8
    times = [float(r[0]) for r in rows]
    assert times[0] == 0.0 and times[-1] == pytest.approx(6.0)
    assert all(b > a for a, b in zip(times, times[1:]))
    assert max(float(r[1]) for r in rows) <= 1e-8


def test_anticrossing_schema(tmp_path):
    out = tmp_path / "ac.csv"
    assert run(tmp_path, "anticrossing", "--atoms", 3, "--u-over-j", 0.5,
               "--out", out) == 0
    _, header, rows = read_csv(out)
    assert header == "phi_star_rad,phi_star_in_2pi_over_3,gap"
    assert len(rows) == 1
    assert float(rows[0][0]) == pytest.approx(np.pi / 3, abs=1e-4)
    assert float(rows[0][2]) == pytest.approx(0.3142659426826657, rel=1e-6)


def test_witness_json_schema_and_determinism(tmp_path):
    out1, out2 = tmp_path / "w1.json", tmp_path / "w2.json"
    for out in (out1, out2):
        assert run(tmp_path, "witness", "--atoms", 3, "--u-over-j", 0.5,
                   "--phi", "pi/3", "--restarts", 8, "--seed", 7,
                   "--out", out) == 0
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    required = {
        "e_ground", "e_sep_min", "margin", "certified",
        "argmin_amplitudes", "seed", "restarts_converged",
    }
    assert required <= set(doc)
    assert doc["certified"] is True and doc["margin"] > 0
    assert doc["seed"] == 7
    assert len(doc["argmin_amplitudes"]) == 3
    assert all(len(pair) == 2 for pair in doc["argmin_amplitudes"])


def test_byte_identical_reruns_and_worker_independence(tmp_path):
    args = ["spectrum-scan", "--atoms", 3, "--u-over-j", 0.5,
            "--phi-grid", "0:2pi/3:21"]
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert run(tmp_path, *args, "--out", a) == 0
    assert run(tmp_path, *args, "--out", b) == 0
    assert run(tmp_path, *args, "--workers", 4, "--out", c) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_config_file_with_flag_override(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text(
        "# base configuration\n"
        "atoms = 3\n"
        "u-over-j = 0.5\n"
        "levels = 2\n"
        'phi-grid = "0:pi/3:5"\n'
    )
    out = tmp_path / "o.csv"
    assert run(tmp_path, "spectrum-scan", "--config", conf, "--levels", 3,
               "--out", out) == 0
    meta, header, rows = read_csv(out)
    assert header == "phi_rad,phi_in_2pi_over_3,E0,E1,E2"  # flag wins
    assert len(rows) == 5  # file value survives where no flag given
    assert any("# levels: 3" == m for m in meta)


def test_unknown_and_missing_config_errors_aggregate(tmp_path, capsys):
    conf = tmp_path / "bad.conf"
    conf.write_text("bogus = 1\nalso-bad = 2\n")
    out = tmp_path / "x.csv"
    code = run(tmp_path, "spectrum-scan", "--config", conf, "--out", out)
    err = capsys.readouterr().err
    assert code == 2
    assert "bogus" in err and "also-bad" in err and "--atoms" in err
    assert not out.exists()


def test_invalid_values_exit_2(tmp_path):
    out = tmp_path / "x.csv"
    assert run(tmp_path, "spectrum-scan", "--atoms", 0, "--u-over-j", 0.5,
               "--out", out) == 2
    assert run(tmp_path, "spectrum-scan", "--atoms", 3, "--u-over-j", -1,
               "--out", out) == 2
    assert run(tmp_path, "spectrum-scan", "--atoms", 3, "--u-over-j", 0.5,
               "--bond-factors", "1,1", "--out", out) == 2
    assert run(tmp_path, "cat-scan", "--atoms", 3, "--j-over-u-grid", "5,1",
               "--out", out) == 2
    assert run(tmp_path, "ramp", "--atoms", 3, "--target-j-over-u", 2.0,
               "--stage-durations", "1,1", "--out", out) == 2
    assert main([]) == 2


def test_numerical_failure_exits_3(tmp_path, capsys):
    out = tmp_path / "x.csv"
    code = run(tmp_path, "anticrossing", "--atoms", 3, "--u-over-j", 0.5,
               "--bracket", "0.1:0.3", "--out", out)
    assert code == 3
    assert "numerical" in capsys.readouterr().err


def test_unwritable_output_exits_4(tmp_path, capsys):
    code = run(tmp_path, "flow-dist", "--atoms", 3, "--u-over-j", 0.5,
               "--out", "/nonexistent/dir/out.csv")
    assert code == 4
    assert "io" in capsys.readouterr().err


def test_values_round_trip_at_full_precision(tmp_path):
    out = tmp_path / "levels.csv"
    run(tmp_path, "spectrum-scan", "--atoms", 3, "--u-over-j", 0.5,
        "--levels", 2, "--phi-grid", "0:2pi/3:7", "--out", out)
    _, _, rows = read_csv(out)
    # 17 significant digits reproduce the binary double exactly
    val = float(rows[3][2])
    assert f"{val:.17g}" == rows[3][2]
