import csv
import io
import json
import subprocess
import sys

import pytest

from weierquartic import cli
from weierquartic.catalog import CurveId
from weierquartic.cli import RunConfig, cmd_report, cmd_sweep, main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_report_c1(capsys):
    code, out = run(["report", "--pencil", "1", "0"], capsys)
    assert code == 0
    d = json.loads(out)
    assert list(d) == [
        "curve_id", "smooth", "group_order", "wp_count", "weight_histogram",
        "orbit_sizes", "transitive", "signature", "hurwitz_bound_ok", "points",
    ]
    assert d["curve_id"] == "pencil(1+0j)"
    assert d["wp_count"] == 24 and d["transitive"] and d["group_order"] == 24
    assert d["signature"] == {"genus": 0, "periods": [2, 2, 2, 3]}
    assert list(d["points"][0]) == ["coords", "weight", "gaps", "stabilizer_order", "orbit_id"]


def test_report_named_c3(capsys):
    code, out = run(["report", "--named", "c3"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["weight_histogram"] == {"2": 12}
    assert all(p["gaps"] == [1, 2, 5] for p in d["points"])


def test_report_singular_exit_code(capsys):
    code, out = run(["report", "--pencil", "2"], capsys)
    assert code == 2
    d = json.loads(out)
    assert d["error"] == "singular"
    assert len(d["witness"]) == 3


def test_report_numerics_exit_code(capsys, monkeypatch):
    from weierquartic.errors import IncompleteIntersection

    def broken(*a, **k):
        raise IncompleteIntersection("forced")

    monkeypatch.setattr(cli, "build_report", broken)
    code, out = run(["report", "--pencil", "1"], capsys)
    assert code == 3
    assert json.loads(out)["error"] == "numerics"


def test_report_text(capsys):
    code, out = run(["report", "--pencil", "1", "--format", "text"], capsys)
    assert code == 0
    assert out.startswith("curve            pencil(1+0j)")


def test_json_round_trip_is_byte_identical():
    buf = io.StringIO()
    cmd_report(CurveId.pencil(0.5 + 0.5j), RunConfig(), out=buf)
    text = buf.getvalue()
    assert cli.dumps(json.loads(text)) + "\n" == text


def test_report_deterministic():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        cmd_report(CurveId.pencil(-3), RunConfig(), out=buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]


def test_sweep_rows(capsys):
    code, out = run(["sweep", "--values", "0.5", "3", "2"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == cli.SWEEP_COLUMNS
    assert rows[0]["wp_count"] == "24" and rows[0]["transitive"] == "True"
    assert rows[1]["weight2_count"] == "12" and rows[1]["n_orbits"] == "1"
    assert rows[2]["status"] == "singular" and rows[2]["smooth"] == "False"


def test_sweep_grid_order():
    grid = cli._grid(cli.build_parser().parse_args(["sweep", "--real", "0", "1", "2", "--imag", "0", "1", "2"]))
    assert grid == [0j, 1 + 0j, 1j, 1 + 1j]


def test_sweep_same_with_workers():
    grid = [0.5, 1.5 + 0.5j, 3]
    a, b = io.StringIO(), io.StringIO()
    cmd_sweep(grid, RunConfig(workers=1), out=a)
    cmd_sweep(grid, RunConfig(workers=2), out=b)
    assert a.getvalue() == b.getvalue()


def test_verify_only(capsys):
    code, out = run(["verify", "--only", "group", "phi"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("[PASS] group")
    assert lines[-1] == "2/2 checks passed"


def test_verify_sabotaged_tolerance(capsys):
    code, out = run(["--cluster-eps", "1e-1", "verify", "--only", "fermat"], capsys)
    assert code == 1
    assert "[FAIL]" in out


def test_verify_unknown_check(capsys):
    assert main(["verify", "--only", "nope"]) == 1
    assert "unknown check" in capsys.readouterr().err


@pytest.mark.parametrize("kwargs", [
    {"polish_tol": 0},
    {"cluster_eps": -1},
    {"polish_tol": 1e-8, "cluster_eps": 1e-6},
    {"workers": 0},
    {"output_format": "xml"},
])
def test_run_config_rejects(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_config_file_and_env(tmp_path, monkeypatch):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"cluster_eps": 1e-5, "workers": 3}))
    monkeypatch.setenv(cli.CONFIG_ENV, str(p))
    cfg = RunConfig.load()
    assert cfg.cluster_eps == 1e-5 and cfg.workers == 3
    # explicit overrides win over the file
    assert RunConfig.load(workers=1).workers == 1
    p.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ValueError):
        RunConfig.load()


def test_bad_config_exit(tmp_path, capsys):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"workers": 0}))
    assert main(["--config", str(p), "verify", "--only", "group"]) == 1


def test_entry_point_help():
    out = subprocess.run([sys.executable, "-m", "weierquartic", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "exit codes" in out.stdout
