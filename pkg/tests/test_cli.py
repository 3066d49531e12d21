import json

import numpy as np
import pytest

from ddforge.cli import CSV_HEADER, main
from ddforge.evolve import propagator
from ddforge.gates import get_gate, simulate_composite, step_schedules
from ddforge.montecarlo import CASES
from ddforge.schedule import schedule_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cell_text(capsys):
    code, out, _ = run(capsys, "cell", "--case", "1", "--gate", "X", "--dd", "none", "--seed", "7",
                       "--quick")
    assert code == 0
    assert "gate=x" in out and "mean=0.3" in out


def test_cell_manifest(tmp_path, capsys):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "cell", "--gate", "t", "--dd", "cdd", "--nc", "2", "--quick",
                       "--out", str(path), "--format", "json")
    assert code == 0
    line = json.loads(out)
    doc = json.loads(path.read_text())
    assert doc["cells"][0]["mean"] == line["mean"] >= 0.999
    assert doc["config_echo"][0]["dd_order"] == 2 and doc["master_seed"] == 0
    assert {"tool_version", "wall_time_s"} <= doc.keys()
    assert not [p for p in tmp_path.iterdir() if p.name.startswith(".ddforge-")]


@pytest.mark.parametrize("argv", [
    ["cell", "--case", "1", "--gate", "x", "--dd", "pdd"],
    ["cell", "--gate", "x", "--dd", "cdd"],
    ["cell", "--gate", "nope"],
    ["cell", "--gate", "x", "--states", "0"],
    ["cell", "--gate", "x", "--case", "custom", "--epsilon", "1"],
    ["cell", "--gate", "x", "--epsilon", "1"],
    ["sweep", "--gate", "s", "--dd", "pdd", "--np-list", ""],
    ["sweep", "--gate", "s", "--dd", "pdd"],
    ["export-schedule", "--gate", "x", "--dd", "pdd"],
])
def test_flag_validation_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_custom_case_units(capsys):
    code, out, _ = run(capsys, "cell", "--case", "custom", "--gate", "u3", "--epsilon", "0",
                       "--delta", "0", "--jx", "100", "--jz", "100", "--no-decoherence",
                       "--states", "5", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("gate,case") and float(row.split(",")[4]) == pytest.approx(1, abs=1e-12)


def test_table_csv_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "table", "--case", "1", "--seed", "7", "--quick", "--out", str(a))[0] == 0
    assert run(capsys, "table", "--case", "1", "--seed", "7", "--quick", "--out", str(b),
               "--workers", "3")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert [ln.split(",")[0] for ln in lines[1:]] == ["x", "s", "t", "u3", "u4"]
    assert a.read_text().endswith("\n")
    manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
    assert len(manifest["cells"]) == 20


def test_table_markdown(capsys):
    code, out, _ = run(capsys, "table", "--case", "2", "--seed", "7", "--quick", "--format", "md")
    assert code == 0
    rows = [ln for ln in out.splitlines() if ln.startswith("| ") and not ln.startswith("| Gate")]
    assert [r.split("|")[1].strip() for r in rows] == ["x", "s", "t", "u3", "u4"]


def test_table_unwritable(capsys):
    code, _, err = run(capsys, "table", "--quick", "--out", "/nonexistent/dir/t.csv")
    assert code == 1 and "error" in err


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--case", "2", "--gate", "x", "--dd", "cdd",
                       "--nc-list", "1,2,3", "--quick")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,mean,std_error" and len(lines) == 4
    assert float(lines[-1].split(",")[1]) >= 0.999


def test_export_schedule(capsys):
    _, out, _ = run(capsys, "export-schedule", "--gate", "x", "--dd", "pdd", "--np", "1")
    doc = json.loads(out)
    assert doc["gate"] == "x" and doc["scheme"] == "pdd" and doc["order"] == 1
    assert [it["pulse"] for it in doc["items"]] == ["X", "Z", "X", "Z"]
    _, out, _ = run(capsys, "export-schedule", "--gate", "s", "--dd", "cdd", "--nc", "2")
    assert len(json.loads(out)["items"]) == 16
    _, out, _ = run(capsys, "export-schedule", "--gate", "t")
    doc = json.loads(out)
    assert [it["pulse"] for it in doc["items"]] == ["I"]
    total = sum(it["duration_us"] for it in doc["items"])
    assert abs(total - doc["total_time_us"]) <= 1e-9 * doc["total_time_us"]


@pytest.mark.parametrize("gate,dd", [("s", ["--dd", "pdd", "--np", "3"]),
                                     ("u4", ["--dd", "cdd", "--nc", "2"]),
                                     ("h", ["--dd", "pdd", "--np", "2"])])
def test_export_round_trip(tmp_path, capsys, gate, dd):
    path = tmp_path / "s.json"
    assert run(capsys, "export-schedule", "--gate", gate, "--case", "2", *dd, "--out", str(path))[0] == 0
    doc = json.loads(path.read_text())
    recipe = get_gate(gate)
    params = CASES["case2"]
    scheme, order = dd[1], int(dd[3])
    internal = simulate_composite(recipe, params, (scheme, order)).matrix
    # replay the exported items segment by segment against each step's Hamiltonian
    hams = [h for h, _ in step_schedules(recipe, params, (scheme, order))]
    counts = [s["n_items"] for s in doc["steps"]] if "steps" in doc else [len(doc["items"])]
    u, i = np.eye(internal.shape[0], dtype=complex), 0
    for h, k in zip(hams, counts):
        part = {"items": doc["items"][i:i + k]}
        u = propagator(h, schedule_from_dict(part)).matrix @ u
        i += k
    assert np.abs(u - internal).max() < 1e-10
