import json
import subprocess
import sys
from pathlib import Path

from surfauto.cli import main

PRESET = Path(__file__).resolve().parents[1] / "src" / "surfauto" / "presets" / "figure1.json"


def run_cli(args, capsys):
    rc = main(args)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_spectrum_values(capsys):
    rc, out, _ = run_cli(["spectrum", "--n", "3", "--k", "2"], capsys)
    assert rc == 0
    assert "lambda = 2.618033988750" in out
    assert "entropy = 0.962423650119" in out
    rc, out, _ = run_cli(["spectrum", "--n", "2", "--k", "4"], capsys)
    assert rc == 0
    assert "lambda = 3.732050807569" in out


def test_spectrum_rejects_degenerate(capsys):
    rc, _, err = run_cli(["spectrum", "--n", "2", "--k", "2"], capsys)
    assert rc == 2
    assert "error" in err


def test_cn_output(capsys):
    rc, out, _ = run_cli(["cn", "--n", "4"], capsys)
    assert rc == 0
    assert out.splitlines()[0] == "1.41421356237, -1.41421356237"


def test_degrees(capsys):
    rc, out, _ = run_cli(["degrees", "--n", "3", "--k", "2", "--m", "12"], capsys)
    assert rc == 0
    assert out.startswith("d = 1, 3, 9, 27, 73")
    assert "2.618" in out


def test_fixed_points_preset(capsys):
    rc, out, _ = run_cli(["fixed-points", "--params", str(PRESET)], capsys)
    assert rc == 0
    assert "5 fixed points, 3 real" in out
    assert out.count("saddle") == 2
    assert out.count("elliptic") == 1


def test_weyl_verdict_schema(capsys, tmp_path):
    rc, out, _ = run_cli(["weyl", "--n", "2", "--k", "4", "--out", str(tmp_path)], capsys)
    assert rc == 0
    verdict = json.loads((tmp_path / "weyl_2_4.json").read_text())
    assert verdict["literal_identity"] is False
    assert verdict["repaired_phi"]["reflection_count"] == 4
    assert verdict["coxeter_identity"] is True
    assert verdict["dihedral"] is True
    rc, out, _ = run_cli(["weyl", "--n", "3", "--k", "2", "--out", str(tmp_path)], capsys)
    verdict = json.loads((tmp_path / "weyl_3_2.json").read_text())
    assert verdict["literal_identity"] is True
    assert verdict["repaired_phi"] is None


def test_charts_command(capsys, tmp_path):
    rc, out, _ = run_cli(["charts", "--params", str(PRESET), "--out", str(tmp_path)], capsys)
    assert rc == 0
    data = json.loads((tmp_path / "charts.json").read_text())
    assert data["overall"] == "pass"
    rec = data["records"][0]
    assert set(rec) == {"chart", "xi", "closed", "numeric", "abs_err"}


def test_orbit_csv(capsys, tmp_path):
    seeds = tmp_path / "seeds.json"
    seeds.write_text("[[0.1, 0.1], [0.2, 0.3]]")
    rc, out, _ = run_cli(["orbit", "--params", str(PRESET), "--steps", "50",
                          "--seeds", str(seeds), "--out", str(tmp_path)], capsys)
    assert rc == 0
    lines = (tmp_path / "orbits.csv").read_text().splitlines()
    assert lines[0] == "seed_id,step,x,y"
    assert lines[1].startswith("0,0,")


def test_usage_error(capsys):
    rc, _, err = run_cli(["verify"], capsys)
    assert rc == 2
    assert "need --params or both --n and --k" in err


def test_charts_failure_exit_code(capsys, tmp_path):
    rc, out, _ = run_cli(["charts", "--params", str(PRESET), "--tol", "1e-30",
                          "--out", str(tmp_path)], capsys)
    assert rc == 1


def test_unstable_command(capsys, tmp_path):
    rc, out, _ = run_cli(["unstable", "--params", str(PRESET), "--arclen", "2.0",
                          "--out", str(tmp_path)], capsys)
    assert rc == 0
    data = json.loads((tmp_path / "unstable.json").read_text())
    assert len(data["manifolds"]) == 2
    assert all(len(m["points"]) > 10 for m in data["manifolds"])


def test_determinism(tmp_path):
    env_cmd = [sys.executable, "-m", "surfauto.cli"]
    outs = []
    for sub in ("a", "b"):
        d = tmp_path / sub
        subprocess.run(env_cmd + ["charts", "--params", str(PRESET), "--out", str(d)],
                       capture_output=True, check=True)
        outs.append((d / "charts.json").read_bytes())
    assert outs[0] == outs[1]


def test_verify_preset(capsys, tmp_path):
    rc, out, _ = run_cli(["verify", "--params", str(PRESET), "--points", "2",
                          "--n-xi", "3", "--out", str(tmp_path)], capsys)
    assert rc == 0
    data = json.loads((tmp_path / "verify.json").read_text())
    assert data["overall"] == "pass"
    suites = {s["suite"] for s in data["suites"]}
    assert suites == {"lattice", "charts", "factorizations", "parabolic", "fixed-points"}


def test_verify_flags_only_instance(capsys):
    # the k=2, n=3 member configured purely from flags
    rc, out, _ = run_cli(["verify", "--n", "3", "--k", "2", "--points", "2",
                          "--n-xi", "3"], capsys)
    assert rc == 0
    assert out.count(": pass") == 5


def test_fixed_points_csv_format(capsys, tmp_path):
    rc, out, _ = run_cli(["fixed-points", "--params", str(PRESET),
                          "--format", "csv", "--out", str(tmp_path)], capsys)
    assert rc == 0
    lines = (tmp_path / "fixed_points.csv").read_text().splitlines()
    assert lines[0] == "type,zeta_re,zeta_im,trace_re,trace_im,multiplicity"
    assert len(lines) == 6


def test_orbit_default_seeds(capsys, tmp_path):
    rc, out, _ = run_cli(["orbit", "--params", str(PRESET), "--steps", "20",
                          "--out", str(tmp_path)], capsys)
    assert rc == 0
    assert (tmp_path / "orbits.csv").exists()
