import json
import subprocess
import sys

from sortnet.cli import main
from sortnet.edelman_greene import sample_network
from sortnet.experiments import first_swap_experiment
from sortnet.fredholm import dyson_tail, gap_probability
from sortnet.kernels import k_edge
from sortnet.rng import DEFAULT_SEED, make_rng


def run(capsys, *argv):
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_fredholm_json_matches_library(capsys):
    rc, out, _ = run(capsys, "fredholm", "--t", "2.0", "--nodes", "64", "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["t"] == 2.0
    assert data["gap_probability"] == gap_probability(2.0, 64)
    assert data["dyson_tail"] == dyson_tail(2.0)


def test_fredholm_negative_t_is_usage_error(capsys):
    rc, _, err = run(capsys, "fredholm", "--t", "-1")
    assert rc == 2
    assert "t" in err


def test_help_and_unknown_flag(capsys):
    assert main(["--help"]) == 0
    assert "usage" in capsys.readouterr().out
    assert main(["fredholm", "--bogus"]) == 2
    assert "usage" in capsys.readouterr().err


def test_sample_network_matches_library(capsys):
    rc, out, _ = run(capsys, "--seed", "17", "sample-network", "--n", "9")
    assert rc == 0
    data = json.loads(out)
    assert data["parameters"]["seed"] == 17
    assert data["swaps"] == list(sample_network(9, make_rng(17)).swaps)


def test_default_seed_is_fixed(capsys):
    _, a, _ = run(capsys, "sample-network", "--n", "6")
    _, b, _ = run(capsys, "sample-network", "--n", "6")
    assert a == b
    assert json.loads(a)["parameters"]["seed"] == DEFAULT_SEED


def test_fredholm_batch_csv(tmp_path, capsys):
    grid = tmp_path / "grid.csv"
    grid.write_text("t\n0\n1.5\n3\n")
    rc, out, _ = run(capsys, "fredholm", "--t-grid", str(grid), "--format", "csv")
    assert rc == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0] == "t,gap_probability,first_swap_cdf,dyson_tail"
    assert len(lines) == 4
    assert float(lines[2].split(",")[1]) == gap_probability(1.5, 64)
    assert lines[1].endswith(",")


def test_kernel_edge(capsys):
    rc, out, _ = run(capsys, "kernel", "edge", "--x1", "0", "--u1", "0.5", "--x2", "2", "--u2", "1.0")
    assert rc == 0
    assert json.loads(out)["value"] == k_edge(0, 0.5, 2, 1.0)


def test_kernel_lambda_requires_shape(capsys):
    rc, _, _ = run(capsys, "kernel", "lambda", "--x1", "0", "--t1", "0.5", "--x2", "0", "--t2", "0.5")
    assert rc == 2
    rc, out, _ = run(
        capsys, "kernel", "lambda", "--shape", "1", "--n", "1",
        "--x1", "0", "--t1", "0.5", "--x2", "0", "--t2", "0.5",
    )
    assert rc == 0
    assert abs(json.loads(out)["value"] - 1.0) < 1e-8


def test_sample_tableau_poissonized(capsys):
    rc, out, _ = run(capsys, "sample-tableau", "--shape", "3,2,1", "--poissonize")
    assert rc == 0
    assert json.loads(out)["parameters"]["shape"] == [3, 2, 1]


def test_experiment_matches_library(tmp_path, capsys):
    rc, out, _ = run(
        capsys, "--seed", "5", "experiment", "first-swap", "--n", "40", "--trials", "20",
        "--no-timing", "--plot-data", str(tmp_path),
    )
    assert rc == 0
    assert out.strip() == first_swap_experiment(40, 0.0, 20, seed=5).to_json(include_timing=False)
    assert any(tmp_path.iterdir())


def test_local_eg_single_point(tmp_path, capsys):
    src = tmp_path / "pts.csv"
    src.write_text("x,u\n0,0.5\n")
    rc, out, _ = run(capsys, "local-eg", "--input", str(src), "--window", "0,0", "--format", "json")
    assert rc == 0
    assert json.loads(out)["swaps"] == [[0, 0.5]]


def test_local_eg_without_empty_lines(tmp_path, capsys):
    src = tmp_path / "pts.csv"
    src.write_text("x,u\n" + "".join(f"{x},0.5\n" for x in range(-6, 7)))
    rc, _, _ = run(capsys, "local-eg", "--input", str(src), "--window", "0,0", "--search", "3")
    assert rc == 2


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    assert main(["-o", str(dest), "fredholm", "--t", "1"]) == 0
    assert json.loads(dest.read_text())["t"] == 1.0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sortnet", "fredholm", "--t", "0.5"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["gap_probability"] == gap_probability(0.5, 64)
