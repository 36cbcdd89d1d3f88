"""Command line interface: ``sortnet <subcommand> ...``.

Every subcommand prints machine-readable output whose header records the
resolved parameters and seed.  Exit status is 0 on success, 2 on a usage or
domain error and 3 when a numerical routine fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .edelman_greene import sample_network
from .errors import ContourError, NumericalError, SortnetError
from .experiments import (
    AGUESpec,
    CorrelationWindow,
    ague_corners_experiment,
    correlation_experiment,
    first_swap_experiment,
    gap_experiment,
    intensity_experiment,
    semicircle_experiment,
    stationarity_experiment,
)
from .fredholm import dyson_tail, first_swap_cdf, gap_probability
from .jumps import PointConfiguration
from .kernels import ContourConfig, k_edge, k_lambda_detailed, k_lambda_residues
from .local_eg import local_eg_on_points
from .rng import DEFAULT_SEED, make_rng
from .tableau import YoungDiagram, poissonize, sample_syt_uniform, tableau_to_json

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------- argument types


def _seed(text: str) -> int:
    if text == "random":
        return int(np.random.SeedSequence().entropy % (2**63))
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer or 'random', got {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.replace(" ", "").split(",") if p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


# ---------------------------------------------------------------- output helpers


def _dump_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True))
    out.write("\n")


def _csv_with_header(params: dict, body: str, out) -> None:
    for k in sorted(params):
        out.write(f"# {k}={params[k]}\n")
    out.write(body)


def _open_out(path: str | None):
    return open(path, "w", newline="") if path else sys.stdout


# ---------------------------------------------------------------- subcommands


def _cmd_sample_network(a, out) -> None:
    net = sample_network(a.n, make_rng(a.seed))
    params = {"command": "sample-network", "n": a.n, "seed": a.seed}
    if a.format == "csv":
        _csv_with_header(params, net.wiring_csv(), out)
    else:
        _dump_json({"parameters": params, "n": net.n, "swaps": list(net.swaps)}, out)


def _cmd_sample_tableau(a, out) -> None:
    shape = YoungDiagram(a.shape)
    t = sample_syt_uniform(shape, make_rng(a.seed, 0))
    if a.poissonize:
        t = poissonize(t, make_rng(a.seed, 1))
    params = {"command": "sample-tableau", "shape": list(shape.rows), "poissonize": a.poissonize, "seed": a.seed}
    _dump_json({"parameters": params, "tableau": json.loads(tableau_to_json(t))}, out)


def _cmd_kernel(a, out) -> None:
    if a.kind == "edge":
        value = k_edge(a.x1, a.u1, a.x2, a.u2)
        params = {"command": "kernel edge", "x1": a.x1, "u1": a.u1, "x2": a.x2, "u2": a.u2}
        _dump_json({"parameters": params, "value": value}, out)
        return
    if a.shape is None or a.n is None:
        raise _UsageError("kernel lambda needs --shape and --n")
    shape = YoungDiagram(a.shape)
    params = {
        "command": "kernel lambda",
        "shape": list(shape.rows),
        "n": a.n,
        "x1": a.x1,
        "t1": a.u1,
        "x2": a.x2,
        "t2": a.u2,
        "method": a.method,
    }
    if a.method == "residue":
        _dump_json({"parameters": params, "value": k_lambda_residues(shape, a.n, a.x1, a.u1, a.x2, a.u2)}, out)
        return
    cfg = ContourConfig(margin=a.margin, height=a.height, nodes_per_unit=a.nodes_per_unit)
    params.update(margin=cfg.margin, height=cfg.height, nodes_per_unit=cfg.nodes_per_unit)
    r = k_lambda_detailed(shape, a.n, a.x1, a.u1, a.x2, a.u2, cfg)
    _dump_json(
        {
            "parameters": params,
            "value": r.value,
            "imag_residual": r.imag_residual,
            "nodes": r.nodes,
            "method": r.method,
            "min_separation": r.min_separation,
        },
        out,
    )


def _fredholm_row(t: float, nodes: int) -> dict:
    return {
        "t": t,
        "gap_probability": gap_probability(t, nodes),
        "first_swap_cdf": first_swap_cdf(t, nodes),
        "dyson_tail": dyson_tail(t) if t > 0 else None,
    }


def _read_t_grid(path: str) -> list[float]:
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if rows and rows[0][0].strip().lower() == "t":
        rows = rows[1:]
    return [float(r[0]) for r in rows]


def _cmd_fredholm(a, out) -> None:
    if (a.t is None) == (a.t_grid is None):
        raise _UsageError("fredholm needs exactly one of --t and --t-grid")
    ts = [a.t] if a.t is not None else _read_t_grid(a.t_grid)
    rows = [_fredholm_row(t, a.nodes) for t in ts]
    params = {"command": "fredholm", "nodes": a.nodes}
    if a.format == "json" and a.t is not None:
        _dump_json({**rows[0], "nodes": a.nodes, "parameters": params}, out)
    elif a.format == "json":
        _dump_json({"parameters": params, "rows": rows}, out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "gap_probability", "first_swap_cdf", "dyson_tail"])
        for r in rows:
            w.writerow([repr(r["t"]), repr(r["gap_probability"]), repr(r["first_swap_cdf"]),
                        "" if r["dyson_tail"] is None else repr(r["dyson_tail"])])
        _csv_with_header(params, buf.getvalue(), out)


def _cmd_local_eg(a, out) -> None:
    with open(a.input, newline="") as fh:
        cfg = PointConfiguration.from_csv(fh.read())
    lo, hi = a.window
    t_max = a.t_max if a.t_max is not None else math.inf
    swaps = local_eg_on_points(cfg, lo, hi, t_max, bounds=a.bounds, search=a.search)
    params = {"command": "local-eg", "input": a.input, "window": [lo, hi], "t_max": a.t_max}
    if a.format == "json":
        _dump_json({"parameters": params, "swaps": [[x, u] for x, u in swaps]}, out)
    else:
        _csv_with_header(params, swaps.to_csv(), out)


def _run_experiment(a):
    common = {"seed": a.seed, "threads": a.threads}
    name = a.name
    if name == "first-swap":
        return first_swap_experiment(a.n or 300, a.alpha, a.trials or 1000, **common)
    if name == "gap":
        return gap_experiment(a.n or 300, a.alpha, a.beta, a.trials or 1000, **common)
    if name == "correlation":
        return correlation_experiment(a.n or 300, a.alpha, CorrelationWindow(u_max=a.u_max), a.trials or 2000, **common)
    if name == "intensity":
        return intensity_experiment(a.n or 300, a.t_max, a.trials or 2000, **common)
    if name == "semicircle":
        return semicircle_experiment(a.n or 500, a.trials or 50, **common)
    if name == "stationarity":
        return stationarity_experiment(a.n or 300, a.alpha, a.delta, a.horizon, a.trials or 1000, **common)
    spec = AGUESpec(a.M, a.trials or 1000, frozenset(a.levels))
    return ague_corners_experiment(spec, **common)


def _cmd_experiment(a, out) -> None:
    rep = _run_experiment(a)
    if a.plot_data:
        os.makedirs(a.plot_data, exist_ok=True)
        for key, text in rep.plot_data().items():
            with open(os.path.join(a.plot_data, f"{rep.name}_{key}.dat"), "w") as fh:
                fh.write(text)
    if a.format == "csv":
        params = dict(rep.parameters)
        params["ks"] = rep.ks
        _csv_with_header(params, rep.to_csv(), out)
    else:
        out.write(rep.to_json(include_timing=not a.no_timing))
        out.write("\n")


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands."""
    p = argparse.ArgumentParser(prog="sortnet", description="Random sorting networks and their edge process.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument(
        "--seed", type=_seed, default=DEFAULT_SEED, help=f"master seed (default {DEFAULT_SEED}); 'random' for fresh entropy"
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample-network", help="uniform random sorting network")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_sample_network)

    sp = sub.add_parser("sample-tableau", help="uniform standard (or Poissonized) tableau")
    sp.add_argument("--shape", type=_int_list, required=True, help="row lengths, e.g. 3,2,1")
    sp.add_argument("--poissonize", action="store_true")
    sp.set_defaults(func=_cmd_sample_tableau)

    sp = sub.add_parser("kernel", help="evaluate K_edge or K_lambda")
    sp.add_argument("kind", choices=("edge", "lambda"))
    sp.add_argument("--x1", type=int, required=True)
    sp.add_argument("--u1", "--t1", dest="u1", type=float, required=True)
    sp.add_argument("--x2", type=int, required=True)
    sp.add_argument("--u2", "--t2", dest="u2", type=float, required=True)
    sp.add_argument("--shape", type=_int_list, help="partition for kernel lambda")
    sp.add_argument("--n", type=int, help="n for kernel lambda (at least the number of rows)")
    sp.add_argument("--method", choices=("contour", "residue"), default="contour")
    sp.add_argument("--margin", type=float, default=ContourConfig.margin)
    sp.add_argument("--height", type=float, default=ContourConfig.height)
    sp.add_argument("--nodes-per-unit", type=int, default=ContourConfig.nodes_per_unit)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("fredholm", help="gap probability of line 0")
    sp.add_argument("--t", type=float)
    sp.add_argument("--t-grid", help="CSV file with a column of t values (header 't' optional)")
    sp.add_argument("--nodes", type=int, default=64)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--json", dest="format", action="store_const", const="json")
    sp.set_defaults(func=_cmd_fredholm)

    sp = sub.add_parser("local-eg", help="local Edelman-Greene on a jump configuration")
    sp.add_argument("--input", required=True, help="CSV with columns x,u")
    sp.add_argument("--window", type=_int_list, required=True, help="swap window a,b")
    sp.add_argument("--t-max", type=float)
    sp.add_argument("--bounds", type=_int_list, help="explicit empty lines lo,hi")
    sp.add_argument("--search", type=int, default=50)
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.set_defaults(func=_cmd_local_eg)

    sp = sub.add_parser("experiment", help="seeded Monte Carlo experiment")
    sp.add_argument(
        "name", choices=("first-swap", "gap", "correlation", "intensity", "semicircle", "ague", "stationarity")
    )
    sp.add_argument("--n", type=int)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--beta", type=float, default=0.5, help="gap: reference time as a fraction of N")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--t-max", type=float, default=10.0, help="intensity: time horizon")
    sp.add_argument("--u-max", type=float, default=3.0, help="correlation: time window")
    sp.add_argument("--delta", type=float, default=2.0, help="stationarity: shift")
    sp.add_argument("--horizon", type=float, default=4.0, help="stationarity: window length")
    sp.add_argument("--M", type=int, default=200, help="ague: half corner size")
    sp.add_argument("--levels", type=_int_list, default=(0,), help="ague: corner offsets")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--plot-data", metavar="DIR", help="also write gnuplot two-column files here")
    sp.add_argument("--no-timing", action="store_true", help="omit wall-clock so output is reproducible")
    sp.set_defaults(func=_cmd_experiment)
    return p


def _validate(a) -> None:
    if getattr(a, "window", None) is not None and len(a.window) != 2:
        raise _UsageError("--window needs two integers a,b")
    if getattr(a, "bounds", None) is not None and len(a.bounds) != 2:
        raise _UsageError("--bounds needs two integers lo,hi")
    if getattr(a, "threads", 1) < 1:
        raise _UsageError("--threads must be at least 1")


def main(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and dispatch; returns the exit status."""
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        _validate(a)
        if a.output:
            with _open_out(a.output) as out:
                a.func(a, out)
        else:
            a.func(a, sys.stdout)
    except _UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"sortnet: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ContourError, ArithmeticError, np.linalg.LinAlgError) as e:
        print(f"sortnet: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SortnetError, ValueError, OSError) as e:
        print(f"sortnet: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
