"""Seeded Monte Carlo experiments against the analytic predictions.

Every experiment draws trial ``k`` from ``make_rng(seed, (k, purpose))``, so
a trial can be regenerated on its own and the result does not depend on how
trials are spread over threads.  Reports carry the histogram, a reference
curve, a one-sample KS statistic where a law is compared and a list of
named checks with their tolerances.
"""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .edelman_greene import sample_network_array
from .errors import DomainError
from .fredholm import (
    first_swap_cdf_table,
    gap_cdf_table,
    gap_function_derivatives,
    gap_probability,
)
from .jumps import WindowSpec, center_swap, staircase_edge_jumps
from .kernels import expected_count, k_edge, k_edge_diagonal
from .rng import DEFAULT_SEED, make_rng
from .tableau import YoungDiagram, sample_syt_array

#: Rescaled time beyond which the first-swap and gap laws carry no mass
#: at double precision (F(14) is about 1e-55).
_T_TAIL = 14.0


@dataclass
class Check:
    """One named comparison inside a report.

    Attributes:
        name: Short label.
        observed: Monte Carlo value.
        predicted: Analytic value.
        tolerance: Allowed deviation. For ``kind="sigma"`` it is a number of
            standard errors, otherwise an absolute or relative bound.
        kind: ``"sigma"``, ``"abs"`` or ``"rel"``.
        stderr: Standard error of ``observed`` (``kind="sigma"`` only).
    """

    name: str
    observed: float
    predicted: float
    tolerance: float
    kind: str = "sigma"
    stderr: float = 0.0

    @property
    def deviation(self) -> float:
        diff = abs(self.observed - self.predicted)
        if self.kind == "sigma":
            return diff / self.stderr if self.stderr > 0 else (0.0 if diff == 0 else math.inf)
        if self.kind == "rel":
            return diff / abs(self.predicted)
        return diff

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "observed": self.observed,
            "predicted": self.predicted,
            "stderr": self.stderr,
            "kind": self.kind,
            "tolerance": self.tolerance,
            "deviation": self.deviation,
            "passed": self.passed,
        }


@dataclass
class ExperimentReport:
    """Result of one seeded experiment.

    Attributes:
        name: Experiment name.
        parameters: Resolved parameters, always including n, alpha, beta
            (= sqrt(1 - alpha^2)), trials and seed.
        bin_edges: Histogram bin edges.
        counts: Histogram counts; they sum to ``effective``.
        reference: Reference curve, a dict of equal-length lists keyed by
            ``"x"`` and one or more curve names.
        ks: One-sample KS statistic of the main sample, or None.
        checks: Named comparisons.
        discarded: Trials dropped (for example, no straddling pair).
        effective: Number of samples behind the histogram.
        wall_clock: Seconds spent; excluded from equality.
        samples: Main sample, kept for CSV export.
    """

    name: str
    parameters: dict
    bin_edges: list
    counts: list
    reference: dict
    ks: float | None
    checks: list = field(default_factory=list)
    discarded: int = 0
    effective: int = 0
    wall_clock: float = 0.0
    samples: np.ndarray | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        """True when every check passed."""
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        """Look up a check by name."""
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self, include_timing: bool = True) -> dict:
        d = {
            "name": self.name,
            "parameters": self.parameters,
            "histogram": {"bin_edges": self.bin_edges, "counts": self.counts},
            "reference": self.reference,
            "ks": self.ks,
            "checks": [c.as_dict() for c in self.checks],
            "discarded": self.discarded,
            "effective": self.effective,
            "passed": self.passed,
        }
        if include_timing:
            d["wall_clock"] = self.wall_clock
        return d

    def to_json(self, include_timing: bool = True) -> str:
        """JSON report; with ``include_timing=False`` it is a pure function of the inputs."""
        return json.dumps(self.as_dict(include_timing), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        """Flat CSV with one row per histogram bin."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_lo", "bin_hi", "count"])
        for lo, hi, c in zip(self.bin_edges[:-1], self.bin_edges[1:], self.counts):
            w.writerow([repr(lo), repr(hi), c])
        return buf.getvalue()

    def samples_csv(self) -> str:
        """CSV with one row per sample (empty body if no samples were kept)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["sample"])
        if self.samples is not None:
            for v in self.samples.tolist():
                w.writerow([repr(v)])
        return buf.getvalue()

    def plot_data(self) -> dict[str, str]:
        """Two-column whitespace-separated files for gnuplot.

        Returns:
            ``{"histogram": ..., <curve>: ...}``: bin centres against density
            (count / (effective * width)) and each reference curve against x.
        """
        out = {}
        edges = np.asarray(self.bin_edges, dtype=float)
        counts = np.asarray(self.counts, dtype=float)
        width = np.diff(edges)
        dens = counts / (max(self.effective, 1) * width)
        centres = 0.5 * (edges[:-1] + edges[1:])
        out["histogram"] = "".join(f"{c!r} {v!r}\n" for c, v in zip(centres, dens))
        xs = self.reference.get("x", [])
        for key, ys in self.reference.items():
            if key != "x":
                out[key] = "".join(f"{x!r} {y!r}\n" for x, y in zip(xs, ys))
        return out


@dataclass(frozen=True)
class AGUESpec:
    """Antisymmetric GUE corners setup.

    Attributes:
        M: Half-size of the base corner (corner sizes are 2M + j).
        samples: Number of matrices.
        levels: Corner offsets j to record; level 0 is always included.
    """

    M: int
    samples: int
    levels: frozenset = frozenset({0})

    def __post_init__(self):
        object.__setattr__(self, "levels", frozenset(int(j) for j in self.levels) | {0})
        if self.M < 10:
            raise DomainError(f"AGUESpec needs M >= 10, got {self.M}")
        if self.samples < 1:
            raise DomainError(f"AGUESpec needs at least one sample, got {self.samples}")
        if min(self.levels) <= -2 * self.M:
            raise DomainError(f"levels must exceed -2M = {-2 * self.M}")


@dataclass(frozen=True)
class CorrelationWindow:
    """Boxes probed by :func:`correlation_experiment`.

    Attributes:
        xs: Lines on which the 1-point function is binned.
        u_max: Upper end of the time window.
        bin_width: Width of the 1-point bins.
        pairs: ``(u1, u2)`` lower corners of the 2-point boxes on lines 0 and 1.
        pair_width: Side of the 2-point boxes.
        gap_ts: Interval lengths for the no-point probability on line 0.
    """

    xs: tuple = (0, 1)
    u_max: float = 3.0
    bin_width: float = 0.5
    pairs: tuple = ((0.5, 0.5), (1.0, 1.5))
    pair_width: float = 0.5
    gap_ts: tuple = (0.5, 1.0, 2.0)

    def __post_init__(self):
        if not self.u_max > 0 or not self.bin_width > 0 or not self.pair_width > 0:
            raise DomainError("window lengths must be positive")
        if not self.xs:
            raise DomainError("window needs at least one line")


# ---------------------------------------------------------------- helpers


def _resolve_seed(seed: int | None) -> int:
    return DEFAULT_SEED if seed is None else int(seed)


def _run_trials(fn: Callable[[int], object], trials: int, threads: int) -> list:
    """Evaluate ``fn(k)`` for k < trials, in order, optionally on a thread pool."""
    if threads <= 1:
        return [fn(k) for k in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def _need_trials(trials: int) -> None:
    if trials < 1:
        raise DomainError(f"an experiment needs at least one trial, got {trials}")


def _histogram(samples: np.ndarray, lo: float, hi: float, bins: int) -> tuple[list, list]:
    hi = max(hi, float(samples.max()) if samples.size else hi)
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(samples, bins=edges)
    return edges.tolist(), counts.astype(int).tolist()


def _base_params(name: str, n: int, alpha: float, trials: int, seed: int, **extra) -> dict:
    d = {
        "experiment": name,
        "n": int(n),
        "alpha": float(alpha),
        "beta": math.sqrt(1.0 - alpha * alpha),
        "trials": int(trials),
        "seed": int(seed),
    }
    d.update(extra)
    return d


def _check_alpha(n: int, alpha: float, n_min: int = 10) -> WindowSpec:
    if n < n_min:
        raise DomainError(f"n must be at least {n_min}, got {n}")
    return WindowSpec.make(alpha, n)


def _mean_check(name: str, values: np.ndarray, predicted: float, sigmas: float = 3.0) -> Check:
    values = np.asarray(values, dtype=float)
    se = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
    return Check(name, float(values.mean()), float(predicted), sigmas, "sigma", se)


def _binomial_check(name: str, hits: np.ndarray, p: float, sigmas: float = 3.0) -> Check:
    m = hits.size
    se = math.sqrt(max(p * (1 - p), 1.0 / m) / m)
    return Check(name, float(hits.mean()), float(p), sigmas, "sigma", se)


def _first_swap_reference(t_hi: float = 6.0, points: int = 61) -> dict:
    grid = np.linspace(0.0, t_hi, points)
    cdf = first_swap_cdf_table()(grid)
    dens = [-gap_function_derivatives(float(t))[1] for t in grid]
    return {"x": grid.tolist(), "cdf": cdf.tolist(), "density": dens}


def _steps_for(n: int, beta: float, horizon: float) -> int:
    """Number of network steps covering rescaled time ``horizon``."""
    return int(math.ceil(horizon * n / (2.0 * beta))) + 1


def _first_hit(n: int, rng_factory, s: int, steps: int) -> int:
    """1-based first step of swap ``s``; rebuilds the full network if needed."""
    sw = sample_network_array(n, rng_factory(), steps)
    hit = np.flatnonzero(sw == s)
    if hit.size:
        return int(hit[0]) + 1
    sw = sample_network_array(n, rng_factory())
    return int(np.flatnonzero(sw == s)[0]) + 1


# ---------------------------------------------------------------- first swap


def first_swap_experiment(
    n: int, alpha: float = 0.0, trials: int = 1000, seed: int | None = None, threads: int = 1, bins: int = 48
) -> ExperimentReport:
    """Rescaled first appearance of the swap at column floor(n(1+alpha)/2).

    Each trial samples a uniform network (only as many steps as the law
    needs), records the first step T at which the swap appears and keeps
    ``2 sqrt(1-alpha^2)/n * T``.  The sample is compared with
    ``first_swap_cdf`` by a one-sample KS statistic.

    Args:
        n: Number of wires, at least 10.
        alpha: Macroscopic column in (-1, 1).
        trials: Number of networks, at least 1.
        seed: Master seed (None for the default).
        threads: Worker threads; results do not depend on it.
        bins: Histogram bins.

    Raises:
        DomainError: on ``trials < 1`` or out-of-range ``n``, ``alpha``.
    """
    start = time.perf_counter()
    _need_trials(trials)
    w = _check_alpha(n, alpha)
    seed = _resolve_seed(seed)
    s = center_swap(n, alpha)
    scale = 2.0 * w.beta / n
    steps = _steps_for(n, w.beta, _T_TAIL)

    def trial(k):
        return _first_hit(n, lambda: make_rng(seed, (k, 0)), s, steps)

    hits = np.array(_run_trials(trial, trials, threads), dtype=np.int64)
    samples = scale * hits
    ks = float(stats.kstest(samples, first_swap_cdf_table()).statistic)
    edges, counts = _histogram(samples, 0.0, 6.0, bins)
    mode_bin = int(np.argmax(counts))
    return ExperimentReport(
        name="first-swap",
        parameters=_base_params("first-swap", n, alpha, trials, seed, swap=s, c_n=w.c_n),
        bin_edges=edges,
        counts=counts,
        reference=_first_swap_reference(),
        ks=ks,
        checks=[
            Check("ks", ks, 0.0, 0.06, "abs"),
            Check("histogram_mode", 0.5 * (edges[mode_bin] + edges[mode_bin + 1]), 1.0, 0.75, "abs"),
        ],
        effective=int(samples.size),
        wall_clock=time.perf_counter() - start,
        samples=samples,
    )


# ---------------------------------------------------------------- gap

#: Grid of (a, b) values for the joint tail check.
JOINT_GRID = (0.0, 0.25, 0.5, 1.0, 1.5)


def gap_experiment(
    n: int,
    alpha: float = 0.0,
    beta: float = 0.5,
    trials: int = 1000,
    seed: int | None = None,
    threads: int = 1,
    bins: int = 48,
) -> ExperimentReport:
    """Gap between consecutive appearances of a swap around time beta * N.

    The reference time is ``floor(beta N) + 1/2`` so it never coincides with a
    step.  ``T_-`` and ``T_+`` are the rescaled distances to the last
    appearance before and the first after it; the gap is their sum.  Trials
    without an appearance on both sides are discarded and counted.

    Args:
        n: Number of wires, at least 10.
        alpha: Macroscopic column in (-1, 1).
        beta: Reference time as a fraction of N = n(n-1)/2, in (0, 1).
            Reported as ``time_fraction``; the report's ``beta`` field is
            sqrt(1 - alpha^2) as for every experiment.
        trials: Number of networks.
        seed: Master seed.
        threads: Worker threads.
        bins: Histogram bins.

    Returns:
        Report with the gap sample, KS against ``gap_cdf`` and the joint tail
        grid ``P(T_- > a, T_+ > b)`` versus ``F(a + b)``.
    """
    start = time.perf_counter()
    _need_trials(trials)
    if not 0 < beta < 1:
        raise DomainError(f"beta must lie in (0, 1), got {beta}")
    w = _check_alpha(n, alpha)
    seed = _resolve_seed(seed)
    s = center_swap(n, alpha)
    big_n = n * (n - 1) // 2
    tau = math.floor(beta * big_n) + 0.5
    scale = 2.0 * w.beta / n
    steps = min(big_n, int(tau) + _steps_for(n, w.beta, _T_TAIL))

    def trial(k):
        sw = sample_network_array(n, make_rng(seed, (k, 0)), steps)
        idx = np.flatnonzero(sw == s) + 1
        before = idx[idx < tau]
        after = idx[idx > tau]
        if not after.size and steps < big_n:
            sw = sample_network_array(n, make_rng(seed, (k, 0)))
            idx = np.flatnonzero(sw == s) + 1
            after = idx[idx > tau]
        if not before.size or not after.size:
            return None
        return (tau - before[-1]) * scale, (after[0] - tau) * scale

    res = _run_trials(trial, trials, threads)
    kept = [r for r in res if r is not None]
    discarded = len(res) - len(kept)
    if not kept:
        raise DomainError("every trial was discarded; no straddling pair found")
    t_minus = np.array([r[0] for r in kept])
    t_plus = np.array([r[1] for r in kept])
    gaps = t_minus + t_plus
    ks = float(stats.kstest(gaps, gap_cdf_table()).statistic)
    checks = [Check("ks", ks, 0.0, 0.08, "abs")]
    worst = 0.0
    for a in JOINT_GRID:
        for b in JOINT_GRID:
            emp = float(np.mean((t_minus > a) & (t_plus > b)))
            worst = max(worst, abs(emp - gap_probability(a + b)))
    checks.append(Check("joint_tail_sup", worst, 0.0, 0.05, "abs"))
    edges, counts = _histogram(gaps, 0.0, 8.0, bins)
    grid = np.linspace(0.0, 8.0, 81)
    ref_dens = [0.0] + [float(g * gap_function_derivatives(float(g))[2]) for g in grid[1:]]
    return ExperimentReport(
        name="gap",
        parameters=_base_params("gap", n, alpha, trials, seed, swap=s, time_fraction=float(beta), reference_time=tau),
        bin_edges=edges,
        counts=counts,
        reference={"x": grid.tolist(), "cdf": gap_cdf_table()(grid).tolist(), "density": ref_dens},
        ks=ks,
        checks=checks,
        discarded=discarded,
        effective=int(gaps.size),
        wall_clock=time.perf_counter() - start,
        samples=gaps,
    )


# ---------------------------------------------------------------- correlations


def _edge_sample(n: int, w: WindowSpec, seed: int, k: int, u_max: float, x_range: tuple[int, int]):
    """Rescaled jumps of trial ``k`` within the window (tableau and times on separate streams)."""
    shape = YoungDiagram.staircase(n)
    syt = sample_syt_array(shape, make_rng(seed, (k, 0)))
    uniforms = np.sort(make_rng(seed, (k, 1)).random(shape.size))
    return staircase_edge_jumps(syt, uniforms, w, u_max, x_range)


def _box_integral(x1: int, a1: float, x2: int, a2: float, h: float, nodes: int = 8) -> float:
    """Integral of det[K] over {x1}x[a1, a1+h] times {x2}x[a2, a2+h]."""
    g, wt = np.polynomial.legendre.leggauss(nodes)
    u = 0.5 * h * (g + 1.0)
    wt = 0.5 * h * wt
    tot = 0.0
    for i in range(nodes):
        for j in range(nodes):
            p, q = a1 + u[i], a2 + u[j]
            det = k_edge(x1, p, x1, p) * k_edge(x2, q, x2, q) - k_edge(x1, p, x2, q) * k_edge(x2, q, x1, p)
            tot += wt[i] * wt[j] * det
    return float(tot)


def correlation_experiment(
    n: int,
    alpha: float = 0.0,
    window: CorrelationWindow | None = None,
    trials: int = 2000,
    seed: int | None = None,
    threads: int = 1,
) -> ExperimentReport:
    """Box-count estimates of the 1- and 2-point functions of the edge jumps.

    Each trial samples a uniform staircase tableau and independent sorted
    uniforms, forms the rescaled jumps near column ``c_n`` and counts points
    in boxes.  Means are compared with the integrated kernel predictions at
    three standard errors:

    * 1-point: points of line x in a bin versus ``expected_count``;
    * 2-point: pairs (line 0 box, line 1 box) versus the integral of the
      2x2 determinant of K_edge;
    * no point on line 0 in [0, t] versus ``gap_probability(t)``.

    The histogram is of the number of points on line 0 in ``[0, u_max]``.
    """
    start = time.perf_counter()
    _need_trials(trials)
    window = window or CorrelationWindow()
    w = _check_alpha(n, alpha)
    seed = _resolve_seed(seed)
    u_max = max([window.u_max, max(window.gap_ts)] + [max(a, b) + window.pair_width for a, b in window.pairs])
    lines = sorted(set(window.xs) | {0, 1})
    bin_lo = np.arange(0.0, window.u_max - 1e-12, window.bin_width)

    def trial(k):
        xs, us = _edge_sample(n, w, seed, k, u_max, (lines[0], lines[-1]))
        one = [
            [int(np.count_nonzero((xs == x) & (us >= a) & (us < a + window.bin_width))) for a in bin_lo]
            for x in window.xs
        ]
        two = []
        for a, b in window.pairs:
            c0 = np.count_nonzero((xs == 0) & (us >= a) & (us < a + window.pair_width))
            c1 = np.count_nonzero((xs == 1) & (us >= b) & (us < b + window.pair_width))
            two.append(int(c0 * c1))
        line0 = us[xs == 0]
        empty = [bool(not np.any(line0 <= t)) for t in window.gap_ts]
        return one, two, empty, int(np.count_nonzero(line0 <= window.u_max))

    res = _run_trials(trial, trials, threads)
    one = np.array([r[0] for r in res], dtype=float)
    two = np.array([r[1] for r in res], dtype=float)
    empty = np.array([r[2] for r in res], dtype=float)
    totals = np.array([r[3] for r in res])

    checks = []
    for ix, x in enumerate(window.xs):
        for ib, a in enumerate(bin_lo):
            b = a + window.bin_width
            checks.append(_mean_check(f"rho1[x={x},u={a:g}..{b:g}]", one[:, ix, ib], expected_count(x, a, b)))
    for ip, (a, b) in enumerate(window.pairs):
        pred = _box_integral(0, a, 1, b, window.pair_width)
        checks.append(_mean_check(f"rho2[(0,{a:g}),(1,{b:g})]", two[:, ip], pred))
    for it, t in enumerate(window.gap_ts):
        checks.append(_binomial_check(f"no_points[0,{t:g}]", empty[:, it], gap_probability(t)))

    edges = np.arange(-0.5, max(int(totals.max()), 1) + 1.5, 1.0)
    counts, _ = np.histogram(totals, bins=edges)
    grid = np.linspace(0.0, window.u_max, 61)
    return ExperimentReport(
        name="correlation",
        parameters=_base_params(
            "correlation",
            n,
            alpha,
            trials,
            seed,
            c_n=w.c_n,
            xs=list(window.xs),
            u_max=window.u_max,
            bin_width=window.bin_width,
            pairs=[list(p) for p in window.pairs],
            pair_width=window.pair_width,
            gap_ts=list(window.gap_ts),
        ),
        bin_edges=edges.tolist(),
        counts=counts.astype(int).tolist(),
        reference={
            "x": grid.tolist(),
            **{f"density_line_{x}": [k_edge_diagonal(x, u, u) for u in grid] for x in window.xs},
        },
        ks=None,
        checks=checks,
        effective=int(totals.size),
        wall_clock=time.perf_counter() - start,
        samples=totals.astype(float),
    )


# ---------------------------------------------------------------- intensity


def intensity_experiment(
    n: int, t_max: float = 10.0, trials: int = 2000, seed: int | None = None, threads: int = 1, grid_points: int = 5
) -> ExperimentReport:
    """Mean number of jumps on line 0 in [0, t] at the centre of the staircase.

    Compares the sample mean of N_0(t) on an evenly spaced grid ending at
    ``t_max`` with ``expected_count(0, 0, t)`` (three standard errors), and
    records the analytic ratio ``expected_count(0, 0, 100)/100`` against
    ``1/pi``.  The histogram is of N_0(t_max).
    """
    start = time.perf_counter()
    _need_trials(trials)
    if t_max < 0:
        raise DomainError(f"t_max must be non-negative, got {t_max}")
    w = _check_alpha(n, 0.0)
    seed = _resolve_seed(seed)
    grid = [t_max * (k + 1) / grid_points for k in range(grid_points)] if t_max > 0 else [0.0]

    def trial(k):
        xs, us = _edge_sample(n, w, seed, k, t_max, (0, 0))
        return [int(np.count_nonzero(us <= t)) for t in grid]

    counts_tr = np.array(_run_trials(trial, trials, threads), dtype=float)
    checks = [_mean_check(f"mean_N0[{t:g}]", counts_tr[:, i], expected_count(0, 0.0, t)) for i, t in enumerate(grid)]
    checks.append(Check("expected_count_ratio_t100", expected_count(0, 0.0, 100.0) / 100.0, 1 / math.pi, 0.01, "abs"))
    last = counts_tr[:, -1]
    edges = np.arange(-0.5, max(int(last.max()), 1) + 1.5, 1.0)
    hist, _ = np.histogram(last, bins=edges)
    ref_t = np.linspace(0.0, max(t_max, 1e-9), 51)
    return ExperimentReport(
        name="intensity",
        parameters=_base_params("intensity", n, 0.0, trials, seed, t_max=float(t_max), grid=grid, c_n=w.c_n),
        bin_edges=edges.tolist(),
        counts=hist.astype(int).tolist(),
        reference={
            "x": ref_t.tolist(),
            "expected_count": [expected_count(0, 0.0, float(t)) for t in ref_t],
            "mean_per_t": [expected_count(0, 0.0, float(t)) / t if t > 0 else 2 / math.pi for t in ref_t],
        },
        ks=None,
        checks=checks,
        effective=int(last.size),
        wall_clock=time.perf_counter() - start,
        samples=last,
    )


# ---------------------------------------------------------------- semicircle


def semicircle_cdf(x):
    """CDF on (0, 1) of the density proportional to sqrt(1 - (2x - 1)^2)."""
    y = np.clip(2.0 * np.asarray(x, dtype=float) - 1.0, -1.0, 1.0)
    return 0.5 + (y * np.sqrt(1.0 - y * y) + np.arcsin(y)) / math.pi


def semicircle_density(x):
    """Semicircle density (8/pi) sqrt(x(1-x)) on (0, 1)."""
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    return 8.0 / math.pi * np.sqrt(x * (1.0 - x))


def semicircle_experiment(
    n: int,
    trials: int = 50,
    seed: int | None = None,
    threads: int = 1,
    rate_alphas: Sequence[float] = (0.0, 0.5),
    bins: int = 50,
) -> ExperimentReport:
    """Pooled swap positions s_i/n against the semicircle law.

    Besides the KS statistic it checks the mean of s_i/n against 1/2 (three
    standard errors of the per-network means) and the local swap rate at
    column floor(n(1+alpha)/2), counted per unit of 2i/n time, against
    ``2 sqrt(1-alpha^2)/pi`` within 10%.
    """
    start = time.perf_counter()
    _need_trials(trials)
    if n < 50:
        raise DomainError(f"semicircle_experiment needs n >= 50, got {n}")
    seed = _resolve_seed(seed)
    cols = [center_swap(n, a) for a in rate_alphas]

    def trial(k):
        sw = sample_network_array(n, make_rng(seed, (k, 0)))
        return np.bincount(sw, minlength=n)[1:]

    per_pos = np.array(_run_trials(trial, trials, threads), dtype=np.int64)  # trials x (n-1)
    pooled = per_pos.sum(axis=0)
    positions = np.arange(1, n) / n
    samples = np.repeat(positions, pooled)
    ks = float(stats.kstest(samples, semicircle_cdf).statistic)
    big_n = n * (n - 1) // 2
    trial_means = (per_pos * positions).sum(axis=1) / big_n
    checks = [Check("ks", ks, 0.0, 0.05, "abs"), _mean_check("mean_position", trial_means, 0.5)]
    total_time = 2.0 * big_n / n
    for a, s in zip(rate_alphas, cols):
        rate = float(per_pos[:, s - 1].mean() / total_time)
        checks.append(Check(f"local_rate[alpha={a:g}]", rate, 2.0 * math.sqrt(1 - a * a) / math.pi, 0.10, "rel"))
    edges = np.linspace(0.0, 1.0, bins + 1)
    hist, _ = np.histogram(samples, bins=edges)
    grid = np.linspace(0.0, 1.0, 101)
    return ExperimentReport(
        name="semicircle",
        parameters=_base_params("semicircle", n, 0.0, trials, seed, rate_alphas=list(rate_alphas)),
        bin_edges=edges.tolist(),
        counts=hist.astype(int).tolist(),
        reference={"x": grid.tolist(), "density": semicircle_density(grid).tolist(), "cdf": semicircle_cdf(grid).tolist()},
        ks=ks,
        checks=checks,
        effective=int(samples.size),
        wall_clock=time.perf_counter() - start,
        samples=None,
    )


# ---------------------------------------------------------------- stationarity


def stationarity_experiment(
    n: int,
    alpha: float = 0.0,
    delta: float = 2.0,
    horizon: float = 4.0,
    trials: int = 1000,
    seed: int | None = None,
    threads: int = 1,
    columns: int = 11,
) -> ExperimentReport:
    """Compare the swap process in the rescaled windows [0, T] and [delta, T + delta].

    The shift is rounded to a whole number of steps.  Two marginals are
    compared with two-sample KS statistics, pooled over ``columns`` swap
    positions centred at floor(n(1+alpha)/2): the first appearance after the
    window start, and the number of appearances inside the window.
    """
    start = time.perf_counter()
    _need_trials(trials)
    if delta < 0 or horizon <= 0:
        raise DomainError("need delta >= 0 and horizon > 0")
    w = _check_alpha(n, alpha)
    seed = _resolve_seed(seed)
    s0 = center_swap(n, alpha)
    cols = np.arange(s0 - columns // 2, s0 - columns // 2 + columns)
    if cols[0] < 1 or cols[-1] > n - 1:
        raise DomainError(f"{columns} columns around {s0} do not fit in 1..{n - 1}")
    scale = 2.0 * w.beta / n
    shift = int(round(delta / scale))
    win = int(math.floor(horizon / scale))
    steps = shift + _steps_for(n, w.beta, _T_TAIL)

    def trial(k):
        sw = sample_network_array(n, make_rng(seed, (k, 0)), steps)
        first = np.empty((2, cols.size))
        count = np.empty((2, cols.size))
        for r, off in enumerate((0, shift)):
            seg = sw[off:]
            for c, s in enumerate(cols):
                hit = np.flatnonzero(seg == s)
                first[r, c] = hit[0] + 1 if hit.size else np.inf
                count[r, c] = np.count_nonzero(seg[:win] == s)
        return first, count

    res = _run_trials(trial, trials, threads)
    first = np.stack([r[0] for r in res])
    count = np.stack([r[1] for r in res])
    f0, f1 = first[:, 0, :].ravel(), first[:, 1, :].ravel()
    ok = np.isfinite(f0) & np.isfinite(f1)
    discarded = int(np.count_nonzero(~ok))
    f0, f1 = scale * f0[ok], scale * f1[ok]
    ks_first = float(stats.ks_2samp(f0, f1).statistic)
    ks_count = float(stats.ks_2samp(count[:, 0, :].ravel(), count[:, 1, :].ravel()).statistic)
    ks_law = float(stats.kstest(f0, first_swap_cdf_table()).statistic)
    edges, hist = _histogram(f0, 0.0, 6.0, 48)
    return ExperimentReport(
        name="stationarity",
        parameters=_base_params(
            "stationarity",
            n,
            alpha,
            trials,
            seed,
            delta=float(delta),
            shift_steps=shift,
            horizon=float(horizon),
            window_steps=win,
            columns=cols.tolist(),
        ),
        bin_edges=edges,
        counts=hist,
        reference=_first_swap_reference(),
        ks=ks_first,
        checks=[
            Check("ks_first_after_start", ks_first, 0.0, 0.05, "abs"),
            Check("ks_count_in_window", ks_count, 0.0, 0.05, "abs"),
            Check("ks_first_vs_limit_law", ks_law, 0.0, 0.06, "abs"),
        ],
        discarded=discarded,
        effective=int(f0.size),
        wall_clock=time.perf_counter() - start,
        samples=f0,
    )


# ---------------------------------------------------------------- aGUE corners


def corner_magnitudes(a: np.ndarray, m: int) -> np.ndarray:
    """Nonzero eigenvalue magnitudes of the m x m corner of an antisymmetric matrix.

    Singular values of a real antisymmetric matrix come in equal pairs, plus
    one zero when m is odd; each pair is averaged into one magnitude.

    Returns:
        Ascending array of length floor(m / 2).
    """
    sv = np.sort(np.linalg.svd(a[:m, :m], compute_uv=False))
    if m % 2:
        sv = sv[1:]
    return 0.5 * (sv[0::2] + sv[1::2])


def ague_corners_experiment(
    spec: AGUESpec, seed: int | None = None, threads: int = 1, u_max: float = 3.0, bin_width: float = 0.5
) -> ExperimentReport:
    """Hard edge of antisymmetric GUE corners against the edge process.

    Samples ``A = (G - G^T)/sqrt(2)`` of size ``2M + max(levels)``, computes
    the magnitudes of the corners of size ``2M + j`` and scales them by
    sqrt(2M).  Compares the smallest scaled magnitude at level 0 with
    ``first_swap_cdf`` (KS), and the level-0 point counts per bin of
    ``[0, u_max]`` with ``expected_count`` (three standard errors).
    """
    start = time.perf_counter()
    seed = _resolve_seed(seed)
    m2 = 2 * spec.M
    size = m2 + max(spec.levels)
    scale = math.sqrt(m2)
    levels = sorted(spec.levels)
    bin_lo = np.arange(0.0, u_max - 1e-12, bin_width)

    def trial(k):
        g = make_rng(seed, (k, 0)).standard_normal((size, size))
        a = (g - g.T) / math.sqrt(2.0)
        out = {}
        for j in levels:
            out[j] = scale * corner_magnitudes(a, m2 + j)
        return out

    res = _run_trials(trial, spec.samples, threads)
    smallest = np.array([r[0][0] for r in res])
    ks = float(stats.kstest(smallest, first_swap_cdf_table()).statistic)
    checks = [Check("ks_smallest", ks, 0.0, 0.1, "abs")]
    for a in bin_lo:
        b = a + bin_width
        cnt = np.array([np.count_nonzero((r[0] >= a) & (r[0] < b)) for r in res], dtype=float)
        checks.append(_mean_check(f"level0_density[{a:g}..{b:g}]", cnt, expected_count(0, a, b)))
    edges, hist = _histogram(smallest, 0.0, 6.0, 48)
    return ExperimentReport(
        name="ague",
        parameters={
            "experiment": "ague",
            "M": spec.M,
            "levels": levels,
            "trials": spec.samples,
            "seed": seed,
            "n": size,
            "alpha": 0.0,
            "beta": 1.0,
            "u_max": u_max,
            "bin_width": bin_width,
        },
        bin_edges=edges,
        counts=hist,
        reference=_first_swap_reference(),
        ks=ks,
        checks=checks,
        effective=int(smallest.size),
        wall_clock=time.perf_counter() - start,
        samples=smallest,
    )
