"""Gap probabilities of the edge process on a single line.

On one line the edge kernel reduces to
``K(u1, u2) = sin(u1-u2)/(pi (u1-u2)) + sin(u1+u2)/(pi (u1+u2))`` and the
probability of no point in [0, t] is the Fredholm determinant det(I - K) on
L^2[0, t].  We discretize with Gauss-Legendre (Nyström) and take the
determinant of the symmetrized matrix ``I - W^(1/2) K W^(1/2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg

from .errors import DomainError

#: Glaisher-Kinkelin constant A.
GLAISHER = 1.2824271291006226368753425688697917277676889273250


@dataclass(frozen=True)
class DysonConstants:
    """Constants of the large-t expansion of log det(I - K).

    Attributes:
        zeta_prime_minus_one: zeta'(-1) = 1/12 - log A.
        c0: (7/24) log 2 + (3/2) zeta'(-1).
    """

    zeta_prime_minus_one: float = 1.0 / 12.0 - math.log(GLAISHER)
    c0: float = 7.0 / 24.0 * math.log(2.0) + 1.5 * (1.0 / 12.0 - math.log(GLAISHER))


DYSON = DysonConstants()


@dataclass(frozen=True)
class NystromGrid:
    """Gauss-Legendre nodes and weights on [0, t]."""

    t: float
    m: int
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def make(cls, t: float, m: int) -> "NystromGrid":
        x, w = _leggauss(m)
        return cls(float(t), int(m), 0.5 * t * (x + 1.0), 0.5 * t * w)


@lru_cache(maxsize=64)
def _leggauss(m: int):
    return np.polynomial.legendre.leggauss(m)


def line_kernel(u1, u2) -> np.ndarray:
    """K_edge restricted to line 0 (vectorized, broadcasting)."""
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    return (np.sinc((u1 - u2) / math.pi) + np.sinc((u1 + u2) / math.pi)) / math.pi


def _log_det(t: float, m: int) -> float:
    """log det(I - K) on [0, t]; analytic in t, so negative t is allowed internally."""
    if t == 0:
        return 0.0
    g = NystromGrid.make(t, m)
    k = line_kernel(g.nodes[:, None], g.nodes[None, :])
    if t > 0:
        sw = np.sqrt(g.weights)
        a = np.eye(m) - sw[:, None] * k * sw[None, :]
        try:
            c = linalg.cholesky(a, lower=True, check_finite=False)
            return float(2.0 * np.sum(np.log(np.diag(c))))
        except linalg.LinAlgError:
            pass
    else:
        a = np.eye(m) - k * g.weights[None, :]
    sign, logdet = np.linalg.slogdet(a)
    if sign <= 0:
        return -math.inf
    return float(logdet)


def log_gap_probability(t: float, m: int = 64) -> float:
    """log P(no point of line 0 in [0, t])."""
    if not t >= 0:
        raise DomainError(f"t must be non-negative, got {t}")
    if m < 4:
        raise DomainError(f"need at least 4 nodes, got {m}")
    return _log_det(float(t), int(m))


def gap_probability(t: float, m: int = 64) -> float:
    """P(no point of the edge process on line 0 in [0, t]) = P(T_FS > t).

    Args:
        t: Interval length, non-negative.
        m: Number of Gauss-Legendre nodes (at least 4).

    Raises:
        DomainError: for negative ``t`` or ``m < 4``.
    """
    return math.exp(log_gap_probability(t, m))


def first_swap_cdf(t: float, m: int = 64) -> float:
    """Limiting law of the rescaled first swap time: 1 - gap_probability(t)."""
    return 1.0 - gap_probability(t, m)


def gap_joint(a: float, b: float, m: int = 64) -> float:
    """P(T_- > a, T_+ > b) for the gap straddling a fixed time; equals F(a + b)."""
    if a < 0 or b < 0:
        raise DomainError(f"a and b must be non-negative, got {a}, {b}")
    return gap_probability(a + b, m)


def _f(t: float, m: int) -> float:
    return math.exp(_log_det(t, m))


def _step(g: float) -> float:
    return max(1e-3, 1e-2 * g)


def gap_function_derivatives(g: float, m: int = 64) -> tuple[float, float, float]:
    """F(g), F'(g), F''(g) by Richardson-extrapolated central differences.

    The step is ``h = max(1e-3, 1e-2 g)``; F is analytic so the stencil may
    reach slightly below 0.
    """
    h = _step(g)
    f0 = _f(g, m)

    def d1(hh):
        return (_f(g + hh, m) - _f(g - hh, m)) / (2 * hh)

    def d2(hh):
        return (_f(g + hh, m) - 2 * f0 + _f(g - hh, m)) / (hh * hh)

    fp = (4 * d1(h / 2) - d1(h)) / 3
    fpp = (4 * d2(h / 2) - d2(h)) / 3
    return f0, fp, fpp


def gap_density(g: float, m: int = 64) -> float:
    """Density g F''(g) of the rescaled gap containing a fixed time (clipped at 0)."""
    if not g > 0:
        raise DomainError(f"g must be positive, got {g}")
    _, _, fpp = gap_function_derivatives(g, m)
    return max(0.0, g * fpp)


def gap_cdf(g: float, m: int = 64) -> float:
    """CDF of :func:`gap_density`: g F'(g) - F(g) + 1."""
    if g <= 0:
        return 0.0
    f0, fp, _ = gap_function_derivatives(g, m)
    return min(1.0, max(0.0, g * fp - f0 + 1.0))


def dyson_tail(t: float) -> float:
    """Large-t expansion of log F(t): -t^2/4 - t/2 - (1/8) log t + c0.

    Raises:
        DomainError: for ``t <= 0``.
    """
    if not t > 0:
        raise DomainError(f"dyson_tail needs t > 0, got {t}")
    return -0.25 * t * t - 0.5 * t - 0.125 * math.log(t) + DYSON.c0


class GapCDFTable:
    """Tabulated CDF for fast vectorized evaluation in KS tests.

    The gap and first-swap CDFs are smooth, so cubic interpolation on a fine
    grid is accurate far beyond KS resolution; values beyond the grid are 1.
    """

    def __init__(self, func, t_max: float = 14.0, points: int = 1401):
        from scipy.interpolate import CubicSpline

        self.t_max = t_max
        grid = np.linspace(0.0, t_max, points)
        vals = np.array([func(float(t)) for t in grid])
        self._spline = CubicSpline(grid, vals)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.clip(self._spline(np.clip(x, 0.0, self.t_max)), 0.0, 1.0)
        out = np.where(x >= self.t_max, 1.0, out)
        return np.where(x <= 0, 0.0, out)


@lru_cache(maxsize=4)
def first_swap_cdf_table(m: int = 64) -> GapCDFTable:
    """Cached :class:`GapCDFTable` of :func:`first_swap_cdf`."""
    return GapCDFTable(lambda t: first_swap_cdf(t, m))


@lru_cache(maxsize=4)
def gap_cdf_table(m: int = 64) -> GapCDFTable:
    """Cached :class:`GapCDFTable` of :func:`gap_cdf`."""
    return GapCDFTable(lambda g: gap_cdf(g, m) if g > 0 else 0.0)
