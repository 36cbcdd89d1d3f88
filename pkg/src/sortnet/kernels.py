"""Correlation kernels: the edge kernel K_edge and the finite-shape kernel K_lambda.

K_edge is evaluated from its one-dimensional integral form::

    x2 >= x1:   (2/pi) int_0^1 t^(x2-x1) cos(t u1 + pi x1/2) cos(t u2 + pi x2/2) dt
    x2 <  x1: -(2/pi) int_1^inf t^(x2-x1) cos(t u1 + pi x1/2) cos(t u2 + pi x2/2) dt

The first is a smooth integral on [0, 1] handled by Gauss-Legendre.  For
``x2 = x1 - 1`` the tail integral reduces to sine integrals, and for
``x2 <= x1 - 2`` the product-to-sum identity turns it into generalized
exponential integrals E_m of imaginary argument.

K_lambda is a double contour integral over rectangles around runs of
integers.  :func:`k_lambda_residues` sums the same residues exactly and is
used for t = 1 and as an independent check.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import special

from .errors import ContourError, DomainError, NumericalError
from .tableau import YoungDiagram

_EULER = 0.57721566490153286061

# ---------------------------------------------------------------- helpers


@lru_cache(maxsize=256)
def _gauss_legendre(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(m)
    return x, w


def _gl01(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _gauss_legendre(m)
    return 0.5 * (x + 1.0), 0.5 * w


def sine_integral(x):
    """Si(x) = int_0^x sin(t)/t dt (odd in x)."""
    return special.sici(x)[0]


def expint_complex(m: int, z: complex, eps: float = 1e-15, max_iter: int = 100000) -> complex:
    """Generalized exponential integral E_m(z) = int_1^inf e^(-z t) t^(-m) dt.

    Valid for ``m >= 1`` and ``Re z >= 0`` (``z != 0`` when ``m = 1``).  Uses
    the power series for ``|z| < 1`` and a modified-Lentz continued fraction
    otherwise.

    Raises:
        DomainError: for ``m < 1`` or the logarithmic singularity E_1(0).
        NumericalError: if the iteration does not converge.
    """
    if m < 1:
        raise DomainError(f"E_m needs m >= 1, got {m}")
    z = complex(z)
    if z == 0:
        if m == 1:
            raise DomainError("E_1(0) is infinite")
        return complex(1.0 / (m - 1))
    nm1 = m - 1
    if abs(z) >= 1.0:
        tiny = 1e-300
        b = z + m
        c = 1.0 / tiny
        d = 1.0 / b
        h = d
        for i in range(1, max_iter):
            an = -i * (nm1 + i)
            b += 2.0
            d = 1.0 / (an * d + b)
            c = b + an / c
            delta = c * d
            h *= delta
            if abs(delta - 1.0) < eps:
                return h * cmath.exp(-z)
        raise NumericalError(f"continued fraction for E_{m}({z}) did not converge")
    ans = complex(1.0 / nm1) if nm1 else -cmath.log(z) - _EULER
    fact = 1.0 + 0j
    for i in range(1, max_iter):
        fact *= -z / i
        if i != nm1:
            delta = -fact / (i - nm1)
        else:
            psi = -_EULER + sum(1.0 / k for k in range(1, nm1 + 1))
            delta = fact * (-cmath.log(z) + psi)
        ans += delta
        if abs(delta) < abs(ans) * eps:
            return ans
    raise NumericalError(f"series for E_{m}({z}) did not converge")


def _tail_cos(m: int, omega: float, phi: float) -> float:
    """int_1^inf t^(-m) cos(omega t + phi) dt for m >= 2."""
    if omega < 0:
        omega, phi = -omega, -phi
    return (cmath.exp(1j * phi) * expint_complex(m, -1j * omega)).real


# ---------------------------------------------------------------- K_edge


@dataclass(frozen=True)
class EdgeKernelQuery:
    """Arguments of K_edge(x1, u1; x2, u2)."""

    x1: int
    u1: float
    x2: int
    u2: float


def k_edge(x1: int, u1: float, x2: int, u2: float) -> float:
    """The edge kernel K_edge(x1, u1; x2, u2).

    Args:
        x1, x2: Lines (integers).
        u1, u2: Times, non-negative.

    Returns:
        Kernel value.  On the null set ``u1 = u2, x2 = x1 - 1`` the value is
        that of the displayed integral form (sgn(0) = 0 in the sine-integral
        reduction).
    """
    x1, x2 = int(x1), int(x2)
    u1, u2 = float(u1), float(u2)
    d = x2 - x1
    phi1 = 0.5 * math.pi * x1
    phi2 = 0.5 * math.pi * x2
    # exact values of cos/sin of the phases avoid pi/2 rounding noise
    if d >= 0:
        m = 40 + d // 2 + int(math.ceil(abs(u1 + u2)))
        t, w = _gl01(m)
        integrand = t**d * _cos_shift(t * u1, x1) * _cos_shift(t * u2, x2)
        return float(2.0 / math.pi * np.dot(w, integrand))
    if d == -1:
        s = u1 + u2
        r = u2 - u1
        sign = -1.0 if x1 % 2 else 1.0
        tail_s = 0.5 * math.pi * np.sign(s) - sine_integral(s)
        tail_r = 0.5 * math.pi * np.sign(r) - sine_integral(r)
        return float(-(sign * tail_s + tail_r) / math.pi)
    mm = -d
    total = _tail_cos(mm, u1 + u2, phi1 + phi2) + _tail_cos(mm, u1 - u2, phi1 - phi2)
    return float(-(2.0 / math.pi) * 0.5 * total)


def _cos_shift(arg, x: int):
    """cos(arg + pi x / 2) using exact quarter-turn identities."""
    r = x % 4
    if r == 0:
        return np.cos(arg)
    if r == 1:
        return -np.sin(arg)
    if r == 2:
        return -np.cos(arg)
    return np.sin(arg)


def k_edge_diagonal(x: int, u1: float, u2: float) -> float:
    """Closed form of K_edge on one line.

    ``sin(u1-u2)/(pi (u1-u2)) + (-1)^x sin(u1+u2)/(pi (u1+u2))``, with
    ``sin(0)/0 = 1``.
    """
    sign = -1.0 if int(x) % 2 else 1.0
    return float((np.sinc((u1 - u2) / math.pi) + sign * np.sinc((u1 + u2) / math.pi)) / math.pi)


def k_edge_diagonal_array(x: int, u1, u2) -> np.ndarray:
    """Vectorized :func:`k_edge_diagonal` (broadcasts ``u1`` against ``u2``)."""
    sign = -1.0 if int(x) % 2 else 1.0
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    return (np.sinc((u1 - u2) / math.pi) + sign * np.sinc((u1 + u2) / math.pi)) / math.pi


def k_edge_matrix(points: Sequence[tuple[int, float]]) -> np.ndarray:
    """Matrix [K_edge(p_i; p_j)] for a list of points ``(x, u)``."""
    k = len(points)
    out = np.empty((k, k))
    for i, (xi, ui) in enumerate(points):
        for j, (xj, uj) in enumerate(points):
            out[i, j] = k_edge(xi, ui, xj, uj)
    return out


def expected_count(x: int, a: float, b: float) -> float:
    """Mean number of edge-process points on line ``x`` with time in ``[a, b]``.

    ``(b - a)/pi + ((-1)^x / (2 pi)) (Si(2b) - Si(2a))``.

    Raises:
        DomainError: unless ``0 <= a <= b``.
    """
    if not 0 <= a <= b:
        raise DomainError(f"expected_count needs 0 <= a <= b, got a={a}, b={b}")
    sign = -1.0 if int(x) % 2 else 1.0
    return float((b - a) / math.pi + sign / (2 * math.pi) * (sine_integral(2 * b) - sine_integral(2 * a)))


# ---------------------------------------------------------------- G_lambda


def _check_n(shape: YoungDiagram, n: int) -> tuple[int, ...]:
    if n < shape.length:
        raise DomainError(f"n={n} must be at least the number of rows {shape.length}")
    return tuple(shape.rows) + (0,) * (n - shape.length)


def log_g_lambda(shape: YoungDiagram, n: int, u) -> np.ndarray:
    """log G_lambda(u) (any branch; only its exponential is meaningful).

    Vectorized over complex ``u``; no pole checks.
    """
    lam = _check_n(shape, n)
    u = np.asarray(u, dtype=complex)
    out = special.loggamma(u + 1 + n)
    for i, li in enumerate(lam, start=1):
        out = out - np.log(u - li + i)
    return out


def g_lambda(shape: YoungDiagram, n: int, u: complex) -> complex:
    """G_lambda(u) = Gamma(u + 1 + n) / prod_{i<=n} (u - lambda_i + i).

    Raises:
        DomainError: at a pole, i.e. ``u = lambda_i - i`` or ``u`` an integer
            ``<= -n - 1``.
    """
    lam = _check_n(shape, n)
    u = complex(u)
    if u.imag == 0 and u.real == round(u.real):
        k = int(round(u.real))
        for i, li in enumerate(lam, start=1):
            if k == li - i:
                raise DomainError(f"G_lambda has a pole at u={k} (= lambda_{i} - {i})")
        if k <= -n - 1:
            raise DomainError(f"G_lambda has a pole at u={k} (Gamma(u+1+n))")
    return complex(np.exp(log_g_lambda(shape, n, u)))


def g_lambda_product(shape: YoungDiagram, u: complex) -> complex:
    """The product form Gamma(u+1) prod_{i>=1} (u+i)/(u-lambda_i+i); the product stops at ell."""
    val = complex(special.gamma(complex(u) + 1))
    for i, li in enumerate(shape.rows, start=1):
        val *= (u + i) / (u - li + i)
    return val


# ---------------------------------------------------------------- K_lambda


@dataclass(frozen=True)
class ContourConfig:
    """Rectangular contour parameters for :func:`k_lambda`.

    Attributes:
        margin: Horizontal distance of the z-rectangle from the integers it
            encloses; must lie in [0.2, 0.8] so every derived w-rectangle
            keeps at least 0.1 from integers and from the reflected z-contour.
        height: Imaginary half-height of the z-rectangle (w-rectangles use half).
        nodes_per_unit: Gauss-Legendre nodes per unit edge length.
    """

    margin: float = 0.4
    height: float = 1.0
    nodes_per_unit: int = 64

    def __post_init__(self):
        if not 0.2 <= self.margin <= 0.8:
            raise ContourError(f"margin must lie in [0.2, 0.8], got {self.margin}")
        if not self.height >= 0.2:
            raise ContourError(f"height must be at least 0.2, got {self.height}")
        if self.nodes_per_unit < 4:
            raise ContourError("nodes_per_unit must be at least 4")

    def doubled(self) -> "ContourConfig":
        return ContourConfig(self.margin, self.height, 2 * self.nodes_per_unit)


@dataclass(frozen=True)
class LambdaKernelQuery:
    """Arguments of K_lambda(x1, t1; x2, t2) for shape ``shape`` and ``n >= ell``."""

    shape: YoungDiagram
    n: int
    x1: int
    t1: float
    x2: int
    t2: float


@dataclass(frozen=True)
class KernelResult:
    """Value plus diagnostics returned by :func:`k_lambda_detailed`."""

    value: float
    imag_residual: float
    nodes: int
    method: str
    min_separation: float


def _rectangle(lo: float, hi: float, h: float, per_unit: int) -> tuple[np.ndarray, np.ndarray]:
    """Counter-clockwise rectangle [lo, hi] x [-h, h]: nodes and complex weights dz."""
    corners = [complex(lo, -h), complex(hi, -h), complex(hi, h), complex(lo, h), complex(lo, -h)]
    zs, ws = [], []
    for a, b in zip(corners, corners[1:]):
        m = max(8, int(math.ceil(per_unit * abs(b - a))))
        x, w = _gauss_legendre(m)
        zs.append(0.5 * (a + b) + 0.5 * (b - a) * x)
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(zs), np.concatenate(ws)


def _runs(values: list[int], inside: set[int]) -> list[tuple[int, int, bool]]:
    runs: list[tuple[int, int, bool]] = []
    for v in values:
        flag = v in inside
        if runs and runs[-1][2] == flag and runs[-1][1] == v - 1:
            runs[-1] = (runs[-1][0], v, flag)
        else:
            runs.append((v, v, flag))
    return runs


def _contours(kz: int, kw: int, c: int, cfg: ContourConfig):
    """Nodes and weights for C_z and the (possibly split) C_w.

    The w-contour never encloses a point of ``-C_z - c``: w-integers that
    coincide with reflected z-integers get thin rectangles nested inside the
    reflected z-rectangle, the others get rectangles disjoint from it.
    """
    m, h, per = cfg.margin, cfg.height, cfg.nodes_per_unit
    z, dz = _rectangle(-m, kz - 1 + m, h, per)
    d = -c
    reflected = set(range(d - kz + 1, d + 1))
    ws, dws = [], []
    for p, q, inside in _runs(list(range(kw)), reflected):
        mw = m / 2 if inside else (1 - m) / 2
        wn, wd = _rectangle(p - mw, q + mw, h / 2, per)
        ws.append(wn)
        dws.append(wd)
    return z, dz, np.concatenate(ws), np.concatenate(dws)


def k_lambda_detailed(
    shape: YoungDiagram,
    n: int,
    x1: int,
    t1: float,
    x2: int,
    t2: float,
    config: ContourConfig | None = None,
) -> KernelResult:
    """K_lambda with diagnostics; see :func:`k_lambda`."""
    cfg = config or ContourConfig()
    lam = _check_n(shape, n)
    for t in (t1, t2):
        if not 0 < t <= 1:
            raise DomainError(f"times must lie in (0, 1], got {t}")
    if t1 == 1 or t2 == 1:
        val = k_lambda_residues(shape, n, x1, t1, x2, t2)
        return KernelResult(val, 0.0, 0, "residues", math.inf)
    ind = _indicator(x1, t1, x2, t2)
    kz = (lam[0] if lam else 0) - x2
    kw = n + x1
    if kz <= 0 or kw <= 0:
        return KernelResult(ind, 0.0, 0, "contour", math.inf)
    c = x2 - x1 + 1
    z, dz, w, dw = _contours(kz, kw, c, cfg)
    denom = w[:, None] + z[None, :] + c
    sep = float(np.min(np.abs(denom)))
    if sep < 0.1:
        raise ContourError(f"contours come within {sep:.3g} of the pole w + z + c = 0")
    log_a = special.loggamma(-w) - log_g_lambda(shape, n, x1 - 1 - w) + w * math.log1p(-t1)
    log_b = log_g_lambda(shape, n, z + x2) - special.loggamma(z + 1) + z * math.log1p(-t2)
    a = np.exp(log_a) * dw
    b = np.exp(log_b) * dz
    total = np.einsum("i,ij,j->", a, 1.0 / denom, b)
    total = total / (2j * math.pi) ** 2
    scale = max(1.0, abs(total.real))
    if abs(total.imag) > 1e-6 * scale:
        raise NumericalError(f"imaginary residual {total.imag:.3g} exceeds tolerance")
    return KernelResult(ind + float(total.real), float(abs(total.imag)), int(z.size * w.size), "contour", sep)


def k_lambda(
    shape: YoungDiagram,
    n: int,
    x1: int,
    t1: float,
    x2: int,
    t2: float,
    config: ContourConfig | None = None,
) -> float:
    """Correlation kernel of the jumps of a uniform Poissonized tableau.

    Args:
        shape: Diagram lambda.
        n: Any integer ``>= ell(lambda)``; the kernel does not depend on it.
        x1, t1, x2, t2: Points of Z x (0, 1].
        config: Contour parameters.

    Returns:
        K_lambda(x1, t1; x2, t2).  Times equal to 1 are handled as limits by
        the residue sum.

    Raises:
        ContourError: if the contours come closer than 0.1 to the cross pole.
        NumericalError: if the imaginary part does not cancel.
    """
    return k_lambda_detailed(shape, n, x1, t1, x2, t2, config).value


def _indicator(x1: int, t1: float, x2: int, t2: float) -> float:
    if t2 > t1 and x1 > x2:
        k = x1 - x2 - 1
        return (t1 - t2) ** k / math.factorial(k)
    return 0.0


def k_lambda_residues(shape: YoungDiagram, n: int, x1: int, t1: float, x2: int, t2: float) -> float:
    """K_lambda by exact residue summation.

    Every pole is simple: the w-poles are the integers ``0 <= k < n + x1``
    not cancelled by zeros of 1/G; the z-poles are ``lambda_i - i - x2`` in
    ``[0, lambda_1 - x2)`` together with the poles of
    ``Gamma(z + x2 + 1 + n) / Gamma(z + 1)`` at ``0 <= z <= -x2 - n - 1``;
    and the cross pole ``z = -k - c`` counts exactly when it falls inside the
    z-contour.  Rational parts are computed exactly.
    """
    lam = _check_n(shape, n)
    s1, s2 = 1.0 - t1, 1.0 - t2
    c = x2 - x1 + 1
    kz = (lam[0] if lam else 0) - x2
    kw = n + x1
    total = 0.0
    if kz > 0 and kw > 0:
        zpoles = [li - i - x2 for i, li in enumerate(lam, start=1) if 0 <= li - i - x2 < kz]

        def b_reg(z: int) -> Fraction:
            # G(z + x2) / Gamma(z + 1) at an integer z that is not a pole
            num = math.factorial(z + x2 + n)
            den = math.factorial(z)
            prod = Fraction(1)
            for i, li in enumerate(lam, start=1):
                prod *= z + x2 - li + i
            return Fraction(num, den) / prod

        def b_res(zi: int) -> Fraction:
            num = math.factorial(zi + x2 + n)
            prod = Fraction(1)
            for l, ll in enumerate(lam, start=1):
                v = zi + x2 - ll + l
                if v != 0:
                    prod *= v
            return Fraction(num, math.factorial(zi)) / prod

        def b_res_gamma(zi: int) -> Fraction:
            # pole of Gamma(z + x2 + 1 + n) at a non-positive argument -j
            j = -(zi + x2 + 1 + n)
            prod = Fraction(1)
            for l, ll in enumerate(lam, start=1):
                prod *= zi + x2 - ll + l
            return Fraction((-1) ** j, math.factorial(j) * math.factorial(zi)) / prod

        zres = [(zi, b_res(zi)) for zi in zpoles]
        zres += [(zi, b_res_gamma(zi)) for zi in range(min(kz, max(0, -x2 - n)))]
        for k in range(kw):
            q = Fraction(1)
            for i, li in enumerate(lam, start=1):
                q *= x1 - 1 - k - li + i
            if q == 0:
                continue
            a_k = Fraction(-((-1) ** k), math.factorial(k)) * q / math.factorial(x1 - k + n - 1)
            inner = 0.0
            for zi, bz in zres:
                inner += float(bz / (k + zi + c)) * s2**zi
            z0 = -k - c
            if 0 <= z0 < kz:
                inner += float(b_reg(z0)) * s2**z0
            total += float(a_k) * s1**k * inner
    return _indicator(x1, t1, x2, t2) + total
