import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import rho1, rho2
from sortnet import ContourError, DomainError, YoungDiagram
from sortnet.kernels import (
    ContourConfig,
    expected_count,
    expint_complex,
    g_lambda,
    g_lambda_product,
    k_edge,
    k_edge_diagonal,
    k_edge_diagonal_array,
    k_edge_matrix,
    k_lambda,
    k_lambda_detailed,
    k_lambda_residues,
    sine_integral,
)

TWO_PI = 2 / math.pi
UGRID = (0.0, 0.3, 1.0, 2.5, 7.0)


def _mp_edge(x1, u1, x2, u2):
    """Reference K_edge with mpmath quadrature."""
    mpmath.mp.dps = 30
    d = x2 - x1

    def f(t):
        return t**d * mpmath.cos(t * u1 + mpmath.pi * x1 / 2) * mpmath.cos(t * u2 + mpmath.pi * x2 / 2)

    if d >= 0:
        return float(2 / mpmath.pi * mpmath.quad(f, [0, 1]))
    w = max(abs(u1 + u2), abs(u1 - u2), 1e-3)
    return float(-2 / mpmath.pi * mpmath.quadosc(f, [1, mpmath.inf], omega=w))


# ---------------------------------------------------------------- K_edge


@pytest.mark.parametrize("x", [-3, 0, 1, 4])
def test_diagonal_matches_general_evaluator(x):
    for u1 in UGRID:
        for u2 in UGRID:
            assert abs(k_edge(x, u1, x, u2) - k_edge_diagonal(x, u1, u2)) <= 1e-9


def test_diagonal_examples():
    assert math.isclose(k_edge_diagonal(0, 0.0, 0.0), TWO_PI, rel_tol=1e-15)
    assert math.isclose(k_edge_diagonal(1, math.pi / 2, math.pi / 2), 1 / math.pi, rel_tol=1e-14)


@given(st.integers(-5, 5), st.floats(0, 10), st.floats(0, 10))
def test_diagonal_symmetry(x, u1, u2):
    assert k_edge_diagonal(x, u1, u2) == k_edge_diagonal(x, u2, u1)
    assert k_edge_diagonal_array(x, [u1], [u2])[0] == pytest.approx(k_edge_diagonal(x, u1, u2), abs=1e-15)


def test_tlimit_value_for_x0_x2():
    assert math.isclose(k_edge(0, 0.0, 2, 0.0), -2 / (3 * math.pi), rel_tol=1e-12)


@given(st.integers(-4, 4), st.integers(-4, 4), st.floats(0, 8), st.floats(0, 8), st.integers(-3, 3))
def test_translation_invariance(x1, x2, u1, u2, h):
    assert abs(k_edge(x1 + 2 * h, u1, x2 + 2 * h, u2) - k_edge(x1, u1, x2, u2)) <= 1e-9


@given(st.integers(-4, 4), st.integers(-4, 4), st.floats(0, 8), st.floats(0, 8))
def test_reflection(x1, x2, u1, u2):
    if x1 - x2 == 1 and u1 == u2:
        return  # convention-dependent null set
    lhs = k_edge(-x1, u1, -x2, u2)
    rhs = (-1) ** (x1 - x2) * k_edge(x2, u2, x1, u1)
    assert abs(lhs - rhs) <= 1e-9


@pytest.mark.parametrize(
    "x1,u1,x2,u2",
    [(0, 0.5, 0, 1.5), (0, 0.7, 3, 0.2), (1, 2.0, 0, 0.4), (2, 0.3, 0, 1.1), (5, 1.3, 1, 0.6), (3, 4.0, 0, 0.5)],
)
def test_edge_kernel_against_mpmath(x1, u1, x2, u2):
    assert abs(k_edge(x1, u1, x2, u2) - _mp_edge(x1, u1, x2, u2)) <= 1e-10


def test_null_set_convention():
    # On u1 = u2, x2 = x1 - 1 the sine-integral form with sgn(0) = 0 is used.
    for x1 in (0, 1, 2):
        u = 0.8
        expected = -((-1) ** x1 * (math.pi / 2 - sine_integral(2 * u))) / math.pi
        assert math.isclose(k_edge(x1, u, x1 - 1, u), expected, abs_tol=1e-14)


def _ode_residual(x1, u1, x2, u2, t, h=1e-4):
    d = x2 - x1

    def g(s):
        return s ** (d + 1) * k_edge(x1, s * u1, x2, s * u2)

    deriv = (-g(t + 2 * h) + 8 * g(t + h) - 8 * g(t - h) + g(t - 2 * h)) / (12 * h)
    rhs = TWO_PI * t**d * math.cos(t * u1 + math.pi * x1 / 2) * math.cos(t * u2 + math.pi * x2 / 2)
    return abs(deriv - rhs)


@pytest.mark.parametrize("x1,x2", [(0, 0), (0, 2), (1, 3), (2, 0), (3, 0), (4, 1)])
def test_scaling_ode(x1, x2):
    for t in np.linspace(0.2, 2.0, 7):
        assert _ode_residual(x1, 0.9, x2, 0.4, t) <= 1e-5


@pytest.mark.parametrize("x1,x2", [(0, 0), (0, 2), (1, 1), (2, 5), (1, 4), (4, 0), (5, 1), (3, 0)])
def test_small_u_limit(x1, x2):
    """Lemma-type limit as u -> 0 (taken at u = 1e-9, where O(u) terms are negligible)."""
    limit = TWO_PI * math.cos(math.pi * x1 / 2) * math.cos(math.pi * x2 / 2) / (x2 - x1 + 1)
    assert abs(k_edge(x1, 1e-9, x2, 1e-9) - limit) <= 1e-6


def test_small_u_has_linear_term_for_gap_two():
    """Documented behaviour: K(2,u;0,u) = 2/pi - u + O(u^2), so u = 1e-5 misses 1e-6."""
    u = 1e-5
    assert abs(k_edge(2, u, 0, u) - (TWO_PI - u)) <= 1e-8


@pytest.mark.parametrize("x1,x2", [(0, 1), (-1, 0), (0, 3), (2, 5), (3, 0), (5, 0), (4, -1)])
def test_small_u_linear_term_for_opposite_parity(x1, x2):
    """One cosine factor is -+sin(tu), so the limit 0 is approached linearly."""
    d = x2 - x1
    slope = TWO_PI / (d + 2) if d >= 0 else TWO_PI / (-d - 2)
    u = 1e-5
    assert abs(abs(k_edge(x1, u, x2, u)) - slope * u) <= 1e-9


def test_decay_bound():
    worst = 0.0
    for dx in range(-10, 11):
        for u1 in np.linspace(0, 20, 11):
            for u2 in np.linspace(0, 20, 11):
                v = abs(k_edge(0, u1, dx, u2)) * (max(abs(dx), abs(u1 - u2)) + 1)
                worst = max(worst, v)
    assert worst <= 5.0


def test_matrix_is_built_pointwise():
    pts = [(0, 0.5), (1, 1.2), (-1, 0.1)]
    m = k_edge_matrix(pts)
    assert m[1, 2] == k_edge(1, 1.2, -1, 0.1)


def test_expected_count_examples():
    assert expected_count(0, 2.0, 2.0) == 0.0
    val = expected_count(0, 0.0, math.pi)
    assert math.isclose(val, 1 + float(mpmath.si(2 * mpmath.pi)) / (2 * math.pi), rel_tol=1e-13)
    assert abs(val - 1.2257) < 1e-4
    assert abs(expected_count(0, 0.0, 100.0) / 100 - 1 / math.pi) <= 0.01
    with pytest.raises(DomainError):
        expected_count(0, 2.0, 1.0)


@pytest.mark.parametrize("x", [0, 1])
def test_expected_count_integrates_the_diagonal(x):
    from scipy.integrate import quad

    val, _ = quad(lambda u: k_edge_diagonal(x, u, u), 0.5, 4.0)
    assert abs(expected_count(x, 0.5, 4.0) - val) <= 1e-10


@pytest.mark.parametrize("m", [1, 2, 3, 5, 9])
@pytest.mark.parametrize("z", [0.3j, 2.5j, 17j, 0.4 + 0.7j, 3 - 8j])
def test_expint_against_mpmath(m, z):
    ref = complex(mpmath.expint(m, z))
    assert abs(expint_complex(m, z) - ref) <= 1e-13 * max(1.0, abs(ref))


# ---------------------------------------------------------------- G_lambda


def test_g_lambda_example():
    assert abs(g_lambda(YoungDiagram((1,)), 1, 1.0) - 2.0) <= 1e-14


@given(st.sampled_from([(1,), (2, 1), (3, 1), (3, 2, 1)]), st.integers(0, 3), st.complex_numbers(max_magnitude=4))
def test_g_lambda_forms_agree(rows, extra, u):
    shape = YoungDiagram(rows)
    if abs(u.imag) < 0.05:
        u += 0.3j
    n = len(rows) + extra
    a = g_lambda(shape, n, u)
    b = g_lambda_product(shape, u)
    assert abs(a - b) <= 1e-12 * abs(b)


def test_g_lambda_poles():
    shape = YoungDiagram((3, 1))
    for i, li in enumerate((3, 1, 0), start=1):
        with pytest.raises(DomainError, match="pole"):
            g_lambda(shape, 3, li - i)


# ---------------------------------------------------------------- K_lambda


@pytest.mark.parametrize("t", [0.1 * k for k in range(1, 10)])
def test_single_cell_density_is_one(t):
    sh = YoungDiagram((1,))
    assert abs(k_lambda(sh, 1, 0, t, 0, t) - 1.0) <= 1e-8
    assert abs(k_lambda_residues(sh, 1, 0, t, 0, t) - 1.0) <= 1e-12


def test_single_cell_no_jumps_elsewhere():
    sh = YoungDiagram((1,))
    assert k_lambda(sh, 1, 1, 0.5, 1, 0.5) == 0.0


@pytest.mark.parametrize("rows", [(1,), (2, 1), (3, 1), (3, 2, 1)])
def test_one_point_function_exact(rows):
    sh = YoungDiagram(rows)
    for x in range(-3, 4):
        for t in (0.2, 0.5, 0.8):
            e = rho1(rows, x, t)
            assert abs(k_lambda(sh, len(rows), x, t, x, t) - e) <= 1e-9
            assert abs(k_lambda(sh, len(rows) + 2, x, t, x, t) - e) <= 1e-9


@pytest.mark.parametrize("rows", [(2, 1), (3, 2, 1)])
def test_two_point_function_exact(rows):
    sh = YoungDiagram(rows)
    n = len(rows)
    for x1 in range(-2, 3):
        for x2 in range(-2, 3):
            for t1, t2 in [(0.3, 0.6), (0.6, 0.3), (0.45, 0.7)]:
                k = np.array(
                    [
                        [k_lambda(sh, n, x1, t1, x1, t1), k_lambda(sh, n, x1, t1, x2, t2)],
                        [k_lambda(sh, n, x2, t2, x1, t1), k_lambda(sh, n, x2, t2, x2, t2)],
                    ]
                )
                assert abs(np.linalg.det(k) - rho2(rows, x1, t1, x2, t2)) <= 1e-9


@pytest.mark.parametrize("rows", [(2, 1), (3, 2, 1), (4, 2, 1)])
def test_contour_matches_residues(rows):
    sh = YoungDiagram(rows)
    for n in (len(rows), len(rows) + 3):
        for x1 in range(-4, 4):
            for x2 in range(-4, 4):
                a = k_lambda(sh, n, x1, 0.35, x2, 0.55)
                b = k_lambda_residues(sh, n, x1, 0.35, x2, 0.55)
                assert abs(a - b) <= 1e-9 * max(1.0, abs(b))


@pytest.mark.parametrize("rows", [(2, 1), (3, 2, 1)])
def test_node_doubling_is_stable(rows):
    sh = YoungDiagram(rows)
    cfg = ContourConfig()
    for x1, x2 in [(0, 0), (0, 1), (1, -1), (-2, 2)]:
        a = k_lambda(sh, len(rows), x1, 0.3, x2, 0.8, cfg)
        b = k_lambda(sh, len(rows), x1, 0.3, x2, 0.8, cfg.doubled())
        assert abs(a - b) <= 1e-8


def test_times_at_one():
    sh = YoungDiagram((2, 1))
    r = k_lambda_detailed(sh, 2, 0, 1.0, 0, 1.0)
    assert r.method == "residues"
    assert abs(r.value - k_lambda(sh, 2, 0, 1 - 1e-9, 0, 1 - 1e-9)) <= 1e-6


def test_diagnostics():
    r = k_lambda_detailed(YoungDiagram((3, 2, 1)), 3, 0, 0.4, 1, 0.6)
    assert r.imag_residual <= 1e-10
    assert r.min_separation >= 0.1
    assert r.nodes > 0


def test_contour_config_validation():
    with pytest.raises(ContourError):
        ContourConfig(margin=0.05)
    with pytest.raises(DomainError):
        k_lambda(YoungDiagram((2, 1)), 1, 0, 0.5, 0, 0.5)
    with pytest.raises(DomainError):
        k_lambda(YoungDiagram((2, 1)), 2, 0, 0.0, 0, 0.5)
