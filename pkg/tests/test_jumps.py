import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from strategies import finite_infinite_tableaux, partitions
from sortnet import (
    DomainError,
    PoissonizedTableau,
    TableauError,
    YoungDiagram,
    make_rng,
    poissonize,
    sample_syt_uniform,
)
from sortnet.jumps import (
    InfiniteTableau,
    PointConfiguration,
    WindowSpec,
    center_swap,
    embed_staircase,
    jumps_to_tableau,
    pyt_to_jumps,
    rescale_window,
    staircase_cell,
    staircase_edge_jumps,
    tableau_to_jumps,
)


def _pyt(rows):
    return PoissonizedTableau(YoungDiagram(tuple(len(r) for r in rows)), rows)


def test_single_cell_jump():
    assert pyt_to_jumps(_pyt(((0.4,),))).as_set() == {(0, 0.4)}


def test_single_row_jumps():
    assert pyt_to_jumps(_pyt(((0.2, 0.6),))).as_set() == {(0, 0.2), (1, 0.6)}


def test_empty_shape_jumps():
    assert len(pyt_to_jumps(PoissonizedTableau(YoungDiagram(()), ()))) == 0


def test_tied_entries_rejected():
    with pytest.raises(TableauError):
        pyt_to_jumps(_pyt(((0.5, 0.5),)))


def test_time_cutoff_keeps_late_entries():
    p = _pyt(((0.1, 0.5, 0.9), (0.3,)))
    assert pyt_to_jumps(p, time_cutoff=0.4).as_set() == {(1, 0.5), (2, 0.9)}


@given(partitions(max_size=28, max_rows=7), st.integers(0, 2**32 - 1))
def test_paths_do_not_intersect(rows, seed):
    """Row-by-row particle positions stay strictly ordered at all times."""
    rng = make_rng(seed)
    p = poissonize(sample_syt_uniform(YoungDiagram(rows), rng), rng)
    arr = p.to_array()
    events = sorted((arr[i, j], i) for i, r in enumerate(rows) for j in range(r))
    # Path i sits at lambda_i - i + 1/2 at time 1 and loses one unit at each
    # of its entries when running time backwards; the crossed integer equals
    # the jump's x, which must be the cell's diagonal j - i.
    pos = [r - i + 0.5 for i, r in enumerate(rows, start=1)]
    jumps = pyt_to_jumps(p)
    seen = []
    for t, i in reversed(events):
        pos[i] -= 1
        seen.append((int(pos[i] + 0.5), t))
        assert all(pos[k] > pos[k + 1] for k in range(len(pos) - 1))
    assert set(seen) == jumps.as_set()


def test_kth_jump_single_cell_tableau():
    t = InfiniteTableau({(0, 0): 0.3})
    assert tableau_to_jumps(t).as_set() == {(0, 0.3)}
    assert jumps_to_tableau(tableau_to_jumps(t)) == t


def test_tableau_constraint_enforced():
    with pytest.raises(TableauError):
        InfiniteTableau({(0, 1): 0.5})
    with pytest.raises(TableauError):
        InfiniteTableau({(1, 0): 0.5})
    with pytest.raises(TableauError):
        InfiniteTableau({(0, 0): 0.5, (2, 0): 0.2, (1, 1): 0.4})


@given(finite_infinite_tableaux())
def test_tableau_jump_round_trip(values):
    t = InfiniteTableau(values)
    x = tableau_to_jumps(t)
    assert x.is_simple()
    assert jumps_to_tableau(x) == t


def test_embedding_examples():
    assert staircase_cell(4, 0, 2) == (1, 1)
    assert staircase_cell(5, 2, 0) == (1, 4)
    assert staircase_cell(4, 1, 2) is None
    # A window with shift c_n - [n odd] = 0 exposes the unshifted rotation.
    w4 = WindowSpec(0.0, 4, 0, 1.0)
    w5 = WindowSpec(0.0, 5, 1, 1.0)
    t4 = sample_syt_uniform(YoungDiagram.staircase(4), 1)
    t5 = sample_syt_uniform(YoungDiagram.staircase(5), 1)
    e4 = embed_staircase(t4.scaled(1 / 7), w4)
    e5 = embed_staircase(t5.scaled(1 / 11), w5)
    assert math.isclose(e4[(0, 2)], 4 * (1 - t4[(1, 1)] / 7), rel_tol=1e-12)
    assert math.isclose(e5[(2, 0)], 5 * (1 - t5[(1, 4)] / 11), rel_tol=1e-12)


def test_largest_entry_becomes_zero():
    p = _pyt(((0.2, 0.5, 1.0), (0.3, 0.7), (0.4,)))
    e = embed_staircase(p, WindowSpec.make(0.0, 4))
    assert min(e.values.values()) == 0.0


def test_embedding_shape_mismatch():
    with pytest.raises(TableauError):
        embed_staircase(_pyt(((0.1, 0.2),)), WindowSpec.make(0.0, 4))


def test_window_spec_centre():
    w = WindowSpec.make(0.0, 10)
    assert (w.c_n, w.beta) == (0, 1.0)
    w = WindowSpec.make(0.5, 100)
    assert (w.c_n - 100) % 2 == 0
    assert abs(w.c_n - 50) <= 2
    assert center_swap(100, 0.5) == 75
    assert center_swap(10, 0.4) == 7
    for n in range(2, 60):
        for a in (-0.7, -0.3, 0.0, 0.25, 0.4, 0.9):
            w = WindowSpec.make(a, n)
            assert (w.c_n - n) % 2 == 0 and abs(w.c_n - a * n) <= 2


def test_window_spec_rejects_bad_input():
    with pytest.raises(DomainError):
        WindowSpec.make(1.0, 10)
    with pytest.raises(DomainError):
        WindowSpec(0.0, 10, 1, 1.0)


def test_rescale_window_examples():
    w = WindowSpec.make(0.0, 10)
    x = PointConfiguration.from_points([(1, 1 - 0.3 / 10)])
    out = rescale_window(x, w)
    assert out.xs.tolist() == [1]
    assert math.isclose(out.us[0], 0.3, abs_tol=1e-14)
    assert len(rescale_window(PointConfiguration.from_points([]), w)) == 0


@given(st.integers(2, 12), st.sampled_from([0.0, 0.4, -0.3]), st.integers(0, 2**32 - 1))
def test_two_routes_agree(n, alpha, seed):
    rng = make_rng(seed)
    p = poissonize(sample_syt_uniform(YoungDiagram.staircase(n), rng), rng)
    w = WindowSpec.make(alpha, n)
    assert rescale_window(pyt_to_jumps(p), w) == tableau_to_jumps(embed_staircase(p, w))


@given(st.integers(3, 30), st.integers(0, 2**32 - 1))
def test_fast_path_matches_reference(n, seed):
    rng = make_rng(seed)
    shape = YoungDiagram.staircase(n)
    t = sample_syt_uniform(shape, rng)
    u = np.sort(rng.random(shape.size))
    w = WindowSpec.make(0.0, n)
    xs, us = staircase_edge_jumps(t.to_array(), u, w, 3.0, (-2, 2))
    ref = rescale_window(pyt_to_jumps(poissonize(t, uniforms=u)), w).restrict(-2, 2, 3.0)
    assert PointConfiguration(xs, us) == ref


def test_point_configuration_serialization():
    x = PointConfiguration.from_points([(1, 0.5), (-2, 0.25), (1, 0.125)])
    assert x.xs.tolist() == [-2, 1, 1]
    assert PointConfiguration.from_csv(x.to_csv()) == x
    assert PointConfiguration.from_json(x.to_json()) == x
    assert x.line(1).tolist() == [0.125, 0.5]
