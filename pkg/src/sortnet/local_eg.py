"""The local (min-based) Edelman-Greene algorithm.

On a finite cluster of the infinite staircase the smallest entry sits on the
bottom level at some ``(2x, 0)``.  It leaves as the swap ``(x, t)``; the hole
is filled by sliding up along the smaller of the two up-neighbours until a
peak is reached, and the peak cell is dropped.  Iterating empties the
cluster.  The same procedure written for jump points is
:func:`local_eg_on_points`.
"""
from __future__ import annotations

import bisect
import math
from typing import Mapping

import numpy as np

from .errors import AdmissibilityError, TableauError, WindowError
from .jumps import InfiniteTableau, PointConfiguration, WindowSpec, center_swap, embed_staircase, rescale_time
from .tableau import StandardTableau

Cluster = dict  # (x, y) -> value; a finite downward closed connected sub-tableau


def _neighbours(cell):
    x, y = cell
    return ((x - 1, y + 1), (x + 1, y + 1), (x - 1, y - 1), (x + 1, y - 1))


def graded_clusters(t: InfiniteTableau | Mapping, t_max: float) -> list[Cluster]:
    """Connected components of the cells with entry at most ``t_max``.

    Args:
        t: Tableau (or a plain cell-to-value mapping).
        t_max: Level of the cut; ``math.inf`` keeps every finite entry.

    Returns:
        Clusters as dicts, ordered by their smallest entry.

    Raises:
        AdmissibilityError: if a component is not downward closed or has
            repeated entries.
    """
    values = t.values if isinstance(t, InfiniteTableau) else dict(t)
    keep = {c: v for c, v in values.items() if v <= t_max}
    seen: set = set()
    clusters = []
    for start in keep:
        if start in seen:
            continue
        comp = {}
        stack = [start]
        seen.add(start)
        while stack:
            c = stack.pop()
            comp[c] = keep[c]
            for nb in _neighbours(c):
                if nb in keep and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        for (x, y) in comp:
            if y > 0 and ((x - 1, y - 1) not in comp or (x + 1, y - 1) not in comp):
                raise AdmissibilityError(f"cluster is not downward closed at {(x, y)}")
        if len(set(comp.values())) != len(comp):
            raise AdmissibilityError("cluster entries must be distinct")
        clusters.append(comp)
    clusters.sort(key=lambda c: min(c.values()))
    return clusters


def eg_min_step(c: Cluster) -> tuple[int, float, Cluster]:
    """One min-based Edelman-Greene step on a finite cluster.

    Args:
        c: Cluster as a cell-to-value dict (not modified).

    Returns:
        ``(x, t, c_next)``: the swap position (half the bottom column of the
        minimum), its time, and the cluster with the sliding path shifted down
        and its peak removed (possibly empty).

    Raises:
        TableauError: on an empty cluster or a minimum off the bottom level.
    """
    if not c:
        raise TableauError("eg_min_step needs a nonempty cluster")
    cur = min(c, key=c.__getitem__)
    x0, y0 = cur
    if y0 != 0:
        raise AdmissibilityError(f"minimum at {cur} is not on the bottom level")
    t = c[cur]
    out = dict(c)
    while True:
        x, y = cur
        ups = [nb for nb in ((x - 1, y + 1), (x + 1, y + 1)) if nb in c]
        if not ups:
            break
        nxt = min(ups, key=c.__getitem__)
        out[cur] = c[nxt]
        cur = nxt
    del out[cur]
    return x0 // 2, t, out


def _cluster_swaps(c: Cluster) -> list[tuple[int, float]]:
    out = []
    while c:
        x, t, c = eg_min_step(c)
        out.append((x, t))
    return out


def swaps_of_tableau(t: InfiniteTableau, t_max: float = math.inf) -> PointConfiguration:
    """Swaps of the sub-tableau of entries at most ``t_max``.

    Each cluster is run to exhaustion independently; different clusters exit
    through disjoint rows so the union is simple.
    """
    pts = []
    for c in graded_clusters(t, t_max):
        pts.extend(_cluster_swaps(c))
    return PointConfiguration.from_points(pts, kind="swap")


def swap_list_of_tableau(t: InfiniteTableau, t_max: float = math.inf) -> list[tuple[int, float]]:
    """Like :func:`swaps_of_tableau` but as a list sorted by time, then x."""
    pts = []
    for c in graded_clusters(t, t_max):
        pts.extend(_cluster_swaps(c))
    pts.sort(key=lambda p: (p[1], p[0]))
    return pts


def find_empty_columns(
    x: PointConfiguration, a: int, b: int, t_max: float, search: int = 50
) -> tuple[int, int]:
    """Nearest lines left of ``2a`` and right of ``2b`` with no point in ``[0, t_max]``.

    Raises:
        WindowError: if none is found within ``search`` columns on a side.
    """
    occupied = set(x.xs[x.us <= t_max].tolist())
    lo = next((c for c in range(2 * a - 1, 2 * a - 1 - search, -1) if c not in occupied), None)
    hi = next((c for c in range(2 * b + 1, 2 * b + 1 + search) if c not in occupied), None)
    if lo is None or hi is None:
        raise WindowError(f"no empty bounding column within {search} of [{2 * a}, {2 * b}]")
    return lo, hi


def local_eg_on_points(
    x: PointConfiguration,
    a: int,
    b: int,
    t_max: float,
    bounds: tuple[int, int] | None = None,
    search: int = 50,
) -> PointConfiguration:
    """Local Edelman-Greene procedure on jump points.

    Restricts ``x`` to the strip between two empty lines around ``[2a, 2b]``
    and to times in ``[0, t_max]``, then repeats: take the lowest point
    ``(x, u)`` and emit ``(x/2, u)``; follow the sliding path, where each next
    point is the lowest point above the current one on the two neighbouring
    lines, stopping when the own line has a point first or no point is left;
    replace the k path points by the k-1 points ``(x_i, u_{i+1})``.

    Args:
        x: Jump configuration.
        a, b: Swap window of interest; the result covers the whole strip.
        t_max: Time horizon.
        bounds: Explicit empty lines ``(a_hat, b_hat)``; detected if omitted.
        search: How far to look for empty lines.

    Returns:
        Swap configuration for every cluster inside the strip.

    Raises:
        WindowError: if the given or detected bounding lines are not empty.
    """
    if bounds is None:
        lo, hi = find_empty_columns(x, a, b, t_max, search)
    else:
        lo, hi = bounds
        occupied = set(x.xs[x.us <= t_max].tolist())
        if lo in occupied or hi in occupied or not lo < 2 * a or not hi > 2 * b:
            raise WindowError(f"bounding lines {bounds} are not empty or do not enclose the window")
    sub = x.restrict(lo + 1, hi - 1, t_max)
    lines: dict[int, list[float]] = {}
    for xx, uu in sub:
        lines.setdefault(xx, []).append(uu)
    out = []
    while lines:
        x0 = min(lines, key=lambda k: lines[k][0])
        u0 = lines[x0][0]
        if x0 % 2:
            raise TableauError(f"lowest point sits on odd line {x0}; configuration does not interlace")
        path = [(x0, u0)]
        while True:
            xc, uc = path[-1]
            best = None
            for dx in (-1, 0, 1):
                ln = lines.get(xc + dx)
                if not ln:
                    continue
                k = bisect.bisect_right(ln, uc)
                if k < len(ln) and (best is None or ln[k] < best[1]):
                    best = (xc + dx, ln[k])
            if best is None or best[0] == xc:
                break
            path.append(best)
        out.append((x0 // 2, u0))
        for xx, uu in path:
            ln = lines[xx]
            del ln[bisect.bisect_left(ln, uu)]
        for (xx, _), (_, unext) in zip(path, path[1:]):
            bisect.insort(lines[xx], unext)
        for xx in [k for k, v in lines.items() if not v]:
            del lines[xx]
    return PointConfiguration.from_points(out, kind="swap")


# ---------------------------------------------------------------- finite-n identity


def staircase_network_swaps(swaps, n: int, alpha: float) -> PointConfiguration:
    """The configuration S_{alpha,n} of a network.

    Swap ``s_i`` becomes the point ``(s_i - floor(n(1+alpha)/2), sqrt(1-alpha^2) 2i/n)``.

    Args:
        swaps: Swap sequence (s_1, ..., s_N).
        n: Number of wires.
        alpha: Macroscopic column in (-1, 1).
    """
    w = WindowSpec.make(alpha, n)
    s = np.asarray(swaps, dtype=np.int64)
    i = np.arange(1, s.size + 1, dtype=float)
    return PointConfiguration(s - center_swap(n, alpha), w.beta * (2.0 * i / n), kind="swap")


def staircase_local_swaps(t: StandardTableau, alpha: float) -> PointConfiguration:
    """Local Edelman-Greene swaps of the rescaled staircase tableau, in network time.

    The tableau with entries ``k/(N+1)`` is embedded into Delta_inf and
    emptied by :func:`swaps_of_tableau`.  A swap emitted at the value of
    entry k is the (N+1-k)-th step of the classical algorithm, so its time is
    reported as ``sqrt(1-alpha^2) 2(N+1-k)/n``, the time it carries in
    :func:`staircase_network_swaps`.

    Raises:
        TableauError: if ``t`` is not of staircase shape.
    """
    n = t.shape.staircase_order()
    if n is None:
        raise TableauError(f"expected a staircase shape, got {t.shape.rows}")
    w = WindowSpec.make(alpha, n)
    big = t.shape.size
    factor = 1.0 / (big + 1)
    rank = {rescale_time(k * factor, n, w.beta): k for k in range(1, big + 1)}
    pts = []
    for x, u in swap_list_of_tableau(embed_staircase(t.scaled(factor), w)):
        step = big + 1 - rank[u]
        pts.append((x, w.beta * (2.0 * step / n)))
    return PointConfiguration.from_points(pts, kind="swap")
