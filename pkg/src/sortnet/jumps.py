"""Jumps of Poissonized tableaux and tableaux on the infinite staircase.

Two pictures of the same object live here:

* A Poissonized tableau of shape lambda is a family of non-intersecting
  decreasing paths; path ``i`` starts at ``lambda_i - i + 1/2`` and steps down
  by one at reversed time ``1 - T(i, j)``.  The step removing cell (i, j)
  crosses the integer ``j - i``, so every cell yields the jump point
  ``(j - i, T(i, j))``.
* A tableau on Delta_inf = {(x, y): y >= 0, x = y mod 2} has jump set
  ``{(x, T(x, y))}``; conversely the k-th smallest point on line x sits in
  cell ``(x, 2k - 1 - [x even])``.

Staircase tableaux embed into Delta_inf by the rotation
``(i, j) -> (j - i - [n odd], n - i - j)`` with entries reversed, and the
window around column ``alpha * n`` is recentred by an integer ``c_n`` of the
parity of n.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, TableauError
from .tableau import PoissonizedTableau, YoungDiagram


# ---------------------------------------------------------------- points


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """Finite point set in Z x R>=0, kept sorted by (x, u).

    Attributes:
        xs: Integer first coordinates.
        us: Real second coordinates (times).
        kind: ``"jump"`` or ``"swap"``; only affects serialization.
    """

    xs: np.ndarray
    us: np.ndarray
    kind: str = "jump"

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.int64).reshape(-1)
        us = np.asarray(self.us, dtype=np.float64).reshape(-1)
        if xs.shape != us.shape:
            raise TableauError("xs and us must have equal length")
        order = np.lexsort((us, xs))
        xs, us = xs[order], us[order]
        xs.setflags(write=False)
        us.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "us", us)

    @classmethod
    def from_points(cls, points: Iterable[tuple[int, float]], kind: str = "jump") -> "PointConfiguration":
        pts = list(points)
        if not pts:
            return cls(np.zeros(0, np.int64), np.zeros(0), kind)
        xs, us = zip(*pts)
        return cls(np.array(xs), np.array(us, dtype=float), kind)

    def __len__(self) -> int:
        return int(self.xs.shape[0])

    def __iter__(self):
        return iter(zip(self.xs.tolist(), self.us.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointConfiguration):
            return NotImplemented
        return np.array_equal(self.xs, other.xs) and np.array_equal(self.us, other.us)

    def __repr__(self) -> str:
        return f"PointConfiguration({list(self)!r}, kind={self.kind!r})"

    def as_set(self) -> set[tuple[int, float]]:
        return set(self)

    def line(self, x: int) -> np.ndarray:
        """Sorted times on line ``x``."""
        return self.us[self.xs == x]

    def is_simple(self) -> bool:
        same = (np.diff(self.xs) == 0) & (np.diff(self.us) == 0)
        return not bool(same.any())

    def restrict(self, x_lo: int, x_hi: int, u_max: float = math.inf) -> "PointConfiguration":
        """Points with ``x_lo <= x <= x_hi`` and ``u <= u_max``."""
        m = (self.xs >= x_lo) & (self.xs <= x_hi) & (self.us <= u_max)
        return PointConfiguration(self.xs[m], self.us[m], self.kind)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "u"])
        for x, u in self:
            w.writerow([x, repr(u)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, kind: str = "jump") -> "PointConfiguration":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls.from_points(((int(r["x"]), float(r["u"])) for r in rows), kind)

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "points": [[x, u] for x, u in self]})

    @classmethod
    def from_json(cls, text: str) -> "PointConfiguration":
        obj = json.loads(text)
        return cls.from_points(((int(x), float(u)) for x, u in obj["points"]), obj.get("kind", "jump"))


# ---------------------------------------------------------------- Delta_inf


@dataclass(frozen=True, eq=False)
class InfiniteTableau:
    """Tableau on Delta_inf with finitely many finite entries.

    Cells outside ``values`` hold infinity.  The constraint
    ``T(x, y) <= min(T(x-1, y+1), T(x+1, y+1))`` is checked at construction,
    which for finite support amounts to: the support is downward closed and
    entries increase weakly along both up-edges.

    Attributes:
        values: Mapping from cell ``(x, y)`` to its finite entry.
    """

    values: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        vals = {(int(x), int(y)): float(v) for (x, y), v in dict(self.values).items()}
        for (x, y), v in vals.items():
            if y < 0 or (x - y) % 2:
                raise TableauError(f"cell {(x, y)} is not in the infinite staircase")
            if not (v >= 0 and math.isfinite(v)):
                raise TableauError(f"entry at {(x, y)} must be finite and non-negative, got {v}")
            if y > 0:
                for dx in (-1, 1):
                    below = vals.get((x + dx, y - 1))
                    if below is None:
                        raise TableauError(
                            f"cell {(x, y)} is finite but {(x + dx, y - 1)} is not (support not downward closed)"
                        )
                    if below > v:
                        raise TableauError(f"constraint violated between {(x + dx, y - 1)} and {(x, y)}")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, cell: tuple[int, int]) -> float:
        return self.values.get(cell, math.inf)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InfiniteTableau):
            return NotImplemented
        return self.values == other.values

    def __repr__(self) -> str:
        return f"InfiniteTableau({dict(sorted(self.values.items()))!r})"


def tableau_to_jumps(t: InfiniteTableau) -> PointConfiguration:
    """Jump set of a finite-support tableau: one point ``(x, T(x, y))`` per cell."""
    if not t.values:
        return PointConfiguration.from_points([])
    cells = list(t.values.items())
    return PointConfiguration(
        np.array([c[0] for c, _ in cells], dtype=np.int64), np.array([v for _, v in cells], dtype=float)
    )


def jumps_to_tableau(x: PointConfiguration) -> InfiniteTableau:
    """Inverse of :func:`tableau_to_jumps`.

    The k-th smallest time on line x goes to cell ``(x, 2k - 1 - [x even])``.

    Raises:
        TableauError: if the configuration has a repeated point or does not
            come from a tableau (interlacing fails).
    """
    if not x.is_simple():
        raise TableauError("jump configuration must be simple")
    vals: dict[tuple[int, int], float] = {}
    for line in np.unique(x.xs).tolist():
        times = x.line(line)
        lift = 1 if line % 2 == 0 else 0
        for k, u in enumerate(times.tolist(), start=1):
            vals[(line, 2 * k - 1 - lift)] = u
    return InfiniteTableau(vals)


# ---------------------------------------------------------------- PYT jumps


def pyt_to_jumps(p: PoissonizedTableau, time_cutoff: float | None = None) -> PointConfiguration:
    """Jump points of a Poissonized tableau with distinct entries.

    Args:
        p: Poissonized tableau.
        time_cutoff: If given, keep only points with ``t >= time_cutoff``
            (the large entries, which become small times after rescaling).

    Raises:
        TableauError: on tied entries, since the jump set is then a multiset.
    """
    arr = p.to_array()
    xs, ts = _cell_jumps(p.shape, arr)
    if np.unique(ts).shape[0] != ts.shape[0]:
        raise TableauError("entries must be distinct to define a simple jump set")
    if time_cutoff is not None:
        keep = ts >= time_cutoff
        xs, ts = xs[keep], ts[keep]
    return PointConfiguration(xs, ts)


def _cell_jumps(shape: YoungDiagram, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if shape.size == 0:
        return np.zeros(0, np.int64), np.zeros(0)
    ii, jj = np.nonzero(_shape_mask(shape))
    return (jj - ii).astype(np.int64), arr[ii, jj].astype(float)


def _shape_mask(shape: YoungDiagram) -> np.ndarray:
    rows = np.asarray(shape.rows)
    return np.arange(shape.rows[0])[None, :] < rows[:, None]


# ---------------------------------------------------------------- windows


def center_swap(n: int, alpha: float) -> int:
    """floor(n (1 + alpha) / 2), with alpha read as the nearest short fraction.

    Reading ``alpha`` as a fraction keeps values like 0.4 from landing a hair
    below an integer boundary.
    """
    a = Fraction(alpha).limit_denominator(10**9)
    return math.floor(n * (1 + a) / 2)


@dataclass(frozen=True)
class WindowSpec:
    """Window around column alpha * n of a staircase of order n.

    Attributes:
        alpha: Macroscopic position in (-1, 1).
        n: Staircase order.
        c_n: Integer shift, same parity as n, within 2 of alpha * n.
        beta: sqrt(1 - alpha^2).
    """

    alpha: float
    n: int
    c_n: int
    beta: float

    @classmethod
    def make(cls, alpha: float, n: int) -> "WindowSpec":
        """Standard window: ``c_n = 2 floor(n (1+alpha)/2) - n``."""
        if not -1 < alpha < 1:
            raise DomainError(f"alpha must lie in (-1, 1), got {alpha}")
        if n < 2:
            raise DomainError(f"n must be at least 2, got {n}")
        return cls(float(alpha), int(n), 2 * center_swap(n, alpha) - n, math.sqrt(1 - alpha * alpha))

    def __post_init__(self):
        if (self.c_n - self.n) % 2:
            raise DomainError(f"c_n={self.c_n} must have the parity of n={self.n}")


def rescale_time(t, n: int, beta: float):
    """Map tableau time t in [0,1] to the edge scale beta * n * (1 - t).

    Both routes to the rescaled jump process go through this one expression
    so that they agree bit for bit.
    """
    return beta * (n * (1.0 - t))


def rescale_window(x: PointConfiguration, w: WindowSpec) -> PointConfiguration:
    """Recentre and rescale staircase jumps: ``(x, t) -> (x - c_n, beta n (1 - t))``."""
    return PointConfiguration(x.xs - w.c_n, rescale_time(x.us, w.n, w.beta), x.kind)


def embed_staircase(p: PoissonizedTableau, w: WindowSpec) -> InfiniteTableau:
    """Embed a staircase Poissonized tableau into Delta_inf and rescale.

    Cell (i, j) goes to ``(j - i - [n odd], n - i - j)`` with entry
    ``n (1 - p(i, j))``; the result is then shifted left by ``c_n - [n odd]``
    and multiplied by beta, so its jump set equals
    ``rescale_window(pyt_to_jumps(p), w)``.

    Raises:
        TableauError: if ``p`` is not of shape Delta_n for ``n = w.n``.
    """
    n = w.n
    if p.shape.staircase_order() != n:
        raise TableauError(f"expected shape Delta_{n}, got {p.shape.rows}")
    odd = n % 2
    shift = w.c_n - odd
    vals = {}
    for i, row in enumerate(p.entries, start=1):
        for j, v in enumerate(row, start=1):
            vals[(j - i - odd - shift, n - i - j)] = rescale_time(v, n, w.beta)
    return InfiniteTableau(vals)


def staircase_cell(n: int, x: int, y: int) -> tuple[int, int] | None:
    """Inverse of the embedding rotation (before shifting); ``None`` outside Delta_n."""
    xx = x + n % 2
    if y < 0 or (n - y - xx) % 2:
        return None
    i, j = (n - y - xx) // 2, (n - y + xx) // 2
    return (i, j) if i >= 1 and j >= 1 else None


# ---------------------------------------------------------------- fast path


def staircase_edge_jumps(
    syt: np.ndarray, uniforms: np.ndarray, w: WindowSpec, u_max: float, x_range: tuple[int, int] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Rescaled jumps of a Poissonized staircase tableau inside a window.

    Array version of ``rescale_window(pyt_to_jumps(poissonize(t)))`` for
    Monte Carlo loops.

    Args:
        syt: Dense staircase standard tableau (zeros outside the shape).
        uniforms: Sorted uniforms; entry k of ``syt`` receives ``uniforms[k-1]``.
        w: Window.
        u_max: Largest rescaled time kept.
        x_range: Optional inclusive bounds on the recentred x.

    Returns:
        ``(xs, us)`` arrays, unsorted.
    """
    n = w.n
    ii, jj = np.nonzero(syt)
    xs = (jj - ii).astype(np.int64) - w.c_n
    us = rescale_time(uniforms[syt[ii, jj] - 1], n, w.beta)
    keep = us <= u_max
    if x_range is not None:
        keep &= (xs >= x_range[0]) & (xs <= x_range[1])
    return xs[keep], us[keep]
