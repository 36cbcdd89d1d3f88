"""Young diagrams, standard and Poissonized tableaux.

Cells are addressed 1-based as ``(i, j)``: row ``i``, column ``j``, with row 1
the longest row (English notation).  Entries are stored row by row as tuples,
so every tableau object is immutable and hashable.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from . import _backend
from .errors import DomainError, TableauError
from .rng import as_rng


@dataclass(frozen=True)
class YoungDiagram:
    """A partition lambda_1 >= lambda_2 >= ... > 0.

    Attributes:
        rows: Row lengths, weakly decreasing and positive.
    """

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r <= 0 for r in rows):
            raise TableauError(f"row lengths must be positive, got {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise TableauError(f"row lengths must be weakly decreasing, got {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def staircase(cls, n: int) -> "YoungDiagram":
        """The staircase Delta_n = (n-1, n-2, ..., 1)."""
        if n < 1:
            raise DomainError(f"staircase needs n >= 1, got {n}")
        return cls(tuple(range(n - 1, 0, -1)))

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows)

    def columns(self) -> tuple[int, ...]:
        """Column lengths (the conjugate partition)."""
        if not self.rows:
            return ()
        return tuple(sum(1 for r in self.rows if r > c) for c in range(self.rows[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells in row-major order, 1-based."""
        for i, r in enumerate(self.rows, start=1):
            for j in range(1, r + 1):
                yield (i, j)

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 1 <= i <= len(self.rows) and 1 <= j <= self.rows[i - 1]

    def staircase_order(self) -> int | None:
        """Return n if this diagram is Delta_n, else ``None``."""
        if self.rows == tuple(range(len(self.rows), 0, -1)):
            return len(self.rows) + 1
        return None


@dataclass(frozen=True)
class StandardTableau:
    """Filling of a diagram by 1..|lambda|, increasing along rows and columns."""

    shape: YoungDiagram
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ent = tuple(tuple(int(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if tuple(len(r) for r in ent) != self.shape.rows:
            raise TableauError("entries do not match the shape")
        flat = sorted(v for row in ent for v in row)
        if flat != list(range(1, self.shape.size + 1)):
            raise TableauError("entries must be a bijection onto 1..|lambda|")
        if not _monotone(ent, strict=True):
            raise TableauError("entries must increase strictly along rows and columns")

    def __getitem__(self, cell: tuple[int, int]) -> int:
        i, j = cell
        return self.entries[i - 1][j - 1]

    def to_array(self) -> np.ndarray:
        """Dense ``(ell, lambda_1)`` int64 array, zero outside the shape."""
        return _to_dense(self.entries, self.shape, np.int64)

    @classmethod
    def from_array(cls, shape: YoungDiagram, arr: np.ndarray) -> "StandardTableau":
        return cls(shape, tuple(tuple(int(arr[i, j]) for j in range(r)) for i, r in enumerate(shape.rows)))

    def scaled(self, factor: float) -> "PoissonizedTableau":
        """Multiply every entry by ``factor`` (e.g. 1/(N+1) for the rescaled tableau)."""
        return PoissonizedTableau(self.shape, tuple(tuple(v * factor for v in row) for row in self.entries))


@dataclass(frozen=True)
class PoissonizedTableau:
    """Filling of a diagram by reals in [0, 1], weakly increasing along rows and columns.

    Construction only checks the shape; use :func:`validate_tableau` for the
    monotonicity constraints, because deliberately invalid fillings are
    useful inputs to that check.
    """

    shape: YoungDiagram
    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        ent = tuple(tuple(float(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        if tuple(len(r) for r in ent) != self.shape.rows:
            raise TableauError("entries do not match the shape")

    def __getitem__(self, cell: tuple[int, int]) -> float:
        i, j = cell
        return self.entries[i - 1][j - 1]

    def to_array(self) -> np.ndarray:
        return _to_dense(self.entries, self.shape, np.float64)


def _to_dense(entries, shape: YoungDiagram, dtype) -> np.ndarray:
    out = np.zeros((shape.length, shape.rows[0] if shape.rows else 0), dtype=dtype)
    for i, row in enumerate(entries):
        out[i, : len(row)] = row
    return out


def _monotone(entries, strict: bool) -> bool:
    bad = (lambda a, b: a >= b) if strict else (lambda a, b: a > b)
    for i, row in enumerate(entries):
        for j, v in enumerate(row):
            if j + 1 < len(row) and bad(v, row[j + 1]):
                return False
            if i + 1 < len(entries) and j < len(entries[i + 1]) and bad(v, entries[i + 1][j]):
                return False
    return True


# ---------------------------------------------------------------- counting


def count_syt(shape: YoungDiagram) -> int:
    """Number of standard tableaux of ``shape`` by the hook-length formula.

    Exact integer arithmetic throughout.
    """
    cols = shape.columns()
    hooks = 1
    for i, r in enumerate(shape.rows):
        for j in range(r):
            hooks *= (r - j - 1) + (cols[j] - i - 1) + 1
    return math.factorial(shape.size) // hooks


def stanley_count(n: int) -> int:
    """Number of sorting networks of S_n, N! / prod_j (2n-1-2j)^j.

    Args:
        n: Number of wires, at least 2.

    Raises:
        DomainError: if ``n < 2``.
    """
    if n < 2:
        raise DomainError(f"stanley_count needs n >= 2, got {n}")
    big = n * (n - 1) // 2
    den = 1
    for j in range(1, n):
        den *= (2 * n - 1 - 2 * j) ** j
    value = Fraction(math.factorial(big), den)
    assert value.denominator == 1
    return int(value)


# ---------------------------------------------------------------- sampling


def sample_syt_uniform(shape: YoungDiagram, rng=None) -> StandardTableau:
    """Uniformly random standard tableau via the hook walk.

    Args:
        shape: Target diagram.
        rng: Generator, integer seed or ``None`` for the default seed.
    """
    if shape.size == 0:
        return StandardTableau(shape, ())
    arr = _backend.hook_walk(np.asarray(shape.rows, dtype=np.int64), as_rng(rng))
    return StandardTableau.from_array(shape, arr)


def sample_syt_array(shape: YoungDiagram, rng=None) -> np.ndarray:
    """Same as :func:`sample_syt_uniform` but returns the dense array.

    Skips building the immutable tableau object, which matters for n in the
    hundreds where validation dominates the walk itself.
    """
    return _backend.hook_walk(np.asarray(shape.rows, dtype=np.int64), as_rng(rng))


def poissonize(t: StandardTableau, rng=None, uniforms: Sequence[float] | None = None) -> PoissonizedTableau:
    """Attach uniform order statistics to a standard tableau.

    The k-th smallest of N i.i.d. uniforms is written into the cell holding k.

    Args:
        t: Standard tableau.
        rng: Generator or seed, used when ``uniforms`` is not given.
        uniforms: Optional explicit uniforms (any order), mainly for tests.
    """
    size = t.shape.size
    if uniforms is None:
        u = np.sort(as_rng(rng).random(size))
    else:
        u = np.sort(np.asarray(uniforms, dtype=float))
        if u.shape != (size,):
            raise TableauError(f"need {size} uniforms, got {u.shape[0]}")
    return PoissonizedTableau(t.shape, tuple(tuple(float(u[v - 1]) for v in row) for row in t.entries))


def depoissonize(p: PoissonizedTableau) -> StandardTableau:
    """Replace entries by their ranks.

    Raises:
        TableauError: if two entries are equal.
    """
    flat = [(v, i, j) for i, row in enumerate(p.entries) for j, v in enumerate(row)]
    flat.sort()
    for a, b in zip(flat, flat[1:]):
        if a[0] == b[0]:
            raise TableauError(f"tied entries {a[0]!r} at cells {a[1:]} and {b[1:]}")
    ranks = [list(row) for row in p.entries]
    for k, (_, i, j) in enumerate(flat, start=1):
        ranks[i][j] = k
    return StandardTableau(p.shape, tuple(tuple(r) for r in ranks))


def validate_tableau(p: PoissonizedTableau) -> bool:
    """True iff the weak row and column constraints hold (entries may tie)."""
    return _monotone(p.entries, strict=False)


# ---------------------------------------------------------------- JSON


def tableau_to_json(t: StandardTableau | PoissonizedTableau) -> str:
    """Serialize as ``{"shape": [...], "entries": [[...], ...]}``.

    Real entries are written with 17 significant digits so they round-trip.
    """
    if isinstance(t, StandardTableau):
        entries = [list(row) for row in t.entries]
        return json.dumps({"shape": list(t.shape.rows), "entries": entries})
    rows = ", ".join("[" + ", ".join(f"{v:.17g}" for v in row) + "]" for row in t.entries)
    return f'{{"shape": {json.dumps(list(t.shape.rows))}, "entries": [{rows}]}}'


def tableau_from_json(text: str) -> StandardTableau | PoissonizedTableau:
    """Inverse of :func:`tableau_to_json`; integer entries give a standard tableau."""
    obj = json.loads(text)
    shape = YoungDiagram(tuple(obj["shape"]))
    entries = obj["entries"]
    if all(isinstance(v, int) for row in entries for v in row):
        return StandardTableau(shape, entries)
    return PoissonizedTableau(shape, entries)
