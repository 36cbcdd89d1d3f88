"""Sorting networks and the Edelman-Greene bijection.

A sorting network of S_n is a reduced word (s_1, ..., s_N), N = n(n-1)/2,
whose adjacent transpositions take the identity to the reverse permutation.
The Edelman-Greene map reads such a word off a staircase standard tableau by
repeatedly applying the Schützenberger operator and recording the column of
the maximal entry.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError, TableauError
from .rng import as_rng
from .tableau import StandardTableau, YoungDiagram, sample_syt_array


@dataclass(frozen=True)
class SortingNetwork:
    """A word of adjacent transpositions on n wires.

    Construction does not insist on the word being reduced; call
    :func:`validate_network` for that.
    """

    n: int
    swaps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "swaps", tuple(int(s) for s in self.swaps))
        if self.n < 2:
            raise DomainError(f"a network needs n >= 2, got {self.n}")

    @property
    def length(self) -> int:
        return len(self.swaps)

    def first_occurrence(self, s: int) -> int:
        """1-based step at which swap ``s`` first appears (0 if never)."""
        try:
            return self.swaps.index(s) + 1
        except ValueError:
            return 0

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "swaps": list(self.swaps)})

    @classmethod
    def from_json(cls, text: str) -> "SortingNetwork":
        obj = json.loads(text)
        return cls(int(obj["n"]), tuple(obj["swaps"]))

    def wiring_csv(self) -> str:
        """Crossings as CSV rows ``step,i``; crossing k sits at (k-1/2, s_k+1/2)."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "i"])
        for k, s in enumerate(self.swaps, start=1):
            w.writerow([k, s])
        return buf.getvalue()


def _staircase_n(t: StandardTableau) -> int:
    n = t.shape.staircase_order()
    if n is None:
        raise TableauError(f"expected a staircase shape, got {t.shape.rows}")
    return n


def schutzenberger_step(t: StandardTableau) -> tuple[int, StandardTableau]:
    """One application of the Schützenberger operator.

    The maximal entry is removed, the vacated cell is filled by sliding along
    the path of larger neighbours (above or to the left) back to (1, 1), every
    other entry is raised by one and 1 is placed in the corner.

    Args:
        t: Standard tableau of staircase shape.

    Returns:
        ``(j_max, t_next)`` where ``j_max`` is the column of the maximal entry.
    """
    _staircase_n(t)
    a = [list(row) for row in t.entries]
    big = t.shape.size
    r, c = next((i, row.index(big)) for i, row in enumerate(a) if big in row)
    j_max = c + 1
    new = [[v + 1 for v in row] for row in a]
    while (r, c) != (0, 0):
        up = a[r - 1][c] if r > 0 else -1
        left = a[r][c - 1] if c > 0 else -1
        nr, nc = (r - 1, c) if up > left else (r, c - 1)
        new[r][c] = a[nr][nc] + 1
        r, c = nr, nc
    new[0][0] = 1
    return j_max, StandardTableau(t.shape, tuple(tuple(row) for row in new))


def eg_map(t: StandardTableau) -> SortingNetwork:
    """Edelman-Greene map from a staircase standard tableau to a sorting network."""
    n = _staircase_n(t)
    if n == 2:
        return SortingNetwork(2, (1,))
    return SortingNetwork(n, tuple(_backend.eg_swaps(t.to_array()).tolist()))


def eg_swaps_array(tab: np.ndarray, steps: int = -1) -> np.ndarray:
    """Swap sequence of a dense staircase tableau array (no validation).

    Args:
        tab: Dense staircase standard tableau.
        steps: Only compute this many leading swaps (all if negative).
    """
    return _backend.eg_swaps(np.ascontiguousarray(tab, dtype=np.int64), steps)


def validate_network(w: SortingNetwork) -> bool:
    """True iff ``w`` has length n(n-1)/2 and sorts the identity into its reverse."""
    n = w.n
    if len(w.swaps) != n * (n - 1) // 2:
        return False
    perm = list(range(n))
    for s in w.swaps:
        if not 1 <= s <= n - 1:
            return False
        perm[s - 1], perm[s] = perm[s], perm[s - 1]
    return perm == list(range(n - 1, -1, -1))


def sample_network(n: int, rng=None) -> SortingNetwork:
    """Uniformly random sorting network of S_n (hook walk, then Edelman-Greene)."""
    if n < 2:
        raise DomainError(f"sample_network needs n >= 2, got {n}")
    if n == 2:
        return SortingNetwork(2, (1,))
    arr = sample_syt_array(YoungDiagram.staircase(n), as_rng(rng))
    return SortingNetwork(n, tuple(eg_swaps_array(arr).tolist()))


def sample_network_array(n: int, rng=None, steps: int = -1) -> np.ndarray:
    """Swap array of a uniform network, skipping object construction.

    Args:
        n: Number of wires.
        rng: Generator or seed.
        steps: Only return this many leading swaps (all if negative).
    """
    if n == 2:
        return np.array([1], dtype=np.int64)[: None if steps < 0 else steps]
    return eg_swaps_array(sample_syt_array(YoungDiagram.staircase(n), as_rng(rng)), steps)
