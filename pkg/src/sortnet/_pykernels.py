"""Pure-Python versions of the hot loops.

These mirror :mod:`sortnet._ckernels` line for line and consume random
doubles in exactly the same order, so both backends return identical
tableaux for the same generator state.
"""
from __future__ import annotations

import numpy as np

_BLOCK = 4096


class _Doubles:
    """Sequential reader over ``rng.random()`` output, buffered in blocks.

    Reading block-wise yields the same doubles as scalar calls; only the
    generator state after the walk differs, which callers never reuse.
    """

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self._buf = rng.random(_BLOCK).tolist()
        self._i = 0

    def next(self) -> float:
        if self._i == _BLOCK:
            self._buf = self._rng.random(_BLOCK).tolist()
            self._i = 0
        v = self._buf[self._i]
        self._i += 1
        return v


def hook_walk(rows: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Uniform standard Young tableau by the Greene-Nijenhuis-Wilf hook walk.

    Args:
        rows: Partition as a 1-D integer array, weakly decreasing, positive.
        rng: Generator supplying uniform doubles.

    Returns:
        ``(len(rows), rows[0])`` int64 array; zero outside the shape.
    """
    rowlen = [int(r) for r in rows]
    nrows = len(rowlen)
    ncols = rowlen[0] if nrows else 0
    out = np.zeros((nrows, ncols), dtype=np.int64)
    if nrows == 0:
        return out
    collen = [sum(1 for r in rowlen if r > c) for c in range(ncols)]
    total = sum(rowlen)
    u = _Doubles(rng)
    cur_rows = nrows
    for label in range(total, 0, -1):
        while cur_rows > 0 and rowlen[cur_rows - 1] == 0:
            cur_rows -= 1
        width = rowlen[0]
        # uniform cell of the current shape, by rejection from the bounding box
        while True:
            r = int(u.next() * cur_rows)
            c = int(u.next() * width)
            if c < rowlen[r]:
                break
        while True:
            arm = rowlen[r] - c - 1
            leg = collen[c] - r - 1
            h = arm + leg
            if h == 0:
                break
            k = int(u.next() * h)
            if k < arm:
                c = c + 1 + k
            else:
                r = r + 1 + (k - arm)
        out[r, c] = label
        rowlen[r] -= 1
        collen[c] -= 1
    return out


def eg_swaps(tab: np.ndarray, steps: int = -1) -> np.ndarray:
    """Edelman-Greene swap sequence of a staircase standard tableau.

    Runs the Schützenberger operator N times with a global offset trick:
    a stored value ``s`` stands for the actual entry ``s + k`` after ``k``
    steps, so the "+1 to every other entry" part costs nothing.

    Args:
        tab: ``(n-1, n-1)`` integer array holding a standard tableau of
            staircase shape (cells with ``i + j <= n - 2`` in 0-based indices).

    Returns:
        int64 array of the N swaps, values in ``1..n-1``.
    """
    m = tab.shape[0]
    n = m + 1
    big = n * (n - 1) // 2
    st = [[int(tab[i, j]) if i + j <= m - 1 else 0 for j in range(m)] for i in range(m)]
    # position lookup indexed by stored value + big
    pos_r = [0] * (2 * big + 2)
    pos_c = [0] * (2 * big + 2)
    for i in range(m):
        for j in range(m - i):
            pos_r[st[i][j] + big] = i
            pos_c[st[i][j] + big] = j
    total = big if steps < 0 else min(steps, big)
    swaps = np.empty(total, dtype=np.int64)
    for k in range(total):
        r = pos_r[big - k + big]
        c = pos_c[big - k + big]
        swaps[k] = c + 1
        while r > 0 or c > 0:
            up = st[r - 1][c] if r > 0 else None
            left = st[r][c - 1] if c > 0 else None
            if left is None or (up is not None and up > left):
                nr, nc = r - 1, c
            else:
                nr, nc = r, c - 1
            v = st[nr][nc]
            st[r][c] = v
            pos_r[v + big] = r
            pos_c[v + big] = c
            r, c = nr, nc
        st[0][0] = -k
        pos_r[-k + big] = 0
        pos_c[-k + big] = 0
    return swaps
