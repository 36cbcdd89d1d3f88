"""Independent brute-force oracles used by the tests.

Nothing here imports the package's samplers or bijections; the functions
enumerate tableaux and reduced words directly and evaluate correlation
functions of small Poissonized tableaux from the order-statistic densities.
"""
from __future__ import annotations

import math
from functools import lru_cache


@lru_cache(maxsize=None)
def all_syt(rows: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All standard tableaux of a shape, by placing 1, 2, ... in addable cells."""
    cells = [(i, j) for i, r in enumerate(rows) for j in range(r)]
    size = len(cells)
    out = []

    def rec(filled: dict, k: int):
        if k > size:
            out.append(tuple(tuple(filled[(i, j)] for j in range(r)) for i, r in enumerate(rows)))
            return
        for i, j in cells:
            if (i, j) in filled:
                continue
            if j > 0 and (i, j - 1) not in filled:
                continue
            if i > 0 and (i - 1, j) not in filled:
                continue
            filled[(i, j)] = k
            rec(filled, k + 1)
            del filled[(i, j)]

    rec({}, 1)
    return tuple(out)


@lru_cache(maxsize=None)
def all_sorting_networks(n: int) -> frozenset:
    """All reduced words of the reverse permutation of S_n, by depth-first search.

    A word stays reduced exactly when each swap creates a new inversion, that
    is, the two wires meet in increasing order.
    """
    target = n * (n - 1) // 2
    out = set()

    def rec(perm: list, word: list):
        if len(word) == target:
            out.add(tuple(word))
            return
        for s in range(1, n):
            if perm[s - 1] < perm[s]:
                perm[s - 1], perm[s] = perm[s], perm[s - 1]
                word.append(s)
                rec(perm, word)
                word.pop()
                perm[s - 1], perm[s] = perm[s], perm[s - 1]

    rec(list(range(n)), [])
    return frozenset(out)


def apply_word(n: int, word) -> list:
    perm = list(range(n))
    for s in word:
        perm[s - 1], perm[s] = perm[s], perm[s - 1]
    return perm


def schutzenberger_oracle(rows: tuple[tuple[int, ...], ...]):
    """Textbook promotion: delete the max, jeu de taquin towards (0,0), shift, insert 1."""
    a = [list(r) for r in rows]
    big = sum(len(r) for r in a)
    r, c = next((i, row.index(big)) for i, row in enumerate(a) if big in row)
    j_max = c + 1
    a[r][c] = None
    while (r, c) != (0, 0):
        cand = []
        if r > 0:
            cand.append((a[r - 1][c], r - 1, c))
        if c > 0:
            cand.append((a[r][c - 1], r, c - 1))
        _, nr, nc = max(cand)
        a[r][c] = a[nr][nc]
        a[nr][nc] = None
        r, c = nr, nc
    out = [[(v + 1 if v is not None else 1) for v in row] for row in a]
    return j_max, tuple(tuple(row) for row in out)


def eg_oracle(rows) -> tuple[int, ...]:
    big = sum(len(r) for r in rows)
    word = []
    for _ in range(big):
        j, rows = schutzenberger_oracle(rows)
        word.append(j)
    return tuple(word)


def _beta_density(k: int, size: int, t: float) -> float:
    """Density of the k-th of ``size`` uniform order statistics."""
    return math.comb(size - 1, k - 1) * size * t ** (k - 1) * (1 - t) ** (size - k)


def _joint_density(ka: int, kb: int, size: int, ta: float, tb: float) -> float:
    if ka > kb:
        ka, kb, ta, tb = kb, ka, tb, ta
    if ta >= tb:
        return 0.0
    const = math.factorial(size) / (
        math.factorial(ka - 1) * math.factorial(kb - ka - 1) * math.factorial(size - kb)
    )
    return const * ta ** (ka - 1) * (tb - ta) ** (kb - ka - 1) * (1 - tb) ** (size - kb)


def rho1(rows: tuple[int, ...], x: int, t: float) -> float:
    """Exact 1-point density of the jumps of a uniform PYT at (x, t)."""
    tabs = all_syt(rows)
    size = sum(rows)
    tot = 0.0
    for tab in tabs:
        for i, row in enumerate(tab):
            for j, v in enumerate(row):
                if j - i == x:
                    tot += _beta_density(v, size, t)
    return tot / len(tabs)


def rho2(rows: tuple[int, ...], x1: int, t1: float, x2: int, t2: float) -> float:
    """Exact 2-point density of the jumps of a uniform PYT."""
    tabs = all_syt(rows)
    size = sum(rows)
    tot = 0.0
    for tab in tabs:
        cells = [(j - i, v) for i, row in enumerate(tab) for j, v in enumerate(row)]
        for a, (xa, va) in enumerate(cells):
            if xa != x1:
                continue
            for b, (xb, vb) in enumerate(cells):
                if a != b and xb == x2:
                    tot += _joint_density(va, vb, size, t1, t2)
    return tot / len(tabs)
