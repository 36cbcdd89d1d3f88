"""Compare the compiled and pure-Python hot kernels.

Times the hook walk and the Edelman-Greene sweep on staircases of a few
sizes with both backends and checks that they return identical arrays.

Usage::

    python benchmarks/bench_core.py --sizes 50 100 200 --repeat 3
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from sortnet import _pykernels, make_rng


def _timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=1)
    a = p.parse_args(argv)
    try:
        from sortnet import _ckernels
    except ImportError:
        print("compiled extension not built; only the Python backend is available")
        _ckernels = None

    print(f"{'n':>5} {'kernel':>10} {'python [s]':>12} {'cython [s]':>12} {'speedup':>9} {'equal':>6}")
    for n in a.sizes:
        rows = np.arange(n - 1, 0, -1, dtype=np.int64)
        tp, tab = _timed(lambda: _pykernels.hook_walk(rows, make_rng(a.seed, n)), a.repeat)
        cases = [("hook_walk", tp, tab, lambda: _ckernels.hook_walk(rows, make_rng(a.seed, n)))]
        te, sw = _timed(lambda: _pykernels.eg_swaps(tab), a.repeat)
        cases.append(("eg_swaps", te, sw, lambda: _ckernels.eg_swaps(tab)))
        for name, t_py, ref, cfn in cases:
            if _ckernels is None:
                print(f"{n:>5} {name:>10} {t_py:>12.4f} {'-':>12} {'-':>9} {'-':>6}")
                continue
            t_c, out = _timed(cfn, a.repeat)
            print(f"{n:>5} {name:>10} {t_py:>12.4f} {t_c:>12.4f} {t_py / t_c:>9.1f} {str(np.array_equal(out, ref)):>6}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
