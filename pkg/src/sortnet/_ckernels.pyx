# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in :mod:`sortnet._pykernels`.

Random doubles come straight from the generator's ``bitgen_t`` via
``next_double`` so the stream is the one ``Generator.random`` would emit.
"""
import numpy as np
cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.stdint cimport int64_t
from numpy.random cimport bitgen_t

cnp.import_array()


cdef bitgen_t* _bitgen(object rng) except NULL:
    bg = rng.bit_generator
    capsule = bg.capsule
    return <bitgen_t*> PyCapsule_GetPointer(capsule, "BitGenerator")


def hook_walk(rows, rng):
    """Uniform standard Young tableau by the hook walk (compiled)."""
    cdef cnp.int64_t[::1] rl = np.ascontiguousarray(rows, dtype=np.int64).copy()
    cdef Py_ssize_t nrows = rl.shape[0]
    cdef Py_ssize_t ncols = rl[0] if nrows else 0
    out_arr = np.zeros((nrows, ncols), dtype=np.int64)
    if nrows == 0:
        return out_arr
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.int64_t[::1] cl = np.zeros(ncols, dtype=np.int64)
    cdef Py_ssize_t i, c, r, cur_rows = nrows
    cdef int64_t total = 0, label, arm, leg, h, k, width
    for i in range(nrows):
        total += rl[i]
        for c in range(rl[i]):
            cl[c] += 1
    cdef bitgen_t* bg = _bitgen(rng)
    lock = rng.bit_generator.lock
    with lock:
        with nogil:
            label = total
            while label > 0:
                while cur_rows > 0 and rl[cur_rows - 1] == 0:
                    cur_rows -= 1
                width = rl[0]
                while True:
                    r = <Py_ssize_t>(bg.next_double(bg.state) * cur_rows)
                    c = <Py_ssize_t>(bg.next_double(bg.state) * width)
                    if c < rl[r]:
                        break
                while True:
                    arm = rl[r] - c - 1
                    leg = cl[c] - r - 1
                    h = arm + leg
                    if h == 0:
                        break
                    k = <int64_t>(bg.next_double(bg.state) * h)
                    if k < arm:
                        c = c + 1 + k
                    else:
                        r = r + 1 + (k - arm)
                out[r, c] = label
                rl[r] -= 1
                cl[c] -= 1
                label -= 1
    return out_arr


def eg_swaps(tab, Py_ssize_t steps=-1):
    """Edelman-Greene swap sequence of a staircase tableau (compiled)."""
    cdef Py_ssize_t m = tab.shape[0]
    cdef int64_t n = m + 1
    cdef int64_t big = n * (n - 1) // 2
    st_arr = np.zeros((m, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] st = st_arr
    cdef cnp.int64_t[:, :] src = np.asarray(tab, dtype=np.int64)
    cdef cnp.int64_t[::1] pr = np.zeros(2 * big + 2, dtype=np.int64)
    cdef cnp.int64_t[::1] pc = np.zeros(2 * big + 2, dtype=np.int64)
    cdef int64_t total = big if steps < 0 else min(steps, big)
    swaps_arr = np.empty(total, dtype=np.int64)
    cdef cnp.int64_t[::1] swaps = swaps_arr
    cdef Py_ssize_t i, j, r, c, nr, nc
    cdef int64_t k, v, up, left
    for i in range(m):
        for j in range(m - i):
            st[i, j] = src[i, j]
            pr[st[i, j] + big] = i
            pc[st[i, j] + big] = j
    with nogil:
        for k in range(total):
            r = pr[2 * big - k]
            c = pc[2 * big - k]
            swaps[k] = c + 1
            while r > 0 or c > 0:
                if c == 0:
                    nr = r - 1
                    nc = c
                elif r == 0:
                    nr = r
                    nc = c - 1
                else:
                    up = st[r - 1, c]
                    left = st[r, c - 1]
                    if up > left:
                        nr = r - 1
                        nc = c
                    else:
                        nr = r
                        nc = c - 1
                v = st[nr, nc]
                st[r, c] = v
                pr[v + big] = r
                pc[v + big] = c
                r = nr
                c = nc
            st[0, 0] = -k
            pr[big - k] = 0
            pc[big - k] = 0
    return swaps_arr
