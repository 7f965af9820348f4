# cython: language_level=3
"""Compiled elimination kernels (Cython twin of ``_kernels_py``).

GF(p) paths run on C int64 buffers (p is assumed < 2**31 so products fit).
The rational path keeps arbitrary-precision Python ints but moves the loop
bookkeeping to C.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from fractions import Fraction
from math import gcd

BACKEND = "cython"


def fp_matmul(a, b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m, long long p):
    cdef Py_ssize_t i, j, t
    cdef long long x
    cdef long long *ca = <long long *> PyMem_Malloc(max(n * k, 1) * sizeof(long long))
    cdef long long *cb = <long long *> PyMem_Malloc(max(k * m, 1) * sizeof(long long))
    cdef long long *co = <long long *> PyMem_Malloc(max(n * m, 1) * sizeof(long long))
    if ca == NULL or cb == NULL or co == NULL:
        raise MemoryError()
    try:
        for i in range(n * k):
            ca[i] = a[i]
        for i in range(k * m):
            cb[i] = b[i]
        for i in range(n * m):
            co[i] = 0
        for i in range(n):
            for t in range(k):
                x = ca[i * k + t]
                if x != 0:
                    for j in range(m):
                        co[i * m + j] = (co[i * m + j] + x * cb[t * m + j]) % p
        return [co[i] for i in range(n * m)]
    finally:
        PyMem_Free(ca)
        PyMem_Free(cb)
        PyMem_Free(co)


cdef long long _fp_inv(long long a, long long p):
    cdef long long result = 1
    cdef long long base = a % p
    cdef long long e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def fp_rref(flat, Py_ssize_t nrows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t r, c, i, j, pr, npiv
    cdef long long v, inv
    cdef long long *m
    if nrows == 0 or ncols == 0:
        return [], []
    m = <long long *> PyMem_Malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    pivots = []
    try:
        for i in range(nrows * ncols):
            m[i] = flat[i] % p
        r = 0
        for c in range(ncols):
            pr = -1
            for i in range(r, nrows):
                if m[i * ncols + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    v = m[r * ncols + j]
                    m[r * ncols + j] = m[pr * ncols + j]
                    m[pr * ncols + j] = v
            inv = _fp_inv(m[r * ncols + c], p)
            for j in range(c, ncols):
                m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                v = m[i * ncols + c]
                if v != 0:
                    for j in range(c, ncols):
                        m[i * ncols + j] = (m[i * ncols + j] - v * m[r * ncols + j]) % p
                        if m[i * ncols + j] < 0:
                            m[i * ncols + j] += p
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        npiv = len(pivots)
        out = [0] * (npiv * ncols)
        for i in range(npiv):
            for j in range(ncols):
                out[i * ncols + j] = m[i * ncols + j]
        return out, pivots
    finally:
        PyMem_Free(m)


def q_matmul(a, b, Py_ssize_t n, Py_ssize_t k, Py_ssize_t m):
    cdef Py_ssize_t i, j, t
    zero = Fraction(0)
    out = [zero] * (n * m)
    for i in range(n):
        for t in range(k):
            x = a[i * k + t]
            if x:
                for j in range(m):
                    y = b[t * m + j]
                    if y:
                        out[i * m + j] = out[i * m + j] + x * y
    return out


def q_rref(flat, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t r, c, i, j, pr
    rows = []
    for i in range(nrows):
        seg = flat[i * ncols:(i + 1) * ncols]
        den = 1
        for x in seg:
            d = x.denominator
            den = den // gcd(den, d) * d
        rows.append([int(x * den) for x in seg])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            ri = rows[i]
            v = ri[c]
            if v:
                # full-row update: rows above the pivot carry entries left of c
                for j in range(ncols):
                    ri[j] = pv * ri[j] - v * prow[j]
                g = 0
                for j in range(ncols):
                    g = gcd(g, ri[j])
                    if g == 1:
                        break
                if g > 1:
                    for j in range(ncols):
                        ri[j] //= g
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(len(pivots)):
        prow = rows[i]
        pv = prow[pivots[i]]
        out.extend(Fraction(x, pv) for x in prow)
    return out, pivots
