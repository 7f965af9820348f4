"""Pure-Python elimination kernels.

This is the fallback twin of the compiled module ``periodica._kernels``;
both expose the same four functions with identical results.  Rational
elimination clears denominators and runs a fraction-free cross-multiplication
sweep with gcd cleanup, so all intermediate arithmetic is on integers.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"


def fp_matmul(a, b, n, k, m, p):
    """Flat row-major product of an n*k and a k*m matrix over GF(p)."""
    out = [0] * (n * m)
    for i in range(n):
        ai = i * k
        oi = i * m
        for t in range(k):
            x = a[ai + t]
            if x:
                bt = t * m
                for j in range(m):
                    out[oi + j] = (out[oi + j] + x * b[bt + j]) % p
    return out


def q_matmul(a, b, n, k, m):
    """Flat row-major product of exact rational matrices."""
    zero = Fraction(0)
    out = [zero] * (n * m)
    for i in range(n):
        ai = i * k
        oi = i * m
        for t in range(k):
            x = a[ai + t]
            if x:
                bt = t * m
                for j in range(m):
                    if b[bt + j]:
                        out[oi + j] += x * b[bt + j]
    return out


def fp_rref(flat, nrows, ncols, p):
    """Reduced row echelon form over GF(p).

    Returns ``(rows, pivots)`` where ``rows`` is a flat row-major list holding
    only the nonzero rows (pivot entries 1, pivot columns cleared).
    """
    rows = [list(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if rows[i][c] % p:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        inv = pow(prow[c], p - 2, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            v = rows[i][c] % p
            if v:
                ri = rows[i]
                for j in range(c, ncols):
                    ri[j] = (ri[j] - v * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(len(pivots)):
        out.extend(rows[i])
    return out, pivots


def q_rref(flat, nrows, ncols):
    """Reduced row echelon form over Q, fraction-free in the middle.

    Same contract as :func:`fp_rref`; entries of the result are Fractions.
    """
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
            v = rows[i][c]
            if v:
                ri = rows[i]
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
    for i, c in enumerate(pivots):
        prow = rows[i]
        pv = prow[c]
        out.extend(Fraction(x, pv) for x in prow)
    return out, pivots
