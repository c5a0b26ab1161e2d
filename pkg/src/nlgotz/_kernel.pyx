# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over a prime field.

Operates in place on C-contiguous int64 buffers whose entries already lie in
[0, p).  Safe for any prime p < 2**31: every intermediate product fits in a
signed 64-bit integer.
"""


cdef long long _inv_mod(long long a, long long p):
    # extended Euclid; a nonzero mod p
    cdef long long old_r = a, r = p, old_s = 1, s = 0, q, t
    while r != 0:
        q = old_r / r
        t = old_r - q * r
        old_r = r
        r = t
        t = old_s - q * s
        old_s = s
        s = t
    old_s = old_s % p
    if old_s < 0:
        old_s += p
    return old_s


def rref_inplace(long long[:, ::1] a, long long p):
    """Reduce `a` to reduced row echelon form mod p and return its rank."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, i, k, c, piv
    cdef long long f, inv, v
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, n):
                v = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = v
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for k in range(c, n):
                a[r, k] = (a[r, k] * inv) % p
        for i in range(m):
            if i == r:
                continue
            f = a[i, c]
            if f != 0:
                for k in range(c, n):
                    v = a[i, k] - f * a[r, k]
                    v = v % p
                    if v < 0:
                        v += p
                    a[i, k] = v
        r += 1
    return r
