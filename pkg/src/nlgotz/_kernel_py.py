"""Pure numpy fallback for the row-reduction kernel.

Mirrors the compiled extension exactly: in-place reduced row echelon form on
C-contiguous int64 arrays with entries in [0, p).  Vectorized over rows, so it
stays usable for the matrix sizes the verification sweeps produce.
"""

from __future__ import annotations

import numpy as np


def rref_inplace(a: np.ndarray, p: int) -> int:
    """Reduce `a` to reduced row echelon form mod p and return its rank."""
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            # products stay below p**2 < 2**62, safe in int64
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        r += 1
    return r
