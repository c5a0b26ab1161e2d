"""Independent recomputation paths used to pin down expected values.

Nothing in this module imports from nlgotz.  Binomials come from the
Pascal recurrence, expansions from exhaustive search, matrix ranks from
sympy's exact GF(p) arithmetic, and polynomial images from dict-based
exponent bookkeeping.  Tests compare package output against these slower
but independently derived answers.
"""

from __future__ import annotations

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

# _columns[t][i] = C(t + i, t), grown on demand by the Pascal recurrence
_columns: list[list[int]] = [[1]]


def pascal_binom(m: int, k: int) -> int:
    """C(m, k) via the Pascal recurrence, 0 outside 0 <= k <= m.

    Grows cached triangle columns instead of rows, so large m with small k
    (the shape every expansion search needs) stays cheap; the symmetric
    reduction k -> m - k keeps the column count small in the other regime.
    """
    if k < 0 or m < 0 or k > m:
        return 0
    k = min(k, m - k)
    while len(_columns) <= k:
        _columns.append([1])
    for t in range(k + 1):
        col = _columns[t]
        while len(col) <= m - t:
            if t == 0:
                col.append(1)
            else:
                i = len(col)
                col.append(col[i - 1] + _columns[t - 1][i])
    return _columns[k][m - k]


def all_decompositions(c: int, d: int) -> list[tuple[int, ...]]:
    """Every expansion c = sum C(k_i, i), i = d down to some f, by brute force.

    Valid expansions have k_d > k_{d-1} > ... > k_f >= f >= 1.  The search
    tries every admissible leading index and recurses on the remainder, so
    the returned list is exhaustive; uniqueness of the Macaulay expansion
    is the statement that it always has length one (length zero never
    happens for c >= 0).
    """

    def search(rem: int, i: int, cap: int) -> list[tuple[int, ...]]:
        if rem == 0:
            return [()]
        if i < 1:
            return []
        found = []
        k = i
        while k <= cap and pascal_binom(k, i) <= rem:
            term = pascal_binom(k, i)
            # the tail below k at degrees i-1, i-2, ... is at most
            # C(k-1, i-1) + C(k-2, i-2) + ... = C(k, i-1) - 1 by the
            # hockey-stick identity, so branches that cannot reach rem
            # are cut without loss
            if rem - term <= pascal_binom(k, i - 1) - 1 or rem == term:
                for tail in search(rem - term, i - 1, k - 1):
                    found.append((k,) + tail)
            k += 1
        return found

    if c < 0 or d < 1:
        raise ValueError("need c >= 0 and d >= 1")
    return search(c, d, c + d)


def gfp_rank(rows, p: int) -> int:
    """Rank over GF(p) via sympy's exact domain matrices."""
    rows = [[int(x) for x in row] for row in rows]
    if not rows or not rows[0]:
        return 0
    K = GF(p)
    dm = DomainMatrix([[K(x) for x in row] for row in rows], (len(rows), len(rows[0])), K)
    _, pivots = dm.rref()
    return len(pivots)


# -- dict polynomials: {exponent tuple: coefficient}, vectors are tuples of
#    one polynomial per sheaf summand --


def poly_times_var(poly: dict, var: int) -> dict:
    out = {}
    for e, coeff in poly.items():
        shifted = list(e)
        shifted[var] += 1
        out[tuple(shifted)] = coeff
    return out


def vector_times_var(vec: tuple, var: int) -> tuple:
    return tuple(poly_times_var(f, var) for f in vec)


def vectors_rank(vectors: list, p: int) -> int:
    """Rank of a set of dict-polynomial vectors over GF(p).

    Columns are the exponents actually present; absent ambient monomials
    contribute zero columns, which cannot change the rank.
    """
    cols = sorted(
        {(bi, e) for vec in vectors for bi, f in enumerate(vec) for e in f}
    )
    if not cols or not vectors:
        return 0
    index = {key: j for j, key in enumerate(cols)}
    rows = []
    for vec in vectors:
        row = [0] * len(cols)
        for bi, f in enumerate(vec):
            for e, coeff in f.items():
                row[index[(bi, e)]] = coeff % p
        rows.append(row)
    return gfp_rank(rows, p)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def multinomial(k: int, parts: tuple[int, ...]) -> int:
    """k! / (parts_1! ... parts_r!) as a product of Pascal binomials."""
    out = 1
    running = k
    for c in parts:
        out *= pascal_binom(running, c)
        running -= c
    return out


def substitute_last_variable(poly: dict, mu: tuple[int, ...], p: int) -> dict:
    """Replace the last variable by sum(mu[i] x_i) in a dict polynomial.

    Expands each power of the last variable with the multinomial theorem
    over the remaining variables, reducing coefficients mod p.
    """
    out: dict = {}
    for expo, coeff in poly.items():
        t = expo[-1]
        base = expo[:-1]
        for gamma in _compositions(t, len(base)):
            term = coeff * multinomial(t, gamma)
            for mi, gi in zip(mu, gamma):
                term *= mi**gi
            new = tuple(b + g for b, g in zip(base, gamma)) + (0,)
            out[new] = (out.get(new, 0) + term) % p
    return {e: c for e, c in out.items() if c}
