"""Monomial bases of fixed degree in a fixed variable order.

Monomials are exponent tuples, always enumerated in descending lexicographic
order with the first variable greatest (x_0 > x_1 > ... > x_N).  Everything
here is cached: the bases serve as column coordinates for the linear algebra
in `graded`, so repeated lookups must be cheap.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = ["dim_degree", "monomials", "monomial_index", "shift_table", "unit_exponent"]


def dim_degree(num_vars: int, degree: int) -> int:
    """Number of degree-`degree` monomials in `num_vars` variables (0 if degree < 0)."""
    if degree < 0:
        return 0
    return math.comb(num_vars - 1 + degree, num_vars - 1)


@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given degree, descending lex."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    if degree < 0:
        return ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for e0 in range(degree, -1, -1):
        for tail in monomials(num_vars - 1, degree - e0):
            out.append((e0,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[tuple[int, ...], int]:
    """Exponent tuple -> position in the descending lex enumeration."""
    return {e: i for i, e in enumerate(monomials(num_vars, degree))}


@lru_cache(maxsize=None)
def shift_table(num_vars: int, degree: int, shift: tuple[int, ...]) -> np.ndarray:
    """Index map for multiplication by the monomial with exponents `shift`.

    Entry j is the position of (degree-j monomial) * x^shift inside the basis
    of degree `degree + sum(shift)`.
    """
    tgt = monomial_index(num_vars, degree + sum(shift))
    src = monomials(num_vars, degree)
    table = np.empty(len(src), dtype=np.int64)
    for j, e in enumerate(src):
        table[j] = tgt[tuple(a + b for a, b in zip(e, shift))]
    table.setflags(write=False)
    return table


def unit_exponent(num_vars: int, i: int) -> tuple[int, ...]:
    """The exponent tuple of the single variable x_i."""
    e = [0] * num_vars
    e[i] = 1
    return tuple(e)
