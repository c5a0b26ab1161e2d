"""Graded subspaces over F_p: growth, restriction, freeness, Koszul strands.

The heavier statements are cross-checked against dict-polynomial oracles
and sympy ranks from tests/oracles.py, which share no code with the
package's scatter-matrix machinery.
"""

import numpy as np
import pytest

from nlgotz.graded import (
    BudgetExceededError,
    CertificationError,
    GenericityError,
    GradedSubspace,
    RingContext,
    SplitSheaf,
    check_macaulay_gotzmann,
    full_space,
    is_basepoint_free,
    is_cm_regular,
    koszul_middle_exact,
    lex_segment_subspace,
    multiply,
    random_subspace,
    restrict_to_hyperplane,
    section_dim,
    subspace_from_rows,
    zero_subspace,
)
from nlgotz.macaulay import upper_macaulay
from nlgotz.monomials import dim_degree, monomial_index, monomials

from oracles import (
    substitute_last_variable,
    vector_times_var,
    vectors_rank,
)

P = 101


def _as_dict_vectors(v):
    """Convert basis rows into tuples of exponent-dict polynomials."""
    nv = v.context.N + 1
    blocks = []
    off = 0
    for a in v.sheaf.twists:
        monos = monomials(nv, v.degree + a)
        blocks.append((monos, off))
        off += len(monos)
    out = []
    for row in v.basis:
        vec = []
        for monos, boff in blocks:
            vec.append(
                {e: int(row[boff + j]) for j, e in enumerate(monos) if row[boff + j]}
            )
        out.append(tuple(vec))
    return out


def _squares(ctx):
    """span{x0^2, x1^2, x2^2} inside the conics on P^2."""
    sheaf = SplitSheaf((0,))
    idx = monomial_index(3, 2)
    rows = np.zeros((3, 6), dtype=np.int64)
    for i, e in enumerate([(2, 0, 0), (0, 2, 0), (0, 0, 2)]):
        rows[i, idx[e]] = 1
    return subspace_from_rows(ctx, sheaf, 2, rows)


def test_context_and_sheaf_validation():
    with pytest.raises(ValueError):
        RingContext(-1)
    with pytest.raises(ValueError):
        RingContext(2, 100)
    with pytest.raises(ValueError):
        SplitSheaf(())
    assert RingContext(2).p == P
    assert is_cm_regular(SplitSheaf((0, 1, 2)))
    assert not is_cm_regular(SplitSheaf((0, -1)))


def test_section_dim_frozen():
    ctx = RingContext(3, P)
    assert section_dim(SplitSheaf((0,)), 2, ctx) == 10
    ctx2 = RingContext(2, P)
    assert section_dim(SplitSheaf((0, 1)), 1, ctx2) == 3 + 6
    assert section_dim(SplitSheaf((0,)), -1, ctx2) == 0
    assert section_dim(SplitSheaf((-3, 0)), 1, ctx2) == 0 + 3


def test_subspace_canonicalization():
    ctx = RingContext(2, P)
    sheaf = SplitSheaf((0,))
    rows = np.array([[2, 4, 6, 0, 0, 0], [1, 2, 3, 0, 0, 0], [0, 0, 0, 5, 0, 0]])
    v = subspace_from_rows(ctx, sheaf, 2, rows)
    assert v.ambient_dim == 6
    assert v.dim == 2 and v.codim == 4
    # rows are the canonical reduced echelon basis, pivots normalized to 1
    assert v.basis[0].tolist() == [1, 2, 3, 0, 0, 0]
    assert v.basis[1].tolist() == [0, 0, 0, 1, 0, 0]
    with pytest.raises(ValueError):
        v.basis[0, 0] = 9  # read-only


def test_full_zero_and_lex_edges():
    ctx = RingContext(3, P)
    sheaf = SplitSheaf((0,))
    assert full_space(ctx, sheaf, 2).codim == 0
    assert zero_subspace(ctx, sheaf, 2).dim == 0
    assert lex_segment_subspace(0, 2, ctx).codim == 0
    assert lex_segment_subspace(10, 2, ctx).dim == 0
    with pytest.raises(ValueError):
        lex_segment_subspace(11, 2, ctx)
    with pytest.raises(ValueError):
        lex_segment_subspace(-1, 2, ctx)


def test_lex_segment_keeps_greatest_monomials():
    ctx = RingContext(1, P)
    v = lex_segment_subspace(2, 2, ctx)
    # of {x0^2, x0 x1, x1^2} only the single greatest survives
    assert v.basis.tolist() == [[1, 0, 0]]


def test_multiply_against_dict_oracle():
    rng = np.random.default_rng(31)
    for twists in [(0,), (0, 1)]:
        for d in (1, 2):
            ctx = RingContext(2, P)
            sheaf = SplitSheaf(twists)
            n = section_dim(sheaf, d, ctx)
            v = random_subspace(ctx, sheaf, d, rng, dim=min(4, n - 1))
            w = multiply(v, 1)
            vecs = [
                vector_times_var(vec, i)
                for vec in _as_dict_vectors(v)
                for i in range(3)
            ]
            assert vectors_rank(vecs, P) == w.dim
            # two single steps equal one double step
            assert multiply(v, 2).basis.tolist() == multiply(w, 1).basis.tolist()
    with pytest.raises(ValueError):
        multiply(v, 0)


def test_multiply_edges():
    ctx = RingContext(2, P)
    sheaf = SplitSheaf((0,))
    assert multiply(full_space(ctx, sheaf, 1), 1).codim == 0
    assert multiply(zero_subspace(ctx, sheaf, 1), 3).dim == 0


def test_gotzmann_growth_lex_is_sharp():
    ctx = RingContext(3, P)
    for d in (1, 2, 3):
        n = dim_degree(4, d)
        for c in range(0, min(n, 12) + 1):
            chk = check_macaulay_gotzmann(lex_segment_subspace(c, d, ctx))
            assert chk.holds
            assert chk.codim_next == chk.bound == upper_macaulay(c, d)


def test_gotzmann_growth_frozen_example():
    ctx = RingContext(3, P)
    chk = check_macaulay_gotzmann(lex_segment_subspace(5, 2, ctx))
    assert (chk.codim, chk.codim_next, chk.bound, chk.holds) == (5, 7, 7, True)


def test_gotzmann_random_split_sheaves():
    rng = np.random.default_rng(8)
    for twists in [(0,), (0, 2), (1, 1, 0)]:
        ctx = RingContext(2, P)
        v = random_subspace(ctx, SplitSheaf(twists), 2, rng)
        assert check_macaulay_gotzmann(v).holds


def test_gotzmann_preconditions():
    ctx = RingContext(2, P)
    with pytest.raises(ValueError):
        check_macaulay_gotzmann(full_space(ctx, SplitSheaf((-1,)), 2))
    with pytest.raises(ValueError):
        check_macaulay_gotzmann(full_space(ctx, SplitSheaf((0,)), 0))


def test_restriction_frozen_example():
    ctx = RingContext(3, P)
    v = lex_segment_subspace(5, 2, ctx)
    res = restrict_to_hyperplane(v, seed=1)
    assert res.codim == 5
    assert res.bound == 2
    assert res.additivity_holds and res.restriction_bound_holds
    assert res.codim == res.codim_h + res.codim_preimage
    assert res.codim_h <= 2
    assert res.v_h.context.N == 2
    assert res.v_preimage.degree == 1
    assert len(res.linear_form) == 4 and res.linear_form[-1] != 0


def test_restriction_is_deterministic():
    ctx = RingContext(2, P)
    rng = np.random.default_rng(40)
    v = random_subspace(ctx, SplitSheaf((0, 1)), 2, rng, dim=5)
    a = restrict_to_hyperplane(v, seed=7)
    b = restrict_to_hyperplane(v, seed=7)
    assert a.linear_form == b.linear_form
    assert a.v_h.basis.tolist() == b.v_h.basis.tolist()
    assert a.v_preimage.basis.tolist() == b.v_preimage.basis.tolist()


def test_restriction_against_substitution_oracle():
    ctx = RingContext(2, P)
    rng = np.random.default_rng(17)
    v = random_subspace(ctx, SplitSheaf((0,)), 2, rng, dim=3)
    res = restrict_to_hyperplane(v, seed=5)
    lam = res.linear_form
    inv_last = pow(lam[2], -1, P)
    mu = tuple((-lam[i] * inv_last) % P for i in range(2))
    # independently substitute into each basis polynomial and take the rank
    restricted = []
    for (poly,) in _as_dict_vectors(v):
        sub = substitute_last_variable(poly, mu, P)
        restricted.append(({e[:2]: c for e, c in sub.items()},))
    assert vectors_rank(restricted, P) == res.v_h.dim
    # the preimage really multiplies into V under the form lam . x
    v_rows = _as_dict_vectors(v)
    base_rank = vectors_rank(v_rows, P)
    assert base_rank == v.dim
    for vec in _as_dict_vectors(res.v_preimage):
        prod: dict = {}
        for i in range(3):
            shifted = vector_times_var(vec, i)[0]
            for e, c in shifted.items():
                prod[e] = (prod.get(e, 0) + lam[i] * c) % P
        prod = {e: c for e, c in prod.items() if c}
        assert vectors_rank(v_rows + [(prod,)], P) == base_rank


def test_restriction_degree_one_bound_is_exact():
    ctx = RingContext(3, P)
    rng = np.random.default_rng(3)
    v = random_subspace(ctx, SplitSheaf((0,)), 1, rng, dim=2)
    res = restrict_to_hyperplane(v, seed=2)
    assert res.bound == v.codim - 1
    assert res.codim_h <= v.codim - 1


def test_restriction_preconditions():
    ctx0 = RingContext(0, P)
    with pytest.raises(ValueError):
        restrict_to_hyperplane(full_space(ctx0, SplitSheaf((0,)), 2), seed=0)
    ctx = RingContext(2, P)
    with pytest.raises(ValueError):
        restrict_to_hyperplane(full_space(ctx, SplitSheaf((0,)), 0), seed=0)
    with pytest.raises(ValueError):
        restrict_to_hyperplane(full_space(ctx, SplitSheaf((-2,)), 3), seed=0)


def test_basepoint_free_verdicts():
    ctx = RingContext(2, P)
    sheaf = SplitSheaf((0,))
    assert is_basepoint_free(full_space(ctx, sheaf, 2)) == "free"
    assert is_basepoint_free(zero_subspace(ctx, sheaf, 2)) == "not_free"
    # x0 * S_1 vanishes along the line x0 = 0
    idx = monomial_index(3, 2)
    rows = np.zeros((3, 6), dtype=np.int64)
    for i, e in enumerate([(2, 0, 0), (1, 1, 0), (1, 0, 1)]):
        rows[i, idx[e]] = 1
    assert is_basepoint_free(subspace_from_rows(ctx, sheaf, 2, rows)) == "not_free"
    # the three squares saturate at the second multiplication step
    assert is_basepoint_free(_squares(ctx)) == "free"
    # dropping the least monomial of the conics leaves the base point (0:0:1)
    assert is_basepoint_free(lex_segment_subspace(1, 2, ctx)) == "not_free"


def test_basepoint_free_inconclusive_paths():
    ctx = RingContext(2, P)
    squares = _squares(ctx)
    # saturation needs two steps; with one step and no rational zero the
    # scan cannot settle it (a base point could hide in an extension field)
    assert is_basepoint_free(squares, t_max=1) == "inconclusive"
    assert is_basepoint_free(squares, t_max=1, scan_limit=10) == "inconclusive"
    with pytest.raises(ValueError):
        is_basepoint_free(full_space(ctx, SplitSheaf((0, 1)), 2))


def test_koszul_surjectivity_strand():
    ctx = RingContext(2, P)
    squares = _squares(ctx)
    res = koszul_middle_exact(squares, 5, 0)
    assert res.exact and res.hypothesis_met
    assert res.rank_in == res.middle_dim == dim_degree(3, 5) == 21
    # below the certified range the map can still be onto, but at k = 2 the
    # image is V itself, a strict subspace
    res = koszul_middle_exact(squares, 2, 0)
    assert not res.hypothesis_met
    assert not res.exact
    assert res.rank_in == 3 and res.middle_dim == 6


def test_koszul_middle_strand_frozen():
    ctx = RingContext(2, P)
    res = koszul_middle_exact(_squares(ctx), 6, 1)
    assert res.exact and res.hypothesis_met
    assert (res.middle_dim, res.rank_out, res.rank_in) == (84, 45, 39)


def test_koszul_middle_strand_against_dict_oracle():
    ctx = RingContext(2, P)
    v = full_space(ctx, SplitSheaf((0,)), 1)
    res = koszul_middle_exact(v, 2, 1)
    assert res.exact and res.hypothesis_met
    assert (res.middle_dim, res.rank_out, res.rank_in) == (18, 10, 8)
    basis = [vec[0] for vec in _as_dict_vectors(v)]
    r = len(basis)

    def poly_times_mono(poly, mono):
        return {tuple(a + b for a, b in zip(e, mono)): c for e, c in poly.items()}

    outgoing = []
    for i in range(r):
        for g in monomials(3, 2):
            outgoing.append((poly_times_mono(basis[i], g),))
    assert vectors_rank(outgoing, P) == res.rank_out
    incoming = []
    for i in range(r):
        for j in range(i + 1, r):
            for f in monomials(3, 1):
                vec = [dict() for _ in range(r)]
                vec[i] = poly_times_mono(basis[j], f)
                vec[j] = {e: (-c) % P for e, c in poly_times_mono(basis[i], f).items()}
                incoming.append(tuple(vec))
    assert vectors_rank(incoming, P) == res.rank_in


def test_koszul_guards():
    ctx = RingContext(2, P)
    squares = _squares(ctx)
    with pytest.raises(ValueError):
        koszul_middle_exact(squares, 5, 2)
    with pytest.raises(BudgetExceededError):
        koszul_middle_exact(squares, 6, 1, entry_budget=100)
    idx = monomial_index(3, 2)
    rows = np.zeros((3, 6), dtype=np.int64)
    for i, e in enumerate([(2, 0, 0), (1, 1, 0), (1, 0, 1)]):
        rows[i, idx[e]] = 1
    not_free = subspace_from_rows(ctx, SplitSheaf((0,)), 2, rows)
    with pytest.raises(CertificationError):
        koszul_middle_exact(not_free, 5, 0)


def test_random_subspace_bounds():
    ctx = RingContext(2, P)
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        random_subspace(ctx, SplitSheaf((0,)), 2, rng, dim=7)
    v = random_subspace(ctx, SplitSheaf((0,)), 2, rng, dim=0)
    assert v.dim == 0


def test_random_subspace_is_seed_deterministic():
    ctx = RingContext(3, P)
    sheaf = SplitSheaf((0, 1))
    a = random_subspace(ctx, sheaf, 2, np.random.default_rng(123))
    b = random_subspace(ctx, sheaf, 2, np.random.default_rng(123))
    assert a.basis.tolist() == b.basis.tolist()
