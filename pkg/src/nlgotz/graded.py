"""Exact finite-field verification on graded pieces of split sheaves.

The objects here are subspaces V of H^0(M(d)) for M = O(a_1) + ... + O(a_r)
on P^N, stored as reduced row echelon bases over F_p with columns indexed by
monomials (one block per summand, descending lex inside each block).  On top
of that single representation sit the verifiable statements: the Macaulay
bound on codimension growth under multiplication by linear forms, additivity
and the restriction bound for generic hyperplane sections, base-point-freeness
certificates, and middle exactness of Koszul complexes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from itertools import combinations

import numpy as np

from . import modp
from .macaulay import lower_macaulay, upper_macaulay
from .monomials import dim_degree, monomial_index, monomials, shift_table, unit_exponent

__all__ = [
    "RingContext",
    "SplitSheaf",
    "GradedSubspace",
    "GenericityError",
    "BudgetExceededError",
    "CertificationError",
    "section_dim",
    "is_cm_regular",
    "full_space",
    "zero_subspace",
    "subspace_from_rows",
    "lex_segment_subspace",
    "random_subspace",
    "multiply",
    "GotzmannCheck",
    "check_macaulay_gotzmann",
    "RestrictionResult",
    "restrict_to_hyperplane",
    "is_basepoint_free",
    "KoszulResult",
    "koszul_middle_exact",
]

DEFAULT_PRIME = 101
RETRY_CAP = 16


class GenericityError(RuntimeError):
    """No random hyperplane behaved generically within the retry cap."""


class BudgetExceededError(RuntimeError):
    """A requested exact computation would exceed the entry budget."""


class CertificationError(ValueError):
    """A hypothesis that must be certified first could not be."""


@dataclass(frozen=True)
class RingContext:
    """Ambient projective space P^N together with the working prime p."""

    N: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("projective dimension N must be nonnegative")
        modp.check_prime(self.p)


@dataclass(frozen=True)
class SplitSheaf:
    """A direct sum of line bundles O(a_1) + ... + O(a_r), r >= 1."""

    twists: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(a) for a in self.twists))
        if len(self.twists) == 0:
            raise ValueError("a split sheaf needs at least one summand")


def is_cm_regular(sheaf: SplitSheaf) -> bool:
    """Regularity of the sum in the Castelnuovo-Mumford sense.

    For a line bundle O(a) on P^N the only cohomology that can obstruct is
    H^N(O(a - N)), which vanishes exactly when a >= 0; a direct sum is regular
    when every summand is.
    """
    return all(a >= 0 for a in sheaf.twists)


def _layout(context: RingContext, sheaf: SplitSheaf, degree: int):
    """Per-summand (twist, block degree, block dim, column offset)."""
    nv = context.N + 1
    blocks = []
    off = 0
    for a in sheaf.twists:
        m = degree + a
        dim = dim_degree(nv, m)
        blocks.append((a, m, dim, off))
        off += dim
    return blocks, off


def section_dim(sheaf: SplitSheaf, degree: int, context: RingContext) -> int:
    """dim H^0(M(degree)) = sum of C(N + degree + a_j, N) over the summands."""
    return _layout(context, sheaf, degree)[1]


@dataclass(frozen=True, eq=False)
class GradedSubspace:
    """A subspace of H^0(M(degree)), held as a canonical RREF basis.

    The basis rows are reduced mod p and linearly independent, so
    codim = ambient columns - rows, exactly.
    """

    context: RingContext
    sheaf: SplitSheaf
    degree: int
    basis: np.ndarray

    def __post_init__(self):
        n = section_dim(self.sheaf, self.degree, self.context)
        b = modp.row_space(np.asarray(self.basis).reshape(-1, n), self.context.p)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim


def full_space(context: RingContext, sheaf: SplitSheaf, degree: int) -> GradedSubspace:
    n = section_dim(sheaf, degree, context)
    return GradedSubspace(context, sheaf, degree, np.eye(n, dtype=np.int64))


def zero_subspace(context: RingContext, sheaf: SplitSheaf, degree: int) -> GradedSubspace:
    n = section_dim(sheaf, degree, context)
    return GradedSubspace(context, sheaf, degree, np.zeros((0, n), dtype=np.int64))


def subspace_from_rows(
    context: RingContext, sheaf: SplitSheaf, degree: int, rows: np.ndarray
) -> GradedSubspace:
    """Span of arbitrary coefficient rows (reduced to the canonical basis)."""
    return GradedSubspace(context, sheaf, degree, rows)


def lex_segment_subspace(c: int, degree: int, context: RingContext) -> GradedSubspace:
    """The degree-`degree` slice of the lex-segment ideal of codimension c.

    Spans the dim - c lexicographically greatest monomials of S_degree (order
    x_0 > x_1 > ... > x_N), i.e. drops the c least.  This is the classical
    extremal witness: multiplying by linear forms grows its codimension to
    exactly upper_macaulay(c, degree).
    """
    sheaf = SplitSheaf((0,))
    n = section_dim(sheaf, degree, context)
    if not 0 <= c <= n:
        raise ValueError(f"codimension {c} out of range for ambient dimension {n}")
    return GradedSubspace(context, sheaf, degree, np.eye(n, dtype=np.int64)[: n - c])


def random_subspace(
    context: RingContext,
    sheaf: SplitSheaf,
    degree: int,
    rng: np.random.Generator,
    dim: int | None = None,
) -> GradedSubspace:
    """Row space of a uniform random coefficient matrix with `dim` rows.

    The observed dimension can come out lower on degenerate draws; callers
    read the codimension off the result rather than assuming it.
    """
    n = section_dim(sheaf, degree, context)
    if dim is None:
        dim = int(rng.integers(0, n + 1))
    if not 0 <= dim <= n:
        raise ValueError(f"requested dimension {dim} out of range")
    rows = rng.integers(0, context.p, size=(dim, n)).astype(np.int64)
    return GradedSubspace(context, sheaf, degree, rows)


def _times_linear_forms(v: GradedSubspace) -> GradedSubspace:
    """The image of V under multiplication by all linear forms, one degree up."""
    ctx = v.context
    nv = ctx.N + 1
    src, n_src = _layout(ctx, v.sheaf, v.degree)
    tgt, n_tgt = _layout(ctx, v.sheaf, v.degree + 1)
    r = v.dim
    if r == 0:
        return zero_subspace(ctx, v.sheaf, v.degree + 1)
    rows = np.zeros((r * nv, n_tgt), dtype=np.int64)
    for i in range(nv):
        colmap = np.empty(n_src, dtype=np.int64)
        for (a, m, dim, off), (_, _, _, toff) in zip(src, tgt):
            if dim == 0:
                continue
            colmap[off : off + dim] = toff + shift_table(nv, m, unit_exponent(nv, i))
        rows[i * r : (i + 1) * r, colmap] = v.basis
    return GradedSubspace(ctx, v.sheaf, v.degree + 1, rows)


def multiply(v: GradedSubspace, t: int) -> GradedSubspace:
    """The subspace mu(V x S_t) of H^0(M(degree + t)) spanned by products."""
    if t < 1:
        raise ValueError("multiplication degree t must be at least 1")
    out = v
    for _ in range(t):
        out = _times_linear_forms(out)
    return out


@dataclass(frozen=True)
class GotzmannCheck:
    """Observed one-step codimension growth against the Macaulay bound."""

    codim: int
    codim_next: int
    bound: int
    holds: bool


def check_macaulay_gotzmann(v: GradedSubspace) -> GotzmannCheck:
    """Verify codim mu(V x S_1) <= upper_macaulay(codim V, degree).

    Requires a regular sheaf and degree >= 1; outside that range the bound is
    not asserted.
    """
    if not is_cm_regular(v.sheaf):
        raise ValueError("the growth bound needs a regular sheaf (all twists >= 0)")
    if v.degree < 1:
        raise ValueError("the growth bound needs degree >= 1")
    c = v.codim
    w = multiply(v, 1)
    bound = upper_macaulay(c, v.degree)
    return GotzmannCheck(codim=c, codim_next=w.codim, bound=bound, holds=w.codim <= bound)


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _substitution_matrix(
    context: RingContext, sheaf: SplitSheaf, degree: int, lam: np.ndarray
) -> np.ndarray:
    """Matrix of the restriction map H^0(M(degree)) -> H^0(M_H(degree)).

    The hyperplane H = {lam . x = 0} has lam[N] != 0, so restriction is the
    substitution x_N -> -(lam_0 x_0 + ... + lam_{N-1} x_{N-1}) / lam_N into
    the remaining variables.
    """
    p = context.p
    nv = context.N + 1
    q = nv - 1
    mu = [(-int(lam[i]) * pow(int(lam[nv - 1]), -1, p)) % p for i in range(q)]
    src, n_src = _layout(context, sheaf, degree)
    ctx_h = RingContext(context.N - 1, p)
    tgt, n_tgt = _layout(ctx_h, sheaf, degree)
    s = np.zeros((n_src, n_tgt), dtype=np.int64)
    for (a, m, dim, off), (_, _, tdim, toff) in zip(src, tgt):
        if dim == 0:
            continue
        tgt_idx = monomial_index(q, m)
        for js, e in enumerate(monomials(nv, m)):
            t = e[q]
            base = e[:q]
            fact = math.factorial(t)
            for gamma in _compositions(t, q):
                coeff = fact
                for gi in gamma:
                    coeff //= math.factorial(gi)
                coeff %= p
                for i, gi in enumerate(gamma):
                    for _ in range(gi):
                        coeff = coeff * mu[i] % p
                texp = tuple(b + g for b, g in zip(base, gamma))
                col = toff + tgt_idx[texp]
                s[off + js, col] = (s[off + js, col] + coeff) % p
    return s


def _linear_form_matrix(
    context: RingContext, sheaf: SplitSheaf, degree: int, lam: np.ndarray
) -> np.ndarray:
    """Matrix of multiplication by the linear form lam . x, one degree up."""
    nv = context.N + 1
    src, n_src = _layout(context, sheaf, degree - 1)
    tgt, n_tgt = _layout(context, sheaf, degree)
    m_l = np.zeros((n_src, n_tgt), dtype=np.int64)
    if n_src == 0:
        return m_l
    rows = np.arange(n_src)
    for i in range(nv):
        colmap = np.empty(n_src, dtype=np.int64)
        for (a, m, dim, off), (_, _, _, toff) in zip(src, tgt):
            if dim == 0:
                continue
            colmap[off : off + dim] = toff + shift_table(nv, m, unit_exponent(nv, i))
        m_l[rows, colmap] = (m_l[rows, colmap] + int(lam[i])) % context.p
    return m_l


@dataclass(frozen=True)
class RestrictionResult:
    """A generic hyperplane restriction together with the two exact checks."""

    v_h: GradedSubspace
    v_preimage: GradedSubspace
    additivity_holds: bool
    restriction_bound_holds: bool
    codim: int
    codim_h: int
    codim_preimage: int
    bound: int
    linear_form: tuple[int, ...]
    attempts: int


def _restrict_once(v: GradedSubspace, lam: np.ndarray) -> RestrictionResult:
    ctx = v.context
    p = ctx.p
    c = v.codim
    sub = _substitution_matrix(ctx, v.sheaf, v.degree, lam)
    ctx_h = RingContext(ctx.N - 1, p)
    v_h = GradedSubspace(ctx_h, v.sheaf, v.degree, modp.matmul_mod(v.basis, sub, p))

    m_l = _linear_form_matrix(ctx, v.sheaf, v.degree, lam)
    reduced = modp.reduce_rows(v.basis, m_l, p)
    piv = modp.pivot_columns(v.basis)
    free = np.setdiff1d(np.arange(v.ambient_dim), piv)
    quotient = np.ascontiguousarray(reduced[:, free])
    pre_basis = modp.left_nullspace(quotient, p)
    v_pre = GradedSubspace(ctx, v.sheaf, v.degree - 1, pre_basis)

    bound = lower_macaulay(c, v.degree)
    additivity = c == v_pre.codim + v_h.codim
    return RestrictionResult(
        v_h=v_h,
        v_preimage=v_pre,
        additivity_holds=additivity,
        restriction_bound_holds=v_h.codim <= bound,
        codim=c,
        codim_h=v_h.codim,
        codim_preimage=v_pre.codim,
        bound=bound,
        linear_form=tuple(int(x) for x in lam),
        attempts=1,
    )


def restrict_to_hyperplane(
    v: GradedSubspace, seed: int | np.random.Generator
) -> RestrictionResult:
    """Restrict V to a random hyperplane and run the two exact checks.

    Draws a linear form with nonzero last coordinate from the seeded
    generator.  A draw is accepted when the additivity identity
    codim V = codim V^H + codim V_H holds and the restriction stays within
    lower_macaulay(codim V, degree); both are generic-hyperplane statements,
    so a failing draw is treated as degenerate and redrawn, up to a cap of
    16 attempts.  Exhausting the cap raises GenericityError, which signals
    either a bad prime for this size of problem or an actual counterexample.
    """
    ctx = v.context
    if ctx.N < 1:
        raise ValueError("restriction needs an ambient hyperplane, so N >= 1")
    if v.degree < 1:
        raise ValueError("restriction bound needs degree >= 1")
    if not is_cm_regular(v.sheaf):
        raise ValueError("the restriction bound needs a regular sheaf (all twists >= 0)")
    rng = seed if isinstance(seed, np.random.Generator) else _seeded_rng(seed)
    nv = ctx.N + 1
    last = None
    for attempt in range(1, RETRY_CAP + 1):
        lam = rng.integers(0, ctx.p, size=nv).astype(np.int64)
        lam[nv - 1] = int(rng.integers(1, ctx.p))
        last = _restrict_once(v, lam)
        if last.additivity_holds and last.restriction_bound_holds:
            return replace(last, attempts=attempt)
        # degenerate draw for a generic-hyperplane statement; redraw
    raise GenericityError(
        f"no generic hyperplane found in {RETRY_CAP} draws "
        f"(N={ctx.N}, p={ctx.p}, degree={v.degree}, codim={last.codim})"
    )


def _seeded_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _evaluate_at_points(
    basis: np.ndarray, exps: tuple[tuple[int, ...], ...], pts: np.ndarray, p: int
) -> np.ndarray:
    """Values of each basis row at each point, as a (points x rows) matrix."""
    vals = np.empty((pts.shape[0], len(exps)), dtype=np.int64)
    for j, e in enumerate(exps):
        col = np.ones(pts.shape[0], dtype=np.int64)
        for i, ei in enumerate(e):
            for _ in range(ei):
                col = col * pts[:, i] % p
        vals[:, j] = col
    return modp.matmul_mod(vals, np.ascontiguousarray(basis.T), p)


def is_basepoint_free(
    v: GradedSubspace, t_max: int = 6, scan_limit: int = 2_000_000
) -> str:
    """Certify base-point-freeness of a line-bundle subsystem, if possible.

    Returns "free" when mu(V x S_t) fills the ambient space for some
    t <= t_max (the section ring saturates, so no base point can exist),
    "not_free" when a common zero is found among the rational points of
    P^N(F_p), and "inconclusive" otherwise.  The rational-point scan is
    skipped when P^N(F_p) has more than scan_limit points.
    """
    if len(v.sheaf.twists) != 1:
        raise ValueError("base-point-freeness is checked for a single line bundle")
    if v.dim == 0:
        return "not_free"
    w = v
    for _ in range(t_max):
        w = _times_linear_forms(w)
        if w.codim == 0:
            return "free"
    ctx = v.context
    p, nv = ctx.p, ctx.N + 1
    total_points = (p ** nv - 1) // (p - 1)
    if total_points > scan_limit:
        return "inconclusive"
    exps = monomials(nv, v.degree + v.sheaf.twists[0])
    chunk = 65536
    for lead in range(nv):
        span = p ** (nv - 1 - lead)
        for start in range(0, span, chunk):
            idx = np.arange(start, min(start + chunk, span), dtype=np.int64)
            pts = np.zeros((idx.size, nv), dtype=np.int64)
            pts[:, lead] = 1
            rem = idx
            for j in range(nv - 1, lead, -1):
                pts[:, j] = rem % p
                rem = rem // p
            vals = _evaluate_at_points(v.basis, exps, pts, p)
            if np.any(np.all(vals == 0, axis=1)):
                return "not_free"
    # no rational base point; there may still be one over an extension field
    return "inconclusive"


@dataclass(frozen=True)
class KoszulResult:
    """Middle exactness of one Koszul strand, plus the range hypothesis."""

    exact: bool
    hypothesis_met: bool
    p_index: int
    k: int
    form_degree: int
    codim: int
    rank_in: int
    rank_out: int
    middle_dim: int


def koszul_middle_exact(
    v: GradedSubspace,
    k: int,
    p_index: int,
    t_max: int = 6,
    entry_budget: int = 20_000,
) -> KoszulResult:
    """Decide exactness of the Koszul strand at Wedge^{p+1} V x S_{k - D}.

    For p_index = 0 this is surjectivity of V x S_{k-D} -> S_k; for
    p_index = 1 it is middle exactness of
    Wedge^2 V x S_{k-D} -> V x S_k -> S_{k+D}, decided by comparing the rank
    of the incoming map with the nullity of the outgoing one (their
    composition is zero, so equality is exactness).  D is the degree of the
    forms spanning V.  The classical expectation is exactness whenever
    k >= p_index + D + codim V, reported as `hypothesis_met`.

    V must certify as base-point free first; matrices larger than
    entry_budget entries are refused rather than approximated.
    """
    if p_index not in (0, 1):
        raise ValueError("only the first two Koszul strands are supported")
    verdict = is_basepoint_free(v, t_max=t_max)
    if verdict != "free":
        raise CertificationError(
            f"base-point-freeness must certify before Koszul checks (got {verdict!r})"
        )
    ctx = v.context
    p, nv = ctx.p, ctx.N + 1
    d_form = v.degree + v.sheaf.twists[0]
    c = v.codim
    r = v.dim
    hypothesis = k >= p_index + d_form + c
    dim_k = dim_degree(nv, k)
    dim_kd = dim_degree(nv, k - d_form)

    if p_index == 0:
        entries = r * dim_kd * dim_k
        if entries > entry_budget:
            raise BudgetExceededError(f"{entries} matrix entries exceed the budget")
        rows = np.zeros((r * dim_kd, dim_k), dtype=np.int64)
        for fi, f in enumerate(monomials(nv, k - d_form)):
            tab = shift_table(nv, d_form, f)
            rows[fi * r : (fi + 1) * r, tab] = v.basis
        rank_in = modp.rank_of(rows, p)
        return KoszulResult(
            exact=rank_in == dim_k,
            hypothesis_met=hypothesis,
            p_index=0,
            k=k,
            form_degree=d_form,
            codim=c,
            rank_in=rank_in,
            rank_out=0,
            middle_dim=dim_k,
        )

    middle = r * dim_k
    dim_out = dim_degree(nv, k + d_form)
    pairs = list(combinations(range(r), 2))
    entries_in = len(pairs) * dim_kd * middle
    entries_out = middle * dim_out
    if max(entries_in, entries_out) > entry_budget:
        raise BudgetExceededError(
            f"{max(entries_in, entries_out)} matrix entries exceed the budget"
        )
    outgoing = np.zeros((middle, dim_out), dtype=np.int64)
    for gi, g in enumerate(monomials(nv, k)):
        tab = shift_table(nv, d_form, g)
        for i in range(r):
            outgoing[i * dim_k + gi, tab] = v.basis[i]
    incoming = np.zeros((len(pairs) * dim_kd, middle), dtype=np.int64)
    row = 0
    for i, j in pairs:
        for f in monomials(nv, k - d_form):
            tab = shift_table(nv, d_form, f)
            incoming[row, i * dim_k + tab] = v.basis[j]
            incoming[row, j * dim_k + tab] = (p - v.basis[i]) % p
            row += 1
    rank_out = modp.rank_of(outgoing, p)
    rank_in = modp.rank_of(incoming, p)
    return KoszulResult(
        exact=rank_in == middle - rank_out,
        hypothesis_met=hypothesis,
        p_index=1,
        k=k,
        form_degree=d_form,
        codim=c,
        rank_in=rank_in,
        rank_out=rank_out,
        middle_dim=middle,
    )
