"""Hilbert scheme charts at the regularity degree.

For an ideal generated in degree r, with r the Gotzmann number of its
Hilbert polynomial, all stratum equations live in degree r+1 and come out
of one matrix: rows are the coefficient vectors of X_k * F_i against the
degree-(r+1) monomial basis.  Row reduction against the rows whose leading
monomials span the degree-(r+1) part of the ideal turns the remaining rows
into S-polynomial reductions, so the residual block generates the stratum
ideal; size-(t1+1) minors generate the same ideal and serve as a
cross-check on tiny instances.  Charts of the Hilbert scheme itself use
unrestricted tails; comparing Plucker coordinates written as sorted
monomial lists identifies each stratum with a locally closed chart slice.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import monomials as mn
from .cpoly import CPoly, CRing, CVar, mono_total_degree
from .errors import BudgetExceeded, PreconditionError
from .groebner import CIdeal, krull_dimension, leading_mono, MonoOrder
from .ideals import (
    GotzmannParams,
    MonomialIdeal,
    gotzmann_params,
    hilbert_polynomial,
)
from .linalg import rank_dense
from .orders import TermOrder
from .stratum import (
    HOMOGENEOUS,
    EliminationState,
    StratumContext,
    StratumEmbedding,
    _finish_embedding,
    generic_generators,
    tails,
)

STRATUM, CHART = "stratum", "chart"


@dataclass
class CoeffMatrix:
    """Rows X_k F_i (or X_k G_i) against the degree-(r+1) monomial basis."""

    j: MonomialIdeal
    order: TermOrder
    mode: str
    params: GotzmannParams
    ring: CRing
    ctx: StratumContext  # generators with the mode's tails
    row_labels: list  # (variable k, generator position i)
    columns: list  # degree-(r+1) monomials, descending
    col_pos: dict
    rows: list  # dicts column position -> CPoly

    def shape(self):
        return len(self.rows), len(self.columns)

    def entry(self, r: int, c: int) -> CPoly:
        return self.rows[r].get(c, CPoly.zero(self.ring))


def _chart_tails(j: MonomialIdeal, order: TermOrder, r: int):
    """Unrestricted tails: every degree-r monomial outside j, per generator."""
    from .stratum import TailSpec

    comp = order.sort_desc(list(j.complement_of_degree(r)))
    return TailSpec(j, CHART, tuple(tuple(comp) for _ in j.gens))


def chart_context(j: MonomialIdeal, order: TermOrder, mode: str, r: int) -> StratumContext:
    if mode == CHART:
        return generic_generators(j, _chart_tails(j, order, r), order)
    return generic_generators(j, tails(j, order, HOMOGENEOUS), order)


def build_matrix(j: MonomialIdeal, order: TermOrder, mode: str = STRATUM,
                 force_degree: int | None = None) -> CoeffMatrix:
    """The t(n+1) x M1 coefficient matrix of the X_k-multiples.

    The ideal must be generated in degree r equal to the Gotzmann number of
    its Hilbert polynomial; ``force_degree`` overrides that check for small
    smoke tests and uses the given degree as r.
    """
    if force_degree is None:
        hd = hilbert_polynomial(j)
        params = gotzmann_params(hd.coeffs, j.nvars)
        r = params.r
        if j.generated_in_degree() != r:
            raise PreconditionError(
                f"{j} is not generated in degree {r} (the Gotzmann number of "
                f"{hd.poly_str()})"
            )
    else:
        r = force_degree
        if j.generated_in_degree() != r:
            raise PreconditionError(f"{j} is not generated in degree {r}")
        from math import comb

        n = j.nvars - 1
        M = comb(n + r, n)
        M1 = comb(n + r + 1, n)
        t = len(j.gens)
        t1 = sum(1 for _ in j.members_of_degree(r + 1))
        params = GotzmannParams(r, M, t, M1, t1)
    if mode not in (STRATUM, CHART):
        raise ValueError(f"unknown matrix mode {mode!r}")
    ctx = chart_context(j, order, mode, r)
    columns = order.sort_desc(list(mn.monomials_of_degree(j.nvars, r + 1)))
    col_pos = {m: i for i, m in enumerate(columns)}
    rows = []
    labels = []
    for i, g in enumerate(ctx.gens):
        for k in range(j.nvars - 1, -1, -1):
            xk = mn.variable(j.nvars, k)
            row = {}
            for a, c in g.terms.items():
                row[col_pos[mn.mul(a, xk)]] = c
            rows.append(row)
            labels.append((k, i))
    return CoeffMatrix(j, order, mode, params, ctx.ring, ctx, labels, columns, col_pos, rows)


@dataclass
class BlockForm:
    """The two-stage row reduction of a stratum-mode coefficient matrix."""

    matrix: CoeffMatrix
    pivot_rows: list  # row indices, aligned with j-columns (descending)
    j_columns: list  # column positions of the degree-(r+1) monomials in j
    rest_columns: list
    D: list  # pivot rows restricted to j-columns (sparse dicts)
    E: list  # pivot rows on the remaining columns
    S: list  # pre-reduction non-pivot rows on j-columns
    L: list  # pre-reduction non-pivot rows on remaining columns
    R: list  # post-reduction non-pivot rows on remaining columns
    h_generators: list = field(default_factory=list)
    linear_part: list = field(default_factory=list)


def block_reduce(mat: CoeffMatrix, state: EliminationState | None = None) -> BlockForm:
    """Two row-reduction passes extracting the stratum ideal and linear part.

    Pass 1 turns every non-pivot row into an S-polynomial row; pass 2
    eliminates their entries on the ideal's degree-(r+1) monomials, which
    is complete reduction in degree r+1.  When ``state`` is given, entries
    are normal-formed against it as they are consumed and harvested entries
    feed the elimination immediately.
    """
    if mat.mode == CHART:
        # rows must lead at the unit column, which needs stratum-shaped tails
        for r, (k, i) in enumerate(mat.row_labels):
            lead_pos = mat.col_pos[mn.mul(mat.j.gens[i], mn.variable(mat.j.nvars, k))]
            if any(c < lead_pos for c in mat.rows[r]):
                raise PreconditionError(
                    "chart-mode matrix has entries above a leading column; "
                    "block reduction applies to stratum-shaped matrices only"
                )
    jcols = [p for p, m in enumerate(mat.columns) if mat.j.contains(m)]
    if len(jcols) != mat.params.t1:
        raise PreconditionError(
            f"degree-(r+1) part has dimension {len(jcols)}, expected t1 = {mat.params.t1}"
        )
    jset = set(jcols)
    # one pivot row per j-column: the row with that leading column, first label wins
    pivot_of: dict = {}
    for r, (k, i) in enumerate(mat.row_labels):
        lead = mat.col_pos[mn.mul(mat.j.gens[i], mn.variable(mat.j.nvars, k))]
        if lead not in pivot_of:
            pivot_of[lead] = r
    if set(pivot_of) != jset:
        raise PreconditionError("pivot rows do not span the degree-(r+1) part")
    pivot_at = {col: pivot_of[col] for col in jcols}
    pivot_rows = [pivot_of[c] for c in jcols]
    pivot_set = set(pivot_rows)

    rest_cols = [p for p in range(len(mat.columns)) if p not in jset]
    D = [{c: v for c, v in mat.rows[r].items() if c in jset} for r in pivot_rows]
    E = [{c: v for c, v in mat.rows[r].items() if c not in jset} for r in pivot_rows]

    def sub_raw(a: dict, b: dict) -> dict:
        out = dict(a)
        for c, v in b.items():
            cur = out.get(c)
            s = (-v) if cur is None else cur - v
            if s.is_zero():
                out.pop(c, None)
            else:
                out[c] = s
        return out

    # pivot row tails as (column, variable index); entries are single variables
    pivot_tail: dict = {}
    for col, r in pivot_at.items():
        lst = []
        for c, v in mat.rows[r].items():
            if c == col:
                continue
            mono = next(iter(v.terms))
            assert len(mono) == 1 and mono[0][1] == 1 and v.terms[mono] == 1
            lst.append((c, mono[0][0]))
        pivot_tail[col] = lst

    S_block, L_block, R_block = [], [], []
    h_gens, lin = [], []
    seen_h, seen_l = set(), set()
    for r in range(len(mat.rows)):
        if r in pivot_set:
            continue
        k, i = mat.row_labels[r]
        lead = mat.col_pos[mn.mul(mat.j.gens[i], mn.variable(mat.j.nvars, k))]
        srow = sub_raw(mat.rows[r], mat.rows[pivot_at[lead]])
        S_block.append({c: v for c, v in srow.items() if c in jset})
        lrow = {c: v for c, v in srow.items() if c not in jset}
        L_block.append(lrow)
        for c in sorted(lrow):
            p = lrow[c].primitive()
            fs = frozenset(p.terms.items())
            if not p.is_zero() and fs not in seen_l:
                seen_l.add(fs)
                lin.append(p)
        # pass 2: kill j-columns left to right (descending monomials)
        while True:
            target = None
            for c in srow:
                if c in jset and (target is None or c < target):
                    target = c
            if target is None:
                break
            coeff = srow.pop(target)
            if state is not None:
                coeff = state.normal_form(coeff)
            if coeff.is_zero():
                continue
            for c, vi in pivot_tail[target]:
                w = coeff.mul_var(vi)
                cur = srow.get(c)
                s = (-w) if cur is None else cur - w
                if s.is_zero():
                    srow.pop(c, None)
                else:
                    srow[c] = s
        R_block.append(srow)
        for c in sorted(srow):
            entry = srow[c]
            if state is not None:
                entry = state.normal_form(entry)
            if entry.is_zero():
                continue
            p = entry.primitive()
            assert p.is_grade_homogeneous(), "matrix entry lost homogeneity"
            if state is not None:
                state.add_generator(p)
            fs = frozenset(p.terms.items())
            if fs not in seen_h:
                seen_h.add(fs)
                h_gens.append(p)
    return BlockForm(mat, pivot_rows, jcols, rest_cols, D, E, S_block, L_block,
                     R_block, h_gens, lin)


def chart_embedding(j: MonomialIdeal, order: TermOrder, mode: str = STRATUM,
                    force_degree: int | None = None) -> tuple:
    """Matrix-path pipeline: build, reduce with fused elimination, embed.

    Returns (CoeffMatrix, BlockForm, StratumEmbedding).
    """
    mat = build_matrix(j, order, mode, force_degree)
    state = EliminationState(mat.ring)
    block = block_reduce(mat, state)
    emb = _finish_embedding(mat.ctx, state)
    return mat, block, emb


# ---------------------------------------------------------------------------
# Minors
# ---------------------------------------------------------------------------


def minors_ideal(mat: CoeffMatrix, size: int | None = None,
                 max_minors: int = 4000, max_size: int = 6) -> CIdeal:
    """All size-(t1+1) minors; for tiny matrices only, budget enforced."""
    size = size if size is not None else mat.params.t1 + 1
    nrows, ncols = mat.shape()
    if size > max_size:
        raise BudgetExceeded(f"minor size {size} exceeds budget {max_size}")
    if size > nrows or size > ncols:
        return CIdeal(mat.ring, [])
    count = _binom(nrows, size) * _binom(ncols, size)
    if count > max_minors:
        raise BudgetExceeded(f"{count} minors of size {size} exceed budget {max_minors}")
    gens = []
    for rows in itertools.combinations(range(nrows), size):
        for cols in itertools.combinations(range(ncols), size):
            det = _det([[mat.rows[r].get(c, CPoly.zero(mat.ring)) for c in cols] for r in rows])
            if not det.is_zero():
                gens.append(det.primitive())
    return CIdeal(mat.ring, gens)


def _binom(n, k):
    from math import comb

    return comb(n, k)


def _det(m) -> CPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for c in range(n):
        if m[0][c].is_zero():
            continue
        minor = _det([row[:c] + row[c + 1:] for row in m[1:]])
        term = m[0][c] * minor
        if c % 2:
            term = -term
        total = term if total is None else total + term
    ring = m[0][0].ring
    return total if total is not None else CPoly.zero(ring)


# ---------------------------------------------------------------------------
# Plucker comparison and the locally closed chart slice
# ---------------------------------------------------------------------------


def plucker_compare(j1: MonomialIdeal, j2: MonomialIdeal, order: TermOrder) -> int:
    """Compare the descending generator lists lexicographically (-1, 0, 1)."""
    if j1.nvars != j2.nvars or len(j1.gens) != len(j2.gens):
        raise PreconditionError("Plucker comparison needs the same shape")
    d1, d2 = j1.generated_in_degree(), j2.generated_in_degree()
    if d1 is None or d1 != d2:
        raise PreconditionError("Plucker comparison needs one common generation degree")
    for a, b in zip(j1.sorted_gens(order), j2.sorted_gens(order)):
        c = order.compare(a, b)
        if c:
            return c
    return 0


def locally_closed_embedding(j: MonomialIdeal, order: TermOrder,
                             force_degree: int | None = None) -> CIdeal:
    """Stratum ideal extended to the chart ring plus the above-lead variables.

    In the chart coordinates (one variable per generator and degree-r
    complement monomial) the stratum is cut out by its own ideal together
    with the coefficients of complement monomials larger than the
    respective leading term.
    """
    mat, block, _ = chart_embedding(j, order, STRATUM, force_degree)
    chart_ctx = chart_context(j, order, CHART, mat.params.r)
    ring = chart_ctx.ring
    gens = []
    for pos in range(len(j.gens)):
        g = j.gens[pos]
        for a in chart_ctx.tailspec.tails[pos]:
            if order.compare(a, g) == 1:
                gens.append(CPoly.var(ring, chart_ctx.var_of[(pos, a)]))
    stratum_ctx = mat.ctx
    translate = {}
    for (pos, a), idx in stratum_ctx.var_of.items():
        translate[idx] = chart_ctx.var_of[(pos, a)]
    for p in block.h_generators:
        gens.append(CPoly(ring, {tuple(sorted((translate[v], e) for v, e in m)): c
                                 for m, c in p.terms.items()}))
    return CIdeal(ring, gens)


# ---------------------------------------------------------------------------
# Component analysis
# ---------------------------------------------------------------------------


def _embed_ideal(ring: CRing, gens) -> tuple:
    """(state, relations, ed, affine): elimination pass over an ideal.

    Generators are fed smallest degree first; ``settle`` re-reduces stored
    relations so linear parts uncovered late still get used.
    """
    state = EliminationState(ring)
    for g in sorted(gens, key=lambda p: p.total_degree()):
        state.add_generator(state.normal_form(g))
    state.settle()
    ed = ring.nvars() - len(state.basis)
    return state, list(state.relations), ed, not state.relations


def _dimension_of(ring: CRing, gens) -> tuple:
    """(dimension, affine, state) via elimination, then initial-ideal count."""
    state, relations, ed, affine = _embed_ideal(ring, gens)
    if affine:
        return ed, True, state
    survivors = state.survivors()
    sub, remap = ring.restrict(survivors)
    mapped = [CPoly(sub, {tuple((remap[v], e) for v, e in m): c for m, c in g.terms.items()})
              for g in relations]
    return krull_dimension(CIdeal(sub, mapped)), False, state


def sample_point(ring: CRing, gens, seed: int = 0, tries: int = 200,
                 nonzero: bool = True) -> list | None:
    """A rational point of V(gens), off the origin when possible.

    Affine-space parametrization when elimination empties the ideal, else
    rejection sampling over random survivor values.
    """
    state, relations, ed, affine = _embed_ideal(ring, gens)
    rng = random.Random(seed)
    survivors = state.survivors()

    def attempt():
        values = {
            i: (Fraction(rng.randint(-6, 6), rng.randint(1, 4)) if nonzero else Fraction(0))
            for i in survivors
        }
        return state.triangular_point(values)

    for _ in range(tries):
        point = attempt()
        if all(g.evaluate(point) == 0 for g in gens):
            if not nonzero or any(point):
                return point
    if affine and not survivors:
        return [Fraction(0)] * ring.nvars()  # the origin is the whole variety
    return None


def gradient_at(g: CPoly, point) -> list:
    """All partial derivatives of g evaluated at a point, in one pass."""
    nv = g.ring.nvars()
    out = [Fraction(0)] * nv
    for m, c in g.terms.items():
        for idx, (v, e) in enumerate(m):
            term = c * e
            for k, (w, f) in enumerate(m):
                term *= Fraction(point[w]) ** (f - 1 if k == idx else f)
            out[v] += term
    return out


@dataclass
class ComponentPart:
    gens: list
    dimension: int
    is_affine: bool


@dataclass
class ComponentReport:
    ambient: int
    common_factor: CPoly | None
    parts: list  # ComponentPart
    intersection_dim: int | None
    transversal: bool | None
    jacobian_rank: int | None = None
    sample: list | None = None


def _content_monomial(gens) -> tuple:
    content = None
    for g in gens:
        for m in g.terms:
            d = dict(m)
            if content is None:
                content = d
            else:
                content = {v: min(e, d.get(v, 0)) for v, e in content.items() if d.get(v, 0)}
        if not content:
            return ()
    return tuple(sorted((content or {}).items()))


def component_analysis(ring: CRing, gens, ed: int | None = None,
                       seed: int = 0) -> ComponentReport:
    """Split off a shared linear factor and measure the two components.

    The factor must be a single variable dividing every generator (the
    monomial content has degree one) or a linear generator dividing all
    others; anything subtler is reported as no common factor.
    Transversality is dimension additivity plus a full-rank Jacobian at a
    sampled intersection point.
    """
    ambient = ring.nvars()
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return ComponentReport(ambient, None, [ComponentPart([], ambient, True)], None, None)
    factor = None
    content = _content_monomial(gens)
    if mono_total_degree(content) == 1:
        factor = CPoly.var(ring, content[0][0])
    elif mono_total_degree(content) == 0:
        linear = [g for g in gens if g.total_degree() == 1]
        for cand in linear:
            try:
                order = MonoOrder(ring)
                from .groebner import _divide_exact

                for g in gens:
                    _divide_exact(g, cand, order)
                factor = cand
                break
            except ValueError:
                continue
    if factor is None:
        dim, affine, _ = _dimension_of(ring, gens)
        return ComponentReport(ambient, None, [ComponentPart(list(gens), dim, affine)], None, None)

    from .groebner import _divide_exact

    order = MonoOrder(ring)
    quotient = [_divide_exact(g, factor, order).primitive() for g in gens]
    d1, a1, _ = _dimension_of(ring, [factor])
    d2, a2, _ = _dimension_of(ring, quotient)
    inter_gens = [factor] + quotient
    dsum, _, _ = _dimension_of(ring, inter_gens)
    additive = dsum == d1 + d2 - ambient
    point = sample_point(ring, inter_gens, seed=seed)
    rank = None
    transversal: bool | None = None
    if point is not None:
        jac = [gradient_at(g, point) for g in inter_gens]
        rank = rank_dense(jac)
        transversal = additive and rank == ambient - dsum
    parts = [ComponentPart([factor], d1, a1), ComponentPart(quotient, d2, a2)]
    return ComponentReport(ambient, factor, parts, dsum, transversal, rank, point)
