"""Eliminable variables, minimal embeddings and truncation isomorphisms.

The linear part of the stratum ideal is the dual of the tangent space at
the origin.  Row-reducing it yields a maximal set of eliminable variables
C'; solving the generators for C' realizes the stratum inside the tangent
space, the smallest affine space carrying it.  A stratum is an affine
space exactly when nothing is left after elimination, i.e. the embedding
dimension equals the dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import monomials as mn
from .cpoly import CPoly, CRing
from .errors import PreconditionError
from .groebner import CIdeal, eliminate, ideal_equal, krull_dimension
from .ideals import MonomialIdeal, truncate
from .linalg import rref_sparse
from .orders import TermOrder
from .stratum import (
    HOMOGENEOUS,
    SubstitutionState,
    StratumContext,
    StratumEmbedding,
    _finish_embedding,
    spair_generators,
    stratum_embedding,
    tails,
)


@dataclass
class EmbeddingSplit:
    """Row-reduced linear part with the induced variable split."""

    ring: CRing
    eliminable: list  # C' variable indices (pivots), ascending ring index
    surviving: list  # C'' variable indices
    rref_rows: list  # dicts var index -> Fraction, one per pivot

    @property
    def ed(self) -> int:
        return len(self.surviving)


def eliminable_split(linear_part, ring: CRing) -> EmbeddingSplit:
    """Split the variables along the row-reduced linear part.

    Pivot columns (in the canonical variable order) are the eliminable
    variables; the rest span a complement of the linear part.
    """
    rows = []
    for p in linear_part:
        lin = p.linear_part()
        if len(lin) != len(p.terms):
            raise PreconditionError("linear part contains a nonlinear generator")
        if lin:
            rows.append({v: Fraction(c) for v, c in lin.items()})
    pivots, reduced = rref_sparse(rows)
    pivot_set = set(pivots)
    surviving = [i for i in range(ring.nvars()) if i not in pivot_set]
    return EmbeddingSplit(ring, sorted(pivots), surviving, reduced)


@dataclass
class MinimalEmbedding:
    """The stratum ideal pushed into its surviving variables."""

    ring: CRing  # ring on the surviving variables
    gens: list
    ed: int
    survivor_idx: list  # indices in the parent ring
    is_affine: bool
    dimension: int

    def ideal(self) -> CIdeal:
        return CIdeal(self.ring, self.gens)


def minimal_embedding(h_gens, split: EmbeddingSplit) -> MinimalEmbedding:
    """Eliminate exactly the split's pivot variables by solving generators.

    Homogeneity for the positive grading guarantees each eliminable
    variable occurs only linearly in a generator of its own weight, so
    iterated substitution computes the elimination ideal exactly.  Any
    pivot variable no generator solves is removed by a Groebner
    elimination pass (and reported via assertion failure when the
    resulting generators still mention it).
    """
    ring = split.ring
    eliminable = set(split.eliminable)
    state = SubstitutionState(ring)
    work = [g for g in h_gens if not g.is_zero()]
    stalled: list = []
    while work:
        nxt = []
        progress = False
        for g in work:
            g = state.apply(g)
            if g.is_zero():
                continue
            lin = g.linear_part()
            if lin and min(lin) in eliminable:
                # the leading linear variable of any generator lies in the
                # pivot set, and that is the one add_generator solves for
                state.add_generator(g)
                progress = True
            else:
                nxt.append(g)
        work = nxt
        if not progress:
            stalled = work
            break
    relations = [state.apply(g) for g in stalled]
    relations = [g.primitive() for g in relations if not g.is_zero()]
    unsolved = [v for v in eliminable if v not in state.table]
    if unsolved or any(set(r.variables()) & eliminable for r in relations):
        # fall back to honest elimination of the pivots
        full = CIdeal(ring, list(h_gens))
        elim = eliminate(full, eliminable)
        sub = elim.ring
        gens = elim.gens
        survivor_idx = split.surviving
    else:
        sub, remap = ring.restrict(split.surviving)
        gens = [
            CPoly(sub, {tuple((remap[v], e) for v, e in m): c for m, c in r.terms.items()})
            for r in relations
        ]
        survivor_idx = split.surviving
    is_affine = all(g.is_zero() for g in gens)
    dim = len(survivor_idx) if is_affine else krull_dimension(CIdeal(sub, gens))
    return MinimalEmbedding(sub, gens, len(survivor_idx), survivor_idx, is_affine, dim)


def embedding_of_result(result) -> tuple[EmbeddingSplit, MinimalEmbedding]:
    """Split + minimal embedding of a StratumResult in one call."""
    split = eliminable_split(result.linear_part, result.ctx.ring)
    return split, minimal_embedding(result.h_gens, split)


# ---------------------------------------------------------------------------
# Quick linear-part detection from S-pair shapes
# ---------------------------------------------------------------------------


def criterion_scan(ctx: StratumContext, pairs=None) -> list:
    """Linear-part elements read off S-pair cofactors without reducing.

    For a pair with cofactors (delta, eta) and a tail variable C[i,beta]:
    when X^(delta+beta) stays outside j, its coefficient in the reduction
    modulo j is C[i,beta] alone if delta+beta-eta is not a monomial of the
    partner generator, and C[i,beta] - C[j,beta'] when it matches a tail
    monomial beta'.  Everything emitted lies in the linear part.
    """
    if pairs is None:
        pairs = spair_generators(ctx.j, ctx.order)
    ring = ctx.ring
    out = []
    seen = set()
    for p in pairs:
        for (a, b, da, db) in ((p.i, p.j, p.cof_i, p.cof_j), (p.j, p.i, p.cof_j, p.cof_i)):
            for beta in ctx.tailspec.tails[a]:
                shifted = mn.mul(da, beta)
                if ctx.j.contains(shifted):
                    continue
                poly = CPoly.var(ring, ctx.var_of[(a, beta)])
                diff = tuple(x - y for x, y in zip(shifted, db))
                if all(e >= 0 for e in diff) and (b, diff) in ctx.var_of:
                    poly = poly - CPoly.var(ring, ctx.var_of[(b, diff)])
                fs = frozenset(poly.terms.items())
                if fs not in seen:
                    seen.add(fs)
                    out.append(poly)
    return out


# ---------------------------------------------------------------------------
# Truncation isomorphisms
# ---------------------------------------------------------------------------


def _canonical_key(var) -> tuple:
    """Identification key invariant under padding lead and tail by X_0."""
    lead, tail = var.lead, var.tail
    e = min(lead[0], tail[0])
    return (tuple(l - (e if k == 0 else 0) for k, l in enumerate(lead)),
            tuple(t - (e if k == 0 else 0) for k, t in enumerate(tail)))


def truncation_isomorphism_check(j0: MonomialIdeal, s: int, m: int,
                                 order: TermOrder) -> bool:
    """Compare the homogeneous strata of the degree-s and degree-m truncations.

    Requires j0 saturated, Borel-fixed, and X_1 absent from base monomials
    of degree > s.  Surviving variables are identified by stripping common
    X_0 powers from (lead, tail); the check returns True when the minimal
    embeddings agree under that identification (both being zero ideals of
    equal embedding dimension also qualifies).
    """
    from .ideals import is_borel_fixed, saturate

    if m < s:
        raise PreconditionError("need m >= s")
    if saturate(j0) != j0 or not is_borel_fixed(j0):
        raise PreconditionError("truncation comparison needs a saturated Borel-fixed ideal")
    for g in j0.gens:
        if mn.degree(g) > s and g[1] > 0:
            raise PreconditionError(
                f"X1 appears in the degree-{mn.degree(g)} base monomial "
                f"{mn.format_monomial(g)}; the hypothesis fails for s={s}"
            )
    embs = []
    for deg in (s, m):
        jt = truncate(j0, deg)
        emb = stratum_embedding(jt, tails(jt, order, HOMOGENEOUS), order)
        embs.append(emb)
    if m == s:
        return True
    ea, eb = embs
    if ea.ed != eb.ed:
        return False
    if ea.is_affine and eb.is_affine:
        return True
    keys_a = {_canonical_key(ea.minimal_ring.vars[i]): i for i in range(ea.ed)}
    keys_b = {_canonical_key(eb.minimal_ring.vars[i]): i for i in range(eb.ed)}
    if set(keys_a) != set(keys_b):
        return False
    # Map both sides into one ring keyed by the canonical identification;
    # variable order agrees because the sort keys are built from the
    # stripped monomials in both rings.
    common = ea.minimal_ring
    translate = {keys_b[k]: keys_a[k] for k in keys_a}
    gens_b = [
        CPoly(common, {tuple(sorted((translate[v], e) for v, e in mono)): c
                       for mono, c in g.terms.items()})
        for g in eb.minimal_gens
    ]
    return ideal_equal(CIdeal(common, ea.minimal_gens), CIdeal(common, gens_b))
