"""Buchberger engine and ideal queries over Q in the coefficient variables.

Plain Buchberger with the normal selection strategy (smallest lcm first),
the coprime criterion and the chain criterion, followed by interreduction,
so ``reduced_groebner`` is canonical for (generators, order).  On top of it
sit the queries the stratum analysis needs: ideal equality, elimination,
ideal quotient and the combinatorial Krull dimension of the initial ideal.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .cpoly import CPoly, CRing, CVar, mono_div, mono_divides, mono_mul, mono_total_degree
from .errors import BudgetExceeded

DEFAULT_MAX_REDUCTIONS = 2_000_000


class MonoOrder:
    """Default order of a ring: its own graded + lex comparison."""

    def __init__(self, ring: CRing):
        self.ring = ring

    def cmp(self, a, b) -> int:
        return self.ring.mono_cmp(a, b)


class ElimOrder:
    """Block order that eliminates ``dropped``: any monomial containing a
    dropped variable beats any monomial in the kept variables only."""

    def __init__(self, ring: CRing, dropped):
        self.ring = ring
        self.dropped = frozenset(dropped)

    def _split(self, m):
        dpart = tuple((v, e) for v, e in m if v in self.dropped)
        kpart = tuple((v, e) for v, e in m if v not in self.dropped)
        return dpart, kpart

    def cmp(self, a, b) -> int:
        da, ka = self._split(a)
        db, kb = self._split(b)
        ta, tb = mono_total_degree(da), mono_total_degree(db)
        if ta != tb:
            return 1 if ta > tb else -1
        c = self.ring.mono_cmp(da, db)
        if c:
            return c
        return self.ring.mono_cmp(ka, kb)


def leading_mono(p: CPoly, order) -> tuple:
    best = None
    for m in p.terms:
        if best is None or order.cmp(m, best) > 0:
            best = m
    return best


def normal_form(p: CPoly, basis, order, top_only=False, budget=None) -> CPoly:
    """Full (or top-only) reduction of p modulo a list of polynomials.

    basis entries are (poly, leading_mono, leading_coeff) triples.
    """
    if p.is_zero() or not basis:
        return p
    remainder: dict = {}
    work = dict(p.terms)
    steps = 0
    while work:
        m = None
        for cand in work:
            if m is None or order.cmp(cand, m) > 0:
                m = cand
        c = work.pop(m)
        red = None
        for g, lm, lc in basis:
            if mono_divides(lm, m):
                red = (g, lm, lc)
                break
        if red is None:
            remainder[m] = remainder.get(m, Fraction(0)) + c
            if not remainder[m]:
                del remainder[m]
            if top_only and remainder:
                # everything still in work is smaller than the irreducible lead
                for mm, cc in work.items():
                    s = remainder.get(mm, Fraction(0)) + cc
                    if s:
                        remainder[mm] = s
                    else:
                        remainder.pop(mm, None)
                break
            continue
        g, lm, lc = red
        factor = c / lc
        cof = mono_div(m, lm)
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            mm = mono_mul(gm, cof)
            s = work.get(mm, Fraction(0)) - factor * gc
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
        steps += 1
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("Groebner reduction budget exhausted")
    return CPoly(p.ring, remainder)


def spoly(f, lf, g, lg) -> CPoly:
    lmf, lcf = lf
    lmg, lcg = lg
    df = dict(lmf)
    dg = dict(lmg)
    lcm = {}
    for v, e in df.items():
        lcm[v] = max(e, dg.get(v, 0))
    for v, e in dg.items():
        if v not in lcm:
            lcm[v] = e
    lcm_mono = tuple(sorted(lcm.items()))
    return f.mul_term(mono_div(lcm_mono, lmf), Fraction(1, 1) / lcf) - g.mul_term(
        mono_div(lcm_mono, lmg), Fraction(1, 1) / lcg
    )


def _pair_lcm(lm1, lm2):
    d1, d2 = dict(lm1), dict(lm2)
    for v, e in d2.items():
        if d1.get(v, 0) < e:
            d1[v] = e
    return tuple(sorted(d1.items()))


def buchberger(gens, order, max_reductions=DEFAULT_MAX_REDUCTIONS):
    """Groebner basis (not reduced) of the ideal generated by ``gens``."""
    ring = gens[0].ring if gens else None
    basis = []
    for g in gens:
        if not g.is_zero():
            basis.append(g)
    if not basis:
        return []
    lms = [leading_mono(g, order) for g in basis]
    budget = [max_reductions]

    pairs = set()

    def add_pairs(j):
        for i in range(j):
            pairs.add((i, j))

    for j in range(len(basis)):
        add_pairs(j)

    done = set()
    while pairs:
        # normal strategy: smallest lcm first
        best = None
        best_key = None
        for i, j in pairs:
            lcm = _pair_lcm(lms[i], lms[j])
            kk = (mono_total_degree(lcm), ring.mono_grade_key(lcm), i, j)
            if best is None or kk < best_key:
                best, best_key = (i, j), kk
        i, j = best
        pairs.discard((i, j))
        done.add((i, j))
        lmi, lmj = lms[i], lms[j]
        # coprime criterion
        di, dj = dict(lmi), dict(lmj)
        if all(dj.get(v, 0) == 0 for v in di):
            continue
        # chain criterion: some k with LT_k | lcm and both sub-pairs handled
        lcm = _pair_lcm(lmi, lmj)
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(lms[k], lcm):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 in done and p2 in done:
                    skip = True
                    break
        if skip:
            continue
        s = spoly(basis[i], (lmi, basis[i].terms[lmi]), basis[j], (lmj, basis[j].terms[lmj]))
        triples = [(g, lms[k], basis[k].terms[lms[k]]) for k, g in enumerate(basis)]
        r = normal_form(s, triples, order, top_only=True, budget=budget)
        if not r.is_zero():
            basis.append(r)
            lms.append(leading_mono(r, order))
            add_pairs(len(basis) - 1)
    return basis


def interreduce(basis, order):
    """Minimal, fully reduced, monic basis (the reduced Groebner basis)."""
    basis = [g for g in basis if not g.is_zero()]
    # drop elements whose lead is divisible by another lead
    lms = [leading_mono(g, order) for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        if any(j != i and mono_divides(lms[j], lm) and (lms[j] != lm or j < i) for j in range(len(basis))):
            continue
        keep.append(i)
    reduced = []
    polys = [basis[i] for i in keep]
    leads = [lms[i] for i in keep]
    for i, g in enumerate(polys):
        others = [(polys[k], leads[k], polys[k].terms[leads[k]]) for k in range(len(polys)) if k != i]
        r = normal_form(g, others, order)
        if not r.is_zero():
            reduced.append(r.monic())
    key = functools.cmp_to_key(lambda p, q: order.cmp(leading_mono(p, order), leading_mono(q, order)))
    return sorted(reduced, key=key)


def reduced_groebner(gens, order=None, max_reductions=DEFAULT_MAX_REDUCTIONS):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    if order is None:
        order = MonoOrder(gens[0].ring)
    gb = buchberger(gens, order, max_reductions)
    return interreduce(gb, order)


@dataclass
class CIdeal:
    """An ideal in Q[C] with a cached reduced Groebner basis."""

    ring: CRing
    gens: list
    _cache: dict = field(default_factory=dict, repr=False)

    def groebner(self, order=None, max_reductions=DEFAULT_MAX_REDUCTIONS):
        key = id(order) if order is not None else "default"
        if key not in self._cache:
            self._cache[key] = reduced_groebner(self.gens, order, max_reductions)
        return self._cache[key]

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.gens)

    def contains(self, p: CPoly, order=None) -> bool:
        if p.is_zero():
            return True
        gb = self.groebner(order)
        if not gb:
            return False
        order = order or MonoOrder(self.ring)
        triples = [(g, leading_mono(g, order), g.terms[leading_mono(g, order)]) for g in gb]
        return normal_form(p, triples, order).is_zero()


def ideal_equal(a: CIdeal, b: CIdeal, order=None) -> bool:
    if a.ring.nvars() != b.ring.nvars():
        raise ValueError("ideal comparison across different variable counts")
    ga = a.groebner(order)
    gb = b.groebner(order)
    return [g.terms for g in ga] == [g.terms for g in gb]


def eliminate(ideal: CIdeal, drop) -> CIdeal:
    """Generators of ideal ∩ Q[kept variables], in the restricted ring."""
    drop = set(drop)
    if not drop:
        return ideal
    order = ElimOrder(ideal.ring, drop)
    gb = reduced_groebner(ideal.gens, order)
    kept = [i for i in range(ideal.ring.nvars()) if i not in drop]
    sub, remap = ideal.ring.restrict(kept)
    out = []
    for g in gb:
        if any(v in drop for v in g.variables()):
            continue
        out.append(CPoly(sub, {tuple((remap[v], e) for v, e in m): c for m, c in g.terms.items()}))
    return CIdeal(sub, out)


def _divide_exact(p: CPoly, f: CPoly, order) -> CPoly:
    """Exact quotient p/f; raises when the division leaves a remainder."""
    lm = leading_mono(f, order)
    triple = [(f, lm, f.terms[lm])]
    q: dict = {}
    rest = p
    while not rest.is_zero():
        m = leading_mono(rest, order)
        if not mono_divides(lm, m):
            raise ValueError("division is not exact")
        c = rest.terms[m] / f.terms[lm]
        cof = mono_div(m, lm)
        q[cof] = q.get(cof, Fraction(0)) + c
        rest = rest - f.mul_term(cof, c)
    return CPoly(p.ring, {m: c for m, c in q.items() if c})


def ideal_quotient(ideal: CIdeal, f: CPoly) -> CIdeal:
    """(I : f) = {g : g*f in I} via intersection with (f) and exact division."""
    if f.is_zero():
        raise ValueError("cannot form an ideal quotient by 0")
    if f.is_constant():
        return CIdeal(ideal.ring, list(ideal.gens))
    ring = ideal.ring
    wlen = len(ring.vars[0].weight) if ring.vars else 1
    tagged = CRing(
        [CVar("_t", (0,) * wlen)] + list(ring.vars),
        ring.grade_key,
    )

    def lift(p: CPoly) -> CPoly:
        return CPoly(tagged, {tuple((v + 1, e) for v, e in m): c for m, c in p.terms.items()})

    t = CPoly.var(tagged, 0)
    one = CPoly.const(tagged, 1)
    gens = [t * lift(g) for g in ideal.gens]
    gens.append((one - t) * lift(f))
    inter = eliminate(CIdeal(tagged, gens), {0})
    # inter.ring is the restriction of tagged back to the original variables
    order = MonoOrder(inter.ring)
    f_back = CPoly(inter.ring, dict(f.terms))
    out = []
    for g in inter.gens:
        out.append(_divide_exact(g, f_back, order))
    back = [CPoly(ring, dict(g.terms)) for g in out]
    return CIdeal(ring, back)


def _max_independent(supports, nvars) -> int:
    """Largest variable set containing the support of no generator.

    Complement view: minimum hitting set of the supports, by branch and
    bound on an uncovered support of smallest size.
    """
    sups = []
    for s in supports:
        s = frozenset(s)
        if not any(t <= s for t in sups):
            sups = [t for t in sups if not s <= t]
            sups.append(s)
    best = [nvars]  # upper bound on hitting set size

    def branch(hit, remaining):
        if len(hit) >= best[0]:
            return
        open_sups = [s for s in remaining if not (s & hit)]
        if not open_sups:
            best[0] = len(hit)
            return
        target = min(open_sups, key=len)
        for v in sorted(target):
            branch(hit | {v}, open_sups)

    if any(not s for s in sups):
        return -1  # a constant generator: unit ideal
    branch(frozenset(), sups)
    return nvars - best[0]


def krull_dimension(ideal: CIdeal, order=None) -> int:
    """Dimension of V(I) in affine space; -1 for the unit ideal."""
    gb = ideal.groebner(order)
    if not gb:
        return ideal.ring.nvars()
    order = order or MonoOrder(ideal.ring)
    supports = []
    for g in gb:
        lm = leading_mono(g, order)
        if not lm:
            return -1
        supports.append({v for v, _ in lm})
    return _max_independent(supports, ideal.ring.nvars())
