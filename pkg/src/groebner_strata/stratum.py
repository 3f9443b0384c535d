"""Stratum equations for a monomial ideal: tails, generic generators,
S-polynomial reductions, the coefficient ideal and its linear part.

The family of all (homogeneous) ideals with initial ideal j is cut out of
coefficient space by the ideal generated by the X-coefficients of complete
reductions of S-polynomials of the generic generators

    F_i = X^{gamma_i} + sum_{alpha in T_i} C[i,alpha] X^alpha.

That ideal does not depend on the reduction strategy or on which
syzygy-generating pair set is used, which the test suite exercises; the
linear part (X-coefficients after reduction modulo the monomial ideal
alone) spans the dual of the tangent space at the origin and drives
variable elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import monomials as mn
from .cpoly import CPoly, CRing, CVar, mono_div, mono_mul
from .errors import PreconditionError
from .groebner import reduced_groebner
from .ideals import MonomialIdeal
from .orders import TermOrder
from .parampoly import ParamPoly, x_variable_ring

FULL, HOMOGENEOUS, CUSTOM = "full", "homogeneous", "custom"


@dataclass(frozen=True)
class TailSpec:
    """Chosen tail monomials, one tuple per generator (generator order of j.gens)."""

    j: MonomialIdeal
    mode: str
    tails: tuple  # tuple of tuples of Monos

    def sizes(self):
        return [len(t) for t in self.tails]

    def total(self) -> int:
        return sum(len(t) for t in self.tails)


def tails(j: MonomialIdeal, order: TermOrder, mode: str = HOMOGENEOUS,
          custom=None) -> TailSpec:
    """All monomials below each generator and outside j, per the mode.

    Homogeneous mode keeps equal degree only.  Full mode needs finite
    tails: graded orders bound the degree outright; for Lex the quotient
    must be finite-dimensional (every variable with a pure power in j),
    otherwise the offending generator is reported.
    """
    if mode == CUSTOM:
        if custom is None:
            raise PreconditionError("custom mode needs explicit tail lists")
        tt = []
        for g, lst in zip(j.gens, custom):
            chosen = tuple(tuple(a) for a in lst)
            for a in chosen:
                if j.contains(a) or order.compare(a, g) != -1:
                    raise PreconditionError(
                        f"{mn.format_monomial(a)} is not a valid tail monomial of "
                        f"{mn.format_monomial(g)}"
                    )
            tt.append(tuple(order.sort_desc(chosen)))
        return TailSpec(j, mode, tuple(tt))

    out = []
    for g in j.gens:
        d = mn.degree(g)
        if mode == HOMOGENEOUS:
            cand = [m for m in mn.monomials_of_degree(j.nvars, d)
                    if not j.contains(m) and order.compare(m, g) == -1]
        elif mode == FULL:
            if order.is_graded:
                cand = []
                for dd in range(d + 1):
                    for m in mn.monomials_of_degree(j.nvars, dd):
                        if not j.contains(m) and order.compare(m, g) == -1:
                            cand.append(m)
            else:
                # Lex: require a finite quotient so every tail is finite
                bound = 0
                for i in range(j.nvars):
                    pure = [g2[i] for g2 in j.gens
                            if all(e == 0 for k, e in enumerate(g2) if k != i)]
                    if not pure:
                        raise PreconditionError(
                            f"tail of {mn.format_monomial(g)} is infinite under a "
                            f"non-graded order (no pure power of X{i} in the ideal)"
                        )
                    bound += min(pure)
                cand = []
                for dd in range(bound + 1):
                    for m in mn.monomials_of_degree(j.nvars, dd):
                        if not j.contains(m) and order.compare(m, g) == -1:
                            cand.append(m)
        else:
            raise ValueError(f"unknown tail mode {mode!r}")
        out.append(tuple(order.sort_desc(cand)))
    return TailSpec(j, mode, tuple(out))


def _strip_x0(lead, tail):
    e = min(lead[0], tail[0])
    if not e:
        return lead, tail
    sl = (lead[0] - e,) + lead[1:]
    st = (tail[0] - e,) + tail[1:]
    return sl, st


@dataclass
class StratumContext:
    """Generic generators of one stratum computation."""

    j: MonomialIdeal
    order: TermOrder
    tailspec: TailSpec
    ring: CRing
    gens: list  # ParamPoly F_i, aligned with j.gens
    var_of: dict  # (gen_pos, tail mono) -> ring variable index
    _div_cache: dict = field(default_factory=dict, repr=False)
    _key_cache: dict = field(default_factory=dict, repr=False)

    def reducers(self, m) -> tuple:
        """Generator positions whose leading monomial divides m (cached)."""
        hit = self._div_cache.get(m)
        if hit is None:
            hit = tuple(k for k, g in enumerate(self.j.gens) if mn.divides(g, m))
            self._div_cache[m] = hit
        return hit

    def xkey(self, m):
        k = self._key_cache.get(m)
        if k is None:
            k = self.order.key(m)
            self._key_cache[m] = k
        return k

    def tail_vars(self, pos: int):
        """[(tail monomial, ring variable index)] of one generator."""
        return [(a, self.var_of[(pos, a)]) for a in self.tailspec.tails[pos]]

    def var_key(self, idx: int):
        v = self.ring.vars[idx]
        return (v.gen_index, v.tail)


def generic_generators(j: MonomialIdeal, tailspec: TailSpec,
                       order: TermOrder) -> StratumContext:
    """Build the coefficient ring and the generic generators F_i.

    Variables are sorted by descending grading weight (lead - tail under
    the X-order), ties by the X_0-stripped lead then tail, which makes the
    order stable across truncation by powers of X_0.
    """
    entries = []
    for pos, (g, tl) in enumerate(zip(j.gens, tailspec.tails)):
        for a in tl:
            lam = tuple(x - y for x, y in zip(g, a))
            sl, st = _strip_x0(g, a)
            sort_key = (order.key(lam), order.key(sl), order.key(st))
            name = f"C[{pos + 1},{mn.format_monomial(a)}]"
            entries.append((sort_key, CVar(name, lam, pos + 1, g, a), pos, a))
    entries.sort(key=lambda e: e[0], reverse=True)
    ring = CRing([e[1] for e in entries], order.key)
    var_of = {(e[2], e[3]): i for i, e in enumerate(entries)}
    gens = []
    for pos, (g, tl) in enumerate(zip(j.gens, tailspec.tails)):
        terms = {g: CPoly.const(ring, 1)}
        for a in tl:
            terms[a] = CPoly.var(ring, var_of[(pos, a)])
        gens.append(ParamPoly(terms))
    return StratumContext(j, order, tailspec, ring, gens, var_of)


# ---------------------------------------------------------------------------
# Syzygy pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SPair:
    i: int  # generator positions, i < j
    j: int
    lcm: tuple
    cof_i: tuple  # lcm / gen_i
    cof_j: tuple


def spair_generators(j: MonomialIdeal, order: TermOrder | None = None,
                     restrict_degree: int | None = None,
                     prune: bool = True) -> list:
    """Pairs whose Taylor syzygies generate the syzygies of j.

    All pairs, pruned by the coprime criterion and the chain criterion
    (a pair is dropped when a third leading monomial divides its lcm and
    both sub-pairs come earlier in the processing order).  With
    ``restrict_degree`` only pairs with that lcm degree are kept, which is
    complete for degree-r ideals whose syzygies live in degree r+1.
    """
    order = order or TermOrder.degrevlex()
    gens = j.gens
    pairs = []
    for b in range(len(gens)):
        for a in range(b):
            lcm, ca, cb = mn.lcm_and_cofactors(gens[a], gens[b])
            pairs.append(SPair(a, b, lcm, ca, cb))
    pairs.sort(key=lambda p: (mn.degree(p.lcm), order.key(p.lcm), p.i, p.j))
    pos = {(p.i, p.j): t for t, p in enumerate(pairs)}
    out = []
    for t, p in enumerate(pairs):
        if prune:
            if mn.is_coprime(gens[p.i], gens[p.j]):
                continue
            dropped = False
            for k in range(len(gens)):
                if k in (p.i, p.j) or not mn.divides(gens[k], p.lcm):
                    continue
                t1 = pos[(min(p.i, k), max(p.i, k))]
                t2 = pos[(min(p.j, k), max(p.j, k))]
                if t1 < t and t2 < t:
                    dropped = True
                    break
            if dropped:
                continue
        if restrict_degree is not None and mn.degree(p.lcm) != restrict_degree:
            continue
        out.append(p)
    return out


def spoly_param(ctx: StratumContext, pair: SPair) -> ParamPoly:
    return ctx.gens[pair.i].mul_xmono(pair.cof_i) - ctx.gens[pair.j].mul_xmono(pair.cof_j)


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

FIRST_INDEX, LAST_INDEX = "first", "last"


def _make_chooser(strategy, seed=None):
    if strategy == FIRST_INDEX:
        return lambda options: options[0]
    if strategy == LAST_INDEX:
        return lambda options: options[-1]
    if strategy == "random":
        rng = random.Random(seed)
        return lambda options: options[rng.randrange(len(options))]
    raise ValueError(f"unknown reduction strategy {strategy!r}")


def reduce_complete(G: ParamPoly, ctx: StratumContext, strategy: str = FIRST_INDEX,
                    seed=None, nf=None) -> ParamPoly:
    """Reduce until no X-monomial is divisible by a leading monomial of j.

    Each step removes the largest reducible X-monomial, so the procedure
    terminates; the strategy only chooses the reducer when several leading
    monomials divide.  Coefficients stay raw (every step multiplies by one
    fresh variable, so term counts grow additively); ``nf`` normal-forms a
    coefficient the moment it is consumed, which cuts off whole cascades
    when the coefficient was secretly zero modulo the solved generators.
    """
    choose = _make_chooser(strategy, seed)
    work = ParamPoly(dict(G.terms))
    xkey = ctx.xkey
    while True:
        target = None
        tk = None
        for m in work.terms:
            if ctx.reducers(m):
                k = xkey(m)
                if tk is None or k > tk:
                    target, tk = m, k
        if target is None:
            return work
        k = choose(ctx.reducers(target))
        coeff = work.terms.pop(target)
        if nf is not None:
            coeff = nf(coeff)
            if coeff.is_zero():
                continue
        cof = mn.div(target, ctx.j.gens[k])
        for a, v in ctx.tail_vars(k):
            work.add_term(mn.mul(a, cof), -coeff.mul_var(v))


def reduce_mod_monomials(G: ParamPoly, j: MonomialIdeal) -> ParamPoly:
    """Complete reduction against the monomial ideal: drop terms inside j."""
    return ParamPoly({m: c for m, c in G.terms.items() if not j.contains(m)})


# ---------------------------------------------------------------------------
# The stratum ideal
# ---------------------------------------------------------------------------


@dataclass
class StratumResult:
    ctx: StratumContext
    h_gens: list  # CPolys, primitive-normalized, deduplicated
    trace: list  # (pair, X-monomial) per h generator
    linear_part: list  # linear CPolys from reductions modulo j
    strategy: str
    pairs: list

    def lambda_degrees(self):
        return [v.weight for v in self.ctx.ring.vars]

    def ideal(self):
        from .groebner import CIdeal

        return CIdeal(self.ctx.ring, self.h_gens)


def stratum_ideal(j: MonomialIdeal, tailspec: TailSpec, order: TermOrder,
                  strategy: str = FIRST_INDEX, seed=None,
                  pairs: list | None = None) -> StratumResult:
    """X-coefficients of completely reduced S-polynomials, with their trace.

    Every harvested coefficient must be homogeneous for the grading by
    lead - tail; that is asserted rather than repaired so grading bugs
    surface immediately.
    """
    ctx = generic_generators(j, tailspec, order)
    if pairs is None:
        pairs = spair_generators(j, order)
    h_gens, trace, lin = [], [], []
    seen = set()
    seen_lin = set()
    for pair in pairs:
        s = spoly_param(ctx, pair)
        r = reduce_complete(s, ctx, strategy, seed)
        m_red = reduce_mod_monomials(s, j)
        for m in sorted(r.terms, key=order.key, reverse=True):
            c = r.terms[m].primitive()
            assert c.is_grade_homogeneous(), "stratum generator lost homogeneity"
            fs = frozenset(c.terms.items())
            if fs not in seen:
                seen.add(fs)
                h_gens.append(c)
                trace.append(((pair.i, pair.j), m))
        for m in sorted(m_red.terms, key=order.key, reverse=True):
            c = m_red.terms[m].primitive()
            assert c.total_degree() <= 1, "linear part picked up a nonlinear term"
            fs = frozenset(c.terms.items())
            if fs not in seen_lin:
                seen_lin.add(fs)
                lin.append(c)
    return StratumResult(ctx, h_gens, trace, lin, strategy, pairs)


# ---------------------------------------------------------------------------
# Fused stratum + elimination pipeline
# ---------------------------------------------------------------------------


class SubstitutionState:
    """Triangular elimination table c -> expr with eager closure.

    Invariant: every stored expression and relation is free of every solved
    variable, so applying the table is a single substitution pass.  Suited
    to small strata where the closed expressions stay short; the fused
    pipeline uses EliminationState instead.
    """

    def __init__(self, ring: CRing):
        self.ring = ring
        self.table: dict = {}
        self.relations: list = []
        self._occurs: dict = {}  # var -> set of table keys whose expr mentions it

    def apply(self, p: CPoly) -> CPoly:
        return p.substitute(self.table)

    def _register(self, key: int, expr: CPoly) -> None:
        self.table[key] = expr
        for v in expr.variables():
            self._occurs.setdefault(v, set()).add(key)

    def add_generator(self, p: CPoly) -> None:
        """Feed one (already table-applied) ideal generator."""
        if p.is_zero():
            return
        lin = p.linear_part()
        if not lin:
            fs = frozenset(p.primitive().terms.items())
            if fs not in {frozenset(r.terms.items()) for r in self.relations}:
                self.relations.append(p.primitive())
            return
        pivot = min(lin)  # smallest index = largest canonical variable
        coeff = lin[pivot]
        expr = (p.scale(-1 / coeff)) + CPoly.var(self.ring, pivot)
        assert pivot not in expr.variables(), "pivot variable survived solving"
        # substitute the new pivot away from existing entries and relations
        for key in list(self._occurs.get(pivot, ())):
            old = self.table[key]
            new = old.substitute({pivot: expr})
            for v in old.variables():
                self._occurs.get(v, set()).discard(key)
            self._register(key, new)
        self._occurs.pop(pivot, None)
        self.relations = [r.substitute({pivot: expr}) for r in self.relations]
        self.relations = [r.primitive() for r in self.relations if not r.is_zero()]
        self._register(pivot, expr)

    def survivors(self):
        return [i for i in range(self.ring.nvars()) if i not in self.table]


class _NegCmp:
    """Heap wrapper giving largest-monomial-first pops."""

    __slots__ = ("ring", "mono")

    def __init__(self, ring, mono):
        self.ring = ring
        self.mono = mono

    def __lt__(self, other):
        return self.ring.mono_cmp(self.mono, other.mono) > 0


class EliminationState:
    """Solved generators kept raw, zero-tests by cancellative reduction.

    Every solved generator is monic with a single *variable* as leading
    monomial (in a weight-homogeneous polynomial a linear term beats every
    higher-degree monomial of the same weight), and distinct variable leads
    are pairwise coprime, so the solved set is automatically a Groebner
    basis: normal form against it is canonical and membership is decided
    without ever expanding the solved variables' closed expressions.

    Each basis entry mentions only variables strictly below its lead in the
    canonical order, so the system is triangular and evaluates pointwise in
    one bottom-up pass.
    """

    def __init__(self, ring: CRing):
        self.ring = ring
        self.basis: dict = {}  # pivot var index -> monic CPoly with that lead
        self.relations: list = []

    def survivors(self):
        return [i for i in range(self.ring.nvars()) if i not in self.basis]

    def normal_form(self, p: CPoly) -> CPoly:
        if p.is_zero():
            return p
        import heapq

        ring = self.ring
        basis = self.basis
        work = dict(p.terms)
        out = {}
        heap = [(tuple(-x for x in ring.mono_grade_key(m)), _NegCmp(ring, m))
                for m in work]
        heapq.heapify(heap)
        while heap:
            _, wrapped = heapq.heappop(heap)
            m = wrapped.mono
            c = work.pop(m, None)
            if c is None:
                continue
            red = None
            for v, _ in m:
                if v in basis:
                    red = v
                    break
            if red is None:
                out[m] = c
                continue
            g = basis[red]
            cof = mono_div(m, ((red, 1),))
            for gm, gc in g.terms.items():
                if gm == ((red, 1),):
                    continue
                nm = mono_mul(gm, cof)
                cur = work.get(nm)
                s = (-c * gc) if cur is None else cur - c * gc
                if s:
                    work[nm] = s
                    if cur is None:
                        heapq.heappush(
                            heap,
                            (tuple(-x for x in ring.mono_grade_key(nm)), _NegCmp(ring, nm)),
                        )
                else:
                    work.pop(nm, None)
        return CPoly(ring, out)

    # keep the SubstitutionState interface used by the fused pipeline
    def apply(self, p: CPoly) -> CPoly:
        return self.normal_form(p)

    def add_generator(self, p: CPoly) -> None:
        """Classify a normal-formed generator: zero, new pivot or relation."""
        if p.is_zero():
            return
        lin = p.linear_part()
        if lin:
            pivot = min(lin)
            assert pivot not in self.basis, "pivot collision after normal form"
            self.basis[pivot] = p.scale(1 / lin[pivot])
            return
        q = p.primitive()
        fs = frozenset(q.terms.items())
        if fs not in {frozenset(r.terms.items()) for r in self.relations}:
            self.relations.append(q)

    def settle(self) -> None:
        """Re-reduce stored relations against the final basis to a fixpoint.

        Later pivots can appear inside earlier relations; reducing again
        either kills the relation, turns it into a fresh pivot, or leaves a
        generator in surviving variables only.
        """
        while True:
            pending = self.relations
            self.relations = []
            changed = False
            for r in pending:
                q = self.normal_form(r)
                if q.is_zero():
                    changed = True
                    continue
                if q.linear_part():
                    self.add_generator(q)
                    changed = True
                else:
                    if frozenset(q.primitive().terms.items()) != frozenset(r.terms.items()):
                        changed = True
                    self.add_generator(q)
            if not changed:
                return

    def triangular_point(self, survivor_values: dict) -> list:
        """Extend survivor values to a point killing every basis entry."""
        point = [Fraction(0)] * self.ring.nvars()
        for i, v in survivor_values.items():
            point[i] = Fraction(v)
        for v in sorted(self.basis, reverse=True):
            g = self.basis[v]
            total = Fraction(0)
            for m, c in g.terms.items():
                if m == ((v, 1),):
                    continue
                val = c
                for w, e in m:
                    val *= point[w] ** e
                total += val
            point[v] = -total
        return point


@dataclass
class StratumEmbedding:
    """Result of the fused stratum construction and variable elimination."""

    ctx: StratumContext
    state: "EliminationState"
    survivor_idx: list
    minimal_ring: CRing
    minimal_gens: list  # relations mapped into the survivor ring
    ed: int
    is_affine: bool
    _dimension: int | None = None

    @property
    def num_variables(self) -> int:
        return self.ctx.ring.nvars()

    def dimension(self) -> int:
        if self._dimension is None:
            if self.is_affine:
                self._dimension = self.ed
            else:
                from .groebner import CIdeal, krull_dimension

                self._dimension = krull_dimension(CIdeal(self.minimal_ring, self.minimal_gens))
        return self._dimension

    def minimal_ideal(self):
        from .groebner import CIdeal

        return CIdeal(self.minimal_ring, self.minimal_gens)

    def full_point(self, survivor_values: dict) -> list:
        """Extend values on surviving variables to a point of the stratum."""
        return self.state.triangular_point(survivor_values)


def stratum_embedding(j: MonomialIdeal, tailspec: TailSpec, order: TermOrder,
                      strategy: str = FIRST_INDEX, seed=None,
                      pairs: list | None = None,
                      on_pair=None) -> StratumEmbedding:
    """Compute the stratum and its minimal embedding in one pass.

    S-polynomials reduce with raw coefficients (term counts only ever grow
    additively there); each harvested coefficient is normal-formed against
    the solved generators, which decides membership by cancellation instead
    of expanding solved variables, and then classified.
    """
    ctx = generic_generators(j, tailspec, order)
    if pairs is None:
        pairs = spair_generators(j, order)
    state = EliminationState(ctx.ring)
    for pair in pairs:
        s = spoly_param(ctx, pair)
        r = reduce_complete(s, ctx, strategy, seed, nf=state.normal_form)
        for m in sorted(r.terms, key=ctx.xkey, reverse=True):
            c = state.normal_form(r.terms[m])
            if c.is_zero():
                continue
            assert c.is_grade_homogeneous(), "stratum generator lost homogeneity"
            state.add_generator(c)
        if on_pair is not None:
            on_pair(pair, state)
    return _finish_embedding(ctx, state)


def _finish_embedding(ctx: StratumContext, state: "EliminationState") -> StratumEmbedding:
    state.settle()
    survivors = state.survivors()
    sub, remap = ctx.ring.restrict(survivors)
    minimal = []
    for r in state.relations:
        assert not (set(r.variables()) & set(state.basis)), "relation kept a solved variable"
        minimal.append(CPoly(sub, {tuple((remap[v], e) for v, e in m): c
                                   for m, c in r.terms.items()}))
    return StratumEmbedding(
        ctx=ctx,
        state=state,
        survivor_idx=survivors,
        minimal_ring=sub,
        minimal_gens=minimal,
        ed=len(survivors),
        is_affine=not minimal,
    )


# ---------------------------------------------------------------------------
# Point checks
# ---------------------------------------------------------------------------


def specialize_generators(ctx: StratumContext, point) -> tuple:
    """Evaluate the generic generators at a coefficient point.

    Returns (xring, polys) with the X-variables as a plain coefficient ring
    whose monomial order equals the ambient X-order.
    """
    xring = x_variable_ring(ctx.j.nvars, ctx.order)
    polys = [g.specialize(point, xring, ctx.j.nvars) for g in ctx.gens]
    return xring, polys


def check_point(ctx: StratumContext, point) -> bool:
    """Specialize at a point and test LT(ideal) = j by plain Buchberger."""
    from .groebner import MonoOrder, leading_mono

    xring, polys = specialize_generators(ctx, point)
    gb = reduced_groebner(polys)
    order = MonoOrder(xring)
    lt_gens = []
    n = ctx.j.nvars
    for g in gb:
        lm = leading_mono(g, order)
        exps = [0] * n
        for idx, e in lm:
            exps[n - 1 - idx] = e
        lt_gens.append(tuple(exps))
    return MonomialIdeal.make(n, lt_gens) == ctx.j


def check_point_syzygy(ctx: StratumContext, point, pairs=None) -> bool:
    """Cheaper Buchberger test: every generating S-pair reduces to zero.

    Valid when the chosen pairs generate the syzygies of j, e.g. the
    pruned pair set; complete reduction happens over Q after specializing.
    """
    from .groebner import MonoOrder, leading_mono, normal_form

    xring, polys = specialize_generators(ctx, point)
    order = MonoOrder(xring)
    triples = []
    for g in polys:
        lm = leading_mono(g, order)
        triples.append((g, lm, g.terms[lm]))
    if pairs is None:
        pairs = spair_generators(ctx.j, ctx.order)
    from .groebner import spoly as c_spoly

    for p in pairs:
        f, g = polys[p.i], polys[p.j]
        s = c_spoly(f, triples[p.i][1:], g, triples[p.j][1:])
        if not normal_form(s, triples, order).is_zero():
            return False
    return True
