"""Monomial ideal combinatorics.

Hilbert function and polynomial (quotient convention), Gotzmann numbers
via the binomial representation, saturation and truncation, Borel-fixed
tests and Borel-order extremes, lexsegment ideals, segment detection and
the one-extra-weight-row segment order search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import monomials as mn
from .errors import ParseError, PreconditionError
from .orders import GT, TermOrder, weight_vector_order

_CANON = TermOrder.degrevlex()


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Generators are stored minimal (no generator divides another) and sorted
    descending under DegRevLex so equal ideals compare equal.
    """

    nvars: int
    gens: tuple

    @staticmethod
    def make(nvars: int, gens) -> "MonomialIdeal":
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != nvars or any(e < 0 for e in g):
                raise ValueError(f"bad generator {g} for {nvars} variables")
        minimal = []
        for g in sorted(set(gens), key=mn.degree):
            if not any(mn.divides(h, g) for h in minimal):
                minimal.append(g)
        minimal.sort(key=_CANON.key, reverse=True)
        return MonomialIdeal(nvars, tuple(minimal))

    @staticmethod
    def zero(nvars: int) -> "MonomialIdeal":
        return MonomialIdeal(nvars, ())

    @staticmethod
    def unit(nvars: int) -> "MonomialIdeal":
        return MonomialIdeal(nvars, (mn.one(nvars),))

    @staticmethod
    def parse(nvars: int, texts) -> "MonomialIdeal":
        return MonomialIdeal.make(nvars, [mn.parse_monomial(t, nvars) for t in texts])

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and mn.degree(self.gens[-1]) == 0

    def contains(self, m) -> bool:
        return any(mn.divides(g, m) for g in self.gens)

    def sorted_gens(self, order: TermOrder):
        return sorted(self.gens, key=order.key, reverse=True)

    def max_gen_degree(self) -> int:
        return max((mn.degree(g) for g in self.gens), default=0)

    def generated_in_degree(self) -> int | None:
        """The common generator degree, or None when degrees are mixed."""
        degs = {mn.degree(g) for g in self.gens}
        return degs.pop() if len(degs) == 1 else None

    def members_of_degree(self, d: int):
        for m in mn.monomials_of_degree(self.nvars, d):
            if self.contains(m):
                yield m

    def complement_of_degree(self, d: int):
        for m in mn.monomials_of_degree(self.nvars, d):
            if not self.contains(m):
                yield m

    def gens_text(self) -> list:
        return [mn.format_monomial(g) for g in self.gens]

    def __str__(self) -> str:
        return "(" + ", ".join(self.gens_text()) + ")" if self.gens else "(0)"


# ---------------------------------------------------------------------------
# Hilbert function and polynomial
# ---------------------------------------------------------------------------


def hilbert_function(j: MonomialIdeal, d: int) -> int:
    """Number of degree-d monomials outside j (the quotient's dimension)."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return sum(1 for _ in j.complement_of_degree(d))


@dataclass(frozen=True)
class HilbertData:
    """Window of Hilbert function values with the interpolated polynomial."""

    values: tuple  # h(0), h(1), ..., h(window_end)
    coeffs: tuple  # polynomial coefficients, ascending, Fractions
    stabilization: int  # least s with h(d) = p(d) for all sampled d >= s

    def poly_str(self) -> str:
        return poly_to_str(self.coeffs)


def poly_eval(coeffs, z) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * z + c
    return total


def poly_to_str(coeffs) -> str:
    if not any(coeffs):
        return "0"
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            parts.append(f"{c}")
        else:
            zs = "z" if e == 1 else f"z^{e}"
            if c == 1:
                parts.append(zs)
            elif c == -1:
                parts.append(f"-{zs}")
            else:
                parts.append(f"{c}*{zs}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _interpolate(points) -> tuple:
    """Newton forward differences through (z, value) pairs at consecutive z."""
    zs = [p[0] for p in points]
    vals = [Fraction(v) for _, v in points]
    table = [vals]
    while len(table[-1]) > 1:
        prev = table[-1]
        table.append([prev[i + 1] - prev[i] for i in range(len(prev) - 1)])
    coeffs = [Fraction(0)] * len(vals)
    basis = [Fraction(1)]  # running product (z - z0)(z - z0 - 1)...
    fact = 1
    z0 = zs[0]
    for k, row in enumerate(table):
        if k:
            fact *= k
        ck = row[0] / fact
        for e, b in enumerate(basis):
            coeffs[e] += ck * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for e, b in enumerate(basis):
            nxt[e + 1] += b
            nxt[e] -= b * (z0 + k)
        basis = nxt
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def hilbert_polynomial(j: MonomialIdeal, max_window: int = 60) -> HilbertData:
    """Interpolate the Hilbert polynomial past the stabilization degree.

    Tries successive stabilization candidates s, fitting a degree <= n
    polynomial through n+1 consecutive values and demanding agreement on
    deg(p)+2 further points.  Reports failure rather than guessing when no
    candidate fits within the window.
    """
    n = j.nvars - 1
    need = (n + 1) + (n + 2)  # fit points + verification points
    top = j.max_gen_degree() + need + 2
    if top > max_window:
        top = max_window
    values = [hilbert_function(j, d) for d in range(top + 1)]
    for s in range(0, top - need + 2):
        fit = [(z, values[z]) for z in range(s, s + n + 1)]
        coeffs = _interpolate(fit)
        deg = len(coeffs) - 1
        extra = range(s + n + 1, min(s + n + 1 + deg + 2, top + 1))
        if len(extra) < deg + 2:
            break
        if all(poly_eval(coeffs, z) == values[z] for z in extra):
            # integer-valued on the whole sampled window
            if any(poly_eval(coeffs, z).denominator != 1 for z in range(s, top + 1)):
                continue
            stab = s
            while stab > 0 and poly_eval(coeffs, stab - 1) == values[stab - 1]:
                stab -= 1
            return HilbertData(tuple(values), coeffs, stab)
    raise PreconditionError(
        f"Hilbert function of {j} did not stabilize within window {max_window}"
    )


# ---------------------------------------------------------------------------
# Gotzmann
# ---------------------------------------------------------------------------


def binomial_poly(c: int, b: int) -> tuple:
    """Coefficients of binomial(z + c, b) as a polynomial in z."""
    coeffs = (Fraction(1),)
    for i in range(b):
        # multiply by (z + c - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for e, a in enumerate(coeffs):
            nxt[e + 1] += a
            nxt[e] += a * (c - i)
        coeffs = tuple(nxt)
    fact = 1
    for i in range(2, b + 1):
        fact *= i
    return tuple(a / fact for a in coeffs)


def _poly_sub(a, b) -> tuple:
    out = [Fraction(x) for x in a] + [Fraction(0)] * max(0, len(b) - len(a))
    for e, c in enumerate(b):
        out[e] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def gotzmann_number(coeffs, max_terms: int = 100_000) -> int:
    """Number of summands in the Gotzmann binomial representation.

    The representation is p(z) = sum_i binomial(z + b_i - i + 1, b_i) with
    b_1 >= b_2 >= ... >= 0; a polynomial admitting none is rejected.
    """
    p = tuple(Fraction(c) for c in coeffs)
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    if p == (Fraction(0),):
        raise PreconditionError("the zero polynomial has no Gotzmann representation")
    prev_b = None
    i = 0
    while p != (Fraction(0),):
        i += 1
        if i > max_terms:
            raise PreconditionError("polynomial is not admissible (too many summands)")
        b = len(p) - 1
        if p[-1] <= 0:
            raise PreconditionError(f"polynomial is not admissible: {poly_to_str(coeffs)}")
        if prev_b is not None and b > prev_b:
            raise PreconditionError(f"polynomial is not admissible: {poly_to_str(coeffs)}")
        p = _poly_sub(p, binomial_poly(b - i + 1, b))
        if len(p) - 1 > b:
            raise PreconditionError(f"polynomial is not admissible: {poly_to_str(coeffs)}")
        prev_b = b
    return i


@dataclass(frozen=True)
class GotzmannParams:
    r: int
    M: int
    t: int
    M1: int
    t1: int


def gotzmann_params(coeffs, nvars: int) -> GotzmannParams:
    """Chart bookkeeping numbers for a Hilbert polynomial in n+1 variables."""
    n = nvars - 1
    r = gotzmann_number(coeffs)
    M = comb(n + r, n)
    pr = poly_eval(coeffs, r)
    M1 = comb(n + r + 1, n)
    pr1 = poly_eval(coeffs, r + 1)
    if pr.denominator != 1 or pr1.denominator != 1:
        raise PreconditionError("Hilbert polynomial is not integer-valued")
    t = M - int(pr)
    t1 = M1 - int(pr1)
    if not (0 <= t <= M and 0 <= t1 <= M1):
        raise PreconditionError("Hilbert polynomial is too large for this ambient space")
    return GotzmannParams(r, M, t, M1, t1)


# ---------------------------------------------------------------------------
# Saturation and truncation
# ---------------------------------------------------------------------------


def _colon_by_variable(j: MonomialIdeal, i: int) -> MonomialIdeal:
    gens = []
    for g in j.gens:
        if g[i] > 0:
            gens.append(tuple(e - 1 if k == i else e for k, e in enumerate(g)))
        else:
            gens.append(g)
    return MonomialIdeal.make(j.nvars, gens)


def _intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal.make(a.nvars, [mn.lcm(g, h) for g in a.gens for h in b.gens])


def saturate(j: MonomialIdeal) -> MonomialIdeal:
    """Saturation with respect to the irrelevant ideal (X_0,...,X_n)."""
    if j.is_zero():
        return j
    current = j
    while True:
        colon = _colon_by_variable(current, 0)
        for i in range(1, j.nvars):
            colon = _intersect(colon, _colon_by_variable(current, i))
        if colon == current:
            return current
        current = colon


def truncate(j: MonomialIdeal, m: int) -> MonomialIdeal:
    """Minimal generators of the ideal of all elements of degree >= m."""
    gens = []
    for g in j.gens:
        d = mn.degree(g)
        if d >= m:
            gens.append(g)
        else:
            for pad in mn.monomials_of_degree(j.nvars, m - d):
                gens.append(mn.mul(g, pad))
    return MonomialIdeal.make(j.nvars, gens)


# ---------------------------------------------------------------------------
# Borel combinatorics
# ---------------------------------------------------------------------------


def _swap_up(m, i):
    """X_i * m / X_{i-1}: defined when m has X_{i-1}."""
    out = list(m)
    out[i - 1] -= 1
    out[i] += 1
    return tuple(out)


def _swap_down(m, i):
    """X_{i-1} * m / X_i: defined when m has X_i."""
    out = list(m)
    out[i] -= 1
    out[i - 1] += 1
    return tuple(out)


def is_borel_fixed(j: MonomialIdeal) -> bool:
    """Strong stability toward larger variables (characteristic zero)."""
    for g in j.gens:
        for i in range(1, j.nvars):
            if g[i - 1] > 0 and not j.contains(_swap_up(g, i)):
                return False
    return True


def borel_closure(nvars: int, seeds) -> MonomialIdeal:
    """Smallest Borel-fixed ideal containing the seed monomials."""
    seen = set()
    stack = [tuple(s) for s in seeds]
    while stack:
        m = stack.pop()
        if m in seen:
            continue
        seen.add(m)
        for i in range(1, nvars):
            if m[i - 1] > 0:
                stack.append(_swap_up(m, i))
    return MonomialIdeal.make(nvars, seen)


def borel_extremes(j: MonomialIdeal, d: int):
    """Minimal monomials of j in degree d, and maximal ones outside.

    Both extremes are for the partial order generated by single swaps
    X_{i-1} -> X_i; j must be Borel-fixed so its degree-d part is a filter.
    """
    if not is_borel_fixed(j):
        raise PreconditionError(f"{j} is not Borel-fixed")
    inside, outside = [], []
    for m in mn.monomials_of_degree(j.nvars, d):
        if j.contains(m):
            if all(
                not j.contains(_swap_down(m, i))
                for i in range(1, j.nvars)
                if m[i] > 0
            ):
                inside.append(m)
        else:
            if all(
                j.contains(_swap_up(m, i))
                for i in range(1, j.nvars)
                if m[i - 1] > 0
            ):
                outside.append(m)
    inside.sort(key=_CANON.key, reverse=True)
    outside.sort(key=_CANON.key, reverse=True)
    return inside, outside


# ---------------------------------------------------------------------------
# Lexsegments and segment ideals
# ---------------------------------------------------------------------------


def lexsegment_ideal(a_desc, nvars: int | None = None) -> MonomialIdeal:
    """L(a_n,...,a_1): all degree-r monomials Lex-above X_n^{a_n}...X_1^{a_1}.

    ``a_desc`` lists (a_n, ..., a_1); r is their sum.  When ``nvars`` is
    omitted the ambient is n+1 variables with n = len(a_desc).
    """
    a = [int(x) for x in a_desc]
    if any(x < 0 for x in a):
        raise ValueError("lexsegment indices must be non-negative")
    n = len(a)
    if nvars is None:
        nvars = n + 1
    if nvars != n + 1:
        raise ValueError(f"L({','.join(map(str, a))}) needs {n + 1} variables")
    r = sum(a)
    bottom = tuple([0] + list(reversed(a)))  # exponents ascending: X_0 gets 0
    lex = TermOrder.lex()
    gens = [m for m in mn.monomials_of_degree(nvars, r) if lex.key(m) >= lex.key(bottom)]
    return MonomialIdeal.make(nvars, gens)


def is_segment(j: MonomialIdeal, d: int, order: TermOrder) -> bool:
    """Whether j's degree-d monomials are the order's top segment.

    j must be generated in degree d; then the test is that the smallest
    generator beats every degree-d monomial outside j.
    """
    if j.generated_in_degree() != d:
        raise PreconditionError(f"{j} is not generated in degree {d}")
    lo = min(j.gens, key=order.key)
    return all(order.compare(lo, m) == GT for m in j.complement_of_degree(d))


@dataclass(frozen=True)
class SegmentOrder:
    weights_desc: tuple  # weights of X_n .. X_0
    order: TermOrder


def find_segment_order(
    j: MonomialIdeal, d: int, max_weight: int = 64
) -> SegmentOrder | None:
    """Search for one weight row separating j's degree-d part from its complement.

    Constraints: weights a_n > a_{n-1} >= ... >= a_0 >= 1, and w.beta >
    w.alpha for every Borel-minimal beta inside and Borel-maximal alpha
    outside.  Candidates must also yield a valid full matrix order (degree
    row, the weight row, unit tie-break rows), which needs a_{n-1} >
    a_{n-2} whenever there are three or more variables.  Returns the
    candidate minimizing the coordinate sum, or None when the search up to
    ``max_weight`` finds nothing.
    """
    if j.generated_in_degree() != d:
        raise PreconditionError(f"{j} is not generated in degree {d}")
    minimal, maximal = borel_extremes(j, d)
    pairs = [(b, a) for b in minimal for a in maximal]
    n = j.nvars - 1

    def separates(w_asc):
        return all(
            sum(w * e for w, e in zip(w_asc, b)) > sum(w * e for w, e in zip(w_asc, a))
            for b, a in pairs
        )

    best = None

    def candidates(bound):
        """Non-increasing positive vectors (a_n..a_0), a_n strictly largest."""

        def rec(prefix, remaining):
            if remaining == 0:
                yield tuple(prefix)
                return
            hi = prefix[-1] if prefix else bound
            for v in range(hi, 0, -1):
                yield from rec(prefix + [v], remaining - 1)

        for tail in rec([], n):
            for top in range(tail[0] + 1, bound + 2):
                yield (top,) + tail

    bound = 4
    while bound <= max_weight:
        for w_desc in candidates(bound):
            w_asc = tuple(reversed(w_desc))
            if not separates(w_asc):
                continue
            try:
                order = weight_vector_order(w_desc)
            except ValueError:
                continue
            if not is_segment(j, d, order):
                continue
            key = (sum(w_desc), w_desc)
            if best is None or key < best[0]:
                best = (key, SegmentOrder(w_desc, order))
        if best is not None:
            return best[1]
        bound *= 2
    return None


def segment_violation_witness(j: MonomialIdeal, d: int):
    """A hard-to-separate (inside, outside) pair: one where the outside
    monomial dominates the inside one in the Borel order, when such a pair
    exists (a true infeasibility certificate), else the pair violated by
    the most candidate vectors in a coarse scan."""
    minimal, maximal = borel_extremes(j, d)
    n = j.nvars - 1
    for b in minimal:
        for a in maximal:
            # alpha >= beta in the Borel order makes separation impossible
            if _borel_geq(a, b, j.nvars):
                return b, a
    counts = {}
    for w_desc in [(k + 2,) + (1,) * n for k in range(6)]:
        w_asc = tuple(reversed(w_desc))
        for b in minimal:
            for a in maximal:
                if sum(w * e for w, e in zip(w_asc, b)) <= sum(
                    w * e for w, e in zip(w_asc, a)
                ):
                    counts[(b, a)] = counts.get((b, a), 0) + 1
    if counts:
        return max(counts, key=counts.get)
    return None


def _borel_geq(a, b, nvars: int) -> bool:
    """Whether a >= b in the Borel order (same degree, chains of up-swaps)."""
    if mn.degree(a) != mn.degree(b):
        return False
    # a >= b iff partial sums from the top variable satisfy sum_{k>=i} a_k >= sum_{k>=i} b_k
    ta = tb = 0
    for i in range(nvars - 1, 0, -1):
        ta += a[i]
        tb += b[i]
        if ta < tb:
            return False
    return True


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def ideal_to_json(j: MonomialIdeal) -> dict:
    return {"vars": j.nvars, "gens": j.gens_text()}


def ideal_from_json(data: dict) -> MonomialIdeal:
    try:
        nvars = int(data["vars"])
        gens = data["gens"]
    except (TypeError, KeyError, ValueError):
        raise ParseError(f"ideal JSON needs 'vars' and 'gens': {data!r}")
    parsed = []
    for g in gens:
        if isinstance(g, str):
            parsed.append(mn.parse_monomial(g, nvars))
        elif isinstance(g, list):
            parsed.append(mn.from_bracket(g, nvars))
        else:
            raise ParseError(f"bad generator entry {g!r}")
    return MonomialIdeal.make(nvars, parsed)
