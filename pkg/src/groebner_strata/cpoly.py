"""Sparse polynomials over Q in an ordered set of weighted variables.

This is the coefficient-side workhorse: the ring Q[C] of a stratum
computation instantiates it with one variable per (generator, tail
monomial) pair, graded by the difference vector lead - tail; plain
Buchberger checks over Q[X] instantiate it with the X-variables graded by
their own exponent vectors, which reproduces the X-order exactly.

Monomials are sparse tuples ``((var_index, exp), ...)`` sorted by variable
index, where index 0 is the *largest* variable.  The monomial order
compares the graded key first (an integer tuple produced by ``grade_key``
from the weighted degree vector) and breaks ties lexicographically on the
exponent sequence read from the largest variable down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

CMono = tuple  # ((var_index, exp), ...) ascending var_index, exps > 0

ONE_MONO: CMono = ()


@dataclass(frozen=True)
class CVar:
    """A coefficient variable with its grading weight.

    For stratum variables, ``lead`` and ``tail`` are the X-monomials whose
    coefficient this variable is, ``weight`` is lead - tail, and
    ``gen_index`` is the 1-based index of the generator carrying the tail.
    Plain engine variables just carry a name and weight (1,).
    """

    name: str
    weight: tuple = (1,)
    gen_index: int | None = None
    lead: tuple | None = None
    tail: tuple | None = None


class CRing:
    """Q[C] for a fixed, ordered variable list.

    ``grade_key`` maps an integer weight vector to a sortable tuple; passing
    a term order's ``key`` makes the grading compare the way X-monomials do.
    The variable list order *is* the precedence: index 0 is largest.
    """

    def __init__(self, cvars, grade_key=None):
        self.vars: tuple[CVar, ...] = tuple(cvars)
        self.grade_key = grade_key if grade_key is not None else tuple
        if self.vars:
            wlen = len(self.vars[0].weight)
            if any(len(v.weight) != wlen for v in self.vars):
                raise ValueError("inconsistent weight vector lengths")
            self._zero_grade = (0,) * wlen
        else:
            self._zero_grade = ()
        self.index = {v.name: i for i, v in enumerate(self.vars)}
        if len(self.index) != len(self.vars):
            raise ValueError("duplicate variable names")
        self._grade_key_cache: dict = {}

    @staticmethod
    def plain(names, weights=None) -> "CRing":
        if weights is None:
            weights = [(1,)] * len(names)
        return CRing([CVar(n, tuple(w)) for n, w in zip(names, weights)])

    def nvars(self) -> int:
        return len(self.vars)

    def var_mono(self, i: int) -> CMono:
        return ((i, 1),)

    def mono_grade(self, m: CMono) -> tuple:
        g = list(self._zero_grade)
        for i, e in m:
            w = self.vars[i].weight
            for k in range(len(g)):
                g[k] += e * w[k]
        return tuple(g)

    def mono_grade_key(self, m: CMono) -> tuple:
        k = self._grade_key_cache.get(m)
        if k is None:
            k = self.grade_key(self.mono_grade(m))
            self._grade_key_cache[m] = k
        return k

    def mono_cmp(self, a: CMono, b: CMono) -> int:
        if a == b:
            return 0
        ka, kb = self.mono_grade_key(a), self.mono_grade_key(b)
        if ka != kb:
            return 1 if ka > kb else -1
        # graded tie: lex on exponents, largest variable (index 0) first
        ia = ib = 0
        while ia < len(a) or ib < len(b):
            va = a[ia][0] if ia < len(a) else None
            vb = b[ib][0] if ib < len(b) else None
            if va == vb:
                if a[ia][1] != b[ib][1]:
                    return 1 if a[ia][1] > b[ib][1] else -1
                ia += 1
                ib += 1
            elif vb is None or (va is not None and va < vb):
                return 1  # a has a bigger variable with positive exponent
            else:
                return -1
        return 0

    def mono_max(self, monos) -> CMono:
        best = None
        for m in monos:
            if best is None or self.mono_cmp(m, best) > 0:
                best = m
        if best is None:
            raise ValueError("empty monomial collection")
        return best

    def sort_monos_desc(self, monos) -> list:
        import functools

        return sorted(monos, key=functools.cmp_to_key(self.mono_cmp), reverse=True)

    def format_mono(self, m: CMono) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            name = self.vars[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def restrict(self, keep) -> tuple["CRing", dict]:
        """Subring on the kept variable indices (order preserved).

        Returns the new ring and the old-index -> new-index map.
        """
        keep = sorted(keep)
        remap = {old: new for new, old in enumerate(keep)}
        return CRing([self.vars[i] for i in keep], self.grade_key), remap


def mono_mul(a: CMono, b: CMono) -> CMono:
    if not a:
        return b
    if not b:
        return a
    out = []
    ia = ib = 0
    while ia < len(a) and ib < len(b):
        va, ea = a[ia]
        vb, eb = b[ib]
        if va == vb:
            out.append((va, ea + eb))
            ia += 1
            ib += 1
        elif va < vb:
            out.append(a[ia])
            ia += 1
        else:
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return tuple(out)


def mono_mul_var(m: CMono, v: int) -> CMono:
    out = []
    placed = False
    for w, e in m:
        if w == v:
            out.append((w, e + 1))
            placed = True
        elif w > v and not placed:
            out.append((v, 1))
            out.append((w, e))
            placed = True
        else:
            out.append((w, e))
    if not placed:
        out.append((v, 1))
    return tuple(out)


def mono_divides(a: CMono, b: CMono) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(a: CMono, b: CMono) -> CMono:
    """Exact quotient a/b; caller guarantees divisibility."""
    db = dict(b)
    out = []
    for v, e in a:
        r = e - db.get(v, 0)
        if r:
            out.append((v, r))
    return tuple(out)


def mono_total_degree(m: CMono) -> int:
    return sum(e for _, e in m)


def mono_vars(m: CMono):
    return [v for v, _ in m]


class CPoly:
    """Immutable-by-convention sparse polynomial over Q."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CRing, terms: dict | None = None):
        self.ring = ring
        self.terms: dict = terms if terms is not None else {}

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(ring: CRing) -> "CPoly":
        return CPoly(ring, {})

    @staticmethod
    def const(ring: CRing, c) -> "CPoly":
        c = Fraction(c)
        return CPoly(ring, {ONE_MONO: c} if c else {})

    @staticmethod
    def var(ring: CRing, i: int, c=1) -> "CPoly":
        c = Fraction(c)
        return CPoly(ring, {((i, 1),): c} if c else {})

    @staticmethod
    def from_terms(ring: CRing, items) -> "CPoly":
        terms = {}
        for mono, coeff in items:
            c = terms.get(mono, Fraction(0)) + Fraction(coeff)
            if c:
                terms[mono] = c
            else:
                terms.pop(mono, None)
        return CPoly(ring, terms)

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, CPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "CPoly") -> "CPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return CPoly(self.ring, out)

    def __neg__(self) -> "CPoly":
        return CPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def scale(self, c) -> "CPoly":
        c = Fraction(c)
        if not c:
            return CPoly.zero(self.ring)
        if c == 1:
            return self
        return CPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, mono: CMono, coeff) -> "CPoly":
        coeff = Fraction(coeff)
        if not coeff:
            return CPoly.zero(self.ring)
        return CPoly(self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def __mul__(self, other: "CPoly") -> "CPoly":
        if not self.terms or not other.terms:
            return CPoly.zero(self.ring)
        a, b = self.terms, other.terms
        if len(a) == 1:
            (m, c), = a.items()
            return other.mul_term(m, c)
        if len(b) == 1:
            (m, c), = b.items()
            return self.mul_term(m, c)
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                s = out.get(m)
                if s is None:
                    out[m] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return CPoly(self.ring, out)

    def pow(self, e: int) -> "CPoly":
        if e < 0:
            raise ValueError("negative power")
        if e == 0:
            return CPoly.const(self.ring, 1)
        if e == 1:
            return self
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    def mul_var(self, v: int) -> "CPoly":
        """Multiply by a single variable: pure monomial re-keying."""
        out = {}
        for m, c in self.terms.items():
            out[mono_mul_var(m, v)] = c
        return CPoly(self.ring, out)

    # -- structure -----------------------------------------------------
    def leading(self) -> tuple:
        """(monomial, coefficient) of the largest term under the ring order."""
        m = self.ring.mono_max(self.terms.keys())
        return m, self.terms[m]

    def total_degree(self) -> int:
        return max((mono_total_degree(m) for m in self.terms), default=0)

    def linear_part(self) -> dict:
        """Map var_index -> coefficient over the degree-1 terms."""
        out = {}
        for m, c in self.terms.items():
            if len(m) == 1 and m[0][1] == 1:
                out[m[0][0]] = c
        return out

    def degree_component(self, d: int) -> "CPoly":
        return CPoly(self.ring, {m: c for m, c in self.terms.items() if mono_total_degree(m) == d})

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def grade(self):
        """The common weight vector of all terms, or raise if inhomogeneous.

        The constant 0 has every grade; returns None for it.
        """
        g = None
        for m in self.terms:
            gm = self.ring.mono_grade(m)
            if g is None:
                g = gm
            elif g != gm:
                raise ValueError("polynomial is not homogeneous for the grading")
        return g

    def is_grade_homogeneous(self) -> bool:
        try:
            self.grade()
            return True
        except ValueError:
            return False

    # -- substitution / evaluation --------------------------------------
    def substitute(self, mapping: dict) -> "CPoly":
        """Replace variables by polynomials; mapping is var_index -> CPoly.

        Substituted expressions must not mention substituted variables (the
        triangular-table invariant), so one pass per variable suffices.
        One variable is processed at a time, batching all terms of a given
        exponent into a single polynomial product.
        """
        if not self.terms:
            return self
        current = self
        while True:
            active = None
            for m in current.terms:
                for v, _ in m:
                    if v in mapping:
                        active = v
                        break
                if active is not None:
                    break
            if active is None:
                return current
            repl = mapping[active]
            untouched = {}
            layers: dict = {}
            for m, c in current.terms.items():
                e = 0
                rest = m
                for k, (v, ee) in enumerate(m):
                    if v == active:
                        e = ee
                        rest = m[:k] + m[k + 1:]
                        break
                if e:
                    layers.setdefault(e, {})[rest] = c
                else:
                    untouched[m] = c
            acc = CPoly(self.ring, untouched)
            power = None
            for e in sorted(layers):
                power = repl.pow(e) if power is None else power * repl.pow(e - prev)
                prev = e
                acc = acc + CPoly(self.ring, layers[e]) * power
            current = acc

    def evaluate(self, point) -> Fraction:
        """Evaluate at a full point; ``point`` maps var_index -> Fraction."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, e in m:
                v *= Fraction(point[i]) ** e
            total += v
        return total

    def diff(self, var: int) -> "CPoly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            mono = tuple(sorted(d.items()))
            out[mono] = out.get(mono, Fraction(0)) + c * e
        return CPoly(self.ring, {m: c for m, c in out.items() if c})

    # -- normal forms ----------------------------------------------------
    def monic(self) -> "CPoly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(1 / c)

    def primitive(self) -> "CPoly":
        """Integer-primitive scalar multiple with positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c.numerator * (den // c.denominator)))
        _, lead = self.leading()
        sign = -1 if lead < 0 else 1
        return self.scale(Fraction(sign * den, g))

    # -- display ---------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in self.ring.sort_monos_desc(self.terms.keys()):
            c = self.terms[m]
            s = self.ring.format_mono(m)
            if s == "1":
                text = str(c)
            elif c == 1:
                text = s
            elif c == -1:
                text = f"-{s}"
            else:
                text = f"{c}*{s}"
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"CPoly({self})"
