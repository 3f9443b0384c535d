"""Polynomials in X whose coefficients live in Q[C].

A ParamPoly maps X-monomials (exponent tuples) to CPoly coefficients; the
zero coefficient is never stored.  The X-side order comes from the ambient
term order; with an elimination order on X over C the leading term of a
generic generator is its X-monomial, which is what every reduction here
relies on.
"""

from __future__ import annotations

from fractions import Fraction

from . import monomials as mn
from .cpoly import CPoly, CRing


class ParamPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict = terms if terms is not None else {}

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "ParamPoly":
        return ParamPoly(dict(self.terms))

    def x_monomials(self):
        return self.terms.keys()

    def coeff(self, m) -> CPoly | None:
        return self.terms.get(m)

    def add_term(self, m, c: CPoly) -> None:
        cur = self.terms.get(m)
        s = c if cur is None else cur + c
        if s.is_zero():
            self.terms.pop(m, None)
        else:
            self.terms[m] = s

    def leading_xmono(self, order):
        best = None
        bk = None
        for m in self.terms:
            k = order.key(m)
            if bk is None or k > bk:
                best, bk = m, k
        return best

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        out = ParamPoly(dict(self.terms))
        for m, c in other.terms.items():
            out.add_term(m, -c)
        return out

    def mul_xmono(self, xm) -> "ParamPoly":
        return ParamPoly({mn.mul(m, xm): c for m, c in self.terms.items()})

    def map_coeffs(self, fn) -> "ParamPoly":
        out = {}
        for m, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero():
                out[m] = c2
        return ParamPoly(out)

    def is_grade_consistent(self, ring: CRing, xkey) -> bool:
        """Every coefficient homogeneous, and coefficient grade + X-monomial
        constant across terms (the S-polynomial grading discipline)."""
        target = None
        for m, c in self.terms.items():
            try:
                g = c.grade()
            except ValueError:
                return False
            if g is None:
                continue
            total = tuple(gi + mi for gi, mi in zip(g, m))
            if target is None:
                target = total
            elif target != total:
                return False
        return True

    def specialize(self, point, xring: CRing, nvars: int) -> CPoly:
        """Evaluate the C-coefficients at a point, producing a plain X-poly.

        ``xring`` must list the X-variables from X_n down to X_0 so that
        its graded key reproduces the X-order; ``point`` maps C variable
        indices to Fractions.
        """
        terms = {}
        for m, c in self.terms.items():
            v = c.evaluate(point)
            if v:
                mono = tuple(
                    (nvars - 1 - i, e) for i in range(nvars - 1, -1, -1) if (e := m[i])
                )
                terms[mono] = terms.get(mono, Fraction(0)) + v
        return CPoly(xring, {m: c for m, c in terms.items() if c})

    def __str__(self) -> str:
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            parts.append(f"{cs}*{mn.format_monomial(m)}")
        return " + ".join(parts) if parts else "0"


def x_variable_ring(nvars: int, order) -> CRing:
    """Q[X_n..X_0] as a coefficient ring whose monomial order is the X-order."""
    from .cpoly import CVar

    cvars = [
        CVar(f"X{i}", tuple(1 if k == i else 0 for k in range(nvars)))
        for i in range(nvars - 1, -1, -1)
    ]
    return CRing(cvars, order.key)


def xmono_to_cmono(m, nvars: int):
    """Ascending exponent tuple -> sparse monomial of ``x_variable_ring``."""
    return tuple((nvars - 1 - i, m[i]) for i in range(nvars - 1, -1, -1) if m[i])
