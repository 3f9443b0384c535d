"""Exponent-vector monomials in the variables X_0..X_n.

A monomial is a plain tuple of non-negative integers indexed by variable
number, so position i holds the exponent of X_i and X_n is the dominant
variable (X_n > ... > X_0 under every supported order).

All *external* representations (text like ``X3^2*X1`` and bracket lists
like ``[2,0,1,0]``) list exponents from X_n down to X_0; parsing and
formatting do the flipping.  Internally everything stays ascending.
"""

from __future__ import annotations

import re
from itertools import combinations

from .errors import ParseError

Mono = tuple


def one(nvars: int) -> Mono:
    return (0,) * nvars


def variable(nvars: int, i: int) -> Mono:
    """The monomial X_i."""
    return tuple(1 if k == i else 0 for k in range(nvars))


def degree(m: Mono) -> int:
    return sum(m)


def mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Mono, b: Mono) -> bool:
    """True when X^a divides X^b."""
    return all(x <= y for x, y in zip(a, b))


def div(a: Mono, b: Mono) -> Mono:
    """Exact quotient X^a / X^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def gcd(a: Mono, b: Mono) -> Mono:
    return tuple(min(x, y) for x, y in zip(a, b))


def is_coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def lcm_and_cofactors(a: Mono, b: Mono) -> tuple[Mono, Mono, Mono]:
    """Return (lcm, ca, cb) with a + ca = lcm = b + cb."""
    if len(a) != len(b):
        raise ValueError(f"monomial length mismatch: {len(a)} vs {len(b)}")
    m = lcm(a, b)
    return m, div(m, a), div(m, b)


def monomials_of_degree(nvars: int, d: int):
    """Iterate over all degree-d exponent tuples in nvars variables.

    Stars-and-bars over bar positions; the iteration order is not
    meaningful, callers sort when they need a particular order.
    """
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for bars in combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + nvars - 2 - prev)
        yield tuple(exps)


_FACTOR_RE = re.compile(r"^[Xx](\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, nvars: int) -> Mono:
    """Parse ``X3^2*X1`` style text into an exponent tuple."""
    text = text.strip()
    if text in ("1", ""):
        return one(nvars)
    exps = [0] * nvars
    for factor in text.split("*"):
        m = _FACTOR_RE.match(factor.strip())
        if not m:
            raise ParseError(f"bad monomial factor {factor!r} in {text!r}")
        i = int(m.group(1))
        if i >= nvars:
            raise ParseError(f"variable X{i} out of range for {nvars} variables")
        exps[i] += int(m.group(2) or 1)
    return tuple(exps)


def format_monomial(m: Mono) -> str:
    """Render with dominant variables first: (0,1,2) -> ``X2^2*X1``."""
    parts = []
    for i in range(len(m) - 1, -1, -1):
        e = m[i]
        if e == 1:
            parts.append(f"X{i}")
        elif e > 1:
            parts.append(f"X{i}^{e}")
    return "*".join(parts) if parts else "1"


def from_bracket(exps_desc: list, nvars: int | None = None) -> Mono:
    """Bracket form lists exponents X_n..X_0; flip to internal ascending."""
    t = tuple(reversed([int(e) for e in exps_desc]))
    if any(e < 0 for e in t):
        raise ParseError(f"negative exponent in {exps_desc!r}")
    if nvars is not None and len(t) != nvars:
        raise ParseError(f"expected {nvars} exponents, got {len(t)}")
    return t


def to_bracket(m: Mono) -> list:
    return [int(e) for e in reversed(m)]
