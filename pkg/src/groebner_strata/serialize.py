"""JSON payloads for ideals, orders, polynomials, strata and reports.

Coefficients are serialized as exact "p/q" strings and monomials as sorted
(variable, exponent) pair lists, so every emitted object reparses to an
equal one.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import monomials as mn
from .cpoly import CPoly, CRing, CVar
from .errors import ParseError
from .ideals import MonomialIdeal, ideal_from_json, ideal_to_json
from .orders import TermOrder, weight_vector_order
from .stratum import StratumContext, StratumResult, TailSpec


def frac_to_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def frac_from_str(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational literal {s!r}")


def cpoly_to_json(p: CPoly) -> dict:
    terms = []
    for m in p.ring.sort_monos_desc(p.terms.keys()):
        terms.append([frac_to_str(p.terms[m]), [[v, e] for v, e in m]])
    return {"terms": terms, "text": str(p)}


def cpoly_from_json(data: dict, ring: CRing) -> CPoly:
    try:
        items = data["terms"]
    except (TypeError, KeyError):
        raise ParseError(f"polynomial JSON needs 'terms': {data!r}")
    terms = {}
    for coeff, mono in items:
        m = tuple((int(v), int(e)) for v, e in mono)
        terms[m] = frac_from_str(coeff)
    return CPoly(ring, {m: c for m, c in terms.items() if c})


def cvar_to_json(v: CVar) -> dict:
    out = {"name": v.name, "weight": list(v.weight)}
    if v.gen_index is not None:
        out["gen"] = v.gen_index
        out["lead"] = mn.to_bracket(v.lead)
        out["tail"] = mn.to_bracket(v.tail)
    return out


def order_spec(text: str) -> TermOrder:
    """CLI order argument: 'lex', 'degrevlex', 'weight:a,b,...' (X_n..X_0
    convention), a JSON literal, or a path to an order JSON file."""
    text = text.strip()
    if text == "lex":
        return TermOrder.lex()
    if text == "degrevlex":
        return TermOrder.degrevlex()
    if text.startswith("weight:"):
        try:
            ws = [int(x) for x in text[len("weight:"):].split(",")]
        except ValueError:
            raise ParseError(f"bad weight list in {text!r}")
        try:
            return weight_vector_order(ws)
        except ValueError as exc:
            raise ParseError(str(exc))
    if text.startswith("{"):
        return TermOrder.from_json(json.loads(text))
    try:
        with open(text) as fh:
            return TermOrder.from_json(json.load(fh))
    except OSError as exc:
        raise ParseError(f"cannot read order spec {text!r}: {exc}")


def load_ideal(path: str) -> MonomialIdeal:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read ideal file {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {path!r}: {exc}")
    return ideal_from_json(data)


def stratum_to_json(res: StratumResult) -> dict:
    ctx = res.ctx
    return {
        "ideal": ideal_to_json(ctx.j),
        "order": ctx.order.to_json(),
        "tailMode": ctx.tailspec.mode,
        "tails": [[mn.format_monomial(a) for a in t] for t in ctx.tailspec.tails],
        "variables": [cvar_to_json(v) for v in ctx.ring.vars],
        "lambdaDegrees": [list(v.weight) for v in ctx.ring.vars],
        "hGenerators": [cpoly_to_json(g) for g in res.h_gens],
        "linearPart": [cpoly_to_json(g) for g in res.linear_part],
        "trace": [
            {"pair": [i + 1, j + 1], "xMonomial": mn.format_monomial(m)}
            for (i, j), m in res.trace
        ],
        "strategy": res.strategy,
    }


def stratum_from_json(data: dict) -> StratumResult:
    from .stratum import generic_generators

    try:
        j = ideal_from_json(data["ideal"])
        order = TermOrder.from_json(data["order"])
        mode = data["tailMode"]
        tail_lists = data["tails"]
    except (TypeError, KeyError):
        raise ParseError("stratum JSON is missing required fields")
    tails_parsed = tuple(
        tuple(mn.parse_monomial(t, j.nvars) for t in lst) for lst in tail_lists
    )
    spec = TailSpec(j, mode, tails_parsed)
    ctx = generic_generators(j, spec, order)
    names = [v.name for v in ctx.ring.vars]
    expect = [v["name"] for v in data["variables"]]
    if names != expect:
        raise ParseError("stratum JSON variables do not match the rebuilt ring")
    h = [cpoly_from_json(g, ctx.ring) for g in data["hGenerators"]]
    lin = [cpoly_from_json(g, ctx.ring) for g in data["linearPart"]]
    trace = [
        ((t["pair"][0] - 1, t["pair"][1] - 1), mn.parse_monomial(t["xMonomial"], j.nvars))
        for t in data["trace"]
    ]
    return StratumResult(ctx, h, trace, lin, data.get("strategy", "first"), [])


def write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
