"""Term orders on X-monomials: Lex, DegRevLex and weight-matrix orders.

Every order is realized through an integer key: ``key(m)`` returns a tuple
compared lexicographically, so ``key(a) > key(b)`` iff ``X^a > X^b``.  Keys
are additive, which makes every order multiplicative, and they accept
integer vectors with negative entries, which is what lets the same
comparators grade difference vectors later on.

All orders respect X_n > ... > X_0.  Weight-matrix orders always carry the
total-degree row first (it is prepended when missing), so they are graded;
construction checks full rank and the variable convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

LT, EQ, GT = -1, 0, 1


def _full_rank(rows: tuple, nvars: int) -> bool:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for col in range(nvars):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank == nvars


@dataclass(frozen=True)
class TermOrder:
    kind: str  # "lex" | "degrevlex" | "weight"
    rows: tuple | None = None  # weight rows, ascending variable index

    @staticmethod
    def lex() -> "TermOrder":
        return TermOrder("lex")

    @staticmethod
    def degrevlex() -> "TermOrder":
        return TermOrder("degrevlex")

    @staticmethod
    def weight(rows) -> "TermOrder":
        """Weight-matrix order from integer rows (index i = weight of X_i).

        A total-degree row is prepended when the first row is not all ones.
        The resulting matrix must have full column rank and must order the
        variables as X_n > ... > X_0.
        """
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows:
            raise ValueError("weight order needs at least one row")
        nvars = len(rows[0])
        if any(len(r) != nvars for r in rows):
            raise ValueError("weight rows have inconsistent lengths")
        if rows[0] != (1,) * nvars:
            rows = ((1,) * nvars,) + rows
        if not _full_rank(rows, nvars):
            raise ValueError(f"weight matrix does not have full rank {nvars}")
        order = TermOrder("weight", rows)
        for i in range(nvars - 1, 0, -1):
            a = [0] * nvars
            b = [0] * nvars
            a[i] = 1
            b[i - 1] = 1
            if order.compare(tuple(a), tuple(b)) != GT:
                raise ValueError(f"weight matrix violates X{i} > X{i - 1}")
        return order

    @property
    def is_graded(self) -> bool:
        """True when total degree decides first (Lex is the only exception)."""
        return self.kind != "lex"

    def key(self, m) -> tuple:
        if self.kind == "lex":
            return tuple(reversed(m))
        if self.kind == "degrevlex":
            return (sum(m),) + tuple(-e for e in m)
        if len(m) != len(self.rows[0]):
            raise ValueError(f"monomial length {len(m)} does not match weight rows")
        return tuple(sum(w * e for w, e in zip(row, m)) for row in self.rows)

    def compare(self, a, b) -> int:
        if len(a) != len(b):
            raise ValueError(f"monomial length mismatch: {len(a)} vs {len(b)}")
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return LT
        if ka > kb:
            return GT
        # keys are injective for all three kinds (weight rows have full rank)
        assert a == b, "order keys collided on distinct monomials"
        return EQ

    def sort_desc(self, monos):
        return sorted(monos, key=self.key, reverse=True)

    def positive(self, vec) -> bool:
        """Whether an integer vector is positive for this order (X^v > 1 formally)."""
        return self.key(vec) > self.key((0,) * len(vec))

    def to_json(self) -> dict:
        if self.kind == "weight":
            return {"kind": "weight", "rows": [list(r) for r in self.rows]}
        return {"kind": self.kind}

    @staticmethod
    def from_json(data: dict) -> "TermOrder":
        try:
            kind = data["kind"]
        except (TypeError, KeyError):
            raise ParseError(f"term order JSON needs a 'kind': {data!r}")
        if kind == "lex":
            return TermOrder.lex()
        if kind == "degrevlex":
            return TermOrder.degrevlex()
        if kind == "weight":
            if "rows" not in data:
                raise ParseError("weight order JSON needs 'rows'")
            try:
                return TermOrder.weight(data["rows"])
            except ValueError as exc:
                raise ParseError(str(exc))
        raise ParseError(f"unknown term order kind {kind!r}")


def weight_vector_order(weights_desc) -> TermOrder:
    """Order refining one weight row: degree first, then the row, then unit rows.

    ``weights_desc`` lists the weights of X_n..X_0 (the display convention).
    The tie-break rows pick out X_{n-2}, ..., X_0, so the full matrix is
    square of size n+1.  Raises ValueError when the matrix is rank-deficient
    or fails to order the variables as X_n > ... > X_0.
    """
    w = tuple(int(x) for x in reversed(weights_desc))
    n = len(w) - 1
    rows = [(1,) * (n + 1), w]
    for i in range(n - 2, -1, -1):
        rows.append(tuple(1 if k == i else 0 for k in range(n + 1)))
    return TermOrder.weight(rows)
