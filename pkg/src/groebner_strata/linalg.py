"""Exact linear algebra over Q: sparse row reduction and dense rank."""

from __future__ import annotations

from fractions import Fraction


def rref_sparse(rows):
    """Reduced row echelon form of sparse rows over Q.

    ``rows`` is a list of dicts mapping column index -> Fraction; column 0
    is the leftmost (highest-priority) pivot column.  Returns
    ``(pivot_cols, reduced_rows)`` where ``reduced_rows`` are the nonzero
    rows of the RREF, one per pivot, in pivot-column order.
    """
    pivots: dict[int, dict] = {}  # pivot column -> normalized row
    for row in rows:
        r = dict(row)
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                inv = 1 / r[lead]
                r = {c: v * inv for c, v in r.items()}
                pivots[lead] = r
                break
            f = r[lead]
            for c, v in p.items():
                s = r.get(c, Fraction(0)) - f * v
                if s:
                    r[c] = s
                else:
                    r.pop(c, None)
    # back-substitute to full reduction
    cols = sorted(pivots)
    for i in range(len(cols) - 1, -1, -1):
        lead = cols[i]
        row = pivots[lead]
        for other in cols[:i]:
            orow = pivots[other]
            f = orow.get(lead)
            if not f:
                continue
            for c, v in row.items():
                s = orow.get(c, Fraction(0)) - f * v
                if s:
                    orow[c] = s
                else:
                    orow.pop(c, None)
    return cols, [pivots[c] for c in cols]


def rank_dense(matrix) -> int:
    """Rank of a dense matrix (list of lists of Fractions)."""
    mat = [[Fraction(x) for x in row] for row in matrix]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = 1 / prow[col]
        mat[rank] = prow = [x * inv for x in prow]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], prow)]
        rank += 1
        if rank == len(mat):
            break
    return rank
