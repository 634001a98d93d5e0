"""Exact linear algebra over QQ or QQ(t): reduced row echelon form and friends.

Entries must support field arithmetic (+, -, *, /) and be falsy exactly when
zero; ``fractions.Fraction`` and ``scalars.LaurentFrac`` both qualify.
RREF is the canonical form used everywhere for comparing subspaces: two
subspaces of the same ambient space are equal iff their RREFs coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import as_field


@dataclass(frozen=True)
class ExactMatrix:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("inconsistent matrix dimensions")

    @classmethod
    def from_rows(cls, rows):
        rows = tuple(tuple(r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    def rref(self):
        reduced, pivots = rref(self.rows)
        return ExactMatrix.from_rows(reduced), pivots


def rref(rows):
    """Reduced row echelon form over a field.

    Returns (rows, pivot_columns).  The output has the same shape as the
    input (zero rows kept at the bottom), unit pivots, and zeros both below
    and above each pivot.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullity(rows) -> int:
    if not rows:
        return 0
    return len(rows[0]) - rank(rows)


def reduce_against(rref_rows, pivots, vec):
    """Reduce ``vec`` modulo the row space given in RREF; returns the residual."""
    v = list(vec)
    for row, c in zip(rref_rows, pivots):
        if v[c]:
            f = v[c]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def in_row_space(rref_rows, pivots, vec) -> bool:
    return not any(reduce_against(rref_rows, pivots, vec))


def nonzero_rows(rows):
    return [r for r in rows if any(r)]


def promote_rows(rows):
    """Coerce every entry into a common field (QQ, or QQ(t) if t appears)."""
    from .scalars import LaurentFrac, LaurentPoly

    flat = [x for r in rows for x in r]
    if any(isinstance(x, (LaurentPoly, LaurentFrac)) for x in flat):
        return [[as_field(x) if not isinstance(x, Fraction) else LaurentFrac(x)
                 for x in r] for r in rows]
    return [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
