"""Exact ranks by fraction-free (Bareiss) elimination.

Rational rows are scaled to integer rows first; Gaussian-rational rows are
realified.  Pivots are taken at the first nonzero entry in column order so
that every computation is deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .scalars import Gauss

__all__ = [
    "integer_rank",
    "rational_rank",
    "real_rank",
    "complex_rank",
    "realify",
    "in_span",
    "SubspaceReducer",
]


def integer_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank of an integer matrix given as a list of rows."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row[j] = (p * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in fr]


def rational_rank(rows: Iterable[Sequence]) -> int:
    return integer_rank(_integer_row(r) for r in rows)


def realify(row: Sequence) -> list[Fraction]:
    """Split a Gaussian row into its real and imaginary coordinates."""
    out = []
    for z in row:
        if isinstance(z, Gauss):
            out.append(z.re)
            out.append(z.im)
        else:
            out.append(Fraction(z))
            out.append(Fraction(0))
    return out


def real_rank(rows: Iterable[Sequence]) -> int:
    """Dimension over the reals of the real span of Gaussian rows."""
    return rational_rank(realify(r) for r in rows)


def complex_rank(rows: Iterable[Sequence]) -> int:
    """Dimension over the complex numbers of the span of Gaussian rows."""
    rows = [list(r) for r in rows]
    if all(not isinstance(z, Gauss) or not z.im for r in rows for z in r):
        # a real matrix has the same rank over C as over Q
        return rational_rank([[z.re if isinstance(z, Gauss) else z for z in r] for r in rows])
    real_rows = []
    for r in rows:
        real_rows.append(realify(r))
        real_rows.append(realify([Gauss(0, 1) * z for z in r]))
    k = rational_rank(real_rows)
    assert k % 2 == 0
    return k // 2


def in_span(vector: Sequence, rows: Sequence[Sequence], *, field: str = "complex") -> bool:
    rank = complex_rank if field == "complex" else real_rank
    rows = list(rows)
    return rank(rows + [vector]) == rank(rows)


class SubspaceReducer:
    """Canonical coordinates in C^n / span(rows) via the reduced echelon form of the rows."""

    def __init__(self, rows: Sequence[Sequence]):
        m = [[Gauss(z) if not isinstance(z, Gauss) else z for z in r] for r in rows]
        width = len(m[0]) if m else 0
        pivots: list[int] = []
        basis: list[list[Gauss]] = []
        for row in m:
            row = self._eliminate(row, basis, pivots)
            c = next((j for j, z in enumerate(row) if z), None)
            if c is None:
                continue
            inv = Gauss(1) / row[c]
            row = [z * inv for z in row]
            for k, b in enumerate(basis):
                f = b[c]
                if f:
                    basis[k] = [x - f * y for x, y in zip(b, row)]
            basis.append(row)
            pivots.append(c)
        self.width = width
        self.pivots = pivots
        self.basis = basis
        self.free = [j for j in range(width) if j not in set(pivots)]

    @staticmethod
    def _eliminate(row, basis, pivots):
        row = list(row)
        for b, c in zip(basis, pivots):
            f = row[c]
            if f:
                row = [x - f * y for x, y in zip(row, b)]
        return row

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Sequence) -> list:
        """Coordinates of the class of ``vector`` on the non-pivot positions."""
        row = self._eliminate([Gauss(z) if not isinstance(z, Gauss) else z for z in vector],
                              self.basis, self.pivots)
        return [row[j] for j in self.free]

    def contains(self, vector: Sequence) -> bool:
        return not any(self.reduce(vector))
