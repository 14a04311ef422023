"""Exact rank and determinant over Q and Q(sqrt(m)).

The native algorithm is fraction-free (Bareiss) elimination.  Rational matrices
are scaled row by row to integers first so the inner loop is pure ``int``
arithmetic.  Large matrices go to FLINT's ``fmpz_mat.rank``; a matrix over
Q(sqrt(m)) is first replaced by its 2x2-block regular representation over Q,
whose rank is exactly twice the rank over the extension.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import flint

from .scalars import QuadScalar, Scalar, common_ext, parts

# rows * cols above which "auto" hands the matrix to FLINT
FLINT_THRESHOLD = 1600


class ExactMatrix:
    """A dense rectangular matrix of exact scalars (immutable by convention)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Scalar]], nrows: int) -> ExactMatrix:
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def ext(self) -> int:
        return common_ext(v for r in self.rows for v in r)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def exact_rank(M: ExactMatrix | Sequence[Sequence[Scalar]], backend: str = "auto") -> int:
    """Rank over the fraction field of the entries.

    ``backend`` is ``"bareiss"``, ``"flint"`` or ``"auto"`` (FLINT for anything
    bigger than :data:`FLINT_THRESHOLD` entries).  Raises ``MixedExtension``
    when the entries live in two different quadratic fields.
    """
    if not isinstance(M, ExactMatrix):
        M = ExactMatrix(M)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    m = M.ext()
    if backend == "auto":
        backend = "flint" if M.nrows * M.ncols > FLINT_THRESHOLD else "bareiss"
    if backend == "flint":
        return _flint_rank(M.rows, m)
    if backend != "bareiss":
        raise ValueError(f"unknown backend {backend!r}")
    if m == 0:
        return _bareiss_rank_int(_integer_rows(M.rows))
    return _bareiss_rank_field(M.rows)


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for r in rows:
        r = [Fraction(v) for v in r]
        den = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * den) for v in r])
    return out


def _pivot_size(v) -> int:
    if isinstance(v, int):
        return v.bit_length() if v >= 0 else (-v).bit_length()
    a, b = parts(v)
    return max(abs(a.numerator).bit_length(), abs(b.numerator).bit_length())


def _bareiss_rank_int(rows: list[list[int]]) -> int:
    M = [r[:] for r in rows if any(r)]
    nrows = len(M)
    if nrows == 0:
        return 0
    ncols = len(M[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        best = -1
        best_size = -1
        for i in range(rank, nrows):
            v = M[i][c]
            if v:
                s = abs(v).bit_length()
                if s > best_size:
                    best, best_size = i, s
        if best < 0:
            continue
        M[rank], M[best] = M[best], M[rank]
        prow = M[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = M[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def _bareiss_rank_field(rows) -> int:
    M = [list(r) for r in rows if any(r)]
    nrows = len(M)
    if nrows == 0:
        return 0
    ncols = len(M[0])
    rank = 0
    prev: Scalar = Fraction(1)
    for c in range(ncols):
        if rank == nrows:
            break
        cands = [i for i in range(rank, nrows) if M[i][c]]
        if not cands:
            continue
        best = max(cands, key=lambda i: _pivot_size(M[i][c]))
        M[rank], M[best] = M[best], M[rank]
        prow = M[rank]
        p = prow[c]
        for i in range(rank + 1, nrows):
            row = M[i]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]) / prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def _flint_rank(rows, m: int) -> int:
    if m == 0:
        return flint.fmpz_mat(_integer_rows(rows)).rank()
    # regular representation of a + b sqrt(m): [[a, m b], [b, a]]
    real = []
    for r in rows:
        top, bot = [], []
        for v in r:
            a, b = parts(v)
            top += [a, m * b]
            bot += [b, a]
        real.append(top)
        real.append(bot)
    return flint.fmpz_mat(_integer_rows(real)).rank() // 2


def exact_det(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant of a square matrix by Bareiss elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev: Scalar = Fraction(1)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        p = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (p * M[i][j] - M[i][k] * M[k][j]) / prev
        prev = p
    d = M[n - 1][n - 1]
    if isinstance(d, int):
        d = Fraction(d)
    return d if sign > 0 else -d


__all__ = ["ExactMatrix", "exact_rank", "exact_det", "QuadScalar"]
