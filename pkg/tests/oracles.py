"""Independent brute-force reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product


def naive_rank(rows):
    """Rank by plain Gauss-Jordan over Fractions (no pivoting heuristics)."""
    M = [[Fraction(v) for v in r] for r in rows]
    if not M:
        return 0
    rank = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = None
        for i in range(rank, len(M)):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [M[i][j] - f * M[rank][j] for j in range(ncols)]
        rank += 1
    return rank


def monomials_of_degree(k):
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1)]


def naive_syzygy_dim(f_terms, d, r):
    """dim of {(a,b,c) of degree r : a f_x + b f_y + c f_z = 0} by building the
    full linear map column by column."""
    def deriv(terms, i):
        out = {}
        for m, c in terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = out.get(tuple(mm), 0) + c * m[i]
        return out

    parts = [deriv(f_terms, i) for i in range(3)]
    src = monomials_of_degree(r)
    tgt = {m: i for i, m in enumerate(monomials_of_degree(r + d - 1))}
    cols = []
    for p in parts:
        for s in src:
            col = [Fraction(0)] * len(tgt)
            for m, c in p.items():
                col[tgt[(m[0] + s[0], m[1] + s[1], m[2] + s[2])]] += c
            cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    return 3 * len(src) - naive_rank(rows)


def staircase_count(monomial_gens, limit=60):
    """Number of monomials u^i v^j outside a monomial ideal in two variables."""
    count = 0
    for i, j in product(range(limit), repeat=2):
        if not any(i >= a and j >= b for a, b in monomial_gens):
            count += 1
    return count
