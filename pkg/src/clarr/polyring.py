"""Sparse polynomials over exact scalars.

:class:`HPoly` is a homogeneous form in ``x, y, z``; :class:`AffinePoly` lives in
two chart variables.  Both store ``{exponent tuple: nonzero coefficient}``.

Graded pieces of ideals are handled through Macaulay matrices: the degree-k
piece of ``(g_1, ..., g_s)`` is spanned by the products ``m * g_i`` with ``m`` a
monomial of degree ``k - deg g_i``.  Columns of those matrices are laid out in
graded-lex order (``x > y > z``), fixed once by :func:`monomials`.

Polynomial text grammar accepted by :func:`parse_poly`::

    expr    := ["+" | "-"] term (("+" | "-") term)*
    term    := power (["*"] power)*
    power   := atom [("^" | "**") INT]
    atom    := NUMBER ["/" NUMBER] | VAR | "(" expr ")"
    VAR     := "x" | "y" | "z"

Whitespace is ignored; juxtaposition (``2x``) means multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import flint

from .errors import ParseError, RangeError
from .linalg import FLINT_THRESHOLD, ExactMatrix, _bareiss_rank_int, exact_det, exact_rank
from .scalars import QuadScalar, Scalar, ext_of, render

VARS = ("x", "y", "z")


def _clean(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, QuadScalar) and not c.b:
        return c.a
    return c


class Poly:
    """Sparse polynomial in ``nvars`` variables; immutable and hashable."""

    __slots__ = ("terms", "nvars", "_hash")
    var_names: Sequence[str] = ()

    def __init__(self, terms: dict | Iterable = (), nvars: int = 3):
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for mono, c in items:
            if c:
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} does not have {nvars} exponents")
                clean[mono] = _clean(c)
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    def _new(self, terms: dict):
        return Poly(terms, self.nvars)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for the zero polynomial)."""
        return min((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono) -> Scalar:
        return self.terms.get(tuple(mono), Fraction(0))

    def ext(self) -> int:
        m = 0
        for c in self.terms.values():
            e = ext_of(c)
            if e:
                m = e
        return m

    def is_rational(self) -> bool:
        return all(not ext_of(c) for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self._constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            out[m] = c if v is None else v + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self._constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return self._new({})
            return self._new({m: c * other for m, c in self.terms.items()})
        out: dict = {}
        n = self.nvars
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(m1[i] + m2[i] for i in range(n))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return self._mul_result(other, out)

    def _mul_result(self, other, out):
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self._constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def _constant(self, c):
        return Poly({(0,) * self.nvars: c}, self.nvars)

    def derivative(self, i: int):
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return self._new(out)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        powers = [[Fraction(1)] for _ in range(self.nvars)]
        total: Scalar = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    pw = powers[i]
                    while len(pw) <= e:
                        pw.append(pw[-1] * point[i])
                    term = term * pw[e]
            total = total + term
        return total

    def truncate(self, n: int):
        """Drop every term of total degree >= n."""
        return self._new({m: c for m, c in self.terms.items() if sum(m) < n})

    # -- comparison / display -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if not other:
                return not self.terms
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def __str__(self) -> str:
        names = self.var_names or tuple(f"v{i}" for i in range(self.nvars))
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            cs = render(c)
            if isinstance(c, QuadScalar):
                cs = f"({cs})"
            if not factors:
                pieces.append(cs)
            elif c == 1:
                pieces.append("*".join(factors))
            elif c == -1:
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append(cs + "*" + "*".join(factors))
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class HPoly(Poly):
    """Homogeneous form in x, y, z.  The zero form keeps a nominal degree."""

    __slots__ = ("degree",)
    var_names = VARS

    def __init__(self, terms: dict | Iterable = (), degree: int | None = None):
        super().__init__(terms, 3)
        degs = {sum(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        self.degree = 0 if degree is None else degree

    def _new(self, terms: dict):
        return HPoly(terms, degree=self.degree if not terms else None)

    def _mul_result(self, other, out):
        return HPoly(out, degree=self.degree + getattr(other, "degree", 0) if not out else None)

    def _constant(self, c):
        return HPoly({(0, 0, 0): c}, degree=0)

    def __add__(self, other):
        if isinstance(other, HPoly) and other.terms and self.terms and other.degree != self.degree:
            raise ValueError("sum of forms of different degrees")
        if isinstance(other, HPoly) and not self.terms:
            return other
        if isinstance(other, HPoly) and not other.terms:
            return self
        return super().__add__(other)

    def derivative(self, i: int) -> HPoly:
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return HPoly(out, degree=max(self.degree - 1, 0) if not out else None)

    @classmethod
    def parse(cls, text: str) -> HPoly:
        p = parse_poly(text)
        try:
            return cls(p.terms)
        except ValueError as exc:
            raise ParseError(f"{text!r}: {exc}") from None

    @classmethod
    def linear(cls, a, b, c) -> HPoly:
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, degree=1)

    def substitute_linear(self, M: Sequence[Sequence[Scalar]]) -> HPoly:
        """``f(M . X)``: old coordinate i becomes sum_j M[i][j] * X_j."""
        forms = [HPoly.linear(*M[i]) for i in range(3)]
        cache: dict = {}

        def pw(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = forms[i] ** e
            return cache[key]

        out = HPoly({}, degree=self.degree)
        acc: dict = {}
        for mono, c in self.terms.items():
            t = HPoly({(0, 0, 0): c}, degree=0)
            for i, e in enumerate(mono):
                if e:
                    t = t * pw(i, e)
            for m, v in t.terms.items():
                w = acc.get(m)
                acc[m] = v if w is None else w + v
        if acc:
            out = HPoly(acc)
            if not out.terms:
                out = HPoly({}, degree=self.degree)
        return out


class AffinePoly(Poly):
    """Polynomial in two local chart variables (u, v)."""

    __slots__ = ()
    var_names = ("u", "v")

    def __init__(self, terms: dict | Iterable = ()):
        super().__init__(terms, 2)

    def _new(self, terms: dict):
        return AffinePoly(terms)

    def _constant(self, c):
        return AffinePoly({(0, 0): c})


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_poly(text: str) -> Poly:
    """Parse a polynomial in x, y, z with rational coefficients (see module doc)."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    i = 0
    one = Poly({(0, 0, 0): 1}, 3)

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take():
        nonlocal i
        t = peek()
        i += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "+"):
            take()
        elif peek() == ("op", "-"):
            take()
            sign = -1
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while True:
            t = peek()
            if t == ("op", "*"):
                take()
                acc = acc * power()
            elif t[0] in ("num", "var") or t == ("op", "("):
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {text!r}")
            return base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            if peek() == ("op", "/"):
                take()
                k2, den = take()
                if k2 != "num" or den == 0:
                    raise ParseError(f"bad rational literal in {text!r}")
                return one * Fraction(val, den)
            return one * val
        if kind == "var":
            mono = [0, 0, 0]
            mono[VARS.index(val)] = 1
            return Poly({tuple(mono): 1}, 3)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if i != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return result


# -- graded pieces and Macaulay matrices ------------------------------------


def graded_dim(k: int) -> int:
    """Dimension of the degree-k piece of C[x, y, z]."""
    if k < 0:
        return 0
    return (k + 1) * (k + 2) // 2


@lru_cache(maxsize=None)
def monomials(k: int) -> tuple[tuple[int, int, int], ...]:
    """Degree-k monomials of C[x, y, z] in graded-lex order (x > y > z)."""
    if k < 0:
        return ()
    return tuple((a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1))


@lru_cache(maxsize=None)
def _monomial_index(k: int) -> dict:
    return {m: i for i, m in enumerate(monomials(k))}


def partials(f: HPoly) -> tuple[HPoly, HPoly, HPoly]:
    """(f_x, f_y, f_z)."""
    return f.derivative(0), f.derivative(1), f.derivative(2)


def macaulay_rows(gens: Sequence[HPoly], k: int) -> list[list[Scalar]]:
    """One row per product ``m * g`` landing in degree k (coordinates in monomials(k))."""
    index = _monomial_index(k)
    n = len(index)
    rows = []
    for g in gens:
        if g.is_zero() or g.degree > k:
            continue
        for m in monomials(k - g.degree):
            row: list = [0] * n
            for e, c in g.terms.items():
                row[index[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]] = c
            rows.append(row)
    return rows


def _integer_gen(g: HPoly) -> dict:
    den = lcm(*(Fraction(c).denominator for c in g.terms.values()))
    return {e: int(Fraction(c) * den) for e, c in g.terms.items()}


def ideal_piece_rank(gens: Sequence[HPoly], k: int, backend: str = "auto") -> int:
    """dim of the degree-k piece of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero() and g.degree <= k]
    if not gens or k < 0:
        return 0
    if all(g.is_rational() for g in gens):
        # scaling a row leaves the rank alone: keep everything in ints
        index = _monomial_index(k)
        n = len(index)
        rows = []
        for g in gens:
            ig = _integer_gen(g)
            for m in monomials(k - g.degree):
                row = [0] * n
                for e, c in ig.items():
                    row[index[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]] = c
                rows.append(row)
        if backend == "flint" or (backend == "auto" and len(rows) * n > FLINT_THRESHOLD):
            return flint.fmpz_mat(rows).rank()
        return _bareiss_rank_int(rows)
    return exact_rank(ExactMatrix(macaulay_rows(gens, k)), backend=backend)


def syzygy_kernel_dim(f: HPoly, r: int, backend: str = "auto") -> int:
    """dim ker( S_r^3 -> S_{r+d-1}, (a, b, c) -> a f_x + b f_y + c f_z ).

    Restricted to ``0 <= r <= d - 2`` so that Koszul relations never appear.
    """
    d = f.degree
    if r < 0 or r > d - 2:
        raise RangeError(f"syzygy degree {r} outside the Koszul-free range [0, {d - 2}]")
    return 3 * graded_dim(r) - ideal_piece_rank(partials(f), r + d - 1, backend=backend)


# -- univariate helpers over a field --------------------------------------------
# coefficient lists, lowest degree first


def utrim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def udeg(p: list) -> int:
    return len(utrim(p)) - 1


def udivmod(a: list, b: list) -> tuple[list, list]:
    a = utrim(a)
    b = utrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = utrim(a)
    return q, a


def ugcd(a: list, b: list) -> list:
    """Monic gcd of two univariate polynomials over a field."""
    a, b = utrim(a), utrim(b)
    while b:
        _, r = udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def uderiv(p: list) -> list:
    return [p[i] * i for i in range(1, len(p))]


def ueval(p: list, t) -> Scalar:
    acc: Scalar = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def interpolate(xs: Sequence, ys: Sequence) -> list:
    """Coefficients (low first) of the interpolating polynomial (Newton form)."""
    n = len(xs)
    xs = [Fraction(x) if isinstance(x, int) else x for x in xs]
    coef = [Fraction(y) if isinstance(y, int) else y for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner on the Newton form: acc = acc * (t - xs[i]) + coef[i]
    acc = [coef[-1]]
    for i in range(n - 2, -1, -1):
        nxt = [Fraction(0)] * (len(acc) + 1)
        for k, c in enumerate(acc):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * xs[i]
        nxt[0] = nxt[0] + coef[i]
        acc = nxt
    return utrim(acc)


# -- resultants -----------------------------------------------------------------


def _coeffs_in(p: HPoly, var: int, at: dict) -> list:
    """Coefficients (low first) of p as a polynomial in ``var``, other variables
    replaced by the values in ``at``."""
    e = max((m[var] for m in p.terms), default=0)
    out: list = [Fraction(0)] * (e + 1)
    for m, c in p.terms.items():
        term = c
        for i in range(3):
            if i != var and m[i]:
                term = term * at[i] ** m[i]
        out[m[var]] = out[m[var]] + term
    return out


def sylvester_det(a: list, b: list) -> Scalar:
    """Resultant of two univariate polynomials with formal degrees len-1."""
    ea, eb = len(a) - 1, len(b) - 1
    n = ea + eb
    if n == 0:
        return Fraction(1)
    rows = []
    ra = list(reversed(a))
    rb = list(reversed(b))
    for i in range(eb):
        rows.append([Fraction(0)] * i + ra + [Fraction(0)] * (n - ea - 1 - i))
    for i in range(ea):
        rows.append([Fraction(0)] * i + rb + [Fraction(0)] * (n - eb - 1 - i))
    return exact_det(rows)


def resultant(p: HPoly, q: HPoly, var: int = 0) -> HPoly:
    """Sylvester resultant eliminating variable index ``var`` (0=x, 1=y, 2=z).

    The result is a binary form in the two remaining variables (stored as an
    HPoly whose ``var`` exponent is always 0), homogeneous of degree
    ``deg p * e_q + deg q * e_p - e_p * e_q`` where ``e_*`` are the degrees in
    ``var``.  It is computed by exact interpolation of the numeric Sylvester
    determinant along the affine chart of the remaining variables.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    ep = max(m[var] for m in p.terms)
    eq = max(m[var] for m in q.terms)
    D = p.degree * eq + q.degree * ep - ep * eq
    u, w = [i for i in range(3) if i != var]
    xs = [Fraction(t) for t in range(D + 1)]
    ys = []
    for t in xs:
        at = {u: t, w: Fraction(1)}
        a = _coeffs_in(p, var, at)[: ep + 1]
        b = _coeffs_in(q, var, at)[: eq + 1]
        a += [Fraction(0)] * (ep + 1 - len(a))
        b += [Fraction(0)] * (eq + 1 - len(b))
        ys.append(sylvester_det(a, b))
    coeffs = interpolate(xs, ys)
    terms = {}
    for i, c in enumerate(coeffs):
        mono = [0, 0, 0]
        mono[u] = i
        mono[w] = D - i
        terms[tuple(mono)] = c
    return HPoly(terms, degree=D)


def binary_form_roots(R: HPoly, var: int):
    """Roots in P^1 of a binary form with rational coefficients.

    ``var`` is the variable absent from ``R``.  Returns a list of
    ``((u0, w0), multiplicity, factor_degree)``; roots of an irreducible
    quadratic factor live in the matching quadratic field.  Factors of degree
    > 2 are reported with ``None`` as the root so the caller can decide.
    """
    from .scalars import sqrt_in_field

    u, w = [i for i in range(3) if i != var]
    D = R.degree
    coeffs = [Fraction(0)] * (D + 1)
    for m, c in R.terms.items():
        if ext_of(c):
            raise ValueError("binary_form_roots needs rational coefficients")
        coeffs[m[u]] = Fraction(c)
    coeffs = utrim(coeffs)
    out = []
    top = len(coeffs) - 1
    if top < D:
        out.append(((Fraction(1), Fraction(0)), D - top, 1))
    if top <= 0:
        return out
    den = lcm(*(c.denominator for c in coeffs))
    fp = flint.fmpz_poly([int(c * den) for c in coeffs])
    _, factors = fp.factor()
    for g, mult in factors:
        gc = [Fraction(int(c)) for c in g.coeffs()]
        deg = len(gc) - 1
        if deg == 1:
            out.append(((-gc[0] / gc[1], Fraction(1)), mult, 1))
        elif deg == 2:
            c0, c1, c2 = gc
            root, tag = sqrt_in_field(c1 * c1 - 4 * c2 * c0)
            for s in (1, -1):
                out.append((((-c1 + s * root) / (2 * c2), Fraction(1)), mult, 2))
        else:
            out.append((None, mult, deg))
    return out


__all__ = [
    "AffinePoly",
    "HPoly",
    "Poly",
    "graded_dim",
    "ideal_piece_rank",
    "macaulay_rows",
    "monomials",
    "parse_poly",
    "partials",
    "resultant",
    "syzygy_kernel_dim",
    "binary_form_roots",
]
