"""The Yangian of gl_n as an exact PBW algebra, with truncated u-series.

Generators t^(r)_ij (r >= 1) satisfy the standard relations; t^(0)_ij is the
Kronecker scalar and is never stored.  The canonical monomial order is
(r, i, j) lexicographic, the filtration degree of t^(r)_ij is r, and every
product is normal ordered exactly (no truncation).  Truncation only happens
in ``USeries``, the formal series in u^{-1} with element coefficients that
houses t_ij(u), quantum minors and their relatives; its cap bounds which
u-powers are tracked, and each tracked coefficient is exact.

Homomorphisms: ``embed_i`` (corner embedding), ``embed_phi`` (index shift),
``omega`` (T(u) -> T(-u-n)^{-1}), ``embed_psi`` (omega-conjugated shift,
landing in the centralizer of the corner sub-Yangian), and ``evaluate_pi``
(t_ij(u) -> delta + E_ij u^{-1}, onto U(gl_n)).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import pbw
from .enveloping import EnvElement, format_terms
from .errors import CapExceededError
from .scalars import LaurentPoly


class YangianElement:
    """Finite linear combination of PBW-ordered monomials in t^(r)_ij.

    Coefficients are Fraction or LaurentPoly; monomials are non-decreasing
    tuples of packed generators.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n, c=1):
        c = Fraction(c) if isinstance(c, int) else c
        return cls(n, {(): c}) if c else cls(n)

    @classmethod
    def gen(cls, n, i, j, r):
        if not (1 <= i <= n and 1 <= j <= n and r >= 1):
            raise ValueError(f"t[{i},{j},{r}] out of range for rank {n}")
        return cls(n, {(pbw.ypack(r, i, j),): Fraction(1)})

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("rank mismatch")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Filtration degree: the largest total level of a monomial."""
        return max((pbw.ydeg(k) for k in self.terms), default=0)

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = YangianElement.one(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return YangianElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return YangianElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = YangianElement.one(self.n, other)
        return self + (-other)

    def scale(self, c):
        if not c:
            return YangianElement(self.n)
        return YangianElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        self._check(other)
        return YangianElement(self.n, pbw.ymul(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other):
        return self * other - other * self

    def map_monomials(self, fn, n_out):
        """Relabel generators monomial-by-monomial; fn must preserve order."""
        return YangianElement(n_out, {tuple(fn(g) for g in k): v
                                      for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = YangianElement.one(self.n, other)
        if not isinstance(other, YangianElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return format_element(self)


def normal_order(x: YangianElement, y: YangianElement) -> YangianElement:
    """Exact PBW product; degree(xy) <= degree(x) + degree(y)."""
    return x * y


def commutator_closed(n, a, b) -> YangianElement:
    """[t^(r)_ij, t^(s)_kl] in closed form, for (i, j, r) index triples.

    ``a`` and ``b`` are (i, j, r) triples.  The result has filtration degree
    at most r + s - 1.
    """
    (i, j, r), (k, l, s) = a, b
    ga = pbw.ypack(r, i, j)
    gb = pbw.ypack(s, k, l)
    out = YangianElement.zero(n)
    for c, factors in pbw.ygen_commutator(ga, gb):
        term = YangianElement(n, {(): Fraction(c)})
        for f in factors:
            lev, fi, fj = pbw.yunpack(f)
            term = term * YangianElement.gen(n, fi, fj, lev)
        out = out + term
    return out


def format_element(x: YangianElement) -> str:
    return format_terms(x.terms, pbw.ydeg,
                        lambda g: "t[%d,%d,%d]" % (lambda r, i, j: (i, j, r))(*pbw.yunpack(g)))


import re as _re

_GEN_RE = _re.compile(r"t\[(\d+),(\d+),(\d+)\]")


def parse_element(text: str, n: int) -> YangianElement:
    """Parse sums of ``c * t[i,j,r]*t[k,l,s]`` back into an element."""
    out = YangianElement.zero(n)
    for piece in _re.findall(r"[+-]?[^+-]+", text.replace(" ", "")):
        sign = Fraction(1)
        if piece.startswith("-"):
            sign, piece = Fraction(-1), piece[1:]
        elif piece.startswith("+"):
            piece = piece[1:]
        factors = piece.split("*")
        coeff = sign
        elt = YangianElement.one(n)
        for f in factors:
            m = _GEN_RE.fullmatch(f)
            if m:
                i, j, r = map(int, m.groups())
                elt = elt * YangianElement.gen(n, i, j, r)
            elif f == "1" or not f:
                continue
            else:
                coeff *= Fraction(f)
        out = out + elt.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# truncated series in u^{-1}
# ---------------------------------------------------------------------------

def _binom(a, b):
    out = 1
    for x in range(b):
        out = out * (a - x) // (x + 1)
    return out


class USeries:
    """sum_{p<=cap} x_p u^{-p} with YangianElement coefficients."""

    __slots__ = ("n", "cap", "coeffs")

    def __init__(self, n, cap, coeffs=None):
        self.n = n
        self.cap = cap
        self.coeffs = {p: x for p, x in (coeffs or {}).items()
                       if 0 <= p <= cap and x}

    @classmethod
    def zero(cls, n, cap):
        return cls(n, cap)

    @classmethod
    def const(cls, n, cap, c=1):
        return cls(n, cap, {0: YangianElement.one(n, c)})

    @classmethod
    def tij(cls, n, i, j, cap):
        """The generating series t_ij(u) = delta_ij + sum_r t^(r)_ij u^{-r}."""
        coeffs = {r: YangianElement.gen(n, i, j, r) for r in range(1, cap + 1)}
        if i == j:
            coeffs[0] = YangianElement.one(n)
        return cls(n, cap, coeffs)

    def coeff(self, p) -> YangianElement:
        if p > self.cap:
            raise CapExceededError(f"cap exceeded: u^-{p} beyond cap {self.cap}")
        return self.coeffs.get(p, YangianElement.zero(self.n))

    def _check(self, other):
        if self.n != other.n or self.cap != other.cap:
            raise ValueError("series mismatch (rank or cap)")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for p, x in other.coeffs.items():
            s = out.get(p)
            s = x if s is None else s + x
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return USeries(self.n, self.cap, out)

    def __neg__(self):
        return USeries(self.n, self.cap, {p: -x for p, x in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return USeries(self.n, self.cap, {p: x.scale(c) for p, x in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        self._check(other)
        out = {}
        for a, xa in self.coeffs.items():
            for b, xb in other.coeffs.items():
                p = a + b
                if p > self.cap:
                    continue
                prod = xa * xb
                if not prod:
                    continue
                s = out.get(p)
                out[p] = prod if s is None else s + prod
        return USeries(self.n, self.cap, out)

    __rmul__ = scale

    def shift_u(self, c):
        """The series evaluated at u - c: (u-c)^{-p} expands by the negative
        binomial series, truncated at the cap."""
        c = Fraction(c) if isinstance(c, int) else c
        if not c:
            return self
        out = {}
        for p, x in self.coeffs.items():
            if p == 0:
                out[0] = out.get(0, YangianElement.zero(self.n)) + x
                continue
            cm = 1
            for m in range(0, self.cap - p + 1):
                y = x.scale(_binom(p + m - 1, m) * cm)
                if y:
                    s = out.get(p + m)
                    out[p + m] = y if s is None else s + y
                cm = cm * c
        return USeries(self.n, self.cap, out)

    def subst_neg(self, c):
        """The series evaluated at -u - c."""
        c = Fraction(c) if isinstance(c, int) else c
        out = {}
        for p, x in self.coeffs.items():
            if p == 0:
                out[0] = out.get(0, YangianElement.zero(self.n)) + x
                continue
            sign = -1 if p % 2 else 1
            cm = 1
            for m in range(0, self.cap - p + 1):
                y = x.scale(sign * _binom(p + m - 1, m) * cm)
                if y:
                    s = out.get(p + m)
                    out[p + m] = y if s is None else s + y
                cm = cm * (-c)
        return USeries(self.n, self.cap, out)

    def check_degree_profile(self) -> bool:
        """True when the u^{-p} coefficient has filtration degree <= p."""
        return all(x.degree() <= p for p, x in self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return (self.n, self.cap, self.coeffs) == (other.n, other.cap, other.coeffs)

    def __repr__(self):
        return format_series(self)


def format_series(s: USeries) -> str:
    lines = [f"u^-{p} : {format_element(s.coeffs[p])}" for p in sorted(s.coeffs)]
    return "{ " + " ; ".join(lines) + " }" if lines else "{ 0 }"


class MatrixSeries:
    """n x n matrix of USeries sharing one cap; houses T(u) and friends."""

    __slots__ = ("n", "cap", "entries")

    def __init__(self, n, cap, entries):
        self.n = n
        self.cap = cap
        self.entries = entries
        for row in entries:
            for e in row:
                if e.cap != cap or e.n != n:
                    raise ValueError("entry cap/rank mismatch")

    @classmethod
    def tmatrix(cls, n, cap):
        return cls(n, cap, [[USeries.tij(n, i, j, cap) for j in range(1, n + 1)]
                            for i in range(1, n + 1)])

    def entry(self, i, j) -> USeries:
        return self.entries[i - 1][j - 1]

    def subst_neg(self, c):
        return MatrixSeries(self.n, self.cap,
                            [[e.subst_neg(c) for e in row] for row in self.entries])

    def mul(self, other):
        n, cap = self.n, self.cap
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = USeries.zero(n, cap)
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return MatrixSeries(n, cap, out)

    def is_identity(self) -> bool:
        one = YangianElement.one(self.n)
        for i in range(self.n):
            for j in range(self.n):
                c = self.entries[i][j].coeffs
                if i == j:
                    if c != {0: one}:
                        return False
                elif c:
                    return False
        return True

    def invert(self):
        """Inverse of a series with identity constant term, via the geometric
        series in the u^{-1}-positive part; verified by multiplying back."""
        n, cap = self.n, self.cap
        one = YangianElement.one(n)
        for i in range(n):
            for j in range(n):
                c0 = self.entries[i][j].coeff(0)
                if (i == j and c0 != one) or (i != j and c0):
                    raise ValueError("not unipotent at u=∞")
        # N = T - 1  has no constant term
        nilp = [[USeries(n, cap, {p: x for p, x in self.entries[i][j].coeffs.items() if p > 0})
                 for j in range(n)] for i in range(n)]
        nmat = MatrixSeries(n, cap, nilp)
        ident = MatrixSeries(n, cap, [[USeries.const(n, cap, 1 if i == j else 0)
                                       for j in range(n)] for i in range(n)])
        out = ident
        power = ident
        for _ in range(cap):
            power = power.mul(nmat)
            out = MatrixSeries(n, cap, [[out.entries[i][j] - power.entries[i][j]
                                         for j in range(n)] for i in range(n)])
            power = MatrixSeries(n, cap, [[-power.entries[i][j] for j in range(n)]
                                          for i in range(n)])
        if not self.mul(out).is_identity():
            raise ArithmeticError("series inversion failed self-check")
        return out


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

def embed_i(x: YangianElement, k: int) -> YangianElement:
    """Corner embedding into rank n + k: indices unchanged."""
    return YangianElement(x.n + k, dict(x.terms))


def embed_phi(x: YangianElement, k: int) -> YangianElement:
    """Index-shift embedding t^(r)_ij -> t^(r)_{k+i,k+j} into rank n + k."""
    shift = (k << pbw.ISH) | k
    return x.map_monomials(lambda g: g + shift, x.n + k)


@lru_cache(maxsize=None)
def _omega_matrix(n: int, cap: int) -> MatrixSeries:
    return MatrixSeries.tmatrix(n, cap).subst_neg(n).invert()


@lru_cache(maxsize=None)
def omega_gen(n: int, i: int, j: int, r: int) -> YangianElement:
    """Image of t^(r)_ij under T(u) -> T(-u-n)^{-1}; degree stays <= r."""
    return _omega_matrix(n, r).entry(i, j).coeff(r)


def omega(x, cap=None):
    """The involutive automorphism T(u) -> (T(-u-n))^{-1}.

    Acts on elements generator by generator (it is an algebra map) and on
    series coefficientwise.  ``cap``, when given, bounds the u-power
    available for extracting generator images; degree(x) must not exceed it.
    """
    if isinstance(x, USeries):
        return USeries(x.n, x.cap, {p: omega(e, cap=x.cap) for p, e in x.coeffs.items()})
    need = x.degree()
    if cap is not None and need > cap:
        raise CapExceededError(f"cap exceeded: omega needs u-powers up to {need}")
    out = YangianElement.zero(x.n)
    for mono, c in x.terms.items():
        term = YangianElement.one(x.n, c)
        for g in mono:
            r, i, j = pbw.yunpack(g)
            term = term * omega_gen(x.n, i, j, r)
        out = out + term
    return out


def embed_psi(x: YangianElement, k: int, cap=None) -> YangianElement:
    """omega_{n+k} . phi_k . omega_n: lands in the centralizer of the corner
    copy of the rank-n sub-Yangian."""
    return omega(embed_phi(omega(x, cap=cap), k), cap=cap)


def evaluate_pi(x: YangianElement) -> EnvElement:
    """Evaluation onto U(gl_n): t^(1)_ij -> E_ij, higher levels -> 0.

    A PBW monomial maps to the corresponding E-monomial (the orders agree),
    so no re-straightening is needed.
    """
    out = {}
    for mono, c in x.terms.items():
        if any(g >> pbw.RSH != 1 for g in mono):
            continue
        key = tuple((g & ((1 << pbw.RSH) - 1)) for g in mono)
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            del out[key]
    return EnvElement(x.n, out)


def env_to_yangian(x: EnvElement, n: int, offset: int = 0) -> YangianElement:
    """The copy of U(gl_m) inside the rank-n algebra generated by level-one
    generators, with indices shifted by ``offset``."""
    if x.m + offset > n:
        raise ValueError("embedded block exceeds rank")
    shift = (1 << pbw.RSH) | (offset << pbw.ISH) | offset
    return YangianElement(n, {tuple(g + shift for g in mono): c
                              for mono, c in x.terms.items()})
