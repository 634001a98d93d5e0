"""PBW engine for U(gl_m): elements in the ordered basis of E_ij monomials.

The canonical order on generators is (i, j) lexicographic; a monomial is a
non-decreasing tuple of packed generators and the filtration degree is its
length.  Products are straightened exactly by the shared kernel.
"""

from __future__ import annotations

from fractions import Fraction

from . import pbw
from .scalars import format_rational


class EnvElement:
    """Element of U(gl_m) as a finite sum of PBW-ordered E_ij monomials."""

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = m
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, m):
        return cls(m)

    @classmethod
    def one(cls, m, c=1):
        c = Fraction(c) if isinstance(c, int) else c
        return cls(m, {(): c}) if c else cls(m)

    @classmethod
    def gen(cls, m, i, j):
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"E_{i}{j} out of range for gl_{m}")
        return cls(m, {(pbw.epack(i, j),): Fraction(1)})

    def _check(self, other):
        if self.m != other.m:
            raise ValueError("rank mismatch")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(k) for k in self.terms), default=0)

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EnvElement.one(self.m, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return EnvElement(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EnvElement.one(self.m, other)
        return self + (-other)

    def scale(self, c):
        if not c:
            return EnvElement(self.m)
        return EnvElement(self.m, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return EnvElement(self.m, pbw.emul(self.terms, other.terms))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EnvElement.one(self.m, other)
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __repr__(self):
        return format_env(self)


def format_terms(terms, deg, gen_fmt) -> str:
    """Render a sparse PBW element as a signed sum of ``c * gen*gen`` terms."""
    if not terms:
        return "0"
    parts = []
    for mono in sorted(terms, key=lambda k: (deg(k), k)):
        c = terms[mono]
        body = "*".join(gen_fmt(g) for g in mono) or "1"
        if isinstance(c, (int, Fraction)):
            cs, neg = format_rational(abs(c)), c < 0
        else:
            cs, neg = f"({c!r})", False
        piece = f"{cs} * {body}"
        if not parts:
            parts.append(("-" if neg else "") + piece)
        else:
            parts.append(("- " if neg else "+ ") + piece)
    return " ".join(parts)


def format_env(x: EnvElement) -> str:
    return format_terms(x.terms, len, lambda g: "E[%d,%d]" % pbw.eunpack(g))
