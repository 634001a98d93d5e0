"""Exact scalar rings: rationals, Laurent polynomials in t, and their fractions.

Rationals are ``fractions.Fraction`` (already canonical: reduced, positive
denominator).  ``LaurentPoly`` is a sparse Laurent polynomial in one
deformation parameter t with Fraction coefficients; it carries the t-adic
valuation used by the subspace-limit algorithm.  ``LaurentFrac`` is the
fraction field QQ(t), needed only for row reduction of t-dependent
coordinate matrices.

Text format for Laurent polynomials: ``c*t^k`` terms joined by ``+``/``-``,
with ``c`` an integer or ``p/q`` rational and ``k`` a decimal integer,
e.g. ``1+2*t^3`` or ``1/2*t^-1``.  Bare ``t`` means ``t^1``.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RAT = (int, Fraction)


class LaurentPoly:
    """Sparse Laurent polynomial in t over Fraction, immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in terms.items():
                v = Fraction(v)
                if v:
                    clean[int(k)] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls({0: Fraction(c)})

    @classmethod
    def t(cls, k=1):
        return cls({k: Fraction(1)})

    # -- structure ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {0}

    def val(self):
        """t-adic valuation: the least exponent carrying a nonzero coefficient."""
        if not self.terms:
            raise ValueError("valuation of zero")
        return min(self.terms)

    def max_degree(self):
        if not self.terms:
            raise ValueError("degree of zero")
        return max(self.terms)

    def eval0(self):
        """Value at t = 0.  Requires no pole there."""
        if self.terms and min(self.terms) < 0:
            raise ValueError("pole at t=0")
        return self.terms.get(0, Fraction(0))

    def coeff(self, k):
        return self.terms.get(k, Fraction(0))

    def as_fraction(self):
        if not self.is_constant():
            raise ValueError("not a constant Laurent polynomial")
        return self.terms.get(0, Fraction(0))

    def shift(self, k):
        """Multiply by t^k."""
        if not k:
            return self
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, _RAT):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, _RAT):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _RAT):
            if not other:
                return LaurentPoly()
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial; use LaurentFrac")
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, _RAT):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_laurent(self)


def format_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(p) -> str:
    if isinstance(p, _RAT):
        return format_rational(p)
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms):
        c = p.terms[e]
        if e == 0:
            body = format_rational(c)
        else:
            tpow = "t" if e == 1 else f"t^{e}"
            if c == 1:
                body = tpow
            elif c == -1:
                body = "-" + tpow
            else:
                body = f"{format_rational(c)}*{tpow}"
        if parts and not body.startswith("-"):
            parts.append("+" + body)
        else:
            parts.append(body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"""^(?P<sign>[+-]?)
        (?: (?P<coeff>\d+(?:/\d+)?) (?:\*(?P<tc>t(?:\^(?P<expc>-?\d+))?))?
          | (?P<tb>t(?:\^(?P<expb>-?\d+))?) )$""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the ``c*t^k`` textual form, e.g. ``1+2*t^3`` or ``1/2*t^-1``."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty Laurent polynomial")
    # split into signed terms, keeping signs
    pieces = re.findall(r"[+-]?[^+-]+(?:\^-\d+)?", compact)
    # the regex above may split at the minus of t^-k; re-merge such pieces
    merged = []
    for piece in pieces:
        if merged and merged[-1].endswith("^"):
            merged[-1] += piece
        else:
            merged.append(piece)
    terms = {}
    for piece in merged:
        m = _TERM_RE.match(piece)
        if not m:
            raise ValueError(f"cannot parse Laurent term {piece!r} in {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coeff") is not None:
            c = Fraction(m.group("coeff"))
            if m.group("tc"):
                e = int(m.group("expc")) if m.group("expc") is not None else 1
            else:
                e = 0
        else:
            c = Fraction(1)
            e = int(m.group("expb")) if m.group("expb") is not None else 1
        terms[e] = terms.get(e, Fraction(0)) + sign * c
    return LaurentPoly(terms)


# ---------------------------------------------------------------------------
# polynomial helpers on LaurentPoly (used for fraction canonicalisation)
# ---------------------------------------------------------------------------

def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Division with remainder of genuine polynomials (valuation >= 0)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = dict(a.terms)
    quo = {}
    db = b.max_degree()
    lb = b.terms[db]
    while rem and max(rem) >= db:
        da = max(rem)
        c = rem[da] / lb
        quo[da - db] = c
        for e, cb in b.terms.items():
            s = rem.get(e + da - db, 0) - c * cb
            if s:
                rem[e + da - db] = s
            else:
                rem.pop(e + da - db, None)
    return LaurentPoly(quo), LaurentPoly(rem)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if not a:
        return a
    return a * (1 / a.terms[a.max_degree()])


class LaurentFrac:
    """Element of QQ(t): a Laurent polynomial divided by a monic polynomial
    with nonzero constant term.  The representation is canonical, so
    equality is structural."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, _RAT):
            num = LaurentPoly.const(num)
        if den is None:
            den = LaurentPoly.const(1)
        elif isinstance(den, _RAT):
            den = LaurentPoly.const(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            object.__setattr__(self, "num", LaurentPoly())
            object.__setattr__(self, "den", LaurentPoly.const(1))
            return
        # pull t powers out of the denominator into the numerator
        dv = den.val()
        if dv:
            den = den.shift(-dv)
            num = num.shift(-dv)
        nv = num.val()
        npoly = num.shift(-nv)
        g = _poly_gcd(npoly, den)
        if g.max_degree() > 0 or g.terms.get(0) != 1:
            npoly = _poly_divmod(npoly, g)[0]
            den = _poly_divmod(den, g)[0]
        lead = den.terms[den.max_degree()]
        if lead != 1:
            inv = 1 / lead
            npoly = npoly * inv
            den = den * inv
        object.__setattr__(self, "num", npoly.shift(nv))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentFrac is immutable")

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        return self.den.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError("denominator is not constant")
        return self.num

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentFrac):
            return x
        if isinstance(x, (LaurentPoly, int, Fraction)):
            return LaurentFrac(x)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentFrac(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        f = LaurentFrac.__new__(LaurentFrac)
        object.__setattr__(f, "num", -self.num)
        object.__setattr__(f, "den", self.den)
        return f

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero in QQ(t)")
        return LaurentFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_laurent():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"


def as_field(x):
    """Promote a scalar into a field: Fraction stays, Laurent data goes to QQ(t)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, LaurentPoly):
        return LaurentFrac(x)
    if isinstance(x, LaurentFrac):
        return x
    raise TypeError(f"not a supported scalar: {x!r}")


def scalar_is_laurent(x) -> bool:
    return isinstance(x, (LaurentPoly, LaurentFrac))
