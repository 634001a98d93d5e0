"""Centralizer-construction maps at fixed k: the composition
pi_{n+k} . omega_{n+k} . i_k from the rank-n algebra into U(gl_{n+k}), the
central substitution of graded polynomial variables by the evaluated quantum
determinant coefficients, and their product map.  The image of the first map
commutes with the bottom-right copy of gl_k; the inclusion check verifies
that Bethe generators land inside the lifted shift-of-argument subalgebra of
diag(C, 0..0).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .bethe import TorusFamily, bethe_generators, qdet
from .classical import BlockDiagonal, quantum_shift_generators
from .enveloping import EnvElement
from .errors import ConsistencyError
from .yangian import YangianElement, embed_i, evaluate_pi, omega


class A0Element:
    """Polynomial in the graded variables EE_1, EE_2, ... with deg EE_i = i.

    Monomials are non-decreasing tuples of variable indices; only finitely
    many variables appear in any element.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, c=1):
        c = Fraction(c) if isinstance(c, int) else c
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, i):
        if i < 1:
            raise ValueError("variable index must be positive")
        return cls({(i,): Fraction(1)})

    def degree(self):
        return max((sum(k) for k in self.terms), default=0)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = A0Element.one(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return A0Element(out)

    __radd__ = __add__

    def __neg__(self):
        return A0Element({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = A0Element.one(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return A0Element({k: v * other for k, v in self.terms.items()} if other else {})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return A0Element(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = A0Element.one(other)
        if not isinstance(other, A0Element):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=lambda k: (sum(k), k)):
            body = "*".join(f"EE_{i}" for i in mono) or "1"
            bits.append(f"{self.terms[mono]} * {body}")
        return " + ".join(bits)


def phi_map(x: YangianElement, k: int, *, check_invariance=True) -> EnvElement:
    """pi_{n+k} . omega_{n+k} . i_k; the image commutes with E_ij for
    n+1 <= i,j <= n+k, which is verified unless disabled."""
    n = x.n
    img = evaluate_pi(omega(embed_i(x, k)))
    if check_invariance:
        for i in range(n + 1, n + k + 1):
            for j in range(n + 1, n + k + 1):
                if img.commutator(EnvElement.gen(n + k, i, j)):
                    raise ConsistencyError(
                        "centralizer image fails gl_k-invariance")
    return img


@lru_cache(maxsize=None)
def _central_coeffs(m: int, up_to: int):
    """Coefficients of the evaluated quantum determinant in U(gl_m):
    1 + sum_i EE_i^(m) u^{-i}."""
    series = qdet(m, up_to)
    return tuple(evaluate_pi(series.coeff(i)) for i in range(1, up_to + 1))


def z_map(a: A0Element, k: int, n: int) -> EnvElement:
    """Substitute EE_i by the degree-i central generator of U(gl_{n+k})."""
    m = n + k
    top = max((max(mono) for mono in a.terms if mono), default=0)
    central = _central_coeffs(m, top) if top else ()
    out = EnvElement.zero(m)
    for mono, c in a.terms.items():
        term = EnvElement.one(m, c)
        for i in mono:
            term = term * central[i - 1]
        out = out + term
    return out


def eta_map(x: YangianElement, a: A0Element, k: int) -> EnvElement:
    """a (x) b -> phi_k(a) . z_k(b); a filtered-algebra homomorphism."""
    return phi_map(x, k, check_invariance=False) * z_map(a, k, x.n)


def check_incl(C: TorusFamily, k: int, d_cap: int):
    """Membership of the centralizer images of all Bethe generators of
    degree <= d_cap inside the lifted shift-of-argument subalgebra of
    diag(C, 0,...,0), solved exactly degree by degree.

    Returns a report dict; ``ok`` is True when every membership holds, and
    each failing generator carries its residual vector.
    """
    if not C.is_constant():
        raise ValueError("inclusion check needs a constant torus element")
    diag = C.constant_diag()
    if any(e == 0 for e in diag):
        raise ValueError("inclusion check needs a nondegenerate torus element")
    n = C.n
    target_diag = list(diag) + [Fraction(0)] * k
    target = quantum_shift_generators(BlockDiagonal.from_diag(target_diag),
                                      d_cap, cross_check=False)
    bpres = bethe_generators(C, d_cap)
    entries = []
    ok = True
    for idx, (g, deg) in enumerate(bpres.generators):
        img = phi_map(g, k, check_invariance=False)
        img = img - img.constant_term()
        comp = target.component(deg)
        member = comp.contains_element(img)
        entry = {"generator": idx, "degree": deg, "member": member}
        if not member:
            ok = False
            from . import bases
            from .linalg import reduce_against
            vec = bases.coordinates("u", n + k, deg, img.terms)
            entry["residual"] = [str(x) for x in
                                 reduce_against(comp.rows, comp.pivots, vec)]
        entries.append(entry)
    central = []
    for i in range(1, d_cap + 1):
        zi = z_map(A0Element.var(i), k, n)
        zi = zi - zi.constant_term()
        central.append(bool(target.component(i).contains_element(zi)))
    return {"ok": ok and all(central), "memberships": entries,
            "central_in_target": central}
