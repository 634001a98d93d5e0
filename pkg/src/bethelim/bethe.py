"""Bethe subalgebras: weighted sums of principal quantum minors.

For a diagonal torus element C with eigenvalues l_1..l_n, the k-th
transfer-type series is

    tau_k(u, C) = sum_{a_1<...<a_k} l_{a_1}...l_{a_k} qminor^{a_1..a_k}_{a_1..a_k}(u)

and the Bethe subalgebra B(C) is generated by the u-coefficients of
tau_1..tau_n.  Two independent routes compute tau_k: the quantum-minor
expansion above (with its row and column forms compared on every call) and
the antisymmetrized trace over (C^n)^{tensor k}; ``tau_trace`` is the oracle
for ``tau_minor``.  The quantum determinant is the full principal minor
tau_n(u, E); its coefficients are central.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError
from .scalars import LaurentPoly, format_laurent
from .subspaces import SubalgebraPresentation
from .yangian import USeries


class TorusFamily:
    """Diagonal torus element, possibly depending on the parameter t."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        norm = []
        for e in entries:
            if isinstance(e, LaurentPoly):
                norm.append(e)
            else:
                norm.append(Fraction(e))
        if any(isinstance(e, LaurentPoly) for e in norm):
            norm = [e if isinstance(e, LaurentPoly) else LaurentPoly.const(e)
                    for e in norm]
        self.entries = tuple(norm)

    @property
    def n(self):
        return len(self.entries)

    def is_constant(self):
        return not any(isinstance(e, LaurentPoly) and not e.is_constant()
                       for e in self.entries)

    def is_regular(self):
        """Pairwise distinct eigenvalues (as functions of t)."""
        return all(self.entries[a] != self.entries[b]
                   for a in range(self.n) for b in range(a + 1, self.n))

    def is_nondegenerate(self):
        return all(bool(e) if isinstance(e, LaurentPoly) else e != 0
                   for e in self.entries)

    def constant_diag(self):
        return tuple(e.as_fraction() if isinstance(e, LaurentPoly) else e
                     for e in self.entries)

    def inverse(self):
        return TorusFamily([1 / e for e in self.constant_diag()])

    def scale(self, a):
        return TorusFamily([e * a for e in self.entries])

    def lam(self, a):
        """Eigenvalue of index a (1-based)."""
        return self.entries[a - 1]

    def __repr__(self):
        return "diag(" + ", ".join(format_laurent(e) for e in self.entries) + ")"


def parse_matrix(text: str) -> TorusFamily:
    """CLI matrix format: comma-separated Laurent entries, e.g. ``1,2,3`` or
    ``1,1+t,2``."""
    from .scalars import parse_laurent

    entries = [parse_laurent(piece) for piece in text.split(",") if piece.strip()]
    if not entries:
        raise ValueError("empty matrix spec")
    return TorusFamily([e.as_fraction() if e.is_constant() else e for e in entries])


def quantum_minor(n, rows, cols, cap) -> USeries:
    """The quantum minor qminor^{rows}_{cols}(u) of the generating matrix.

    Row form: sum over permutations s of (-1)^s t_{r_{s(1)} c_1}(u)
    t_{r_{s(2)} c_2}(u-1) ... t_{r_{s(k)} c_k}(u-k+1).  The column form
    (factors at u-k+1 .. u with permuted column indices) is computed too and
    must agree; a mismatch raises ConsistencyError.
    """
    rows = tuple(rows)
    cols = tuple(cols)
    if any(rows[a] >= rows[a + 1] for a in range(len(rows) - 1)) or \
       any(cols[a] >= cols[a + 1] for a in range(len(cols) - 1)):
        raise ValueError("minor index tuples must be strictly increasing")
    if len(rows) != len(cols):
        raise ValueError("minor index tuples must have equal length")
    return _quantum_minor_cached(n, rows, cols, cap)


@lru_cache(maxsize=None)
def _quantum_minor_cached(n, rows, cols, cap) -> USeries:
    k = len(rows)
    row_form = USeries.zero(n, cap)
    col_form = USeries.zero(n, cap)
    for perm in itertools.permutations(range(k)):
        sign = _perm_sign(perm)
        prod_r = USeries.const(n, cap, sign)
        prod_c = USeries.const(n, cap, sign)
        for a in range(k):
            prod_r = prod_r * USeries.tij(n, rows[perm[a]], cols[a], cap).shift_u(a)
            prod_c = prod_c * USeries.tij(n, rows[a], cols[perm[a]], cap).shift_u(k - 1 - a)
        row_form = row_form + prod_r
        col_form = col_form + prod_c
    if row_form != col_form:
        raise ConsistencyError("row and column minor expansions disagree")
    return row_form


def _perm_sign(perm):
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def tau_minor(C: TorusFamily, k, cap) -> USeries:
    """tau_k(u, C) via the quantum-minor expansion."""
    n = C.n
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    out = USeries.zero(n, cap)
    for subset in itertools.combinations(range(1, n + 1), k):
        weight = Fraction(1)
        for a in subset:
            weight = C.lam(a) * weight
        out = out + quantum_minor(n, subset, subset, cap).scale(weight)
    return out


def tau_trace(C: TorusFamily, k, cap) -> USeries:
    """tau_k(u, C) as (1/k!) tr A_k C_1..C_k T_1(u)..T_k(u-k+1), traced
    combinatorially over index tuples: the independent oracle for
    ``tau_minor``."""
    n = C.n
    if not 1 <= k <= n:
        raise ValueError("k out of range")
    out = USeries.zero(n, cap)
    norm = Fraction(1, _factorial(k))
    for tup in itertools.product(range(1, n + 1), repeat=k):
        weight = Fraction(1)
        for a in tup:
            weight = C.lam(a) * weight
        for perm in itertools.permutations(range(k)):
            sign = _perm_sign(perm)
            prod = USeries.const(n, cap, 1)
            for a in range(k):
                prod = prod * USeries.tij(n, tup[perm[a]], tup[a], cap).shift_u(a)
            out = out + prod.scale(weight * sign * norm)
    return out


def tau(C: TorusFamily, k, cap) -> USeries:
    return tau_minor(C, k, cap)


def qdet(n, cap) -> USeries:
    """Quantum determinant: the full principal quantum minor, with constant
    term 1.  Its u-coefficients are central."""
    full = tuple(range(1, n + 1))
    return quantum_minor(n, full, full, cap)


def bethe_generators(C: TorusFamily, d_cap, cap=None) -> SubalgebraPresentation:
    """Generators of B(C): every u^{-p} coefficient, 1 <= p <= d_cap, of
    tau_1..tau_n, with declared degree p.

    For non-regular or degenerate constant C the construction still runs but
    the presentation records warning flags (the freeness and maximality
    statements need regular nondegenerate C).
    """
    n = C.n
    cap = cap if cap is not None else d_cap
    if cap < d_cap:
        raise ValueError("u-power cap below degree cap")
    gens = []
    for k in range(1, n + 1):
        series = tau_minor(C, k, cap)
        for p in range(1, d_cap + 1):
            gens.append((series.coeff(p), p))
    flags = {"regular": C.is_regular(), "nondegenerate": C.is_nondegenerate()}
    return SubalgebraPresentation("y", n, gens, d_cap, flags)


def gt_generators(n, d_cap, cap=None) -> SubalgebraPresentation:
    """Gelfand-Tsetlin generators: u-coefficients of the quantum determinants
    of the nested leading principal submatrices."""
    cap = cap if cap is not None else d_cap
    gens = []
    for m in range(1, n + 1):
        window = tuple(range(1, m + 1))
        series = quantum_minor(n, window, window, cap)
        for p in range(1, d_cap + 1):
            gens.append((series.coeff(p), p))
    return SubalgebraPresentation("y", n, gens, d_cap, {"gelfand-tsetlin": True})


def _factorial(k):
    out = 1
    for x in range(2, k + 1):
        out *= x
    return out
