"""S(gl_m) with its Poisson bracket, shift-of-argument subalgebras, Gaudin
quadratic elements, staged (Shuvalov-type) limits, and symmetrization lifts
to U(gl_m).

F(C) for a diagonal matrix C is generated by the iterated directional
derivatives along C of the characteristic-polynomial coefficients.  For a
block matrix C with inner regular matrices attached to the blocks, the
standard limit subalgebra adjoins the recursively built block subalgebras;
without inner data the construction is F(C) proper, whose Poincare series is
the block product formula implemented in ``poincare_predicted``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import pbw
from .enveloping import EnvElement, format_terms
from .errors import ConsistencyError
from .subspaces import SubalgebraPresentation


class SymElement:
    """Polynomial in the commuting symbols e_ij, 1 <= i,j <= m."""

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
            raise ValueError(f"e_{i}{j} out of range for gl_{m}")
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

    def homogeneous_part(self, d):
        return SymElement(self.m, {k: v for k, v in self.terms.items() if len(k) == d})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymElement.one(self.m, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return SymElement(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return SymElement(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymElement.one(self.m, other)
        return self + (-other)

    def scale(self, c):
        if not c:
            return SymElement(self.m)
        return SymElement(self.m, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return SymElement(self.m, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymElement.one(self.m, other)
        if not isinstance(other, SymElement):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __repr__(self):
        return format_terms(self.terms, len, lambda g: "e[%d,%d]" % pbw.eunpack(g))


def _bracket_gens(a, b):
    # {e_ij, e_kl} = d_jk e_il - d_li e_kj, packed
    return pbw.egen_commutator(a, b)


def poisson_bracket(f: SymElement, g: SymElement) -> SymElement:
    """Leibniz extension of the gl structure bracket on generators."""
    f._check(g)
    m = f.m
    out = {}
    for mf, cf in f.terms.items():
        for mg, cg in g.terms.items():
            c = cf * cg
            fu = _counts(mf)
            gu = _counts(mg)
            for x, kx in fu.items():
                rest_f = _remove_one(mf, x)
                for y, ky in gu.items():
                    br = _bracket_gens(x, y)
                    if not br:
                        continue
                    rest_g = _remove_one(mg, y)
                    mult = c * kx * ky
                    for sign, factors in br:
                        key = tuple(sorted(rest_f + rest_g + factors))
                        s = out.get(key, 0) + mult * sign
                        if s:
                            out[key] = s
                        else:
                            del out[key]
    return SymElement(m, out)


def _counts(mono):
    out = {}
    for g in mono:
        out[g] = out.get(g, 0) + 1
    return out


def _remove_one(mono, g):
    idx = mono.index(g)
    return mono[:idx] + mono[idx + 1:]


# ---------------------------------------------------------------------------
# invariants, directional derivatives, F(C)
# ---------------------------------------------------------------------------

def char_invariants(m, indices=None):
    """Coefficients of the characteristic polynomial of (e_ij): the k-th one
    is the sum of the principal k x k minors over the given index set."""
    indices = tuple(indices) if indices is not None else tuple(range(1, m + 1))
    out = []
    for k in range(1, len(indices) + 1):
        acc = SymElement.zero(m)
        for subset in itertools.combinations(indices, k):
            for perm in itertools.permutations(range(k)):
                sign = _perm_sign(perm)
                mono = tuple(sorted(pbw.epack(subset[a], subset[perm[a]])
                                    for a in range(k)))
                acc = acc + SymElement(m, {mono: Fraction(sign)})
        out.append(acc)
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def dir_derivative(f: SymElement, diag) -> SymElement:
    """Directional derivative along a diagonal matrix: substitute
    e -> e + s C and take the s-linear part, i.e. sum_i c_i d/d e_ii.

    ``diag`` is either a sequence of entries (index i gets diag[i-1]) or a
    mapping index -> entry.
    """
    if not isinstance(diag, dict):
        diag = {i + 1: Fraction(c) for i, c in enumerate(diag)}
    out = {}
    for mono, c in f.terms.items():
        for g, count in _counts(mono).items():
            i, j = pbw.eunpack(g)
            if i != j:
                continue
            ci = diag.get(i)
            if not ci:
                continue
            key = _remove_one(mono, g)
            s = out.get(key, 0) + c * count * ci
            if s:
                out[key] = s
            else:
                del out[key]
    return SymElement(f.m, out)


@dataclass(frozen=True)
class BlockDiagonal:
    """diag(l_1 x k_1, ..., l_r x k_r) with pairwise distinct eigenvalues."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((Fraction(e), int(k)) for e, k in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        eigs = [e for e, _ in blocks]
        if len(set(eigs)) != len(eigs):
            raise ValueError("block eigenvalues must be pairwise distinct")
        if any(k < 1 for _, k in blocks):
            raise ValueError("block multiplicities must be positive")

    @classmethod
    def from_diag(cls, entries):
        entries = [Fraction(e) for e in entries]
        blocks = []
        for e in entries:
            if blocks and blocks[-1][0] == e:
                blocks[-1] = (e, blocks[-1][1] + 1)
            else:
                blocks.append((e, 1))
        if len(set(e for e, _ in blocks)) != len(blocks):
            raise ValueError("equal eigenvalues must be contiguous in a block matrix")
        return cls(tuple(blocks))

    @property
    def n(self):
        return sum(k for _, k in self.blocks)

    def diag(self):
        out = []
        for e, k in self.blocks:
            out.extend([e] * k)
        return tuple(out)

    def is_regular(self):
        return all(k == 1 for _, k in self.blocks)

    def is_nondegenerate(self):
        return all(e != 0 for e, _ in self.blocks)

    def block_ranges(self):
        out = []
        start = 1
        for _, k in self.blocks:
            out.append(tuple(range(start, start + k)))
            start += k
        return out


def shift_arg_generators(blocks: BlockDiagonal, rank=None, indices=None,
                         inner=None, d_cap=None) -> SubalgebraPresentation:
    """Generators of the shift-of-argument subalgebra attached to ``blocks``.

    Without ``inner`` this is F(C) proper: the derivatives along C of the
    characteristic coefficients of the (sub)matrix on ``indices``.  With
    ``inner`` (a per-block tuple of regular diagonal entries, or None per
    block), the recursively built inner block subalgebras are adjoined,
    which yields the standard limit subalgebra at the block point.
    """
    rank = rank if rank is not None else blocks.n
    indices = tuple(indices) if indices is not None else tuple(range(1, blocks.n + 1))
    if len(indices) != blocks.n:
        raise ValueError("index window does not match block sizes")
    cmap = {i: e for i, e in zip(indices, blocks.diag())}
    gens = []
    for k, phi in enumerate(char_invariants(rank, indices), start=1):
        g = phi
        for order in range(k):
            gens.append((g, k - order))
            g = dir_derivative(g, cmap)
    flags = {"regular": blocks.is_regular(), "nondegenerate": blocks.is_nondegenerate()}
    if inner is not None:
        ranges = []
        start = 0
        for _, k in blocks.blocks:
            ranges.append(indices[start:start + k])
            start += k
        for window, entries in zip(ranges, inner):
            if entries is None:
                continue
            sub = BlockDiagonal.from_diag(entries)
            if not sub.is_regular():
                raise ValueError("inner block matrices must be regular")
            if sub.n != len(window):
                raise ValueError("inner matrix size does not match block")
            sub_pres = shift_arg_generators(sub, rank=rank, indices=window)
            gens.extend(sub_pres.generators)
        flags["inner"] = True
    d_cap = d_cap if d_cap is not None else max(blocks.n, 4)
    return SubalgebraPresentation("s", rank, gens, d_cap, flags)


def gaudin_quadratic(z):
    """H_i = sum_{j != i} e_ij e_ji / (z_i - z_j); they sum to zero and
    Poisson-commute pairwise."""
    z = [Fraction(x) for x in z]
    if len(set(z)) != len(z):
        raise ValueError("non-regular parameter")
    m = len(z)
    out = []
    for i in range(1, m + 1):
        acc = SymElement.zero(m)
        for j in range(1, m + 1):
            if j == i:
                continue
            q = SymElement.gen(m, i, j) * SymElement.gen(m, j, i)
            acc = acc + q.scale(1 / (z[i - 1] - z[j - 1]))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# staged limits along a chain of centralizers
# ---------------------------------------------------------------------------

def shuvalov_limit_generators(stages, d_cap=None) -> SubalgebraPresentation:
    """Limit of F(C(t)) for C(t) = C_0 + t C_1 + ...: generated by the
    invariants of each successive joint centralizer together with their
    directional derivatives along the next stage.

    ``stages`` is a sequence of full diagonal vectors of equal length n.
    The family must be regular at generic t, i.e. the stages must jointly
    separate all n coordinates.
    """
    stages = [tuple(Fraction(x) for x in s) for s in stages]
    n = len(stages[0])
    if any(len(s) != n for s in stages):
        raise ValueError("stages must share one size")
    # chain of joint-centralizer partitions of the index set
    partitions = [[tuple(range(1, n + 1))]]
    for s in stages:
        refined = []
        for block in partitions[-1]:
            groups = {}
            for i in block:
                groups.setdefault(s[i - 1], []).append(i)
            refined.extend(tuple(g) for _, g in sorted(groups.items()))
        partitions.append(refined)
    if any(len(b) != 1 for b in partitions[-1]):
        raise ValueError("family not generically regular")
    gens = []
    for level, partition in enumerate(partitions):
        nxt = stages[level] if level < len(stages) else None
        for block in partition:
            for k, phi in enumerate(char_invariants(n, block), start=1):
                g = phi
                order = 0
                while order < k:
                    gens.append((g, k - order))
                    if nxt is None:
                        break
                    g = dir_derivative(g, {i: nxt[i - 1] for i in block})
                    order += 1
    d_cap = d_cap if d_cap is not None else max(n, 4)
    return SubalgebraPresentation("s", n, gens, d_cap, {"staged": True})


# ---------------------------------------------------------------------------
# Poincare series
# ---------------------------------------------------------------------------

def _series_divide_cyclotomic(series, i):
    out = list(series)
    for d in range(i, len(out)):
        out[d] += out[d - i]
    return out


def _series_multiply_cyclotomic(series, i):
    out = list(series)
    for d in range(len(out) - 1, i - 1, -1):
        out[d] -= out[d - i]
    return out


def series_from_factors(factors, up_to):
    """Expand prod_i (1 - x^i)^{e_i} with integer exponents e_i (poles for
    negative exponents), to the given degree."""
    out = [1] + [0] * up_to
    for i, e in sorted(factors.items()):
        for _ in range(abs(e)):
            out = (_series_divide_cyclotomic(out, i) if e < 0
                   else _series_multiply_cyclotomic(out, i))
    return out


def _p_factors(n):
    # P_n = prod_{i<=n} Z_i = prod_i (1-x^i)^{-(n-i+1)}
    return {i: -(n - i + 1) for i in range(1, n + 1)}


def _z_factors(k):
    return {i: -1 for i in range(1, k + 1)}


def poincare_predicted(blocks: BlockDiagonal, up_to):
    """Coefficients (degree 0..up_to) of the series of F(C) for block C:
    P_n(x) times prod over blocks of Z_{k_i}(x) / P_{k_i}(x)."""
    factors = dict(_p_factors(blocks.n))
    for _, k in blocks.blocks:
        for i, e in _z_factors(k).items():
            factors[i] = factors.get(i, 0) + e
        for i, e in _p_factors(k).items():
            factors[i] = factors.get(i, 0) - e
    return series_from_factors({i: e for i, e in factors.items() if e}, up_to)


def center_series(n, up_to):
    """Series of the Poisson center of S(gl_n): Z_n(x)."""
    return series_from_factors(_z_factors(n), up_to)


def appended_zeros_series(n, k, up_to):
    """Series of every limit of the family F(diag(C, 0,...,0)) with C regular
    of size n and k appended zeros: (1-x)^{-(n+1)} ... (1-x^k)^{-(n+1)}
    (1-x^{k+1})^{-n} ... (1-x^{n+k})^{-1}."""
    factors = {}
    for i in range(1, k + 1):
        factors[i] = -(n + 1)
    for j in range(1, n + 1):
        factors[k + j] = -(n + 1 - j)
    return series_from_factors(factors, up_to)


# ---------------------------------------------------------------------------
# lifting to U(gl_m)
# ---------------------------------------------------------------------------

def symmetrize(f: SymElement) -> EnvElement:
    """Symmetrization lift: x_1...x_d -> (1/d!) sum over orderings, computed
    in U(gl_m).  The top graded part of the image is f itself."""
    out = EnvElement.zero(f.m)
    for mono, c in f.terms.items():
        d = len(mono)
        if d <= 1:
            out = out + EnvElement(f.m, {mono: c})
            continue
        norm = c / _factorial(d)
        acc = {}
        for perm in itertools.permutations(mono):
            prod = {(): 1}
            for g in perm:
                prod = pbw.emul(prod, {(g,): 1})
            for k, v in prod.items():
                acc[k] = acc.get(k, 0) + v
        for k, v in acc.items():
            if v:
                out = out + EnvElement(f.m, {k: norm * v})
    return out


def _factorial(d):
    out = 1
    for x in range(2, d + 1):
        out *= x
    return out


def gr_env(x: EnvElement) -> SymElement:
    """Top part of the PBW filtration: the commutative image of the maximal-
    length monomials."""
    d = x.degree()
    return SymElement(x.m, {k: v for k, v in x.terms.items() if len(k) == d})


def quantum_shift_generators(blocks: BlockDiagonal, d_cap, inner=None,
                             cross_check=True) -> SubalgebraPresentation:
    """Symmetrization lift of ``shift_arg_generators``.

    For invertible regular C (and no inner data) the filtered components are
    cross-checked against the evaluation image of the Bethe subalgebra of
    C^{-1}; a mismatch raises ConsistencyError.
    """
    sym_pres = shift_arg_generators(blocks, inner=inner, d_cap=d_cap)
    gens = [(symmetrize(g), deg) for g, deg in sym_pres.generators]
    pres = SubalgebraPresentation("u", blocks.n, gens, d_cap, sym_pres.flags)
    if (cross_check and inner is None and blocks.is_regular()
            and blocks.is_nondegenerate()):
        from .bethe import TorusFamily, bethe_generators
        from .yangian import evaluate_pi

        inverse = TorusFamily([1 / e for e, _ in blocks.blocks])
        bpres = bethe_generators(inverse, d_cap)
        egens = [(evaluate_pi(g), deg) for g, deg in bpres.generators]
        epres = SubalgebraPresentation("u", blocks.n, egens, d_cap)
        for d in range(1, d_cap + 1):
            if pres.component(d) != epres.component(d):
                raise ConsistencyError(
                    f"lifted shift-of-argument subalgebra disagrees with the "
                    f"evaluation image at degree {d}")
    return pres
