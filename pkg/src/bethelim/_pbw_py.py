"""Pure-Python PBW straightening kernel.

This is the hot inner loop of the whole library: normal ordering of products
of generators, both for the big algebra with generators indexed by
(level r, row i, col j) and for the enveloping algebra of gl(m) with
generators E_ij.  A compiled twin (_pbw_cy) implements the identical API;
``bethelim.pbw`` picks one at import time.

Generators are packed into single ints so that integer comparison equals the
canonical monomial order: (r, i, j) lexicographic for the Yangian-type
generators, (i, j) lexicographic for the E_ij.  A monomial is a
non-decreasing tuple of packed generators; an element is a dict
monomial -> coefficient.  The structure constants are integers, so monomial
products are computed once over the integers and memoised; scalar
coefficients only ever multiply the cached integer tables.
"""

from __future__ import annotations

RSH = 20
ISH = 10
IMASK = (1 << 10) - 1


def ypack(r, i, j):
    return (r << RSH) | (i << ISH) | j


def yunpack(g):
    return g >> RSH, (g >> ISH) & IMASK, g & IMASK


def ydeg(mono):
    return sum(g >> RSH for g in mono)


def epack(i, j):
    return (i << ISH) | j


def eunpack(g):
    return (g >> ISH) & IMASK, g & IMASK


def ygen_commutator(a, b):
    """[a, b] for two packed Yangian generators, as ((int coeff, factors), ...).

    Closed form obtained by telescoping the defining relation
    [t^(r+1)_ij, t^(s)_kl] - [t^(r)_ij, t^(s+1)_kl] = t^(r)_kj t^(s)_il
    - t^(s)_kj t^(r)_il down to level zero, where t^(0)_ij is the Kronecker
    scalar.  Every term keeps the (kj)-indexed factor on the left.  Total
    degree of each term is r + s - x < r + s.
    """
    r, i, j = a >> RSH, (a >> ISH) & IMASK, a & IMASK
    s, k, l = b >> RSH, (b >> ISH) & IMASK, b & IMASK
    out = []
    top = r + s
    for x in range(1, min(r, s) + 1):
        hi = top - x
        if x == 1:
            if k == j:
                out.append((1, (ypack(hi, i, l),)))
            if i == l:
                out.append((-1, (ypack(hi, k, j),)))
        else:
            out.append((1, (ypack(x - 1, k, j), ypack(hi, i, l))))
            out.append((-1, (ypack(hi, k, j), ypack(x - 1, i, l))))
    return tuple(out)


def egen_commutator(a, b):
    """[E_ij, E_kl] = d_jk E_il - d_li E_kj for packed gl generators."""
    i, j = (a >> ISH) & IMASK, a & IMASK
    k, l = (b >> ISH) & IMASK, b & IMASK
    out = []
    if j == k:
        out.append((1, (epack(i, l),)))
    if l == i:
        out.append((-1, (epack(k, j),)))
    return tuple(out)


def _make_kernel(gen_commutator):
    insert_cache = {}
    mul_cache = {}

    def insert(m, g):
        """Normal form of monomial m times generator g: dict mono -> int."""
        if not m or m[-1] <= g:
            return {m + (g,): 1}
        key = (m, g)
        hit = insert_cache.get(key)
        if hit is not None:
            return hit
        a = m[-1]
        head = m[:-1]
        out = {}
        # head * (g * a)  after the swap
        for mm, c in insert(head, g).items():
            for mmm, c2 in insert(mm, a).items():
                s = out.get(mmm, 0) + c * c2
                if s:
                    out[mmm] = s
                else:
                    del out[mmm]
        # head * [a, g], strictly lower degree
        for cc, factors in gen_commutator(a, g):
            part = {head: cc}
            for f in factors:
                nxt = {}
                for mm, c in part.items():
                    for mmm, c2 in insert(mm, f).items():
                        s = nxt.get(mmm, 0) + c * c2
                        if s:
                            nxt[mmm] = s
                        else:
                            del nxt[mmm]
                part = nxt
            for mm, c in part.items():
                s = out.get(mm, 0) + c
                if s:
                    out[mm] = s
                else:
                    del out[mm]
        insert_cache[key] = out
        return out

    def mul_mono(m1, m2):
        """Normal form of the concatenation m1 m2: dict mono -> int."""
        if not m1 or not m2 or m1[-1] <= m2[0]:
            return {m1 + m2: 1}
        key = (m1, m2)
        hit = mul_cache.get(key)
        if hit is not None:
            return hit
        acc = {m1: 1}
        for g in m2:
            nxt = {}
            for m, c in acc.items():
                for mm, c2 in insert(m, g).items():
                    s = nxt.get(mm, 0) + c * c2
                    if s:
                        nxt[mm] = s
                    else:
                        del nxt[mm]
            acc = nxt
        mul_cache[key] = acc
        return acc

    def mul_terms(ta, tb):
        """Product of two elements given as dicts mono -> scalar coefficient."""
        out = {}
        for m1, c1 in ta.items():
            for m2, c2 in tb.items():
                c = c1 * c2
                if not m1 or not m2 or m1[-1] <= m2[0]:
                    m = m1 + m2
                    s = out.get(m, 0) + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
                    continue
                for m, k in mul_mono(m1, m2).items():
                    s = out.get(m, 0) + c * k
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return out

    return insert, mul_mono, mul_terms, (insert_cache, mul_cache)


_yinsert, ymul_mono, ymul, _ycaches = _make_kernel(ygen_commutator)
_einsert, emul_mono, emul, _ecaches = _make_kernel(egen_commutator)


def clear_caches():
    for c in _ycaches + _ecaches:
        c.clear()


BACKEND = "python"
