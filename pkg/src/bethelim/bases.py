"""Canonical ordered monomial bases of the filtered ambient components.

Every subspace comparison happens in coordinates over one of these bases, so
their ordering is fixed once and for all: by total filtration degree first,
then lexicographically on the packed monomial tuple.  Constants (the empty
monomial) are excluded; the line of constants is handled separately by the
callers that need it.

Kinds: ``("y", n)`` rank-n Yangian monomials (degree of t^(r)_ij is r),
``("u", m)`` U(gl_m) monomials, ``("s", m)`` S(gl_m) monomials (both graded
by word length).
"""

from __future__ import annotations

from functools import lru_cache

from . import pbw


def _weighted_monomials(gens_with_weights, budget):
    """Non-decreasing tuples over ``gens`` with total weight <= budget."""
    out = []

    def rec(start, prefix, left):
        for idx in range(start, len(gens_with_weights)):
            g, w = gens_with_weights[idx]
            if w > left:
                continue
            mono = prefix + (g,)
            out.append(mono)
            rec(idx, mono, left - w)

    rec(0, (), budget)
    return out


@lru_cache(maxsize=None)
def basis(kind, rank, degree):
    """Ordered tuple of all non-constant monomials of degree <= degree."""
    if kind == "y":
        gens = [(pbw.ypack(r, i, j), r)
                for r in range(1, degree + 1)
                for i in range(1, rank + 1)
                for j in range(1, rank + 1)]
    elif kind in ("u", "s"):
        gens = [(pbw.epack(i, j), 1)
                for i in range(1, rank + 1)
                for j in range(1, rank + 1)]
    else:
        raise ValueError(f"unknown ambient kind {kind!r}")
    gens.sort()
    monos = _weighted_monomials(gens, degree)
    if kind == "y":
        monos.sort(key=lambda m: (pbw.ydeg(m), m))
    else:
        monos.sort(key=lambda m: (len(m), m))
    return tuple(monos)


@lru_cache(maxsize=None)
def basis_index(kind, rank, degree):
    return {m: c for c, m in enumerate(basis(kind, rank, degree))}


def mono_degree(kind, mono):
    return pbw.ydeg(mono) if kind == "y" else len(mono)


def coordinates(kind, rank, degree, terms):
    """Coordinate vector of a terms dict over the degree-capped basis.

    Raises if a monomial exceeds the degree cap; the constant part must be
    stripped by the caller beforehand.
    """
    idx = basis_index(kind, rank, degree)
    vec = [0] * len(idx)
    for mono, c in terms.items():
        if mono == ():
            raise ValueError("constant term in coordinates; strip it first")
        pos = idx.get(mono)
        if pos is None:
            raise ValueError(f"monomial of degree > {degree} in coordinates")
        vec[pos] = c
    return vec


def format_basis_label(kind, mono):
    if kind == "y":
        return "*".join("t[%d,%d,%d]" % (lambda r, i, j: (i, j, r))(*pbw.yunpack(g))
                        for g in mono)
    pre = "E" if kind == "u" else "e"
    return "*".join(pre + "[%d,%d]" % pbw.eunpack(g) for g in mono)
