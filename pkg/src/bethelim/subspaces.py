"""Filtered subspaces, generated-subalgebra components, and t -> 0 limits.

A ``FilteredSubspace`` is a subspace of one filtered ambient component,
stored as the RREF of its coordinate matrix over QQ or QQ(t); RREF equality
is subspace equality.  ``SubalgebraPresentation`` holds a finite generator
list with declared degrees and materialises filtered components as the span
of all generator products of total declared degree within the cap.

``grassmannian_limit`` sends a t-family of subspaces of constant generic
dimension to its t -> 0 limit point: scale each basis vector to be finite
and nonzero at t = 0, evaluate, and while the evaluations are dependent,
pull the dependency back to an exact Laurent combination, renormalise it by
its valuation and replace the highest-index vector involved.
"""

from __future__ import annotations

from fractions import Fraction

from . import bases, linalg
from .scalars import LaurentFrac, LaurentPoly, format_laurent, format_rational


class FilteredSubspace:
    """Subspace of the degree-d ambient component, canonicalised by RREF."""

    __slots__ = ("kind", "rank", "degree", "rows", "pivots", "field")

    def __init__(self, kind, rank, degree, rows, *, reduce=True):
        self.kind = kind
        self.rank = rank
        self.degree = degree
        rows = linalg.promote_rows([list(r) for r in rows])
        if reduce:
            reduced, pivots = linalg.rref(rows)
            rows = linalg.nonzero_rows(reduced)
        else:
            rows = [tuple(r) for r in rows]
            pivots = [next(c for c, x in enumerate(r) if x) for r in rows]
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots[: len(self.rows)])
        self.field = ("QQ(t)" if any(isinstance(x, LaurentFrac) for r in self.rows for x in r)
                      else "QQ")

    @classmethod
    def from_elements(cls, kind, rank, degree, elements):
        rows = [bases.coordinates(kind, rank, degree, e.terms) for e in elements]
        rows = [r for r in rows if any(r)]
        return cls(kind, rank, degree, rows)

    @property
    def ambient(self):
        return (self.kind, self.rank, self.degree)

    def dim(self) -> int:
        return len(self.rows)

    def ambient_dim(self) -> int:
        return len(bases.basis(self.kind, self.rank, self.degree))

    def _check_ambient(self, other):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __eq__(self, other):
        if not isinstance(other, FilteredSubspace):
            return NotImplemented
        self._check_ambient(other)
        return self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def contains_vector(self, vec) -> bool:
        vec = linalg.promote_rows([list(vec)])[0]
        if self.field == "QQ(t)":
            vec = [LaurentFrac(x) if isinstance(x, Fraction) else x for x in vec]
        return linalg.in_row_space(self.rows, self.pivots, vec)

    def contains(self, other) -> bool:
        self._check_ambient(other)
        return all(self.contains_vector(r) for r in other.rows)

    def contains_element(self, element) -> bool:
        terms = dict(element.terms)
        terms.pop((), None)
        return self.contains_vector(bases.coordinates(self.kind, self.rank,
                                                      self.degree, terms))

    def embed_degree(self, degree) -> "FilteredSubspace":
        """The same subspace written in a larger ambient component."""
        if degree == self.degree:
            return self
        if degree < self.degree:
            raise ValueError("cannot shrink ambient degree")
        small = bases.basis(self.kind, self.rank, self.degree)
        idx = bases.basis_index(self.kind, self.rank, degree)
        width = len(idx)
        rows = []
        for r in self.rows:
            vec = [0] * width
            for x, mono in zip(r, small):
                if x:
                    vec[idx[mono]] = x
            rows.append(vec)
        return FilteredSubspace(self.kind, self.rank, degree, rows)

    def laurent_rows(self):
        """Rows with denominators cleared, as LaurentPoly vectors."""
        out = []
        for r in self.rows:
            den = LaurentPoly.const(1)
            fr = []
            for x in r:
                x = LaurentFrac(x) if isinstance(x, Fraction) else x
                fr.append(x)
                den = den * x.den
            out.append([(x * LaurentFrac(den)).as_laurent() for x in fr])
        return out

    def to_json(self):
        labels = [bases.format_basis_label(self.kind, m)
                  for m in bases.basis(self.kind, self.rank, self.degree)]
        fmt = (format_laurent if self.field == "QQ(t)"
               else format_rational)

        def cell(x):
            if isinstance(x, LaurentFrac):
                return repr(x)
            return fmt(x)

        return {
            "ambient": {"kind": self.kind, "rank": self.rank, "degree": self.degree},
            "field": self.field,
            "basis": labels,
            "rref": [[cell(x) for x in r] for r in self.rows],
            "pivots": list(self.pivots),
        }


def subspace_equal(a: FilteredSubspace, b: FilteredSubspace):
    """Equality with certificate: (verdict, both RREFs as JSON)."""
    verdict = a == b
    return verdict, {"left": a.to_json(), "right": b.to_json()}


class SubalgebraPresentation:
    """Finite generator list (with declared filtration degrees) of a
    subalgebra of the rank-``rank`` ambient algebra of the given kind."""

    def __init__(self, kind, rank, generators, d_cap, flags=None):
        self.kind = kind
        self.rank = rank
        self.generators = []
        for elt, deg in generators:
            actual = elt.degree()
            if actual > deg:
                raise ValueError(f"generator of degree {actual} declared {deg}")
            if elt:
                self.generators.append((elt, deg))
        self.d_cap = d_cap
        self.flags = dict(flags or {})
        self._components = {}

    def union(self, other) -> "SubalgebraPresentation":
        if (self.kind, self.rank) != (other.kind, other.rank):
            raise ValueError("cannot union presentations of different ambient")
        return SubalgebraPresentation(
            self.kind, self.rank, self.generators + other.generators,
            min(self.d_cap, other.d_cap),
            {**self.flags, **other.flags})

    def spanning_products(self, d):
        """All products of generators with total declared degree <= d.

        Generators are processed in order with shared prefixes, so partial
        products are reused along the enumeration tree.
        """
        out = []

        def rec(start, current, left):
            for idx in range(start, len(self.generators)):
                elt, deg = self.generators[idx]
                if deg > left:
                    continue
                prod = elt if current is None else current * elt
                if not prod:
                    continue
                out.append(prod)
                rec(idx, prod, left - deg)

        rec(0, None, d)
        return out

    def component(self, d) -> FilteredSubspace:
        """Span of generator products of total declared degree <= d."""
        if d > self.d_cap:
            raise ValueError(f"degree {d} beyond cap {self.d_cap}")
        hit = self._components.get(d)
        if hit is None:
            elems = self.spanning_products(d) if d >= 1 else []
            hit = FilteredSubspace.from_elements(self.kind, self.rank, d, elems)
            self._components[d] = hit
        return hit

    filtered_component = component

    def graded_dimensions(self, up_to):
        dims = []
        prev = 0
        for d in range(1, up_to + 1):
            cur = self.component(d).dim()
            dims.append(cur - prev)
            prev = cur
        return dims

    def commutativity_check(self):
        """Exact pairwise commutators (Poisson brackets for the symmetric
        kind); returns the list of failing index pairs with certificates."""
        from .classical import poisson_bracket

        failures = []
        gens = [g for g, _ in self.generators]
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if self.kind == "s":
                    c = poisson_bracket(gens[a], gens[b])
                else:
                    c = gens[a].commutator(gens[b])
                if c:
                    failures.append((a, b, c))
        return failures


def union_presentations(first, *rest):
    out = first
    for p in rest:
        out = out.union(p)
    return out


# ---------------------------------------------------------------------------
# the t -> 0 limit of a family of subspaces
# ---------------------------------------------------------------------------

def _laurent_vec_val(vec):
    vals = [x.val() for x in vec if x]
    if not vals:
        raise ValueError("zero vector in subspace family")
    return min(vals)


def grassmannian_limit(family: FilteredSubspace) -> FilteredSubspace:
    """The t -> 0 limit point of a Laurent family in the same Grassmannian."""
    rows = family.laurent_rows()
    if not rows:
        return FilteredSubspace(family.kind, family.rank, family.degree, [])
    max_deg = max((x.max_degree() - x.val() for r in rows for x in r if x), default=0)
    budget = (max_deg + 1) * len(rows) + 1
    for _ in range(budget):
        rows = [[x * LaurentPoly.t(-_laurent_vec_val(r)) if x else x for x in r]
                if _laurent_vec_val(r) else r for r in rows]
        evals = [[x.eval0() if x else Fraction(0) for x in r] for r in rows]
        reduced, pivots = linalg.rref(evals)
        if len(pivots) == len(rows):
            return FilteredSubspace(family.kind, family.rank, family.degree, evals)
        # find a dependency among the evaluated rows: nullspace vector of
        # the transpose, i.e. solve q . evals = 0 with q != 0
        q = _left_nullvector(evals)
        combo = None
        for qc, row in zip(q, rows):
            if not qc:
                continue
            scaled = [x * qc for x in row]
            combo = scaled if combo is None else [a + b for a, b in zip(combo, scaled)]
        replace_at = max(i for i, qc in enumerate(q) if qc)
        if combo is None or not any(combo):
            raise ArithmeticError("family dimension drops at generic t")
        rows[replace_at] = combo
    raise ArithmeticError("limit did not stabilize")


def _left_nullvector(rows):
    """A nonzero rational q with q . rows = 0 (rows are QQ vectors)."""
    ncols = len(rows[0])
    aug = [list(rows[i]) + [Fraction(1) if j == i else Fraction(0)
                            for j in range(len(rows))]
           for i in range(len(rows))]
    reduced, _ = linalg.rref(aug)
    for r in reduced:
        if not any(r[:ncols]):
            q = r[ncols:]
            if any(q):
                return list(q)
    raise ArithmeticError("no dependency found despite rank deficiency")


def limit_components(presentation: SubalgebraPresentation, up_to):
    """Per-degree t -> 0 limits of the components of a t-family presentation,
    with the inclusion chain re-checked on the limits."""
    out = {}
    for d in range(1, up_to + 1):
        out[d] = grassmannian_limit(presentation.component(d))
    for d in range(1, up_to):
        if not out[d + 1].contains(out[d].embed_degree(d + 1)):
            raise ArithmeticError(f"limit components not nested at degree {d}")
    return out


# ---------------------------------------------------------------------------
# finite-degree centralizer evidence
# ---------------------------------------------------------------------------

def centralizer_dimension(presentation: SubalgebraPresentation, d) -> int:
    """Dimension of the space of degree <= d elements commuting with every
    generator.  Constants are excluded (they always centralize); maximality
    evidence at degree d is equality with component(d).dim()."""
    from .classical import poisson_bracket

    kind, rank = presentation.kind, presentation.rank
    monos = [m for m in bases.basis(kind, rank, d)]
    if not monos:
        return 0
    columns = []
    make = _element_maker(kind, rank)
    for mono in monos:
        rows_for_var = []
        x = make({mono: Fraction(1)})
        for g, _deg in presentation.generators:
            if kind == "s":
                c = poisson_bracket(x, g)
            else:
                c = x.commutator(g)
            terms = dict(c.terms)
            terms.pop((), None)
            deg_needed = d + g.degree()
            rows_for_var.append(bases.coordinates(kind, rank, deg_needed, terms))
        columns.append([x for row in rows_for_var for x in row])
    # columns are indexed by basis monomials; solve A x = 0
    nvars = len(columns)
    system = [[columns[v][e] for v in range(nvars)] for e in range(len(columns[0]))]
    system = [row for row in system if any(row)]
    if not system:
        return nvars
    return linalg.nullity(linalg.promote_rows(system))


def _element_maker(kind, rank):
    if kind == "y":
        from .yangian import YangianElement
        return lambda terms: YangianElement(rank, terms)
    if kind == "u":
        from .enveloping import EnvElement
        return lambda terms: EnvElement(rank, terms)
    from .classical import SymElement
    return lambda terms: SymElement(rank, terms)
