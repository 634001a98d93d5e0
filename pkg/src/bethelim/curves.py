"""Stable rational curves with marked points {0, 1..n, inf}, their strata,
operad substitution, degeneration schedules, and predicted limit subalgebras.

A curve is a rooted tree: the root is the component containing the marked
point inf, every internal vertex carries distinct rational coordinates for
its children, and on the path toward the marked point 0 the 0-ward child is
pinned at coordinate 0.  The one-parameter degeneration schedule of a curve
scales level-m coordinates by t^m; its t -> 0 limit is predicted to be the
commuting product of a smaller Bethe subalgebra (non-0 directions), an
omega-conjugated Bethe subalgebra (the 0 direction), and lifted
shift-of-argument subalgebras (one per collision bubble), assembled
recursively.

Text format: nested parenthesized lists over tokens ``0``, ``1``..``n``,
``inf`` with optional ``@coord`` annotations, e.g. ``((0,2)@0, 1@1, inf)``.
Missing coordinates default to small integers, with the 0-ward child pinned
at 0.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .bethe import TorusFamily, bethe_generators
from .classical import BlockDiagonal, shift_arg_generators, symmetrize
from .scalars import LaurentPoly
from .subspaces import FilteredSubspace, SubalgebraPresentation, grassmannian_limit, \
    limit_components
from .yangian import embed_i, embed_psi, env_to_yangian


class StableCurve:
    """Rooted stable curve; children are (coordinate, leaf-label-or-subcurve)."""

    __slots__ = ("children",)

    def __init__(self, children):
        kids = []
        for coord, child in children:
            coord = Fraction(coord) if coord is not None else None
            kids.append((coord, child))
        self.children = tuple(kids)

    def leaves(self):
        out = []
        for _, child in self.children:
            if isinstance(child, StableCurve):
                out.extend(child.leaves())
            else:
                out.append(child)
        return out

    def contains_leaf(self, label) -> bool:
        return label in self.leaves()

    def validate(self, *, is_root=True):
        """Stability (valence >= 3 counting the parent), distinct coordinates
        per vertex, and the 0-ward pinning."""
        if len(self.children) < 2:
            raise ValueError("unstable vertex: fewer than 2 children")
        coords = [c for c, _ in self.children]
        if None in coords:
            raise ValueError("curve has unassigned coordinates")
        if len(set(coords)) != len(coords):
            raise ValueError("coordinates at a vertex must be pairwise distinct")
        for coord, child in self.children:
            zero_ward = (child == 0 if not isinstance(child, StableCurve)
                         else child.contains_leaf(0))
            if zero_ward and coord != 0:
                raise ValueError("the 0-ward child must sit at coordinate 0")
            if isinstance(child, StableCurve):
                child.validate(is_root=False)

    def is_nondegenerate(self) -> bool:
        return all(not isinstance(child, StableCurve) for _, child in self.children)

    def depth(self) -> int:
        sub = [child.depth() for _, child in self.children
               if isinstance(child, StableCurve)]
        return 1 + max(sub) if sub else 0

    def relabel(self, mapping) -> "StableCurve":
        kids = []
        for coord, child in self.children:
            if isinstance(child, StableCurve):
                kids.append((coord, child.relabel(mapping)))
            else:
                kids.append((coord, mapping.get(child, child)))
        return StableCurve(kids)

    def combinatorial_type(self):
        """Coordinate-free encoding: nested frozensets of leaf labels."""
        out = []
        for _, child in self.children:
            out.append(child.combinatorial_type() if isinstance(child, StableCurve)
                       else child)
        return frozenset(out)

    def codimension(self) -> int:
        return sum(1 + child.codimension() for _, child in self.children
                   if isinstance(child, StableCurve))

    def __repr__(self):
        return format_curve(self)

    def __eq__(self, other):
        if not isinstance(other, StableCurve):
            return NotImplemented
        return self.children == other.children

    def __hash__(self):
        return hash(self.children)


# ---------------------------------------------------------------------------
# parsing / printing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|,|@|inf|-?\d+(?:/\d+)?")


def parse_curve(text: str, n=None) -> StableCurve:
    tokens = _TOKEN.findall(text.replace(" ", ""))
    pos = 0

    def parse_item():
        nonlocal pos
        if tokens[pos] == "(":
            pos += 1
            items = [parse_item()]
            while tokens[pos] == ",":
                pos += 1
                items.append(parse_item())
            if tokens[pos] != ")":
                raise ValueError("expected ')' in curve spec")
            pos += 1
            coord = parse_coord()
            return (coord, items)
        tok = tokens[pos]
        pos += 1
        coord = parse_coord()
        if tok == "inf":
            return (coord, "inf")
        return (coord, int(tok))

    def parse_coord():
        nonlocal pos
        if pos < len(tokens) and tokens[pos] == "@":
            pos += 1
            val = Fraction(tokens[pos])
            pos += 1
            return val
        return None

    coord, top = parse_item()
    if pos != len(tokens):
        raise ValueError("trailing tokens in curve spec")
    if not isinstance(top, list):
        raise ValueError("curve spec must be a parenthesized list")
    items = [it for it in top if it[1] != "inf"]
    if len(items) == len(top):
        raise ValueError("root must contain the marked point inf")

    def build(items):
        kids = []
        for coord, payload in items:
            if isinstance(payload, list):
                kids.append((coord, build(payload)))
            else:
                kids.append((coord, payload))
        return StableCurve(kids)

    curve = _assign_default_coords(build(items))
    labels = sorted(curve.leaves())
    want_n = n if n is not None else (labels[-1] if labels else 0)
    if labels != list(range(0, want_n + 1)):
        raise ValueError(f"curve leaves must be exactly 0..{want_n}, got {labels}")
    curve.validate()
    return curve


def _assign_default_coords(node: StableCurve) -> StableCurve:
    kids = []
    used = {c for c, _ in node.children if c is not None}
    nxt = 1
    for coord, child in node.children:
        zero_ward = (child == 0 if not isinstance(child, StableCurve)
                     else child.contains_leaf(0))
        if coord is None:
            if zero_ward:
                coord = Fraction(0)
            else:
                while Fraction(nxt) in used:
                    nxt += 1
                coord = Fraction(nxt)
                used.add(coord)
        if isinstance(child, StableCurve):
            child = _assign_default_coords(child)
        kids.append((coord, child))
    return StableCurve(kids)


def format_curve(curve: StableCurve, *, root=True) -> str:
    parts = []
    for coord, child in curve.children:
        body = (format_curve(child, root=False) if isinstance(child, StableCurve)
                else str(child))
        parts.append(f"{body}@{coord}")
    if root:
        parts.append("inf")
    return "(" + ", ".join(parts) + ")"


# ---------------------------------------------------------------------------
# strata combinatorics
# ---------------------------------------------------------------------------

def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _vertex_types(leafset):
    """All stable subtree shapes over a leaf block (as a child of some vertex)."""
    leafset = sorted(leafset)
    if len(leafset) == 1:
        yield leafset[0]
        return
    for part in _set_partitions(leafset):
        if len(part) < 2:
            continue
        blocks = [sorted(b) for b in part]
        options = []
        for b in blocks:
            if len(b) == 1:
                options.append([b[0]])
            else:
                options.append(list(_vertex_types(b)))
        for combo in itertools.product(*options):
            yield frozenset(combo)


def enumerate_strata(n):
    """All combinatorial types of stable curves with leaves {0..n} plus the
    root marked point, grouped by codimension (number of internal edges)."""
    if n < 2:
        raise ValueError("need n >= 2")
    out = {}
    for typ in _vertex_types(range(0, n + 1)):
        codim = _type_codim(typ) - 1  # the root vertex itself is not an edge
        out.setdefault(codim, set()).add(typ)
    return {k: out[k] for k in sorted(out)}


def _type_codim(typ):
    if not isinstance(typ, frozenset):
        return 0
    return 1 + sum(_type_codim(c) for c in typ)


def contractions(typ):
    """Types obtained by contracting one internal edge (one group child
    merged into its parent)."""
    out = set()
    children = list(typ)
    for idx, child in enumerate(children):
        if not isinstance(child, frozenset):
            continue
        merged = frozenset(children[:idx] + children[idx + 1:] + list(child))
        out.add(merged)
        for sub in contractions(child):
            out.add(frozenset(children[:idx] + children[idx + 1:] + [sub]))
    return out


def count_strata_bruteforce(n):
    """Independent stratum counter: strata of codimension k are exactly the
    laminar families of k proper subsets of {0..n} of size >= 2 (pairwise
    nested or disjoint).  Brute-force over all subset families."""
    points = list(range(0, n + 1))
    candidates = [frozenset(c) for size in range(2, n + 1)
                  for c in itertools.combinations(points, size)]

    def laminar(family):
        for a, b in itertools.combinations(family, 2):
            if not (a <= b or b <= a or not (a & b)):
                return False
        return True

    counts = {}
    for k in range(0, len(candidates) + 1):
        total = 0
        for family in itertools.combinations(candidates, k):
            if laminar(family):
                total += 1
        if total:
            counts[k] = total
        elif k > 0:
            break
    return counts


def substitute(outer: StableCurve, parts) -> StableCurve:
    """Operad substitution: graft each part curve onto the like-labelled leaf
    of the outer curve (the part's root point is glued there).  ``parts``
    maps leaf labels to curves (or to bare labels, the unit substitution)."""
    outer_leaves = set(outer.leaves())
    for label in parts:
        if label not in outer_leaves:
            raise ValueError(f"no leaf {label} in the outer curve")

    def rec(node):
        kids = []
        for coord, child in node.children:
            if isinstance(child, StableCurve):
                kids.append((coord, rec(child)))
            elif child in parts:
                repl = parts[child]
                if isinstance(repl, StableCurve):
                    kids.append((coord, repl))
                else:
                    kids.append((coord, repl))
            else:
                kids.append((coord, child))
        return StableCurve(kids)

    return rec(outer)


# ---------------------------------------------------------------------------
# degeneration schedules
# ---------------------------------------------------------------------------

def curve_to_schedule(curve: StableCurve) -> TorusFamily:
    """One-parameter family whose t -> 0 limit sits at the curve's stratum:
    the eigenvalue of marked point a is the path sum of coordinates weighted
    by t^level.  Level separation t^(m+1) vs t^m is the minimal choice, since
    coordinates are constants."""
    curve.validate()
    n = max(curve.leaves())
    lam = {}

    def walk(node, level, prefix):
        for coord, child in node.children:
            term = LaurentPoly({level: coord}) if coord else LaurentPoly()
            total = prefix + term
            if isinstance(child, StableCurve):
                walk(child, level + 1, total)
            elif child != 0:
                lam[child] = total
        return None

    walk(curve, 0, LaurentPoly())
    entries = [lam[a] for a in range(1, n + 1)]
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            if entries[a] == entries[b]:
                raise ValueError("schedule not regular at generic t")
    return TorusFamily(entries)


# ---------------------------------------------------------------------------
# predicted limit subalgebras
# ---------------------------------------------------------------------------

def _split_root(curve: StableCurve):
    """Root children split into the 0-ward child and the others (sorted by
    smallest leaf label); the others must tile 1..n-k0 contiguously and the
    0-ward marked points must be the top labels (standard arrangement)."""
    zero_child = None
    others = []
    for coord, child in curve.children:
        leafset = child.leaves() if isinstance(child, StableCurve) else [child]
        if 0 in leafset:
            zero_child = (coord, child)
        else:
            others.append((coord, child, sorted(leafset)))
    others.sort(key=lambda item: item[2][0])
    n = max(curve.leaves())
    if zero_child is None:
        raise ValueError("curve has no marked point 0")
    zc = zero_child[1]
    k0 = 0 if not isinstance(zc, StableCurve) else len(zc.leaves()) - 1
    expected = list(range(n - k0 + 1, n + 1))
    if isinstance(zc, StableCurve) and sorted(set(zc.leaves()) - {0}) != expected:
        raise ValueError(
            "standard arrangement required: the marked points behind 0 must "
            "carry the largest labels")
    cursor = 1
    for _, _, leafset in others:
        if leafset != list(range(cursor, cursor + len(leafset))):
            raise ValueError(
                "standard arrangement required: each root bubble must cover a "
                "contiguous label range, ordered left to right")
        cursor += len(leafset)
    if cursor != n - k0 + 1:
        raise ValueError("root children do not cover the marked points")
    return zero_child, others, k0, n


def _bubble_classical_generators(node: StableCurve, rank, window):
    """Shift-of-argument generators (symmetric side) for a collision bubble:
    the block subalgebra for the bubble's own coordinates plus, recursively,
    the subalgebras of its sub-bubbles, realised inside gl(rank) on the
    window indices."""
    items = []
    for coord, child in node.children:
        leafset = sorted(child.leaves()) if isinstance(child, StableCurve) else [child]
        items.append((coord, child, leafset))
    items.sort(key=lambda it: it[2][0])
    labels = [lab for _, _, ls in items for lab in ls]
    if labels != sorted(labels):
        raise ValueError("bubble children must cover contiguous label ranges")
    blocks = tuple((coord, len(ls)) for coord, _, ls in items)
    gens = list(shift_arg_generators(BlockDiagonal(blocks), rank=rank,
                                     indices=window).generators)
    cursor = 0
    for coord, child, ls in items:
        sub_window = window[cursor:cursor + len(ls)]
        cursor += len(ls)
        if isinstance(child, StableCurve):
            gens.extend(_bubble_classical_generators(child, rank, sub_window))
    return gens


def predicted_subalgebra(curve: StableCurve, d_cap, cap=None) -> SubalgebraPresentation:
    """The commuting product predicted for the curve's limit subalgebra,
    assembled recursively: Bethe generators for the root coordinates,
    omega-conjugated Bethe generators for the 0-direction, and lifted
    shift-of-argument generators for every collision bubble."""
    curve.validate()
    if curve.is_nondegenerate():
        coords = {child: coord for coord, child in curve.children if child != 0}
        n = max(curve.leaves())
        fam = TorusFamily([coords[a] for a in range(1, n + 1)])
        return bethe_generators(fam, d_cap, cap=cap)
    zero_child, others, k0, n = _split_root(curve)
    m = n - k0
    gens = []
    # Bethe part on the root coordinates (eigenvalue = bubble coordinate,
    # multiplicity = bubble size)
    if m:
        diag = []
        for coord, _child, leafset in others:
            diag.extend([coord] * len(leafset))
        bpres = bethe_generators(TorusFamily(diag), d_cap, cap=cap)
        for g, d in bpres.generators:
            gens.append((embed_i(g, k0) if k0 else g, d))
    # omega-conjugated part behind the marked point 0
    if k0:
        zc = zero_child[1]
        mapping = {lab: idx for idx, lab in
                   enumerate(sorted(set(zc.leaves()) - {0}), start=1)}
        sub = predicted_subalgebra(zc.relabel(mapping), d_cap, cap=cap)
        for g, d in sub.generators:
            gens.append((embed_psi(g, m, cap=cap), d))
    # lifted shift-of-argument part for every root collision bubble
    for _coord, child, leafset in others:
        if not isinstance(child, StableCurve):
            continue
        window = tuple(leafset)
        for g, d in _bubble_classical_generators(child, m, window):
            gens.append((env_to_yangian(symmetrize(g), n), d))
    return SubalgebraPresentation("y", n, gens, d_cap, {"predicted": True})


# ---------------------------------------------------------------------------
# iterated limits along the 0-chain
# ---------------------------------------------------------------------------

def _is_chain(curve: StableCurve) -> bool:
    zero = [child for _, child in curve.children
            if isinstance(child, StableCurve) and child.contains_leaf(0)]
    plain = all(not isinstance(child, StableCurve) or child.contains_leaf(0)
                for _, child in curve.children)
    if not plain:
        return False
    return all(_is_chain(z) for z in zero)


def iterated_limit_components(curve: StableCurve, up_to, cap=None):
    """Limit-of-limits route for 0-chain curves of depth <= 2: peel one
    collision scale per step, verifying each one-parameter limit, instead of
    one nested-exponent schedule.  Returns {degree: subspace}."""
    if not _is_chain(curve):
        raise ValueError("iterated route implemented for 0-chain curves")
    if curve.depth() > 2:
        raise ValueError("iterated route implemented up to depth 2")
    zero_child, others, k0, n = _split_root(curve)
    outer_diag = [coord for coord, _c, ls in others for _ in ls]
    if curve.depth() <= 1 or k0 == 0:
        fam = curve_to_schedule(curve)
        return limit_components(bethe_generators(fam, up_to, cap=cap), up_to)
    zc = zero_child[1]
    mapping = {lab: idx for idx, lab in
               enumerate(sorted(set(zc.leaves()) - {0}), start=1)}
    inner = zc.relabel(mapping)
    # step 1: flatten the inner curve to generic distinct constants and take
    # the first one-parameter limit
    flat = _flatten_coords(inner)
    t = LaurentPoly.t()
    step1_fam = TorusFamily([Fraction(c) for c in outer_diag] +
                            [c * t for c in flat])
    step1_pres = bethe_generators(step1_fam, up_to, cap=cap)
    step1_lim = limit_components(step1_pres, up_to)
    outer_gens = [(embed_i(g, k0), d) for g, d in
                  bethe_generators(TorusFamily(outer_diag), up_to, cap=cap).generators]
    flat_inner = bethe_generators(TorusFamily(flat), up_to, cap=cap)
    step1_pred = SubalgebraPresentation(
        "y", n,
        outer_gens + [(embed_psi(g, n - k0, cap=cap), d) for g, d in flat_inner.generators],
        up_to)
    for d in range(1, up_to + 1):
        if step1_lim[d] != step1_pred.component(d):
            raise ArithmeticError(f"iterated route: first limit failed at degree {d}")
    # step 2: re-open the inner collision scale with a fresh parameter
    inner_fam = bethe_generators(curve_to_schedule(inner), up_to, cap=cap)
    reopened = SubalgebraPresentation(
        "y", n,
        outer_gens + [(embed_psi(g, n - k0, cap=cap), d) for g, d in inner_fam.generators],
        up_to)
    return limit_components(reopened, up_to)


def _flatten_coords(curve: StableCurve):
    """First-level coordinates with every sub-bubble replaced by one fresh
    generic value, giving a regular constant matrix."""
    used = {coord for coord, _ in curve.children}
    fresh = 1
    out = []
    for coord, child in curve.children:
        if isinstance(child, StableCurve) or child == 0:
            continue
        out.append(coord)
    for coord, child in curve.children:
        if isinstance(child, StableCurve):
            for lab in sorted(set(child.leaves()) - {0}):
                while Fraction(fresh) in used:
                    fresh += 1
                used.add(Fraction(fresh))
                out.append(Fraction(fresh))
    return out
