"""Kauffman bracket state sum, writhe, linking number and Jones polynomial.

The bracket of a link diagram is the sum over the 2^k smoothings of
A^(a-b) * (-A^2 - A^(-2))^(loops-1), where a and b count the two smoothing
types.  With the crossing convention of :mod:`tanglekit.diagram` (slots
counterclockwise, under-strand at slots 0 and 2), the A-smoothing joins
slot 0 with slot 1 and slot 2 with slot 3; the B-smoothing joins 0 with 3
and 1 with 2.  The Jones polynomial is the writhe-normalized bracket
under A = t^(-1/4); it is reported in the sqrt_t variable of
:mod:`tanglekit.laurent`, and the unknot has Jones polynomial 1.

These are the not-unknot / not-split obstruction engines: a split link
has linking number zero between any two components, and its Jones
polynomial is (-t^(1/2) - t^(-1/2)) times the product of the factors'.
The printed coefficient conventions of other sources vary; only computed
values are ever compared with computed values here.
"""

from __future__ import annotations

import os
from fractions import Fraction as QQ

from .diagram import Diagram, LinkDiagram, OrientedDiagram, orient, strands
from .laurent import LaurentPoly

DEFAULT_CROSSING_BUDGET = 24
_BUDGET_ENV = "TANGLEKIT_CROSSING_BUDGET"


class CrossingBudgetExceeded(RuntimeError):
    pass


def crossing_budget() -> int:
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return DEFAULT_CROSSING_BUDGET
    return int(raw)


def _loop_factor() -> LaurentPoly:
    return LaurentPoly.make("A", {2: -1, -2: -1})


def kauffman_bracket(d: LinkDiagram) -> LaurentPoly:
    """Bracket polynomial in A; the crossing-free single loop has bracket 1."""
    k = d.crossing_count
    budget = crossing_budget()
    if k > budget:
        raise CrossingBudgetExceeded(f"{k} crossings exceeds budget {budget}")
    if k == 0 and d.loops == 0:
        raise ValueError("bracket of the empty diagram is undefined")

    # Per-crossing edge pairs for the two smoothings.
    a_pairs = []
    b_pairs = []
    for c in d.crossings:
        p = c.ports
        a_pairs.append(((p[0], p[1]), (p[2], p[3])))
        b_pairs.append(((p[0], p[3]), (p[1], p[2])))

    edges = sorted({e for c in d.crossings for e in c.ports})
    index = {e: i for i, e in enumerate(edges)}
    ne = len(edges)
    delta = _loop_factor()

    # Group states by (a - b, loop count): exponents of A and delta.
    tally: dict[tuple[int, int], int] = {}
    for state in range(1 << k):
        parent = list(range(ne))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a_count = 0
        for ci in range(k):
            if state >> ci & 1:
                pairs = b_pairs[ci]
            else:
                pairs = a_pairs[ci]
                a_count += 1
            for u, v in pairs:
                ru, rv = find(index[u]), find(index[v])
                if ru != rv:
                    parent[ru] = rv
        circles = len({find(i) for i in range(ne)}) + d.loops
        key = (2 * a_count - k, circles)
        tally[key] = tally.get(key, 0) + 1

    total = LaurentPoly.zero("A")
    for (a_exp, circles), mult in tally.items():
        term = (delta ** (circles - 1)).shift(a_exp).scale(mult)
        total = total + term
    return total


def writhe(od: OrientedDiagram) -> int:
    """Sum of crossing signs over all crossings."""
    return sum(od.crossing_sign(ci) for ci in range(od.base.crossing_count))


def linking_number(od: OrientedDiagram) -> int:
    """Half the signed count of crossings between the two components."""
    d = od.base
    if not isinstance(d, LinkDiagram):
        raise ValueError("linking number needs a link diagram")
    comp_strands = strands(d)
    if len(comp_strands) + d.loops != 2:
        raise ValueError("linking number needs exactly 2 components")
    edge_comp = {}
    for i, s in enumerate(comp_strands):
        for e, _, _ in s:
            edge_comp[e] = i
    total = 0
    for ci, c in enumerate(d.crossings):
        under_comp = edge_comp[c.ports[0]]
        over_comp = edge_comp[c.ports[1]]
        if under_comp != over_comp:
            total += od.crossing_sign(ci)
    if total % 2 != 0:
        raise AssertionError("inter-component sign sum must be even")
    return total // 2


def jones(d: LinkDiagram, orientation: OrientedDiagram | None = None) -> LaurentPoly:
    """Jones polynomial in sqrt_t: (-A^3)^(-writhe) <D> at A = t^(-1/4).

    The default orientation runs every component forward in discovery
    order; for links the polynomial depends only on the relative
    orientations of the components.
    """
    od = orientation if orientation is not None else orient(d)
    if od.base is not d and orientation is not None:
        d = od.base
    w = writhe(od)
    br = kauffman_bracket(d)
    # multiply by (-A^3)^(-w): exponent shift -3w, sign (-1)^w
    sign = -1 if w % 2 else 1
    normalized = br.shift(-3 * w).scale(sign)
    terms: dict[int, int] = {}
    for a_exp, coeff in normalized.coeffs:
        if a_exp % 2 != 0:
            raise AssertionError("normalized bracket must have even A exponents")
        terms[-a_exp // 2] = terms.get(-a_exp // 2, 0) + coeff
    return LaurentPoly.make("sqrt_t", terms)


def jones_unknot() -> LaurentPoly:
    return LaurentPoly.one("sqrt_t")


def jones_unlink(components: int) -> LaurentPoly:
    """(-t^(1/2) - t^(-1/2))^(components - 1)."""
    delta = LaurentPoly.make("sqrt_t", {1: -1, -1: -1})
    return delta ** (components - 1)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Distant union of two link diagrams."""
    offset = max((e for c in d1.crossings for e in c.ports), default=-1) + 1
    from .diagram import Crossing

    moved = tuple(Crossing(tuple(e + offset for e in c.ports)) for c in d2.crossings)
    return LinkDiagram(crossings=d1.crossings + moved, loops=d1.loops + d2.loops)


def jones_at_minus_one(poly: LaurentPoly) -> int:
    """|V(-1)| via sqrt_t = i; defined for knots (imaginary part vanishes)."""
    if poly.var != "sqrt_t":
        raise ValueError("expected a Jones polynomial in sqrt_t")
    re, im = poly.substitute_gaussian(QQ(0), QQ(1))
    if im != 0:
        raise ValueError("V(-1) is not real; restrict the check to knots")
    if re.denominator != 1:
        raise AssertionError("V(-1) must be an integer")
    return abs(int(re))


def component_subdiagrams(d: LinkDiagram) -> list[LinkDiagram]:
    """The diagram of each component alone, inter-component crossings erased.

    At a crossing used by two different components the surviving strand
    runs straight through, so the two edges of its pass fuse; crossings
    internal to the other component vanish with it.
    """
    from .diagram import Crossing, renumber

    comp_strands = strands(d)
    out = []
    for i, s in enumerate(comp_strands):
        own_edges = {e for e, _, _ in s}
        crossings = []
        fuse: dict[int, int] = {}

        def find(e):
            while e in fuse:
                e = fuse[e]
            return e

        for c in d.crossings:
            under = (c.ports[0], c.ports[2])
            over = (c.ports[1], c.ports[3])
            under_own = under[0] in own_edges
            over_own = over[0] in own_edges
            if under_own and over_own:
                crossings.append(c)
            elif under_own:
                a, b = find(under[0]), find(under[1])
                if a != b:
                    fuse[b] = a
            elif over_own:
                a, b = find(over[0]), find(over[1])
                if a != b:
                    fuse[b] = a
        renamed = []
        closed_loop = 0
        if not crossings:
            closed_loop = 1
        for c in crossings:
            renamed.append(Crossing(tuple(find(e) for e in c.ports)))
        out.append(renumber(LinkDiagram(crossings=tuple(renamed), loops=closed_loop)))
    for _ in range(d.loops):
        out.append(LinkDiagram(crossings=(), loops=1))
    return out


def split_union_jones(d: LinkDiagram) -> LaurentPoly:
    """Jones polynomial of the distant union of d's components.

    If d were a split link, its Jones polynomial would equal this value;
    inequality is therefore a not-split certificate.
    """
    comps = component_subdiagrams(d)
    if not comps:
        raise ValueError("empty diagram")
    union = comps[0]
    for c in comps[1:]:
        union = disjoint_union(union, c)
    return jones(union)
