"""Quandle colorings of tangle and link diagrams.

A quandle is a set with a self-distributive, right-invertible, idempotent
operation.  Colorings label the arcs of a diagram (maximal over-strands)
so that at each crossing the label of the left under-arc, seen along the
over-strand direction, is the right under-arc label acted on by the
over-arc label.  For the dihedral quandle on Z/n (x * y = 2y - x mod n)
the operation is involutory and the crossing rule is the linear relation
2*over = in + out, so colorings mod n, and over the integers for n = 0,
are computed from one integer matrix through its Smith normal form.

A tangle coloring is a c-coloring when its four boundary arcs share one
color, and a d-coloring otherwise.  Every coloring satisfies the
alternating boundary sum rule NW + SE = NE + SW; consequently an integer
d-coloring has (NE - NW, NE - SE) != (0, 0) and the ratio of these two
differences is a well-defined extended rational, the coloring fraction.
On a rational tangle diagram the coloring fraction recovers the tangle
fraction, which pins down every sign convention in this package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    BOUNDARY_LABELS,
    Diagram,
    LinkDiagram,
    OrientedDiagram,
    TangleDiagram,
)
from .fraction import Fraction, frac_add, frac_normalize
from .snf import SmithForm, integer_determinant, smith_normal_form


# ---------------------------------------------------------------------------
# quandles

def quandle_check(table: list[list[int]]) -> str | None:
    """Verify the three quandle axioms exhaustively.

    Returns None if the table is a quandle, else a message naming the
    first violated axiom with a witness.
    """
    m = len(table)
    for row in table:
        if len(row) != m or any(not (0 <= x < m) for x in row):
            return f"malformed table: expected {m} entries in 0..{m - 1} per row"
    for x in range(m):
        if table[x][x] != x:
            return f"idempotence fails: {x} * {x} = {table[x][x]}"
    for y in range(m):
        col = [table[x][y] for x in range(m)]
        if len(set(col)) != m:
            return f"right translation by {y} is not a bijection"
    for x in range(m):
        for y in range(m):
            for z in range(m):
                left = table[table[x][y]][z]
                right = table[table[x][z]][table[y][z]]
                if left != right:
                    return (f"self-distributivity fails at ({x}, {y}, {z}): "
                            f"({x}*{y})*{z} = {left} != {right}")
    return None


@dataclass(frozen=True)
class FiniteQuandle:
    """Finite quandle given by its multiplication table (checked)."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        err = quandle_check([list(r) for r in self.table])
        if err:
            raise ValueError(err)

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def is_involutory(self) -> bool:
        return all(self.op(self.op(x, y), y) == x
                   for x in range(self.size) for y in range(self.size))


def dihedral_table(n: int) -> FiniteQuandle:
    """The dihedral quandle R_n (n >= 1) as an explicit table."""
    if n < 1:
        raise ValueError("dihedral_table needs n >= 1")
    return FiniteQuandle(tuple(tuple((2 * y - x) % n for y in range(n))
                               for x in range(n)))


def parse_quandle_table(text: str) -> FiniteQuandle:
    """Load a table from text: first line m, then m rows of m integers."""
    rows = [ln.split() for ln in text.splitlines() if ln.split()]
    if not rows:
        raise ValueError("empty quandle file")
    m = int(rows[0][0])
    if len(rows) != m + 1:
        raise ValueError(f"expected {m} table rows, found {len(rows) - 1}")
    table = tuple(tuple(int(x) for x in row) for row in rows[1:])
    return FiniteQuandle(table)


# ---------------------------------------------------------------------------
# arcs and the dihedral relation matrix

def arcs(d: Diagram) -> dict[int, int]:
    """Map each edge to its arc index; arcs are maximal over-strands.

    Edges are merged across a crossing when they occupy the two over
    slots; under-strands break.  Arc indices are dense, ordered by the
    smallest edge id in the arc.
    """
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    edges = {e for c in d.crossings for e in c.ports}
    if isinstance(d, TangleDiagram):
        edges |= {d.boundary[lab] for lab in BOUNDARY_LABELS}
    for e in edges:
        parent[e] = e
    for c in d.crossings:
        union(c.ports[1], c.ports[3])
    reps = sorted({find(e) for e in edges})
    index = {r: i for i, r in enumerate(reps)}
    return {e: index[find(e)] for e in edges}


def dihedral_relation_matrix(d: Diagram) -> tuple[list[list[int]], dict[int, int]]:
    """One row 2*over - in - out per crossing, columns indexed by arc."""
    arc_of = arcs(d)
    ncols = (max(arc_of.values()) + 1) if arc_of else 0
    rows = []
    for c in d.crossings:
        row = [0] * ncols
        row[arc_of[c.ports[1]]] += 2
        row[arc_of[c.ports[0]]] -= 1
        row[arc_of[c.ports[2]]] -= 1
        rows.append(row)
    return rows, arc_of


def boundary_arcs(d: TangleDiagram, arc_of: dict[int, int]) -> dict[str, int]:
    return {lab: arc_of[d.boundary[lab]] for lab in BOUNDARY_LABELS}


@dataclass
class ColoringLattice:
    """Solution space of the dihedral crossing relations.

    For modulus n > 0 the solutions form a subgroup of (Z/n)^arcs;
    ``count`` is its size and ``generators`` generate it.  For n = 0 the
    integer solution lattice is described by ``basis`` (a Z-basis) and
    the ``invariant_factors`` of the relation matrix.  For tangles,
    ``boundary`` maps NW, NE, SW, SE to arc indices.
    """

    modulus: int
    arc_count: int
    smith: SmithForm
    boundary: dict[str, int] | None

    @property
    def invariant_factors(self) -> list[int]:
        return list(self.smith.factors)

    @property
    def basis(self) -> list[list[int]]:
        return self.smith.kernel_basis()

    @property
    def count(self) -> int:
        if self.modulus == 0:
            raise ValueError("integer lattice is infinite; use basis")
        return self.smith.solutions_mod(self.modulus)

    @property
    def generators(self) -> list[list[int]]:
        if self.modulus == 0:
            return self.basis
        return self.smith.kernel_basis_mod(self.modulus)

    def boundary_colors(self, solution: list[int]) -> tuple[int, int, int, int]:
        if self.boundary is None:
            raise ValueError("link diagrams have no boundary colors")
        return tuple(solution[self.boundary[lab]] for lab in BOUNDARY_LABELS)


def color_solve_dihedral(d: Diagram, n: int) -> ColoringLattice:
    """Solve the dihedral coloring system mod n (n = 0: over the integers).

    Orientations are irrelevant: the dihedral operation is involutory.
    The nullity is at least the number of strands, so nontrivial
    colorings exist mod every n for diagrams with more than one strand.
    """
    if n < 0:
        raise ValueError("modulus must be >= 0")
    rows, arc_of = dihedral_relation_matrix(d)
    ncols = (max(arc_of.values()) + 1) if arc_of else 0
    if rows:
        sf = smith_normal_form(rows)
    else:
        sf = SmithForm(factors=[], rank=0, u=[], v=_id(ncols), rows=0, cols=ncols)
    boundary = boundary_arcs(d, arc_of) if isinstance(d, TangleDiagram) else None
    return ColoringLattice(modulus=n, arc_count=ncols, smith=sf, boundary=boundary)


def _id(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# c-colorings and monochromaticity

def _c_constrained_matrix(d: TangleDiagram) -> tuple[list[list[int]], int]:
    """Crossing relations plus rows forcing all boundary arcs equal."""
    rows, arc_of = dihedral_relation_matrix(d)
    ncols = (max(arc_of.values()) + 1) if arc_of else 0
    bnd = sorted({arc_of[d.boundary[lab]] for lab in BOUNDARY_LABELS})
    first = bnd[0]
    for other in bnd[1:]:
        row = [0] * ncols
        row[first] += 1
        row[other] -= 1
        rows.append(row)
    if not rows:
        rows = [[0] * ncols]
    return rows, ncols


def has_nontrivial_c_coloring(d: TangleDiagram, n: int) -> bool:
    """Is there a mod-n c-coloring using more than one color (n >= 2)?"""
    rows, _ = _c_constrained_matrix(d)
    sf = smith_normal_form(rows)
    return sf.solutions_mod(n) > n


@dataclass(frozen=True)
class MonochromaticReport:
    """All-moduli summary of the c-colorings of a tangle.

    ``offending_moduli`` lists the primes p such that nontrivial
    c-colorings exist mod p; when ``all_moduli`` is set (free rank beyond
    the constants) every modulus admits one.  ``r0_monochromatic`` means
    every integer c-coloring is constant.
    """

    c_trivial_for_all_n: bool
    offending_moduli: frozenset[int]
    all_moduli: bool
    r0_monochromatic: bool
    invariant_factors: tuple[int, ...]

    def polychromatic_somewhere(self) -> bool:
        return self.all_moduli or bool(self.offending_moduli)


def _prime_divisors(n: int) -> set[int]:
    out = set()
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.add(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def monochromatic_report(d: TangleDiagram) -> MonochromaticReport:
    """Classify the c-colorings of d across all moduli at once.

    The Smith normal form of the c-constrained system decides every
    modulus simultaneously: free rank beyond the constant coloring gives
    nontrivial c-colorings mod every n, and an invariant factor f > 1
    gives them exactly mod the divisors of f.
    """
    rows, ncols = _c_constrained_matrix(d)
    sf = smith_normal_form(rows)
    nullity = ncols - sf.rank
    torsion = tuple(f for f in sf.factors if f > 1)
    primes = set()
    for f in torsion:
        primes |= _prime_divisors(f)
    all_moduli = nullity >= 2
    return MonochromaticReport(
        c_trivial_for_all_n=(nullity == 1 and not torsion),
        offending_moduli=frozenset(primes),
        all_moduli=all_moduli,
        r0_monochromatic=(nullity == 1),
        invariant_factors=torsion,
    )


# ---------------------------------------------------------------------------
# coloring fraction

@dataclass(frozen=True)
class NotInvariant:
    """Returned when the boundary lattice mod constants has rank != 1."""

    rank: int

    def __str__(self):
        return f"not invariant (boundary rank {self.rank})"


def coloring_fraction(d: TangleDiagram) -> Fraction | NotInvariant:
    """(NE - NW)/(NE - SE) of a generator of the integer boundary lattice.

    The integer coloring lattice is projected to the four boundary colors
    and reduced modulo the constant coloring.  When the quotient has rank
    one the ratio is independent of the chosen element and is returned in
    lowest terms, with both infinite values collapsed to inf; otherwise
    NotInvariant carries the rank.
    """
    lattice = color_solve_dihedral(d, 0)
    projections = [lattice.boundary_colors(v) for v in lattice.basis]
    rows = [list(p) for p in projections] + [[1, 1, 1, 1]]
    rank = smith_normal_form(rows).rank
    if rank != 2:
        return NotInvariant(rank=rank - 1)
    for a, b, c, dd in projections:
        da, dd2 = b - a, b - dd
        if (da, dd2) != (0, 0):
            return frac_normalize(da, dd2)
    return NotInvariant(rank=rank - 1)


def alternating_sum_check(colors: tuple[int, int, int, int]) -> bool:
    """NW + SE = NE + SW for boundary colors (a, b, c, d) of a coloring."""
    a, b, c, d = colors
    return a + d == b + c


def fraction_additivity_check(d1: TangleDiagram, d2: TangleDiagram) -> bool:
    """fraction(d1 + d2) = fraction(d1) + fraction(d2) where all defined.

    Infinite fractions follow the degenerate branch: inf plus a finite
    fraction is inf.  Returns True when the law holds or when one of the
    three fractions is not invariant (nothing to check).
    """
    from .diagram import tangle_sum

    f1 = coloring_fraction(d1)
    f2 = coloring_fraction(d2)
    fs = coloring_fraction(tangle_sum(d1, d2))
    if any(isinstance(x, NotInvariant) for x in (f1, f2, fs)):
        return True
    if f1.is_infinite and f2.is_infinite:
        return True
    return fs == frac_add(f1, f2)


# ---------------------------------------------------------------------------
# finite quandle search

def color_search_finite(od: OrientedDiagram, q: FiniteQuandle) -> list[tuple[int, ...]]:
    """All colorings of an oriented diagram by a finite quandle.

    At each crossing the left under-arc, seen along the over-strand
    direction, must equal (right under-arc) * (over-arc).  Backtracking
    with unit propagation: a constraint with two known arcs forces the
    third through the operation or its right inverse, so only a few arcs
    are ever branched on.  The result is deterministic and sorted; it
    always contains the constant colorings.
    """
    d = od.base
    arc_of = arcs(d)
    ncols = (max(arc_of.values()) + 1) if arc_of else 0
    if ncols == 0:
        return []
    constraints = []  # (z_arc, x_arc, y_arc): z = x * y
    for ci, c in enumerate(d.crossings):
        over_in = od.over_entry_slot(ci)
        x_arc = arc_of[c.ports[(over_in + 1) % 4]]
        z_arc = arc_of[c.ports[(over_in + 3) % 4]]
        y_arc = arc_of[c.ports[over_in]]
        constraints.append((z_arc, x_arc, y_arc))
    # right inverse: inv[z][y] = the unique x with x * y = z
    m = q.size
    inv = [[0] * m for _ in range(m)]
    for x in range(m):
        for y in range(m):
            inv[q.op(x, y)][y] = x

    results = []
    color: list[int | None] = [None] * ncols

    def propagate(trail) -> bool:
        changed = True
        while changed:
            changed = False
            for z, x, y in constraints:
                cz, cx, cy = color[z], color[x], color[y]
                if cx is not None and cy is not None:
                    want = q.op(cx, cy)
                    if cz is None:
                        color[z] = want
                        trail.append(z)
                        changed = True
                    elif cz != want:
                        return False
                elif cz is not None and cy is not None:
                    want = inv[cz][cy]
                    if cx is None:
                        color[x] = want
                        trail.append(x)
                        changed = True
        return True

    def search():
        try:
            i = color.index(None)
        except ValueError:
            results.append(tuple(color))
            return
        for v in range(m):
            trail = [i]
            color[i] = v
            if propagate(trail):
                search()
            for j in trail:
                color[j] = None

    search()
    return sorted(results)


def nontrivial_c_colorings_finite(od: OrientedDiagram, q: FiniteQuandle) -> list[tuple[int, ...]]:
    """Colorings using more than one color with all boundary arcs equal."""
    d = od.base
    if not isinstance(d, TangleDiagram):
        raise ValueError("c-colorings are defined for tangles")
    arc_of = arcs(d)
    bnd = [arc_of[d.boundary[lab]] for lab in BOUNDARY_LABELS]
    out = []
    for coloring in color_search_finite(od, q):
        if len({coloring[i] for i in bnd}) == 1 and len(set(coloring)) > 1:
            out.append(coloring)
    return out


# ---------------------------------------------------------------------------
# determinant

def determinant(d: LinkDiagram, drop_row: int = 0, drop_col: int = 0) -> int:
    """Link determinant as a first minor of the dihedral relation matrix.

    The value is independent of which row and column are deleted.  The
    0-crossing unknot has determinant 1; diagrams with extra crossing-free
    loops, or with a component that never passes under, present a split
    picture and get determinant 0.
    """
    k = d.crossing_count
    if k == 0:
        return 1 if d.loops == 1 else 0
    if d.loops > 0:
        return 0
    rows, arc_of = dihedral_relation_matrix(d)
    ncols = (max(arc_of.values()) + 1) if arc_of else 0
    if ncols != k:
        # some component has no undercrossing and lifts off the diagram
        return 0
    if not (0 <= drop_row < k and 0 <= drop_col < ncols):
        raise ValueError("row/column to delete is out of range")
    minor = [[row[j] for j in range(ncols) if j != drop_col]
             for i, row in enumerate(rows) if i != drop_row]
    return abs(integer_determinant(minor))
