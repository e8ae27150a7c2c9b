"""Smith normal form over arbitrary-precision integers.

One audited kernel with three consumers in :mod:`tanglekit.quandle`:
integer coloring lattices, all-moduli monochromaticity reports, and link
determinants.  Matrices are lists of lists of Python ints; sizes here are
tiny (tens of rows), so the classic row/column reduction with a smallest
pivot heuristic is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass
class SmithForm:
    """d = u @ a @ v with u, v unimodular and d diagonal.

    ``factors`` are the nonzero diagonal entries d_1 | d_2 | ... | d_r
    (the invariant factors); ``rank`` is r.
    """

    factors: list[int]
    rank: int
    u: list[list[int]]
    v: list[list[int]]
    rows: int
    cols: int

    def kernel_basis(self) -> list[list[int]]:
        """Basis of the integer kernel of a: the last cols - rank columns of v."""
        return [[self.v[i][j] for i in range(self.cols)] for j in range(self.rank, self.cols)]

    def solutions_mod(self, n: int) -> int:
        """Number of solutions of a x = 0 (mod n), n >= 1."""
        if n < 1:
            raise ValueError("modulus must be >= 1")
        count = n ** (self.cols - self.rank)
        import math

        for d in self.factors:
            count *= math.gcd(d, n)
        return count

    def kernel_basis_mod(self, n: int) -> list[list[int]]:
        """Generators of the solution space of a x = 0 (mod n).

        Free columns of v enter as-is; a torsion column with invariant
        factor d contributes (n/gcd(d, n)) times the column when
        gcd(d, n) > 1.
        """
        import math

        gens = []
        for j, d in enumerate(self.factors):
            g = math.gcd(d, n)
            if g > 1:
                scale = n // g
                gens.append([(scale * self.v[i][j]) % n for i in range(self.cols)])
        for col in self.kernel_basis():
            gens.append([x % n for x in col])
        return gens


def smith_normal_form(a: list[list[int]]) -> SmithForm:
    """Compute the Smith normal form of an integer matrix.

    Returns invariant factors normalized positive with d_1 | d_2 | ... and
    the unimodular transforms.  Handles empty matrices.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(r) for r in a]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for r in m:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # Locate the nonzero entry of smallest magnitude in the trailing block.
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # Clear the pivot row and column; restart if a smaller remainder shows up.
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t] != 0:
                add_row(t, i, -(m[i][t] // m[t][t]))
                if m[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j] != 0:
                add_col(t, j, -(m[t][j] // m[t][t]))
                if m[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # Pivot must divide every remaining entry for the factor chain.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if m[t][t] < 0:
            negate_row(t)
        t += 1

    factors = [m[i][i] for i in range(limit) if m[i][i] != 0]
    return SmithForm(factors=factors, rank=len(factors), u=u, v=v, rows=rows, cols=cols)


def integer_determinant(a: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
