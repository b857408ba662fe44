"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{coordinate index: mpq}`` with no zero entries. The main
tool is :class:`Echelon`, an incrementally built row-echelon basis. Each
stored row may carry a *companion* vector that is transported linearly with
it; this is how the graded map between rings is computed: a row of the
source space is paired with its image in the target, so reducing any vector
against the basis also yields its image.

Large systems (the graded pieces of the verification pipeline reach a few
thousand rows) go through FLINT's exact rational matrices instead; the
helpers at the end of this module convert between the two representations.
"""

from __future__ import annotations

import heapq
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from flint import fmpq, fmpq_mat
from gmpy2 import mpq

Vector = Dict[int, mpq]


def axpy(y: Vector, a, x: Vector) -> None:
    """y += a*x in place."""
    for k, v in x.items():
        s = y.get(k)
        if s is None:
            y[k] = a * v
        else:
            s = s + a * v
            if s:
                y[k] = s
            else:
                del y[k]


def scale(a, x: Vector) -> Vector:
    return {k: a * v for k, v in x.items()} if a else {}


class Echelon:
    """Row-echelon basis of a subspace, with optional companion vectors.

    Each stored row has pivot equal to its smallest index and pivot entry 1.
    """

    def __init__(self):
        self.rows: Dict[int, Vector] = {}
        self.companions: Dict[int, Optional[Vector]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, v: Vector, companion: Optional[Vector] = None, full: bool = True) -> Tuple[Vector, Optional[Vector]]:
        """Return (remainder, transported companion) of v modulo the stored rows.

        With ``full=False`` the reduction stops at the first non-pivot entry,
        which is enough to decide membership.
        """
        v = dict(v)
        comp = dict(companion) if companion is not None else None
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if c is None:
                continue
            row = self.rows.get(k)
            if row is None:
                if not full:
                    break
                continue
            for j in row:
                if j not in v and j not in seen:
                    heapq.heappush(heap, j)
            axpy(v, -c, row)
            if comp is not None:
                rc = self.companions[k]
                if rc:
                    axpy(comp, -c, rc)
        return v, comp

    def add(self, v: Vector, companion: Optional[Vector] = None) -> Tuple[bool, Optional[Vector]]:
        """Insert v. Returns (independent, companion-of-remainder).

        When v is dependent on the stored rows the returned companion is the
        image of the zero vector under the transported relation; it must be
        zero whenever the companion map is well defined.
        """
        r, comp = self.reduce(v, companion)
        if not r:
            return False, comp
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = scale(inv, r)
        self.companions[p] = scale(inv, comp) if comp is not None else None
        return True, comp

    def contains(self, v: Vector) -> bool:
        r, _ = self.reduce(v, full=False)
        return not r

    def express(self, v: Vector) -> Vector:
        """Companion image of a vector lying in the span. Raises if v is outside."""
        r, comp = self.reduce(v, {})
        if r:
            raise ValueError("vector is not in the span")
        # reduce() subtracts the transported rows, so comp holds minus the image
        return scale(-1, comp)


def rank(vectors: Iterable[Vector]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def nullspace(columns: Sequence[Vector]) -> List[Vector]:
    """Basis of {x : sum_k x_k columns[k] = 0}, as sparse vectors indexed by column."""
    e = Echelon()
    out = []
    for k, col in enumerate(columns):
        independent, comp = e.add(col, {k: mpq(1)})
        if not independent:
            out.append(comp)
    return out


def mat_vec(columns: Sequence[Vector], x: Vector) -> Vector:
    out: Vector = {}
    for k, a in x.items():
        axpy(out, a, columns[k])
    return out


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination (rows kept primitive)."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            if a:
                row = [p * x - a * y for x, y in zip(m[i], m[r])]
                g = gcd(*row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# dense exact matrices via FLINT
# ---------------------------------------------------------------------------


def to_matrix(rows: Sequence[Vector], ncols: int) -> fmpq_mat:
    m = fmpq_mat(len(rows), ncols)
    for i, row in enumerate(rows):
        for j, v in row.items():
            m[i, j] = fmpq(int(v.numerator), int(v.denominator))
    return m


def from_row(row) -> Vector:
    return {j: mpq(int(x.p), int(x.q)) for j, x in enumerate(row) if x != 0}


def matrix_rank(rows: Sequence[Vector], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return to_matrix(rows, ncols).rank()


def rref_rows(rows: Sequence[Vector], ncols: int) -> List[Vector]:
    """Nonzero rows of the reduced row-echelon form, in pivot order."""
    if not rows or not ncols:
        return []
    red, r = to_matrix(rows, ncols).rref()
    table = red.table()
    return [from_row(table[i]) for i in range(r)]


def kernel_basis(columns: Sequence[Vector], nrows: int) -> List[Vector]:
    """Basis of {x : sum_k x_k columns[k] = 0}, one vector per free column."""
    ncols = len(columns)
    transposed: List[Vector] = [{} for _ in range(nrows)]
    for k, col in enumerate(columns):
        for r, v in col.items():
            transposed[r][k] = v
    red = rref_rows([row for row in transposed if row], ncols)
    pivots = [min(row) for row in red]
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v: Vector = {f: mpq(1)}
        for row, p in zip(red, pivots):
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out
