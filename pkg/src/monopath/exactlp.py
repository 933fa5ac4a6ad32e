"""Exact rational linear algebra and a small two-phase simplex.

Everything here works on fractions.Fraction. No floating point enters any
decision: feasibility, rank, and sign questions in the rest of the package
are meaningful only if they are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Vec = list[Fraction]
Mat = list[list[Fraction]]

F = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def fvec(xs: Sequence) -> Vec:
    return [Fraction(x) for x in xs]


def fmat(rows: Sequence[Sequence]) -> Mat:
    return [fvec(r) for r in rows]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    assert len(u) == len(v)
    return sum((a * b for a, b in zip(u, v)), ZERO)


def mat_vec(a: Mat, x: Vec) -> Vec:
    return [dot(row, x) for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def identity_matrix(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def det(a: Mat) -> Fraction:
    """Determinant by fraction-preserving Gaussian elimination."""
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        inv = ONE / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return result if sign == 1 else -result


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def nullspace(a: Mat) -> list[Vec]:
    """Basis of {x : a x = 0}, one vector per free column of the rref."""
    if not a:
        return []
    red, pivots = rref(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a: Mat, b: Vec) -> Optional[Vec]:
    """Unique solution of a square system, or None if a is singular."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Two-phase simplex.  max c.x  s.t.  A x <= b,  x free.
# Free variables are split x = u - v; Bland's rule prevents cycling.
# Sizes in this package stay below ~100 rows x ~100 columns, so a dense
# Fraction tableau is fast enough.
# ---------------------------------------------------------------------------

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: Optional[Vec] = None
    value: Optional[Fraction] = None


def _pivot(tab: Mat, basis: list[int], row: int, col: int) -> None:
    inv = ONE / tab[row][col]
    tab[row] = [x * inv for x in tab[row]]
    prow = tab[row]
    for i, trow in enumerate(tab):
        if i != row and trow[col] != 0:
            factor = trow[col]
            tab[i] = [x - factor * y for x, y in zip(trow, prow)]
    basis[row] = col


def _simplex_min(tab: Mat, basis: list[int], ncols: int) -> str:
    """Minimize over tableau in canonical form.

    tab has m constraint rows plus a final objective row holding reduced
    costs; rhs sits in the last column.  Bland: entering = smallest column
    with negative reduced cost, leaving = smallest ratio then smallest
    basis label.
    """
    m = len(tab) - 1
    obj = tab[m]
    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best_row = None
        best_ratio = None
        for i in range(m):
            coeff = tab[i][col]
            if coeff > 0:
                ratio = tab[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = i
        if best_row is None:
            return UNBOUNDED
        _pivot(tab, basis, best_row, col)
        obj = tab[m]


def solve_lp(c: Sequence, a: Sequence[Sequence], b: Sequence, maximize: bool = True) -> LPResult:
    """Exact LP over free variables: optimize c.x subject to A x <= b."""
    cc = fvec(c)
    aa = fmat(a)
    bb = fvec(b)
    m = len(aa)
    n = len(cc)
    assert all(len(row) == n for row in aa) and len(bb) == m

    # Standard form: columns are u_1..u_n, v_1..v_n (x = u - v), s_1..s_m.
    nu, nv, ns = n, n, m
    width = nu + nv + ns
    rows: Mat = []
    for i in range(m):
        row = [ZERO] * width
        for j in range(n):
            row[j] = aa[i][j]
            row[nu + j] = -aa[i][j]
        row[nu + nv + i] = ONE
        row.append(bb[i])
        if row[-1] < 0:
            row = [-x for x in row]
        rows.append(row)

    # Phase 1: artificial variable per row, minimize their sum.
    art0 = width
    tab = []
    basis = []
    for i, row in enumerate(rows):
        full = row[:-1] + [ZERO] * m + [row[-1]]
        full[art0 + i] = ONE
        tab.append(full)
        basis.append(art0 + i)
    obj = [ZERO] * (width + m) + [ZERO]
    for i in range(m):
        obj = [o - x for o, x in zip(obj, tab[i])]
    for i in range(m):
        obj[art0 + i] = ZERO
    tab.append(obj)
    status = _simplex_min(tab, basis, width + m)
    assert status == OPTIMAL  # phase 1 is always bounded below by 0
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # Drive out any artificial variables still basic (at value 0).
    for i in range(m):
        if basis[i] >= art0:
            col = next((j for j in range(width) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)

    # Rows whose basis is still artificial are redundant zero rows; keep them,
    # they can never be chosen as pivot rows for a real column... they can,
    # with ratio 0, which is harmless. Strip artificial columns instead.
    tab = [row[:width] + [row[-1]] for row in tab]

    # Phase 2 objective: minimize -c.x (maximize c.x) or minimize c.x.
    sign = -1 if maximize else 1
    obj = [ZERO] * width + [ZERO]
    for j in range(n):
        obj[j] = sign * cc[j]
        obj[nu + j] = -sign * cc[j]
    tab[-1] = obj
    # Re-canonicalize: zero out reduced costs of basic columns.
    for i in range(m):
        bj = basis[i]
        if bj < width and tab[-1][bj] != 0:
            factor = tab[-1][bj]
            tab[-1] = [x - factor * y for x, y in zip(tab[-1], tab[i])]
    status = _simplex_min(tab, basis, width)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    xs = [ZERO] * width
    for i in range(m):
        if basis[i] < width:
            xs[basis[i]] = tab[i][-1]
    x = [xs[j] - xs[nu + j] for j in range(n)]
    value = dot(cc, x)
    return LPResult(OPTIMAL, x=x, value=value)


def find_feasible(a: Sequence[Sequence], b: Sequence) -> Optional[Vec]:
    """A point of {x : A x <= b} with x free, or None if the system is empty."""
    n = len(a[0]) if a else 0
    res = solve_lp([ZERO] * n, a, b, maximize=True)
    if res.status == INFEASIBLE:
        return None
    assert res.status == OPTIMAL
    return res.x
