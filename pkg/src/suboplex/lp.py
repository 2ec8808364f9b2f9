"""Exact rational linear algebra and a small feasibility simplex.

Everything works on ``fractions.Fraction`` so that sign decisions are exact.
The problems solved here are tiny (tens of variables), so a dense tableau with
Bland's rule is both simple and fast enough.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

Row = Sequence[Fraction | int]


def as_fraction(x: object) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


def row_echelon(rows: Sequence[Row]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    M = [[as_fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Row]) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{y : rows @ y = 0}`` in ``Q^ncols``."""
    R, piv = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        y = [Fraction(0)] * ncols
        y[f] = Fraction(1)
        for r, c in zip(R, piv):
            y[c] = -r[f]
        basis.append(y)
    return basis


def columns(rows: Sequence[Row], cols: Sequence[int]) -> list[list[Fraction]]:
    """Transpose of the column submatrix: one row per selected column."""
    return [[as_fraction(r[c]) for r in rows] for c in cols]


def combine(y: Sequence[Fraction], rows: Sequence[Row]) -> list[Fraction]:
    """Row combination ``y @ rows``."""
    n = len(rows[0]) if rows else 0
    out = [Fraction(0)] * n
    for coef, r in zip(y, rows):
        if coef:
            for j, x in enumerate(r):
                if x:
                    out[j] += coef * x
    return out


def feasible(
    ge_rows: Sequence[Row],
    ge_rhs: Sequence[Fraction | int],
    eq_rows: Sequence[Row] = (),
    eq_rhs: Sequence[Fraction | int] = (),
    nvars: int | None = None,
) -> list[Fraction] | None:
    """A point ``y`` (free variables) with ``G y >= h`` and ``E y = e``, or None."""
    if nvars is None:
        src = list(ge_rows) or list(eq_rows)
        nvars = len(src[0]) if src else 0
    k = nvars
    g = len(ge_rows)
    cons: list[tuple[list[Fraction], Fraction]] = []
    for i, (r, b) in enumerate(zip(ge_rows, ge_rhs)):
        a = [as_fraction(x) for x in r]
        row = a + [-x for x in a] + [Fraction(0)] * g
        row[2 * k + i] = Fraction(-1)
        cons.append((row, as_fraction(b)))
    for r, b in zip(eq_rows, eq_rhs):
        a = [as_fraction(x) for x in r]
        cons.append((a + [-x for x in a] + [Fraction(0)] * g, as_fraction(b)))
    m = len(cons)
    if m == 0:
        return [Fraction(0)] * k
    nz = 2 * k + g
    T: list[list[Fraction]] = []
    for i, (row, b) in enumerate(cons):
        if b < 0:
            row, b = [-x for x in row], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [b])
    basis = [nz + i for i in range(m)]
    width = nz + m
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(nz):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # phase I objective is bounded below by 0
            raise ArithmeticError("unbounded phase I")
        piv = T[leave]
        inv = 1 / piv[enter]
        piv[:] = [x * inv for x in piv]
        for i, row in enumerate(T):
            if i != leave and row[enter] != 0:
                f = row[enter]
                row[:] = [a - f * b for a, b in zip(row, piv)]
        if cost[enter] != 0:
            f = cost[enter]
            cost[:] = [a - f * b for a, b in zip(cost, piv)]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    z = [Fraction(0)] * width
    for i, bv in enumerate(basis):
        z[bv] = T[i][width]
    return [z[j] - z[k + j] for j in range(k)]


def fm_feasible(ge_rows: Sequence[Row], ge_rhs: Sequence[Fraction | int], nvars: int) -> bool:
    """Fourier-Motzkin decision of ``G y >= h``; an oracle independent of the simplex above."""
    rows = [([as_fraction(x) for x in r], as_fraction(b)) for r, b in zip(ge_rows, ge_rhs)]
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for a, b in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, b))
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = ap[k], -an[k]
                rest.append(([cn * x + cp * y for x, y in zip(ap, an)], cn * bp + cp * bn))
        seen = set()
        rows = []
        for a, b in rest:
            key = (tuple(a), b)
            if key not in seen:
                seen.add(key)
                rows.append((a, b))
    return all(b <= 0 for _, b in rows)
