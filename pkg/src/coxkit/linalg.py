"""Gaussian elimination over a FieldContext (exact)."""

from __future__ import annotations

from typing import Sequence

from coxkit.numberfield import FieldContext, FieldElem

Matrix = list[list[FieldElem]]


def _copy(rows: Sequence[Sequence], ctx: FieldContext) -> Matrix:
    return [[ctx(x) for x in row] for row in rows]


def row_echelon(rows: Sequence[Sequence], ctx: FieldContext) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _copy(rows, ctx)
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], ctx: FieldContext) -> int:
    return len(row_echelon(rows, ctx)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, ctx: FieldContext) -> Matrix:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[ctx.one if i == j else ctx.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_echelon(rows, ctx)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero] * ncols
        v[f] = ctx.one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence], target: Sequence, ctx: FieldContext):
    """Coefficients x with sum_j x_j columns[j] = target, or None if inconsistent.

    The columns are assumed linearly independent.
    """
    n = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, pivots = row_echelon(aug, ctx)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("columns are linearly dependent")
    return [red[i][k] for i in range(k)]


def inverse(rows: Sequence[Sequence], ctx: FieldContext) -> Matrix:
    n = len(rows)
    aug = [list(row) + [ctx.one if i == j else ctx.zero for j in range(n)] for i, row in enumerate(rows)]
    red, pivots = row_echelon(aug, ctx)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
