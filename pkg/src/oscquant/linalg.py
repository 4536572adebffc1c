"""Tiny exact dense linear algebra over a coefficient field.

Just enough for the invariant-element solver and relation extraction:
reduced row echelon form and nullspace bases, with no pivoting heuristics
beyond "first structurally nonzero entry" (exact arithmetic needs none).
"""

from __future__ import annotations

from .coeffs import CoefficientField


def rref(rows, field: CoefficientField):
    """Reduced row echelon form; returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][col].is_zero), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.one / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def nullspace(rows, ncols: int, field: CoefficientField):
    """Basis of the solution space of (rows) · v = 0, as coefficient vectors."""
    if not rows:
        return [
            [field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)
        ]
    reduced, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for r, p in zip(reduced, pivots):
            vec[p] = -r[f]
        basis.append(vec)
    return basis
