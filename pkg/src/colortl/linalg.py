"""Sparse exact linear algebra over a coefficient field.

Rows are dicts mapping column index to a nonzero ring element.  Elimination
keeps a reduced echelon set of pivot rows, so nullspace vectors read off
directly: one basis vector per free column, free entry normalized to 1.
Everything is exact; there is no pivoting for magnitude, only for sparsity.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .rings import RingElement, RingSpec

Row = dict[int, RingElement]


def _axpy(target: Row, c: RingElement, row: Mapping[int, RingElement]):
    """target -= c * row, dropping entries that cancel."""
    for col, v in row.items():
        cur = target.get(col)
        new = (cur - c * v) if cur is not None else -(c * v)
        if new.is_zero():
            target.pop(col, None)
        else:
            target[col] = new


def rref(rows: Sequence[Mapping[int, RingElement]], ring: RingSpec) -> dict[int, Row]:
    """Reduced echelon form of the row space; returns {pivot column: row}.

    Each returned row has coefficient 1 at its pivot column and zeros at all
    other pivot columns.
    """
    if not ring.is_field:
        raise ValueError("elimination needs a coefficient field")
    pivots: dict[int, Row] = {}
    for incoming in sorted(rows, key=len):
        row: Row = {c: v for c, v in incoming.items() if not v.is_zero()}
        for col in sorted(row):
            if col in pivots and col in row:
                _axpy(row, row[col], pivots[col])
        if not row:
            continue
        p = min(row)
        inv = row[p].inverse()
        row = {c: inv * v for c, v in row.items()}
        row[p] = ring.one
        for other in pivots.values():
            if p in other:
                _axpy(other, other[p], row)
        pivots[p] = row
    return pivots


def nullspace(
    rows: Sequence[Mapping[int, RingElement]], ncols: int, ring: RingSpec
) -> list[Row]:
    """Basis of {v : A v = 0} for the sparse matrix A given by ``rows``.

    One vector per free column, in increasing column order, with the free
    entry set to 1.
    """
    pivots = rref(rows, ring)
    basis: list[Row] = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec: Row = {free: ring.one}
        for p, prow in pivots.items():
            c = prow.get(free)
            if c is not None and not c.is_zero():
                vec[p] = -c
        basis.append(vec)
    return basis
