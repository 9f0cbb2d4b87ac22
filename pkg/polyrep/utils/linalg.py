"""Exact linear algebra over scalar fields."""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from polyrep.base.scalar import Scalar, ScalarField
from polyrep.errors import NotInSpan

logger = logging.getLogger(__name__)


def row_echelon(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an object array of scalars.

    Parameters
    ----------
    matrix : numpy.ndarray
        Two-dimensional object array of :class:`Scalar`.

    Returns
    -------
    numpy.ndarray
        Reduced copy of ``matrix``.
    list of int
        Pivot column of every nonzero row, in row order.
    """
    reduced = np.array(matrix, dtype=object, copy=True)
    n_rows, n_cols = reduced.shape
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        pivot = next((i for i in range(row, n_rows) if reduced[i, col]), None)
        if pivot is None:
            continue
        if pivot != row:
            reduced[[row, pivot]] = reduced[[pivot, row]]
        reduced[row] = reduced[row] * reduced[row, col].inverse()
        for i in range(n_rows):
            if i != row and reduced[i, col]:
                reduced[i] = reduced[i] - reduced[row] * reduced[i, col]
        pivots.append(col)
        row += 1
    logger.debug("row echelon of %dx%d has rank %d", n_rows, n_cols, len(pivots))
    return reduced, pivots


def solve(
    rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], field: ScalarField
) -> list[Scalar]:
    """Solve ``rows @ c = rhs`` exactly.

    Free unknowns are set to zero.

    Raises
    ------
    NotInSpan
        If the system is inconsistent; carries the offending reduced rows.
    """
    n_unknowns = len(rows[0]) if rows else 0
    if not rows:
        return []
    augmented = np.empty((len(rows), n_unknowns + 1), dtype=object)
    for i, (row, value) in enumerate(zip(rows, rhs)):
        augmented[i, :n_unknowns] = [field.coerce(c) for c in row]
        augmented[i, n_unknowns] = field.coerce(value)
    reduced, pivots = row_echelon(augmented)
    if n_unknowns in pivots:
        bad = pivots.index(n_unknowns)
        raise NotInSpan(reduced[bad, n_unknowns])
    if len(pivots) < n_unknowns:
        logger.warning(
            "basis is dependent: rank %d for %d unknowns", len(pivots), n_unknowns
        )
    solution = [field.zero] * n_unknowns
    for i, col in enumerate(pivots):
        solution[col] = reduced[i, n_unknowns]
    return solution


def rank(rows: Sequence[Sequence[Scalar]], field: ScalarField) -> int:
    if not rows:
        return 0
    matrix = np.array([[field.coerce(c) for c in row] for row in rows], dtype=object)
    return len(row_echelon(matrix)[1])
