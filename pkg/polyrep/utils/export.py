"""Exports of action bands, state combinations and reports."""
from __future__ import annotations

import json
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd
import scipy.sparse as sp

from polyrep.base.module import ActionBand, StateCombo, StateIndex

if TYPE_CHECKING:
    from polyrep.report.findings import Report


def index_label(idx: StateIndex) -> str:
    return ",".join(str(i) for i in idx)


def _axis(band: ActionBand) -> list[StateIndex]:
    # rows and columns share one sorted axis so that the band is square
    return sorted(set(band.rows) | set(band.columns))


def band_array(band: ActionBand) -> tuple[np.ndarray, list[StateIndex]]:
    """Dense object array of exact entries over a common sorted axis.

    Returns
    -------
    numpy.ndarray
        Square array; entry ``[i, j]`` is the coefficient of ``axis[i]`` in the
        image of ``axis[j]``, or ``0``.
    list of tuple of int
        The axis.
    """
    axis = _axis(band)
    position = {idx: i for i, idx in enumerate(axis)}
    array = np.zeros((len(axis), len(axis)), dtype=object)
    for (row, col), value in band.entries.items():
        array[position[row], position[col]] = value
    return array, axis


def band_pattern(band: ActionBand) -> sp.csr_matrix:
    """Sparsity pattern of the band on the axis of :func:`band_array`."""
    axis = _axis(band)
    position = {idx: i for i, idx in enumerate(axis)}
    rows = [position[row] for row, _ in band.entries]
    cols = [position[col] for _, col in band.entries]
    data = np.ones(len(rows), dtype=np.int8)
    return sp.coo_matrix((data, (rows, cols)), shape=(len(axis), len(axis))).tocsr()


def bandwidth(band: ActionBand) -> tuple[int, int]:
    """``(lower, upper)`` bandwidth of the pattern."""
    rows, cols = band_pattern(band).nonzero()
    if not len(rows):
        return 0, 0
    offsets = cols - rows
    return int(max(0, -offsets.min())), int(max(0, offsets.max()))


def band_frame(band: ActionBand) -> pd.DataFrame:
    """One row per nonzero entry: ``row, column, value``."""
    records = [
        {"row": index_label(row), "column": index_label(col), "value": str(value)}
        for (row, col), value in sorted(band.entries.items())
    ]
    return pd.DataFrame(records, columns=["row", "column", "value"])


def combo_frame(combo: StateCombo) -> pd.DataFrame:
    records = [
        {"index": index_label(idx), "coefficient": str(combo.terms[idx])}
        for idx in sorted(combo.terms)
    ]
    return pd.DataFrame(records, columns=["index", "coefficient"])


def band_dict(band: ActionBand) -> dict:
    lower, upper = bandwidth(band)
    return {
        "operator": band.operator,
        "columns": [index_label(c) for c in band.columns],
        "bandwidth": {"lower": lower, "upper": upper},
        "entries": band_frame(band).to_dict(orient="records"),
    }


def dumps(payload: object) -> str:
    """Deterministic JSON text."""
    return json.dumps(payload, indent=2, sort_keys=True)


def findings_frame(report: "Report") -> pd.DataFrame:
    """One row per check of every finding, in report order.

    A finding without checks still gets one row with an empty ``index``.
    """
    columns = ["claim_ref", "suite", "algebra", "finding", "index", "verdict", "engine", "reference"]
    records = []
    for finding in report.findings:
        checks = finding.checks or [None]
        for check in checks:
            records.append(
                {
                    "claim_ref": finding.claim_ref,
                    "suite": finding.suite,
                    "algebra": finding.algebra,
                    "finding": finding.verdict,
                    "index": index_label(check.index) if check else "",
                    "verdict": check.verdict if check else finding.verdict,
                    "engine": check.engine if check else finding.engine,
                    "reference": check.reference if check else finding.reference,
                }
            )
    return pd.DataFrame(records, columns=columns)
