"""JSON/CSV serialization of reports, and state files."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from . import __version__
from .census import CensusReport

DISPLAY_DIGITS = 5


def _fmt(x: float, digits: int) -> float:
    return float(round(x, digits)) + 0.0  # drop negative zero


def census_to_dict(report: CensusReport, digits: int = DISPLAY_DIGITS, meta: dict | None = None) -> dict:
    doc = {
        "dim": report.dimension,
        "mub_source": report.mub_source,
        "classes": [
            {
                "spectrum": [_fmt(x, digits) for x in (c.eigenvalues or c.spectrum)],
                "count": c.count,
                "representative": list(c.representative) if c.representative is not None else None,
            }
            for c in report.classes
        ],
        "lambda_min": report.lambda_min_global,
        "lambda_max": report.lambda_max_global,
        "argmin": list(report.argmin),
        "argmax": list(report.argmax),
        "total_operators": report.total_operators,
        "elapsed_seconds": report.elapsed_seconds,
        "workers": report.workers,
        "version": __version__,
    }
    if meta:
        doc.update(meta)
    return doc


def census_to_csv(report: CensusReport, digits: int = DISPLAY_DIGITS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = report.dimension
    w.writerow(["count"] + [f"lambda_{i}" for i in range(d)] + ["representative"])
    for c in report.classes:
        rep = "" if c.representative is None else " ".join(map(str, c.representative))
        w.writerow([c.count] + [f"{_fmt(x, digits):.{digits}f}" for x in (c.eigenvalues or c.spectrum)] + [rep])
    return buf.getvalue()


def dwf_to_csv(w: np.ndarray, d: int, digits: int = 12) -> str:
    """d x d grid: row = index of x, column = index of y (point index d*x + y)."""
    grid = np.asarray(w, dtype=float).reshape(d, d)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in grid:
        writer.writerow([f"{_fmt(x, digits):.{digits}f}" for x in row])
    return buf.getvalue()


def _complex_array(raw) -> np.ndarray:
    a = np.asarray(raw, dtype=float)
    if a.shape[-1] != 2:
        raise ValueError("complex entries must be [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def state_from_json(doc: dict) -> np.ndarray:
    """Density matrix from {vector: [[re, im], ...]} or {density: [[[re, im], ...], ...]}."""
    if "vector" in doc:
        psi = _complex_array(doc["vector"])
        if psi.ndim != 1:
            raise ValueError("vector must be a list of [re, im] pairs")
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValueError("zero state vector")
        psi = psi / norm
        return np.outer(psi, psi.conj())
    if "density" in doc:
        rho = _complex_array(doc["density"])
        if rho.ndim != 2:
            raise ValueError("density must be a matrix of [re, im] pairs")
        return rho
    raise ValueError("state file needs a 'vector' or 'density' field")


def state_to_json(rho: np.ndarray) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"density": [[[float(z.real), float(z.imag)] for z in row] for row in rho]}


def load_state(path) -> np.ndarray:
    return state_from_json(json.loads(Path(path).read_text()))
