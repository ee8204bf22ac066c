"""Readers for the simulator CLI's file schemas.

Evolution records: CSV with header z, rho_<a>_<b>_re, rho_<a>_<b>_im in
basis-index order. Coherence series: CSV with header z, c_norm,
c_rel_entropy. Correlation matrices: JSON {"n": int, "g2": row-major
floats} or a bare n x n CSV.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import MissingFile, SchemaMismatch


def _open_rows(path) -> list[list[str]]:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise SchemaMismatch(f"{path}: empty file")
    return rows


def load_record(path):
    """Evolution CSV -> (z, complex matrices (n_samples, d, d), labels)."""
    rows = _open_rows(path)
    header, data = rows[0], rows[1:]
    if not data or header[:1] != ["z"] or len(header) < 3 or len(header) % 2 == 0:
        raise SchemaMismatch(f"{path}: not an evolution record")
    n_elem = (len(header) - 1) // 2
    dim = math.isqrt(n_elem)
    if dim * dim != n_elem:
        raise SchemaMismatch(f"{path}: {n_elem} elements is not a square matrix")
    for k in range(n_elem):
        if not (header[1 + 2 * k].endswith("_re") and header[2 + 2 * k].endswith("_im")):
            raise SchemaMismatch(f"{path}: unexpected column {header[1 + 2 * k]!r}")
    try:
        z = np.array([float(r[0]) for r in data])
        flat = np.array([[float(x) for x in r[1:]] for r in data])
    except (ValueError, IndexError) as exc:
        raise SchemaMismatch(f"{path}: {exc}") from exc
    if flat.shape[1] != 2 * n_elem:
        raise SchemaMismatch(f"{path}: ragged rows")
    mats = (flat[:, 0::2] + 1j * flat[:, 1::2]).reshape(-1, dim, dim)
    labels = [header[1 + 2 * k][: -len("_re")] for k in range(n_elem)]
    return z, mats, labels


def load_coherence(path):
    """Coherence CSV -> (z, c_norm, c_rel_entropy)."""
    rows = _open_rows(path)
    if rows[0] != ["z", "c_norm", "c_rel_entropy"] or len(rows) < 2:
        raise SchemaMismatch(f"{path}: not a coherence series")
    try:
        body = np.array([[float(x) for x in r] for r in rows[1:]])
    except ValueError as exc:
        raise SchemaMismatch(f"{path}: {exc}") from exc
    return body[:, 0], body[:, 1], body[:, 2]


def load_g2(path):
    """Correlation matrix from JSON ({"n", "g2"}) or a square CSV."""
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    if path.suffix == ".json":
        try:
            doc = json.loads(path.read_text())
            n = int(doc["n"])
            g2 = np.array(doc["g2"], dtype=float).reshape(n, n)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise SchemaMismatch(f"{path}: {exc}") from exc
        return g2
    rows = _open_rows(path)
    try:
        g2 = np.array([[float(x) for x in r] for r in rows])
    except ValueError as exc:
        raise SchemaMismatch(f"{path}: {exc}") from exc
    if g2.ndim != 2 or g2.shape[0] != g2.shape[1]:
        raise SchemaMismatch(f"{path}: expected a square matrix, got {g2.shape}")
    return g2


def snapshot_at(z, mats, z_request):
    """Matrix at the sample closest to z_request (defaults to the last)."""
    if z_request is None:
        return z[-1], mats[-1]
    i = int(np.argmin(np.abs(z - z_request)))
    if abs(z[i] - z_request) > 1e-6:
        raise SchemaMismatch(f"z={z_request} not on the sample grid")
    return z[i], mats[i]
