"""CSV/JSON schemas for records, correlation matrices, and reports.

Floats are written with repr (shortest round-trip form), so identical
numeric results serialize to identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .analysis import CoherenceSeries
from .density import PAIR_BASIS
from .engine import CorrelationMatrix, EvolutionRecord


def _fmt(x: float) -> str:
    return repr(float(x))


def element_labels(dim: int, basis_tag: str) -> list[str]:
    """Column labels in basis-index order, 1-based site numbering."""
    if basis_tag == PAIR_BASIS:
        n = int(round(np.sqrt(dim)))
        pair = [f"{p + 1}{q + 1}" for p in range(n) for q in range(n)]
        return [f"rho_{ra}_{rb}" for ra in pair for rb in pair]
    return [f"rho_{a + 1}_{b + 1}" for a in range(dim) for b in range(dim)]


def write_record_csv(record: EvolutionRecord, path) -> None:
    """One row per sample: z, then Re/Im of every matrix element."""
    labels = element_labels(record.snapshots[0].dim, record.basis_tag)
    header = ["z"]
    for lab in labels:
        header += [f"{lab}_re", f"{lab}_im"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for zk, snap in zip(record.z_grid, record.snapshots):
            flat = snap.entries.reshape(-1)
            row = [_fmt(zk)]
            for v in flat:
                row += [_fmt(v.real), _fmt(v.imag)]
            w.writerow(row)


def read_record_csv(path):
    """Inverse of write_record_csv: returns (z, matrices, labels)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    n_elem = (len(header) - 1) // 2
    dim = int(round(np.sqrt(n_elem)))
    z = np.array([float(r[0]) for r in data])
    mats = np.empty((len(data), dim, dim), dtype=complex)
    for i, r in enumerate(data):
        vals = np.array([float(x) for x in r[1:]])
        mats[i] = (vals[0::2] + 1j * vals[1::2]).reshape(dim, dim)
    labels = [header[1 + 2 * k][: -len("_re")] for k in range(n_elem)]
    return z, mats, labels


def write_g2_csv(cm: CorrelationMatrix, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in cm.g2:
            w.writerow([_fmt(v) for v in row])


def write_g2_json(cm: CorrelationMatrix, path) -> None:
    doc = {"n": cm.n, "g2": [float(v) for v in cm.g2.reshape(-1)]}
    Path(path).write_text(json.dumps(doc) + "\n")


def read_g2_json(path) -> CorrelationMatrix:
    doc = json.loads(Path(path).read_text())
    n = int(doc["n"])
    return CorrelationMatrix(np.array(doc["g2"], dtype=float).reshape(n, n))


def write_coherence_csv(series: CoherenceSeries, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["z", "c_norm", "c_rel_entropy"])
        for zk, cn, cre in zip(series.z_grid, series.c_norm, series.c_rel_entropy):
            w.writerow([_fmt(zk), _fmt(cn), _fmt(cre)])


def write_dfs_report(report: dict, path) -> None:
    Path(path).write_text(json.dumps(report, indent=1) + "\n")


def write_json(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
