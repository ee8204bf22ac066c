"""Figure specs: what to draw, from which files, to which image."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MissingFile, SchemaMismatch

KINDS = ("matrix_heatmap", "matrix_bars", "line_series", "g2_panel")
QUANTITIES = ("populations", "coherences", "measures")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple
    output: str
    labels: tuple = field(default_factory=tuple)
    z: float | None = None              # snapshot position for matrix kinds
    quantity: str = "populations"       # series selector for line_series

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaMismatch(f"unknown kind {self.kind!r}; choose from {KINDS}")
        if not self.inputs:
            raise SchemaMismatch("spec needs at least one input file")
        if self.quantity not in QUANTITIES:
            raise SchemaMismatch(f"unknown quantity {self.quantity!r}")
        for p in self.inputs:
            if not Path(p).exists():
                raise MissingFile(str(p))


def load_spec(path) -> FigureSpec:
    path = Path(path)
    if not path.exists():
        raise MissingFile(str(path))
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaMismatch(f"{path}: {exc}") from exc
    if not isinstance(doc, dict) or "kind" not in doc or "output" not in doc:
        raise SchemaMismatch(f"{path}: spec needs 'kind', 'inputs', 'output'")
    inputs = doc.get("inputs", [])
    if isinstance(inputs, str):
        inputs = [inputs]
    quantity = doc.get("quantity")
    if quantity is None:
        # coherence series files render as measure panels by default
        quantity = "measures" if all(str(p).endswith("coherence.csv") for p in inputs) \
            else "populations"
    return FigureSpec(kind=doc["kind"], inputs=tuple(str(p) for p in inputs),
                      output=str(doc["output"]), labels=tuple(doc.get("labels", [])),
                      z=doc.get("z"), quantity=quantity)
