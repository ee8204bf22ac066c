"""Render figure specs into deterministic PNG/SVG images.

Kinds:
    matrix_heatmap  |rho| of one record snapshot, color scale 0..max
    matrix_bars     same data as a 3D bar field
    line_series     populations / coherence magnitudes / measure series
    g2_panel        row of joint-detection matrices on a shared scale

All inputs are validated before any drawing starts, so a failed render
never leaves a partial output file.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import SchemaMismatch
from .loaders import load_coherence, load_g2, load_record, snapshot_at
from .spec import FigureSpec

PNG_METADATA = {"Software": "figrender"}


def _save(fig, output):
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    kwargs = {"dpi": 150}
    if str(output).endswith(".png"):
        kwargs["metadata"] = PNG_METADATA
    fig.savefig(output, **kwargs)
    plt.close(fig)


def _heatmap(spec: FigureSpec):
    z, mats, _ = load_record(spec.inputs[0])
    zk, mat = snapshot_at(z, mats, spec.z)
    data = np.abs(mat)
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    im = ax.imshow(data, cmap="inferno", vmin=0.0, vmax=data.max(),
                   interpolation="nearest")
    ax.set_title(spec.labels[0] if spec.labels else f"|rho| at z = {zk:g} cm")
    ax.set_xlabel("column index")
    ax.set_ylabel("row index")
    fig.colorbar(im, ax=ax, label="|element|")
    return fig


def _bars(spec: FigureSpec):
    z, mats, _ = load_record(spec.inputs[0])
    zk, mat = snapshot_at(z, mats, spec.z)
    data = np.abs(mat)
    d = data.shape[0]
    fig = plt.figure(figsize=(6.0, 5.0))
    ax = fig.add_subplot(projection="3d")
    xx, yy = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    ax.bar3d(xx.ravel(), yy.ravel(), np.zeros(d * d), 0.8, 0.8,
             data.ravel(), shade=True, color="#d95f02")
    ax.set_zlim(0.0, float(data.max()) if data.max() > 0 else 1.0)
    ax.set_title(spec.labels[0] if spec.labels else f"|rho| at z = {zk:g} cm")
    return fig


def _series_populations(ax, path, labels):
    z, mats, _ = load_record(path)
    d = mats.shape[1]
    pops = mats[:, np.arange(d), np.arange(d)].real
    for k in range(d):
        name = labels[k] if k < len(labels) else f"site {k + 1}"
        ax.plot(z, pops[:, k], label=name)
    ax.set_ylabel("population")
    ax.legend(loc="upper right", fontsize=8)


def _series_coherences(ax, path, labels):
    z, mats, _ = load_record(path)
    d = mats.shape[1]
    k = 0
    for a in range(d):
        for b in range(a + 1, d):
            name = labels[k] if k < len(labels) else f"|rho_{a + 1}{b + 1}|"
            ax.plot(z, np.abs(mats[:, a, b]), label=name)
            k += 1
    ax.set_ylabel("|coherence|")
    if k <= 8:
        ax.legend(loc="upper right", fontsize=8)


def _line_series(spec: FigureSpec):
    if spec.quantity == "measures":
        fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(5.6, 5.2))
        for i, path in enumerate(spec.inputs):
            z, c_norm, c_re = load_coherence(path)
            name = spec.labels[i] if i < len(spec.labels) else Path(path).stem
            top.plot(z, c_re, label=name)
            bottom.plot(z, c_norm, label=name)
        top.set_ylabel("relative entropy of coherence")
        bottom.set_ylabel("coherence norm")
        bottom.set_xlabel("z (cm)")
        top.legend(fontsize=8)
        return fig
    fig, ax = plt.subplots(figsize=(5.6, 4.0))
    for path in spec.inputs:
        if spec.quantity == "populations":
            _series_populations(ax, path, spec.labels)
        else:
            _series_coherences(ax, path, spec.labels)
    ax.set_xlabel("z (cm)")
    return fig


def _g2_panel(spec: FigureSpec):
    mats = [load_g2(p) for p in spec.inputs]
    vmax = max(float(m.max()) for m in mats)
    if vmax <= 0.0:
        raise SchemaMismatch("all correlation matrices are zero")
    fig, axes = plt.subplots(1, len(mats), figsize=(3.0 * len(mats) + 1.2, 3.2),
                             squeeze=False)
    for i, (ax, m) in enumerate(zip(axes[0], mats)):
        im = ax.imshow(m, cmap="viridis", vmin=0.0, vmax=vmax,
                       interpolation="nearest")
        ax.set_title(spec.labels[i] if i < len(spec.labels) else f"panel {i + 1}",
                     fontsize=9)
        ax.set_xticks(range(m.shape[0]))
        ax.set_yticks(range(m.shape[0]))
    fig.colorbar(im, ax=axes[0].tolist(), label="G2", shrink=0.85)
    return fig


_RENDERERS = {
    "matrix_heatmap": _heatmap,
    "matrix_bars": _bars,
    "line_series": _line_series,
    "g2_panel": _g2_panel,
}


def render(spec: FigureSpec) -> Path:
    """Render one spec; returns the output path."""
    fig = _RENDERERS[spec.kind](spec)
    _save(fig, spec.output)
    return Path(spec.output)
