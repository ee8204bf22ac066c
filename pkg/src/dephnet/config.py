"""Experiment configuration: parsing, validation, and initial-state factory.

Configs are single JSON documents. Site indices in configs are 1-based to
match the usual site labeling; everything internal is 0-based.
"""

from __future__ import annotations

import copy
import json
from pathlib import Path

import numpy as np

from .density import DensityMatrix, SITE_BASIS, pure_site_state
from .errors import ConfigError
from .network import (PIECEWISE_SEGMENTS, WHITE_NOISE_WIENER, Network,
                      build_network, reference_trimer)
from .states import (BOSON, DISTINGUISHABLE, FERMION, TwoParticleState,
                     classically_correlated_mix, distinguishable_incoherent,
                     entangled_nn, explicit_state, separable_pair)

MODES = ("single", "two", "oracle_single", "oracle_two", "analyze", "dfs")

DEFAULTS = {
    "mode": "single",
    "z_max": 12.0,
    "dz": 0.001,
    "sample_every": 100,
    "dephasing_scale": 1.0,
    "steady_tol": 1e-4,
    "output_dir": "out",
    "oracle": {
        "M": 2000,
        "seed": 2024,
        "model": PIECEWISE_SEGMENTS,
        "segment_length": 1.0,
        "step": 0.001,
        "grid_step": 1.0,
        "threads": 1,
    },
}


def load_config(doc_or_path) -> dict:
    """Load and validate a config; returns the fully resolved dict."""
    if isinstance(doc_or_path, (str, Path)):
        try:
            doc = json.loads(Path(doc_or_path).read_text())
        except FileNotFoundError as exc:
            raise ConfigError("config", f"file not found: {doc_or_path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON: {exc}") from exc
    else:
        doc = copy.deepcopy(doc_or_path)
    if not isinstance(doc, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return validate_config(doc)


def validate_config(doc: dict) -> dict:
    cfg = copy.deepcopy(DEFAULTS)
    oracle = cfg.pop("oracle")
    cfg.update({k: v for k, v in doc.items() if k != "oracle"})
    oracle.update(doc.get("oracle") or {})
    cfg["oracle"] = oracle

    if "network" not in cfg:
        raise ConfigError("network", "missing")
    if cfg["mode"] not in MODES:
        raise ConfigError("mode", f"must be one of {MODES}, got {cfg['mode']!r}")
    if cfg["mode"] != "dfs" and cfg["mode"] != "analyze" and "initial_state" not in cfg:
        raise ConfigError("initial_state", "missing")
    for key in ("z_max", "dz", "dephasing_scale", "steady_tol"):
        try:
            cfg[key] = float(cfg[key])
        except (TypeError, ValueError):
            raise ConfigError(key, f"must be a number, got {cfg[key]!r}")
    if cfg["dz"] <= 0:
        raise ConfigError("dz", "must be positive")
    if cfg["z_max"] < 0:
        raise ConfigError("z_max", "must be non-negative")
    if cfg["dephasing_scale"] <= 0:
        raise ConfigError("dephasing_scale", "must be positive")
    cfg["sample_every"] = int(cfg["sample_every"])
    if cfg["sample_every"] < 1:
        raise ConfigError("sample_every", "must be a positive integer")
    if cfg["oracle"]["model"] not in (PIECEWISE_SEGMENTS, WHITE_NOISE_WIENER):
        raise ConfigError("oracle.model", f"unknown model {cfg['oracle']['model']!r}")
    cfg["oracle"]["M"] = int(cfg["oracle"]["M"])
    if cfg["oracle"]["M"] < 1:
        raise ConfigError("oracle.M", "must be >= 1")
    if cfg["mode"] == "analyze" and "input_record" not in cfg:
        raise ConfigError("input_record", "missing (required by analyze mode)")
    return cfg


def network_from_config(cfg: dict) -> Network:
    spec = cfg["network"]
    try:
        if isinstance(spec, str):
            net = Network.from_json(Path(spec).read_text())
        elif "preset" in spec:
            net = reference_trimer(spec["preset"])
        else:
            n = int(spec["n_sites"])
            net = build_network(
                np.array(spec["couplings"], dtype=float).reshape(n, n),
                spec["site_energies"], spec["dephasing_rates"])
    except ConfigError:
        raise
    except FileNotFoundError as exc:
        raise ConfigError("network", f"file not found: {spec}") from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError("network", str(exc)) from exc
    scale = cfg.get("dephasing_scale", 1.0)
    if scale != 1.0:
        net = net.scaled_dephasing(scale)
    return net


def _site0(state: dict, key: str, n: int) -> int:
    try:
        v = int(state[key]) - 1
    except (KeyError, TypeError, ValueError):
        raise ConfigError(f"initial_state.{key}", "missing or not an integer")
    if not 0 <= v < n:
        raise ConfigError(f"initial_state.{key}", f"site out of range 1..{n}")
    return v


def initial_state_from_config(cfg: dict, net: Network):
    """Build the configured initial state.

    Returns ('single', DensityMatrix) or ('two', TwoParticleState).
    """
    state = cfg.get("initial_state")
    if not isinstance(state, dict) or "type" not in state:
        raise ConfigError("initial_state.type", "missing")
    kind = state["type"]
    n = net.n_sites
    if kind == "site":
        return "single", pure_site_state(n, _site0(state, "index", n))
    if kind == "separable":
        stats = state.get("statistics", BOSON)
        if stats not in (BOSON, FERMION):
            raise ConfigError("initial_state.statistics", f"got {stats!r}")
        return "two", separable_pair(net, _site0(state, "p", n), _site0(state, "q", n), stats)
    if kind == "entangled":
        return "two", entangled_nn(net, _site0(state, "p", n), _site0(state, "q", n))
    if kind == "classically_correlated":
        return "two", classically_correlated_mix(net, _site0(state, "p", n), _site0(state, "q", n))
    if kind == "distinguishable":
        return "two", distinguishable_incoherent(net, _site0(state, "p", n), _site0(state, "q", n))
    if kind == "matrix":
        try:
            re = np.array(state["re"], dtype=float)
            im = np.array(state.get("im", np.zeros_like(re)), dtype=float)
        except (KeyError, ValueError) as exc:
            raise ConfigError("initial_state.re", str(exc)) from exc
        rho = re + 1j * im
        basis = state.get("basis", SITE_BASIS)
        if basis == SITE_BASIS:
            return "single", DensityMatrix(rho.shape[0], rho, SITE_BASIS).validate()
        stats = state.get("statistics", DISTINGUISHABLE)
        return "two", explicit_state(net, rho, stats)
    raise ConfigError("initial_state.type", f"unknown type {kind!r}")


def set_dot_path(cfg: dict, path: str, raw: str) -> None:
    """Apply a --set override like 'oracle.M=4000'; values parse as JSON."""
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    keys = path.split(".")
    node = cfg
    for k in keys[:-1]:
        if not isinstance(node.get(k), dict):
            node[k] = {}
        node = node[k]
    node[keys[-1]] = value
