"""Execute one experiment config: evolve, analyze, and write all outputs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import io
from .analysis import certify_dfs, coherence_series, detect_steady_state
from .config import initial_state_from_config, network_from_config
from .density import PAIR_BASIS, SITE_BASIS, DensityMatrix
from .engine import (EvolutionRecord, evolve_single, evolve_two,
                     exchange_coherence_block, joint_probability)
from .errors import ConfigError
from .generators import single_particle_generator, two_particle_generator
from .network import PIECEWISE_SEGMENTS, NoiseSpec
from .oracle import ensemble_single, ensemble_two, ensemble_two_mixture
from .states import BOSON, DISTINGUISHABLE


def _noise_for(net, oracle_cfg) -> NoiseSpec:
    if oracle_cfg["model"] == PIECEWISE_SEGMENTS:
        return NoiseSpec.for_network(net, float(oracle_cfg["segment_length"]),
                                     PIECEWISE_SEGMENTS)
    return NoiseSpec.for_network(net, float(oracle_cfg["segment_length"]),
                                 oracle_cfg["model"])


def _oracle_grid(cfg) -> np.ndarray:
    step = float(cfg["oracle"]["grid_step"])
    z_max = cfg["z_max"]
    grid = np.arange(step, z_max + 0.5 * step, step)
    if grid.size == 0 or abs(grid[-1] - z_max) > 1e-9:
        grid = np.append(grid, z_max)
    return grid


def _oracle_initial(cfg, net):
    """Map the configured initial state onto trajectory-ensemble inputs."""
    state = cfg.get("initial_state") or {}
    kind = state.get("type")
    n = net.n_sites
    if kind == "site":
        psi0 = np.zeros(n, dtype=complex)
        psi0[int(state["index"]) - 1] = 1.0
        return "single", psi0
    if kind == "separable":
        p, q = int(state["p"]) - 1, int(state["q"]) - 1
        phi = np.zeros((n, n), dtype=complex)
        phi[q, p] = 1.0
        stats = state.get("statistics", BOSON)
        return "two", [(1.0, phi, stats)]
    if kind == "entangled":
        p, q = int(state["p"]) - 1, int(state["q"]) - 1
        phi = np.zeros((n, n), dtype=complex)
        phi[p, p] = phi[q, q] = 1.0 / np.sqrt(2.0)
        return "two", [(1.0, phi, BOSON)]
    if kind == "classically_correlated":
        p, q = int(state["p"]) - 1, int(state["q"]) - 1
        phi_a = np.zeros((n, n), dtype=complex)
        phi_a[p, p] = 1.0
        phi_b = np.zeros((n, n), dtype=complex)
        phi_b[q, q] = 1.0
        return "two", [(0.5, phi_a, BOSON), (0.5, phi_b, BOSON)]
    if kind == "distinguishable":
        p, q = int(state["p"]) - 1, int(state["q"]) - 1
        phi_a = np.zeros((n, n), dtype=complex)
        phi_a[q, p] = 1.0
        phi_b = np.zeros((n, n), dtype=complex)
        phi_b[p, q] = 1.0
        return "two", [(0.5, phi_a, DISTINGUISHABLE), (0.5, phi_b, DISTINGUISHABLE)]
    raise ConfigError("initial_state.type",
                      f"type {kind!r} has no trajectory-ensemble form")


def _write_steady(gen, record, cfg, out):
    tol = cfg["steady_tol"]
    z_star = detect_steady_state(gen, record, tol)
    io.write_json({"tol": tol, "z_star": z_star,
                   "residual_final": gen.residual_norm(record.final().entries)},
                  out / "steady_state.json")


def _write_two_particle_outputs(record, out):
    final = record.final()
    g2 = joint_probability(final)
    io.write_g2_csv(g2, out / "g2_final.csv")
    io.write_g2_json(g2, out / "g2_final.json")
    block = exchange_coherence_block(final)
    io.write_json({"pairs": [[p + 1, q + 1] for (p, q), _ in block],
                   "re": [v.real for _, v in block],
                   "im": [v.imag for _, v in block]},
                  out / "exchange_coherences.json")


def run(cfg: dict, out_dir=None) -> dict:
    """Run one resolved config; returns a small result summary.

    Writes evolution/coherence/correlation outputs plus manifest.json into
    the output directory.
    """
    out = Path(out_dir if out_dir is not None else cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    net = network_from_config(cfg)
    mode = cfg["mode"]
    summary = {"mode": mode, "output_dir": str(out)}

    if mode == "dfs":
        gen = two_particle_generator(net)
        report = certify_dfs(net, gen)
        io.write_dfs_report(report, out / "dfs_report.json")
        summary["zero_decay_elements"] = len(report["zero_decay_elements"])
    elif mode == "single":
        kind, rho0 = initial_state_from_config(cfg, net)
        if kind != "single":
            raise ConfigError("initial_state", "single mode needs a one-particle state")
        gen = single_particle_generator(net)
        record = evolve_single(gen, rho0, cfg["z_max"], cfg["dz"], cfg["sample_every"])
        io.write_record_csv(record, out / "evolution.csv")
        io.write_coherence_csv(coherence_series(record), out / "coherence.csv")
        _write_steady(gen, record, cfg, out)
    elif mode == "two":
        kind, state = initial_state_from_config(cfg, net)
        if kind != "two":
            raise ConfigError("initial_state", "two mode needs a two-particle state")
        gen = two_particle_generator(net)
        record = evolve_two(gen, state, cfg["z_max"], cfg["dz"], cfg["sample_every"])
        io.write_record_csv(record, out / "evolution.csv")
        io.write_coherence_csv(coherence_series(record), out / "coherence.csv")
        _write_two_particle_outputs(record, out)
        _write_steady(gen, record, cfg, out)
    elif mode in ("oracle_single", "oracle_two"):
        noise = _noise_for(net, cfg["oracle"])
        grid = _oracle_grid(cfg)
        seed = int(cfg["oracle"]["seed"])
        threads = int(cfg["oracle"].get("threads", 1))
        M = cfg["oracle"]["M"]
        kind, components = _oracle_initial(cfg, net)
        if mode == "oracle_single":
            if kind != "single":
                raise ConfigError("initial_state", "oracle_single needs a site state")
            record = ensemble_single(net, noise, components, M, grid,
                                     master_seed=seed, threads=threads)
        else:
            if kind != "two":
                raise ConfigError("initial_state", "oracle_two needs a pair state")
            if len(components) == 1:
                _, phi0, stats = components[0]
                record = ensemble_two(net, noise, phi0, stats, M, grid,
                                      master_seed=seed, threads=threads)
            else:
                record = ensemble_two_mixture(net, noise, components, M, grid,
                                              master_seed=seed, threads=threads)
        io.write_record_csv(record, out / "evolution.csv")
        if mode == "oracle_two":
            _write_two_particle_outputs(record, out)
        io.write_json({"M": M, "seed": seed, "model": noise.model,
                       "max_std_error": record.metadata["max_std_error"]},
                      out / "oracle.json")
    elif mode == "analyze":
        z, mats, _ = io.read_record_csv(cfg["input_record"])
        dim = mats.shape[1]
        basis = PAIR_BASIS if dim == net.n_sites ** 2 and dim != net.n_sites else SITE_BASIS
        snaps = tuple(DensityMatrix(dim, m, basis) for m in mats)
        record = EvolutionRecord(z, snaps, {})
        io.write_coherence_csv(coherence_series(record), out / "coherence.csv")
        if basis == PAIR_BASIS:
            gen = two_particle_generator(net)
            _write_two_particle_outputs(record, out)
        else:
            gen = single_particle_generator(net)
        _write_steady(gen, record, cfg, out)
    else:
        raise ConfigError("mode", f"unhandled mode {mode!r}")

    manifest = dict(cfg)
    manifest["output_dir"] = str(out)
    io.write_json(manifest, out / "manifest.json")
    return summary
