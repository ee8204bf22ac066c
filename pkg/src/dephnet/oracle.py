"""Monte Carlo trajectory ensembles over disordered realizations.

This is the independent cross-check of the master-equation engines: each
realization draws random site-energy offsets, propagates exact (segment
model) or Euler-Maruyama (white-noise model) single-particle unitaries,
assembles two-particle amplitudes from products of those unitaries, and
averages the correlation products over the ensemble.

Reproducibility: trajectory k draws from a Philox stream keyed by
(master_seed, k), so ensembles are bit-identical for a given seed no
matter how trajectories are batched or how many workers run them. The
final average reduces fixed-size chunk partials pairwise in index order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .density import PAIR_BASIS, SITE_BASIS, DensityMatrix
from .engine import EvolutionRecord
from .errors import DimensionMismatch, NormalizationError, StepTooLarge
from .network import PIECEWISE_SEGMENTS, Network, NoiseSpec

CHUNK = 128                 # trajectories per reduction chunk; fixed for determinism
WIENER_DEFAULT_STEP = 1e-3


def _philox_stream(master_seed: int, index: int) -> np.random.Generator:
    key = (int(master_seed) << 64) | int(index)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class DisorderRealization:
    """One realization of the site-energy noise."""

    seed: int
    index: int
    segment_energies: np.ndarray      # (n_segments, n_sites) offsets
    segment_length: float
    model: str

    def __post_init__(self):
        e = np.ascontiguousarray(self.segment_energies)
        e.setflags(write=False)
        object.__setattr__(self, "segment_energies", e)


def draw_realization(noise: NoiseSpec, master_seed: int, index: int,
                     n_segments: int) -> DisorderRealization:
    """Offsets for trajectory `index`; bit-for-bit reproducible."""
    rng = _philox_stream(master_seed, index)
    offsets = rng.standard_normal((n_segments, noise.sigma.size)) * noise.sigma
    return DisorderRealization(master_seed, index, offsets,
                               noise.correlation_length, noise.model)


@dataclass(frozen=True)
class Propagator:
    """Site-basis propagator U(z), columns indexed by input site."""

    z: float
    matrix: np.ndarray

    def unitarity_defect(self) -> float:
        U = self.matrix
        return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def _wiener_guard(net: Network, step: float) -> None:
    scale = max(float(np.max(net.dephasing_rates)),
                float(np.max(np.abs(net.couplings))),
                float(np.max(np.abs(net.site_energies))))
    if step * scale > 0.05:
        raise StepTooLarge(f"step {step} too large for rates up to {scale}")


def _segment_counts(z_grid, seg_len) -> np.ndarray:
    counts = np.asarray(z_grid, dtype=float) / seg_len
    rounded = np.rint(counts)
    if np.max(np.abs(counts - rounded)) > 1e-9 or np.any(rounded < 1):
        raise DimensionMismatch(
            "every z must be a positive multiple of the segment length")
    return rounded.astype(np.int64)


def sample_propagator(net: Network, noise: NoiseSpec, seed: int, z_max: float,
                      wiener_step: float = WIENER_DEFAULT_STEP):
    """One realization's propagator checkpoints [(z_k, Propagator), ...].

    Segment model: exact per-segment exponentials, recorded at every
    segment boundary. White-noise model: Euler-Maruyama with per-step
    column renormalization, recorded on the correlation-length grid.
    """
    H0 = net.hamiltonian()
    if noise.model == PIECEWISE_SEGMENTS:
        checks = _segment_counts(np.arange(1, int(round(z_max / noise.correlation_length)) + 1)
                                 * noise.correlation_length, noise.correlation_length)
        real = draw_realization(noise, seed, 0, int(checks[-1]))
        mats = _kernels.segment_propagators(H0, real.segment_energies,
                                            noise.correlation_length, checks)
        return [(float(k * noise.correlation_length), Propagator(float(k * noise.correlation_length), U))
                for k, U in zip(checks, mats)]
    _wiener_guard(net, wiener_step)
    n_steps = int(round(z_max / wiener_step))
    record_every = max(1, int(round(noise.correlation_length / wiener_step)))
    checks = np.arange(record_every, n_steps + 1, record_every, dtype=np.int64)
    if checks.size == 0 or checks[-1] != n_steps:
        checks = np.append(checks, n_steps)
    rng = _philox_stream(seed, 0)
    dn = rng.standard_normal((n_steps, net.n_sites))
    mats = _kernels.wiener_propagators(net.site_energies, net.couplings,
                                       net.dephasing_rates, dn, wiener_step, checks)
    return [(float(k * wiener_step), Propagator(float(k * wiener_step), U))
            for k, U in zip(checks, mats)]


def _pairwise_reduce(parts):
    """Sum a list of arrays pairwise in index order."""
    items = list(parts)
    if not items:
        raise ValueError("nothing to reduce")
    while len(items) > 1:
        merged = []
        for i in range(0, len(items) - 1, 2):
            merged.append(items[i] + items[i + 1])
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    return items[0]


def _run_chunks(task, M: int, threads: int):
    """Apply task(start, count) over fixed-size chunks; reduce in order."""
    spans = [(s, min(CHUNK, M - s)) for s in range(0, M, CHUNK)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda sp: task(*sp), spans))
    else:
        parts = [task(*sp) for sp in spans]
    return _pairwise_reduce(parts), parts


def _ensemble_run(net, noise, M, z_grid, threads, master_seed,
                  psi0=None, amp0=None, sign=None, wiener_step=WIENER_DEFAULT_STEP):
    H0 = net.hamiltonian()
    z_grid = np.asarray(z_grid, dtype=float)
    if noise.model == PIECEWISE_SEGMENTS:
        checks = _segment_counts(z_grid, noise.correlation_length)
        n_draws = int(checks[-1])
        dzk = noise.correlation_length

        def task(start, count):
            rows = [draw_realization(noise, master_seed, start + t, n_draws).segment_energies
                    for t in range(count)]
            block = np.stack(rows)
            if psi0 is not None:
                return _kernels.segment_single_chunk(H0, block, dzk, checks, psi0)
            return _kernels.segment_two_chunk(H0, block, dzk, checks, amp0, sign)
    else:
        _wiener_guard(net, wiener_step)
        steps = np.rint(z_grid / wiener_step)
        if np.max(np.abs(z_grid / wiener_step - steps)) > 1e-6 or np.any(steps < 1):
            raise DimensionMismatch("every z must be a positive multiple of the step")
        checks = steps.astype(np.int64)
        n_draws = int(checks[-1])

        def task(start, count):
            rows = [_philox_stream(master_seed, start + t).standard_normal((n_draws, net.n_sites))
                    for t in range(count)]
            block = np.stack(rows)
            if psi0 is not None:
                return _kernels.wiener_single_chunk(net.site_energies, net.couplings,
                                                    net.dephasing_rates, block,
                                                    wiener_step, checks, psi0)
            return _kernels.wiener_two_chunk(net.site_energies, net.couplings,
                                             net.dephasing_rates, block,
                                             wiener_step, checks, amp0, sign)

    total, parts = _run_chunks(task, M, threads)
    return z_grid, total / M, parts


def ensemble_single(net: Network, noise: NoiseSpec, psi0, M: int, z_grid,
                    master_seed: int = 0, threads: int = 1) -> EvolutionRecord:
    """Ensemble-averaged single-particle density matrices on z_grid."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (net.n_sites,):
        raise DimensionMismatch(f"psi0 must have length {net.n_sites}")
    nrm = np.sum(np.abs(psi0) ** 2)
    if abs(nrm - 1.0) > 1e-9:
        raise NormalizationError(f"|psi0|^2 = {nrm!r}")
    if M < 1:
        raise ValueError("M must be >= 1")
    z, avg, parts = _ensemble_run(net, noise, M, z_grid, threads, master_seed, psi0=psi0)
    avg = avg / np.trace(avg, axis1=1, axis2=2).real[:, None, None]
    snaps = tuple(DensityMatrix(net.n_sites, m, SITE_BASIS) for m in avg)
    meta = {"M": M, "seed": master_seed, "model": noise.model,
            "max_std_error": _max_std_error(parts, M)}
    return EvolutionRecord(z, snaps, meta)


def _initial_pair_amplitudes(amp0: np.ndarray, sign: float) -> np.ndarray:
    """z = 0 two-particle amplitudes Psi(0)_{p,q} = amp0_{q,p} + sign*amp0_{p,q}."""
    if sign == 0.0:
        return amp0.T.copy()
    return amp0.T + sign * amp0


def ensemble_two(net: Network, noise: NoiseSpec, phi0, statistics: str, M: int,
                 z_grid, master_seed: int = 0, threads: int = 1) -> EvolutionRecord:
    """Ensemble-averaged two-particle density matrices on z_grid.

    phi0 is the initial amplitude profile over (site, site) with unit
    square-norm; statistics selects symmetrized (+/-) or, for
    distinguishable pairs, the plain product amplitudes. The averaged
    matrix is renormalized to unit trace over ordered pairs.
    """
    from .states import BOSON, DISTINGUISHABLE, FERMION

    phi0 = np.asarray(phi0, dtype=complex)
    n = net.n_sites
    if phi0.shape != (n, n):
        raise DimensionMismatch(f"phi0 must be {n}x{n}")
    nrm = float(np.sum(np.abs(phi0) ** 2))
    if abs(nrm - 1.0) > 1e-9:
        raise NormalizationError(f"sum |phi0|^2 = {nrm!r}")
    sign = {BOSON: 1.0, FERMION: -1.0, DISTINGUISHABLE: 0.0}[statistics]
    if M < 1:
        raise ValueError("M must be >= 1")
    z, avg, parts = _ensemble_run(net, noise, M, z_grid, threads, master_seed,
                                  amp0=phi0, sign=sign)
    trace0 = float(np.sum(np.abs(_initial_pair_amplitudes(phi0, sign)) ** 2))
    avg = avg / trace0
    avg = avg / np.trace(avg, axis1=1, axis2=2).real[:, None, None]
    snaps = tuple(DensityMatrix(n * n, m, PAIR_BASIS) for m in avg)
    meta = {"M": M, "seed": master_seed, "model": noise.model,
            "statistics": statistics, "max_std_error": _max_std_error(parts, M)}
    return EvolutionRecord(z, snaps, meta)


def ensemble_two_mixture(net: Network, noise: NoiseSpec, components, M: int,
                         z_grid, master_seed: int = 0, threads: int = 1) -> EvolutionRecord:
    """Convex combination of pure-amplitude ensembles.

    components: iterable of (weight, phi0, statistics); weights must sum
    to 1. Mixing averaged ensembles instead of sampling the component per
    trajectory removes that sampling's Monte Carlo variance.
    """
    comps = list(components)
    wsum = sum(w for w, _, _ in comps)
    if abs(wsum - 1.0) > 1e-9:
        raise NormalizationError(f"mixture weights sum to {wsum!r}")
    records = [ensemble_two(net, noise, phi0, stats, M, z_grid,
                            master_seed=master_seed, threads=threads)
               for _, phi0, stats in comps]
    z = records[0].z_grid
    avg = sum(w * rec.array() for (w, _, _), rec in zip(comps, records))
    n = net.n_sites
    snaps = tuple(DensityMatrix(n * n, m, PAIR_BASIS) for m in avg)
    meta = {"M": M, "seed": master_seed, "model": noise.model,
            "max_std_error": max(r.metadata["max_std_error"] for r in records)}
    return EvolutionRecord(z, snaps, meta)


def _max_std_error(parts, M: int) -> float:
    """Standard error of the ensemble mean, maximized over matrix entries.

    Estimated from the spread of per-chunk means at the final checkpoint;
    zero when there is a single chunk.
    """
    if len(parts) < 2:
        return 0.0
    sizes = np.array([CHUNK] * (len(parts) - 1) + [M - CHUNK * (len(parts) - 1)], dtype=float)
    means = np.stack([p[-1] / s for p, s in zip(parts, sizes)])
    spread = np.sqrt(np.var(means.real, axis=0, ddof=1) + np.var(means.imag, axis=0, ddof=1))
    return float(np.max(spread) / np.sqrt(len(parts)))
