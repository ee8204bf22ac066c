"""Fixed-step RK4 integration of the master equations and observables.

Propagation distance z plays the role of time. Records sample the density
matrix every `sample_every` steps and re-validate the physical invariants
at every sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .density import PAIR_BASIS, SITE_BASIS, DensityMatrix, check_density
from .errors import DimensionMismatch, InvariantViolation, NegativeProbability
from .generators import Generator, pair_index
from .states import FERMION, TwoParticleState, check_statistics

DEFAULT_DZ = 0.001
DEFAULT_SAMPLE_EVERY = 100
TRACE_DRIFT_TOL = 1e-6
SYMMETRY_DRIFT_TOL = 1e-8


@dataclass(frozen=True)
class EvolutionRecord:
    """Ordered snapshots rho(z) plus provenance metadata."""

    z_grid: np.ndarray
    snapshots: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        z = np.ascontiguousarray(np.asarray(self.z_grid, dtype=float))
        z.setflags(write=False)
        object.__setattr__(self, "z_grid", z)
        if len(self.snapshots) != len(z):
            raise DimensionMismatch("z_grid and snapshots lengths differ")

    @property
    def basis_tag(self) -> str:
        return self.snapshots[0].basis_tag

    def final(self) -> DensityMatrix:
        return self.snapshots[-1]

    def at(self, z: float) -> DensityMatrix:
        """Snapshot at the grid point closest to z (must match to 1e-9)."""
        i = int(np.argmin(np.abs(self.z_grid - z)))
        if abs(self.z_grid[i] - z) > 1e-9:
            raise KeyError(f"z={z} not on the sample grid")
        return self.snapshots[i]

    def array(self) -> np.ndarray:
        """All snapshots stacked to (n_samples, dim, dim)."""
        return np.stack([s.entries for s in self.snapshots])


def _run_rk4(gen: Generator, rho0: np.ndarray, z_max: float, dz: float,
             sample_every: int, zero_idx: np.ndarray):
    if dz <= 0:
        raise ValueError("dz must be positive")
    if z_max < 0:
        raise ValueError("z_max must be non-negative")
    d = gen.dimension
    if rho0.shape != (d, d):
        raise DimensionMismatch(f"generator dimension {d} vs state {rho0.shape}")
    sample_every = max(1, int(sample_every))

    total_steps = int(round(z_max / dz)) if z_max > 0 else 0
    if total_steps == 0:
        return np.array([0.0]), rho0[None, :, :].astype(complex)
    dz_eff = z_max / total_steps

    main_steps = (total_steps // sample_every) * sample_every
    samples = _kernels.rk4_samples(gen.matrix, rho0.reshape(-1).astype(complex),
                                   dz_eff, main_steps, sample_every, zero_idx)
    z = np.arange(samples.shape[0]) * (sample_every * dz_eff)
    if main_steps < total_steps:
        tail = _kernels.rk4_samples(gen.matrix, samples[-1].copy(), dz_eff,
                                    total_steps - main_steps,
                                    total_steps - main_steps, zero_idx)
        samples = np.vstack([samples, tail[-1:]])
        z = np.append(z, z_max)
    return z, samples.reshape(-1, d, d)


def _validate_samples(z, mats, basis, statistics=None, n_sites=None):
    snaps = []
    for zk, rho in zip(z, mats):
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_DRIFT_TOL:
            raise InvariantViolation(
                f"trace drifted by {abs(tr - 1.0):.3e} at z={zk:g}; reduce dz")
        try:
            check_density(rho)
            if statistics is not None:
                check_statistics(rho, n_sites, statistics, tol=SYMMETRY_DRIFT_TOL)
        except InvariantViolation as exc:
            raise InvariantViolation(f"{exc} at z={zk:g}") from None
        snaps.append(DensityMatrix(rho.shape[0], rho, basis))
    return tuple(snaps)


def evolve_single(gen: Generator, rho0: DensityMatrix, z_max: float,
                  dz: float = DEFAULT_DZ,
                  sample_every: int = DEFAULT_SAMPLE_EVERY) -> EvolutionRecord:
    """Integrate the single-particle master equation from rho0 to z_max."""
    if gen.particles != 1:
        raise DimensionMismatch("evolve_single needs a single-particle generator")
    z, mats = _run_rk4(gen, rho0.entries, z_max, dz, sample_every,
                       np.empty(0, dtype=np.int64))
    snaps = _validate_samples(z, mats, SITE_BASIS)
    meta = {"dz": z_max / max(1, int(round(z_max / dz))) if z_max > 0 else dz,
            "sample_every": int(sample_every), "particles": 1,
            "network": gen.network_fingerprint}
    return EvolutionRecord(z, snaps, meta)


def _fermion_zero_indices(n: int) -> np.ndarray:
    """Flat vec indices whose row or column label is a same-site pair."""
    D = n * n
    same = [pair_index(p, p, n) for p in range(n)]
    idx = set()
    for a in same:
        for b in range(D):
            idx.add(a * D + b)
            idx.add(b * D + a)
    return np.array(sorted(idx), dtype=np.int64)


def evolve_two(gen: Generator, state: TwoParticleState, z_max: float,
               dz: float = DEFAULT_DZ,
               sample_every: int = DEFAULT_SAMPLE_EVERY) -> EvolutionRecord:
    """Integrate the two-particle master equation from the given state.

    Exchange symmetry of boson/fermion states is re-asserted at every
    sample; fermion same-site elements are pinned to exact zero after each
    step since they vanish identically under the flow.
    """
    if gen.particles != 2:
        raise DimensionMismatch("evolve_two needs a two-particle generator")
    n = gen.n_sites
    zero_idx = _fermion_zero_indices(n) if state.statistics == FERMION \
        else np.empty(0, dtype=np.int64)
    z, mats = _run_rk4(gen, state.rho.entries, z_max, dz, sample_every, zero_idx)
    snaps = _validate_samples(z, mats, PAIR_BASIS, state.statistics, n)
    meta = {"dz": z_max / max(1, int(round(z_max / dz))) if z_max > 0 else dz,
            "sample_every": int(sample_every), "particles": 2,
            "statistics": state.statistics, "network": gen.network_fingerprint}
    return EvolutionRecord(z, snaps, meta)


def populations(rho: DensityMatrix) -> np.ndarray:
    """Site populations: real parts of the diagonal (site basis)."""
    if rho.basis_tag != SITE_BASIS:
        raise DimensionMismatch("populations needs a site-basis density matrix")
    diag = np.diag(rho.entries)
    if np.max(np.abs(diag.imag)) > 1e-10:
        raise InvariantViolation("diagonal has imaginary parts above 1e-10")
    p = diag.real.copy()
    if abs(p.sum() - 1.0) > 1e-9:
        raise InvariantViolation(f"populations sum to {p.sum()!r}")
    return p


def coherence_magnitudes(record: EvolutionRecord):
    """Per-pair series |rho_{n,m}(z)| for n < m (site basis).

    Returns (pairs, series) with series shaped (n_pairs, n_samples).
    """
    if record.basis_tag != SITE_BASIS:
        raise DimensionMismatch("coherence_magnitudes needs site-basis records")
    mats = record.array()
    n = mats.shape[1]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    series = np.empty((len(pairs), mats.shape[0]))
    for k, (a, b) in enumerate(pairs):
        series[k] = np.abs(mats[:, a, b])
    return pairs, series


@dataclass(frozen=True)
class CorrelationMatrix:
    """Joint detection probabilities G2[p, q] = rho_{(p,q),(p,q)}."""

    g2: np.ndarray

    def __post_init__(self):
        g = np.ascontiguousarray(np.asarray(self.g2, dtype=float))
        g.setflags(write=False)
        object.__setattr__(self, "g2", g)

    @property
    def n(self) -> int:
        return self.g2.shape[0]

    def total(self) -> float:
        return float(self.g2.sum())


def joint_probability(rho: DensityMatrix) -> CorrelationMatrix:
    """Extract G2 from an ordered-pair density matrix."""
    if rho.basis_tag != PAIR_BASIS:
        raise DimensionMismatch("joint_probability needs an ordered-pair matrix")
    n = int(round(np.sqrt(rho.dim)))
    diag = np.diag(rho.entries).real
    if diag.min() < -1e-8:
        raise NegativeProbability(f"diagonal entry {diag.min():.3e}")
    g2 = np.where(diag < 0.0, 0.0, diag).reshape(n, n)
    if abs(g2.sum() - 1.0) > 1e-6:
        raise InvariantViolation(f"joint probabilities sum to {g2.sum()!r}")
    return CorrelationMatrix(g2)


def exchange_coherence_block(rho: DensityMatrix):
    """The n(n-1)/2 exchange coherences rho_{(p,q),(q,p)} for p < q."""
    if rho.basis_tag != PAIR_BASIS:
        raise DimensionMismatch("exchange_coherence_block needs an ordered-pair matrix")
    n = int(round(np.sqrt(rho.dim)))
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            out.append(((p, q), complex(rho.entries[pair_index(p, q, n),
                                                    pair_index(q, p, n)])))
    return out
