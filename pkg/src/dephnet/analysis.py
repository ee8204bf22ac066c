"""Coherence measures, state distances, steady-state detection, and the
decoherence-free-subspace certificate."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import DensityMatrix
from .engine import CorrelationMatrix, EvolutionRecord
from .errors import DimensionMismatch, EigSolverFailure, InvariantViolation, ZeroMatrix
from .generators import Generator, dephasing_coefficient, pair_index
from .network import Network

# eigenvalues this far below zero are numerical dust on a valid state;
# anything worse fails the positivity invariant upstream
ENTROPY_CLAMP = 1e-8


def coherence_norm(rho: DensityMatrix) -> float:
    """Sum of absolute off-diagonal entries in the matrix's own basis."""
    m = rho.entries
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def _entropy_bits(eigvals: np.ndarray) -> float:
    ev = np.asarray(eigvals, dtype=float)
    if np.min(ev) < -ENTROPY_CLAMP:
        raise InvariantViolation(f"eigenvalue {np.min(ev):.3e} below clamp threshold")
    ev = np.clip(ev, 0.0, None)
    ev = ev[ev > 0.0]
    return float(-np.sum(ev * np.log2(ev)))


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    """S(diag(rho)) - S(rho) in bits (log base 2)."""
    try:
        ev = np.linalg.eigvalsh(rho.entries)
    except np.linalg.LinAlgError as exc:
        raise EigSolverFailure(str(exc)) from exc
    s_full = _entropy_bits(ev)
    s_diag = _entropy_bits(np.diag(rho.entries).real)
    return s_diag - s_full


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the trace norm of the Hermitian difference; in [0, 1]."""
    if a.dim != b.dim or a.basis_tag != b.basis_tag:
        raise DimensionMismatch("states live on different bases")
    diff = a.entries - b.entries
    try:
        ev = np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))
    except np.linalg.LinAlgError as exc:
        raise EigSolverFailure(str(exc)) from exc
    return float(0.5 * np.sum(np.abs(ev)))


def similarity(g_a: CorrelationMatrix, g_b: CorrelationMatrix) -> float:
    """Bhattacharyya-type overlap of two joint-probability matrices.

    (sum_pq sqrt(a_pq b_pq))^2 / (sum a * sum b); equals 1 iff the
    matrices are proportional, 0 for disjoint support.
    """
    a, b = g_a.g2, g_b.g2
    if a.shape != b.shape:
        raise DimensionMismatch("correlation matrices differ in size")
    sa, sb = a.sum(), b.sum()
    if sa <= 0.0 or sb <= 0.0:
        raise ZeroMatrix("correlation matrix sums to zero")
    overlap = np.sum(np.sqrt(np.clip(a, 0.0, None) * np.clip(b, 0.0, None)))
    return float(overlap ** 2 / (sa * sb))


@dataclass(frozen=True)
class CoherenceSeries:
    """Coherence measures along an evolution."""

    z_grid: np.ndarray
    c_norm: np.ndarray
    c_rel_entropy: np.ndarray


def coherence_series(record: EvolutionRecord) -> CoherenceSeries:
    """Evaluate both coherence measures at every sample of a record."""
    cn = np.array([coherence_norm(s) for s in record.snapshots])
    cre = np.array([relative_entropy_coherence(s) for s in record.snapshots])
    # diag-entropy minus entropy is non-negative up to clamped-eigenvalue dust
    if np.min(cre) < -1e-7:
        raise InvariantViolation("relative entropy of coherence went negative")
    return CoherenceSeries(record.z_grid.copy(), cn, np.maximum(cre, 0.0))


def detect_steady_state(gen: Generator, record: EvolutionRecord, tol: float):
    """Smallest sampled z with max-abs d(rho)/dz below tol, else None."""
    for zk, snap in zip(record.z_grid, record.snapshots):
        if gen.residual_norm(snap.entries) < tol:
            return float(zk)
    return None


def certify_dfs(net: Network, gen: Generator | None = None) -> dict:
    """Classify every two-particle matrix element by its net dephasing rate.

    Diagonal elements ((p,q),(p,q)) and exchange conjugates ((p,q),(q,p))
    must carry exactly zero net dephasing for any non-negative rates; all
    other elements decay at (gamma_p+gamma_q+gamma_p'+gamma_q')/2 minus
    the applicable delta terms. When a generator is supplied, its actual
    diagonal is cross-checked against the formula.
    """
    n = net.n_sites
    D = n * n
    zero_elements = []
    decaying = []
    for p in range(n):
        for q in range(n):
            a = pair_index(p, q, n)
            for pp in range(n):
                for qq in range(n):
                    b = pair_index(pp, qq, n)
                    coef = dephasing_coefficient(net, p, q, pp, qq)
                    protected = (a == b) or (pp == q and qq == p)
                    if gen is not None:
                        actual = gen.matrix[a * D + b, a * D + b].real
                        if actual != coef:
                            raise InvariantViolation(
                                f"generator dephasing {actual!r} != formula {coef!r} "
                                f"at (({p},{q}),({pp},{qq}))")
                    entry = {"index": [[p, q], [pp, qq]], "rate": -coef}
                    if protected:
                        if coef != 0.0:
                            raise InvariantViolation(
                                f"protected element (({p},{q}),({pp},{qq})) "
                                f"has nonzero net dephasing {coef!r}")
                        zero_elements.append(entry["index"])
                    else:
                        decaying.append(entry)
    return {"zero_decay_elements": zero_elements, "decaying_elements": decaying}
