"""Two-particle initial states on the ordered-pair basis.

All constructors return unit-trace density matrices over ordered pairs
(p, q), p, q in 0..n-1. Exchange statistics are encoded in the state, not
in the generator: bosons (fermions) are symmetric (antisymmetric) under
the simultaneous index swap (p,q) -> (q,p), while distinguishable pairs
simply lack the exchange coherences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import PAIR_BASIS, DensityMatrix
from .errors import DimensionMismatch, FermionNotAllowed, InvariantViolation, SameSiteFermion
from .generators import pair_index
from .network import Network

BOSON = "boson"
FERMION = "fermion"
DISTINGUISHABLE = "distinguishable"

EXCHANGE_TOL = 1e-10


@dataclass(frozen=True)
class TwoParticleState:
    rho: DensityMatrix
    statistics: str

    @property
    def n_sites(self) -> int:
        return int(round(np.sqrt(self.rho.dim)))


def exchange_defect(rho: np.ndarray, n: int, sign: float) -> float:
    """Largest violation of rho_{(p,q),(p',q')} == sign * rho_{(q,p),(p',q')}."""
    m = rho.reshape(n, n, n, n)
    swapped_left = m.transpose(1, 0, 2, 3)
    swapped_right = m.transpose(0, 1, 3, 2)
    return float(max(np.max(np.abs(m - sign * swapped_left)),
                     np.max(np.abs(m - sign * swapped_right))))


def check_statistics(rho: np.ndarray, n: int, statistics: str,
                     tol: float = EXCHANGE_TOL) -> None:
    """Raise InvariantViolation when the exchange symmetry is broken."""
    if statistics == DISTINGUISHABLE:
        return
    sign = 1.0 if statistics == BOSON else -1.0
    defect = exchange_defect(rho, n, sign)
    if defect > tol:
        raise InvariantViolation(f"{statistics} exchange symmetry violated by {defect:.3e}")
    if statistics == FERMION:
        same = max(abs(rho[pair_index(p, p, n), pair_index(p, p, n)]) for p in range(n))
        if same > 0.0:
            raise InvariantViolation(f"fermion same-site population {same:.3e}")


def _check_sites(net: Network, p: int, q: int) -> None:
    n = net.n_sites
    if not (0 <= p < n and 0 <= q < n):
        raise DimensionMismatch(f"sites ({p},{q}) out of range for {n} sites")


def separable_pair(net: Network, p: int, q: int, statistics: str) -> TwoParticleState:
    """Symmetrized pure state of one particle at p and one at q.

    Entries 1/2 on the two ordered diagonals and +-1/2 on the exchange
    coherences, sign set by the statistics.
    """
    _check_sites(net, p, q)
    if statistics not in (BOSON, FERMION):
        raise ValueError(f"statistics must be boson or fermion, got {statistics!r}")
    if p == q:
        if statistics == FERMION:
            raise SameSiteFermion("fermions cannot share a site")
        raise DimensionMismatch("separable pair needs two distinct sites")
    n = net.n_sites
    sign = 1.0 if statistics == BOSON else -1.0
    a, b = pair_index(p, q, n), pair_index(q, p, n)
    rho = np.zeros((n * n, n * n), dtype=complex)
    rho[a, a] = rho[b, b] = 0.5
    rho[a, b] = rho[b, a] = 0.5 * sign
    return TwoParticleState(DensityMatrix(n * n, rho, PAIR_BASIS).validate(), statistics)


def entangled_nn(net: Network, p: int, q: int, statistics: str = BOSON) -> TwoParticleState:
    """Superposition of both particles at p and both at q (bosons only)."""
    _check_sites(net, p, q)
    if statistics != BOSON:
        raise FermionNotAllowed("double occupation requires bosons")
    if p == q:
        raise DimensionMismatch("entangled pair needs two distinct sites")
    n = net.n_sites
    idx = (pair_index(p, p, n), pair_index(q, q, n))
    rho = np.zeros((n * n, n * n), dtype=complex)
    for a in idx:
        for b in idx:
            rho[a, b] = 0.5
    return TwoParticleState(DensityMatrix(n * n, rho, PAIR_BASIS).validate(), BOSON)


def classically_correlated_mix(net: Network, p: int, q: int,
                               statistics: str = BOSON) -> TwoParticleState:
    """Equal incoherent mixture of both-at-p and both-at-q (bosons only)."""
    _check_sites(net, p, q)
    if statistics != BOSON:
        raise FermionNotAllowed("double occupation requires bosons")
    if p == q:
        raise DimensionMismatch("mixture needs two distinct sites")
    n = net.n_sites
    rho = np.zeros((n * n, n * n), dtype=complex)
    rho[pair_index(p, p, n), pair_index(p, p, n)] = 0.5
    rho[pair_index(q, q, n), pair_index(q, q, n)] = 0.5
    return TwoParticleState(DensityMatrix(n * n, rho, PAIR_BASIS).validate(), BOSON)


def distinguishable_incoherent(net: Network, p: int, q: int) -> TwoParticleState:
    """Mixture of (p,q) and (q,p) occupations without exchange coherence."""
    _check_sites(net, p, q)
    if p == q:
        raise DimensionMismatch("incoherent pair needs two distinct sites")
    n = net.n_sites
    rho = np.zeros((n * n, n * n), dtype=complex)
    rho[pair_index(p, q, n), pair_index(p, q, n)] = 0.5
    rho[pair_index(q, p, n), pair_index(q, p, n)] = 0.5
    return TwoParticleState(DensityMatrix(n * n, rho, PAIR_BASIS).validate(), DISTINGUISHABLE)


def explicit_state(net: Network, rho: np.ndarray, statistics: str) -> TwoParticleState:
    """Wrap a caller-supplied ordered-pair density matrix, validating it."""
    n = net.n_sites
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (n * n, n * n):
        raise DimensionMismatch(f"expected {(n*n, n*n)}, got {rho.shape}")
    check_statistics(rho, n, statistics)
    return TwoParticleState(DensityMatrix(n * n, rho, PAIR_BASIS).validate(), statistics)
