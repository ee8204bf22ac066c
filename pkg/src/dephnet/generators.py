"""Liouvillian generators for the single- and two-particle master equations.

Density matrices are flattened row-major, vec(rho)[a*D + b] = rho[a, b].
The two-particle basis orders site pairs (p, q) as p*n + q, so exchanging
the particles is the index map (p, q) -> (q, p).

Single-particle flow on rho_{n,m}:

    d rho_{n,m}/dz = [-i(beta_m - beta_n) - (gamma_n + gamma_m)/2
                      + gamma_n delta_{n,m}] rho_{n,m}
                     + i sum_r kappa_{n,r} rho_{r,m}
                     - i sum_r kappa_{m,r} rho_{n,r}

Two-particle flow on rho_{(p,q),(p',q')}: the same structure with pairwise
site energies, four coupling sums, and six Kronecker-delta dephasing cross
terms; both particles ride the same noise realization, which is what makes
the cross terms collective.

Every delta term collapses onto a single rate (delta_{i,j} sqrt(gamma_i
gamma_j) = gamma_i), so each element's dephasing coefficient is a
half-integer combination of the rates. Coefficients are assembled from
those integer counts: elements whose counts cancel (the diagonals and the
exchange conjugates (p,q)<->(q,p), the decoherence-free subspace) come out
as exact floating-point zeros rather than round-off residue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .network import Network


def pair_index(p: int, q: int, n: int) -> int:
    """Flat ordered-pair index for sites p, q in 0..n-1."""
    return p * n + q


def pair_label(a: int, n: int) -> tuple[int, int]:
    """Inverse of pair_index."""
    return divmod(a, n)


def _counted_sum(counts2, values) -> float:
    """0.5 * sum_i counts2[i] * values[i], summed in site order.

    counts2 holds twice the half-integer coefficients; an all-zero count
    vector yields exact 0.0.
    """
    total = 0.0
    for i in range(len(values)):
        if counts2[i]:
            total += counts2[i] * values[i]
    return 0.5 * total


def single_element_coefficient(net: Network, a: int, b: int) -> complex:
    """Diagonal generator entry acting on rho_{a,b} (coupling terms aside)."""
    gamma = net.dephasing_rates
    beta = net.site_energies
    n = net.n_sites
    gcount = [0] * n
    gcount[a] -= 1
    gcount[b] -= 1
    if a == b:
        gcount[a] += 2
    bcount = [0] * n
    bcount[a] += 2
    bcount[b] -= 2
    return complex(_counted_sum(gcount, gamma), _counted_sum(bcount, beta))


def pair_dephasing_counts(p: int, q: int, pp: int, qq: int, n: int):
    """Twice the per-site rate coefficients of the net dephasing."""
    c = [0] * n
    c[p] -= 1
    c[q] -= 1
    c[pp] -= 1
    c[qq] -= 1
    if p == pp:
        c[p] += 2
    if p == qq:
        c[p] += 2
    if q == pp:
        c[q] += 2
    if q == qq:
        c[q] += 2
    if p == q:
        c[p] -= 2
    if pp == qq:
        c[pp] -= 2
    return c


def dephasing_coefficient(net: Network, p: int, q: int, pp: int, qq: int) -> float:
    """Net dephasing coefficient on element ((p,q),(p',q')).

    Exactly zero on diagonals and exchange conjugates (p',q') == (q,p);
    negative elsewhere whenever an involved rate is positive.
    """
    return _counted_sum(pair_dephasing_counts(p, q, pp, qq, net.n_sites),
                        net.dephasing_rates)


def pair_element_coefficient(net: Network, p: int, q: int, pp: int, qq: int) -> complex:
    """Diagonal generator entry on rho_{(p,q),(p',q')} (couplings aside)."""
    beta = net.site_energies
    n = net.n_sites
    bcount = [0] * n
    bcount[p] += 2
    bcount[q] += 2
    bcount[pp] -= 2
    bcount[qq] -= 2
    return complex(dephasing_coefficient(net, p, q, pp, qq),
                   _counted_sum(bcount, beta))


@dataclass(frozen=True)
class Generator:
    """Dense matrix G with d vec(rho)/dz = G @ vec(rho)."""

    dimension: int          # D: state-space dimension (n or n^2)
    matrix: np.ndarray      # complex (D^2, D^2)
    n_sites: int
    particles: int          # 1 or 2
    network_fingerprint: str = ""

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Right-hand side d rho/dz for a density matrix in matrix form."""
        d = self.dimension
        return (self.matrix @ rho.reshape(-1)).reshape(d, d)

    def residual_norm(self, rho: np.ndarray) -> float:
        """Max-abs entry of d rho/dz; zero exactly at a steady state."""
        return float(np.max(np.abs(self.matrix @ rho.reshape(-1))))


def single_particle_generator(net: Network) -> Generator:
    """Generator of the dephasing master equation for one particle."""
    n = net.n_sites
    kappa = net.couplings
    G = np.zeros((n * n, n * n), dtype=complex)
    for a in range(n):
        for b in range(n):
            row = a * n + b
            G[row, row] += single_element_coefficient(net, a, b)
            for r in range(n):
                if kappa[a, r] != 0.0:
                    G[row, r * n + b] += 1j * kappa[a, r]
                if kappa[b, r] != 0.0:
                    G[row, a * n + r] += -1j * kappa[b, r]
    return Generator(n, G, n, 1, net.fingerprint())


def two_particle_generator(net: Network) -> Generator:
    """Generator of the dephasing master equation for two particles."""
    n = net.n_sites
    if n > 8:
        # dense n^2 x n^2 superoperator; past 4096^2 entries switch to a
        # sparse representation before lifting this
        raise DimensionMismatch(f"dense two-particle generator capped at 8 sites, got {n}")
    kappa = net.couplings
    D = n * n
    G = np.zeros((D * D, D * D), dtype=complex)
    for p in range(n):
        for q in range(n):
            a = pair_index(p, q, n)
            for pp in range(n):
                for qq in range(n):
                    b = pair_index(pp, qq, n)
                    row = a * D + b
                    G[row, row] += pair_element_coefficient(net, p, q, pp, qq)
                    for r in range(n):
                        if kappa[r, p] != 0.0:
                            G[row, pair_index(r, q, n) * D + b] += 1j * kappa[r, p]
                        if kappa[r, q] != 0.0:
                            G[row, pair_index(p, r, n) * D + b] += 1j * kappa[r, q]
                        if kappa[r, pp] != 0.0:
                            G[row, a * D + pair_index(r, qq, n)] += -1j * kappa[r, pp]
                        if kappa[r, qq] != 0.0:
                            G[row, a * D + pair_index(pp, r, n)] += -1j * kappa[r, qq]
    return Generator(D, G, n, 2, net.fingerprint())


def swap_matrix(n: int) -> np.ndarray:
    """Particle-exchange operator P with P|p,q> = |q,p>."""
    D = n * n
    P = np.zeros((D, D))
    for p in range(n):
        for q in range(n):
            P[pair_index(q, p, n), pair_index(p, q, n)] = 1.0
    return P
