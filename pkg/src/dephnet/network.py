"""Network definition, validation, noise models, and JSON serialization.

A network is a set of coupled sites: a real symmetric coupling matrix
(zero diagonal), mean site energies, and per-site dephasing rates, all in
units of cm^-1 with propagation distance z in cm.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AsymmetricCoupling, DimensionMismatch, NegativeDephasing

# Reference trimer: two strongly coupled upper sites (kappa = 2 cm^-1), each
# weakly coupled (0.6 cm^-1) to a detuned third site.
TRIMER_COUPLINGS = ((0.0, 2.0, 0.6), (2.0, 0.0, 0.6), (0.6, 0.6, 0.0))
TRIMER_SITE_ENERGIES = (1.0, 1.0, -1.0)
# Per-site dephasing rates gamma = sigma^2 * dz for the two fabricated
# ensembles (laser-light and photon-pair runs) with dz = 1 cm.
TRIMER_GAMMA_CLASSICAL = (1.7275, 1.7435, 1.7645)
TRIMER_GAMMA_QUANTUM = (1.3012, 1.2365, 1.2930)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Network:
    """Validated immutable network; safe to share across workers."""

    n_sites: int
    couplings: np.ndarray
    site_energies: np.ndarray
    dephasing_rates: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "couplings", _readonly(np.asarray(self.couplings, dtype=float)))
        object.__setattr__(self, "site_energies", _readonly(np.asarray(self.site_energies, dtype=float)))
        object.__setattr__(self, "dephasing_rates", _readonly(np.asarray(self.dephasing_rates, dtype=float)))

    def hamiltonian(self) -> np.ndarray:
        """Mean-field Hamiltonian diag(site_energies) + couplings."""
        return np.diag(self.site_energies) + self.couplings

    def scaled_dephasing(self, factor: float) -> "Network":
        """Same network with all dephasing rates multiplied by factor > 0."""
        if factor <= 0:
            raise NegativeDephasing(f"dephasing scale must be positive, got {factor}")
        return Network(self.n_sites, self.couplings, self.site_energies,
                       self.dephasing_rates * factor)

    def fingerprint(self) -> str:
        """Short stable hash of the network arrays, for provenance metadata."""
        import hashlib

        h = hashlib.sha256()
        for a in (self.couplings, self.site_energies, self.dephasing_rates):
            h.update(np.ascontiguousarray(a).tobytes())
        return h.hexdigest()[:16]

    def to_json(self) -> str:
        doc = {
            "n_sites": self.n_sites,
            "couplings": [float(x) for x in self.couplings.reshape(-1)],
            "site_energies": [float(x) for x in self.site_energies],
            "dephasing_rates": [float(x) for x in self.dephasing_rates],
        }
        return json.dumps(doc)

    @staticmethod
    def from_json(text: str) -> "Network":
        doc = json.loads(text)
        n = int(doc["n_sites"])
        couplings = np.array(doc["couplings"], dtype=float).reshape(n, n)
        return build_network(couplings, doc["site_energies"], doc["dephasing_rates"])


def build_network(couplings, site_energies, dephasing_rates) -> Network:
    """Validate raw arrays and construct a Network.

    Raises DimensionMismatch, AsymmetricCoupling, or NegativeDephasing when
    the inputs violate the model assumptions.
    """
    kappa = np.asarray(couplings, dtype=float)
    beta = np.asarray(site_energies, dtype=float)
    gamma = np.asarray(dephasing_rates, dtype=float)

    if kappa.ndim != 2 or kappa.shape[0] != kappa.shape[1]:
        raise DimensionMismatch(f"couplings must be square, got shape {kappa.shape}")
    n = kappa.shape[0]
    if n < 2:
        raise DimensionMismatch(f"need at least 2 sites, got {n}")
    if beta.shape != (n,):
        raise DimensionMismatch(f"site_energies must have length {n}, got {beta.shape}")
    if gamma.shape != (n,):
        raise DimensionMismatch(f"dephasing_rates must have length {n}, got {gamma.shape}")
    if not np.array_equal(kappa, kappa.T):
        raise AsymmetricCoupling("couplings[m][n] must equal couplings[n][m] exactly")
    if np.any(np.diag(kappa) != 0.0):
        raise AsymmetricCoupling("couplings must have a zero diagonal")
    if np.any(gamma < 0.0):
        raise NegativeDephasing(f"dephasing_rates must be non-negative, got {gamma}")
    return Network(n, kappa, beta, gamma)


def reference_trimer(preset: str = "classical") -> Network:
    """The three-site reference network used throughout.

    preset selects the dephasing rates: 'classical' and 'quantum' carry the
    rates of the two fabricated waveguide ensembles; 'noiseless' sets all
    rates to zero.
    """
    presets = {
        "classical": TRIMER_GAMMA_CLASSICAL,
        "quantum": TRIMER_GAMMA_QUANTUM,
        "noiseless": (0.0, 0.0, 0.0),
    }
    if preset not in presets:
        raise ValueError(f"unknown preset {preset!r}; choose from {sorted(presets)}")
    return build_network(np.array(TRIMER_COUPLINGS), TRIMER_SITE_ENERGIES, presets[preset])


PIECEWISE_SEGMENTS = "piecewise_constant_segments"
WHITE_NOISE_WIENER = "white_noise_wiener"


@dataclass(frozen=True)
class NoiseSpec:
    """Stochastic site-energy model realizing given dephasing rates.

    The per-site standard deviation sigma and the correlation length dz are
    tied to the dephasing rate by gamma = sigma^2 * dz.
    """

    sigma: np.ndarray
    correlation_length: float
    model: str = PIECEWISE_SEGMENTS

    def __post_init__(self):
        object.__setattr__(self, "sigma", _readonly(np.asarray(self.sigma, dtype=float)))
        if self.correlation_length <= 0:
            raise ValueError("correlation_length must be positive")
        if np.any(self.sigma < 0):
            raise NegativeDephasing("sigma must be non-negative")
        if self.model not in (PIECEWISE_SEGMENTS, WHITE_NOISE_WIENER):
            raise ValueError(f"unknown noise model {self.model!r}")

    @property
    def gamma(self) -> np.ndarray:
        """Dephasing rates gamma = sigma^2 * correlation_length."""
        return self.sigma ** 2 * self.correlation_length

    @staticmethod
    def for_network(net: Network, correlation_length: float = 1.0,
                    model: str = PIECEWISE_SEGMENTS) -> "NoiseSpec":
        """Noise spec whose sigma reproduces the network's dephasing rates."""
        sigma = np.sqrt(net.dephasing_rates / correlation_length)
        return NoiseSpec(sigma, correlation_length, model)

    def matches_gamma(self, gamma: np.ndarray) -> bool:
        """True when sigma^2 * dz reproduces gamma.

        Allows a few ulp of slack for the sqrt/divide round trip taken by
        for_network.
        """
        mine = self.gamma
        target = np.asarray(gamma, dtype=float)
        if mine.shape != target.shape:
            return False
        return all(
            abs(a - b) <= 4.0 * math.ulp(max(abs(a), abs(b), 1e-300))
            for a, b in zip(mine, target)
        )
