"""Density matrices and their validation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvariantViolation

SITE_BASIS = "site"
PAIR_BASIS = "ordered_pair"

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-8


@dataclass(frozen=True)
class DensityMatrix:
    """Complex Hermitian unit-trace matrix over a site or ordered-pair basis."""

    dim: int
    entries: np.ndarray
    basis_tag: str = SITE_BASIS

    def __post_init__(self):
        m = np.ascontiguousarray(np.asarray(self.entries, dtype=complex))
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"expected {(self.dim, self.dim)}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def validate(self) -> "DensityMatrix":
        check_density(self.entries)
        return self

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)


def check_density(rho: np.ndarray,
                  hermiticity_tol: float = HERMITICITY_TOL,
                  trace_tol: float = TRACE_TOL,
                  positivity_tol: float = POSITIVITY_TOL) -> None:
    """Raise InvariantViolation unless rho is Hermitian, unit-trace, PSD."""
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > hermiticity_tol:
        raise InvariantViolation(f"Hermiticity violated by {herm:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise InvariantViolation(f"trace deviates from 1 by {abs(tr - 1.0):.3e}")
    lo = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    if lo < -positivity_tol:
        raise InvariantViolation(f"negative eigenvalue {lo:.3e}")


def site_density(rho: np.ndarray) -> DensityMatrix:
    rho = np.asarray(rho, dtype=complex)
    return DensityMatrix(rho.shape[0], rho, SITE_BASIS).validate()


def pair_density(rho: np.ndarray) -> DensityMatrix:
    rho = np.asarray(rho, dtype=complex)
    return DensityMatrix(rho.shape[0], rho, PAIR_BASIS).validate()


def pure_site_state(n: int, site: int) -> DensityMatrix:
    """|site><site| on an n-site network (site is 0-based)."""
    if not 0 <= site < n:
        raise DimensionMismatch(f"site {site} out of range for {n} sites")
    rho = np.zeros((n, n), dtype=complex)
    rho[site, site] = 1.0
    return DensityMatrix(n, rho, SITE_BASIS)
