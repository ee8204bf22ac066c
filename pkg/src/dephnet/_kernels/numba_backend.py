"""Numba-jitted kernel implementations.

Loops are written per trajectory; nogil lets chunk workers overlap. The
accumulation order inside a chunk is trajectory-major, matching the numpy
backend's einsum reductions only up to round-off, which is why backends
are compared with tolerances rather than bit equality.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True, fastmath=False)


@njit(**_JIT)
def rk4_samples(G, v0, dz, total_steps, stride, zero_idx):
    v = v0.astype(np.complex128).copy()
    for i in zero_idx:
        v[i] = 0.0
    n_out = total_steps // stride + 1
    out = np.empty((n_out, v.size), dtype=np.complex128)
    out[0] = v
    half = 0.5 * dz
    sixth = dz / 6.0
    for step in range(1, total_steps + 1):
        k1 = G @ v
        k2 = G @ (v + half * k1)
        k3 = G @ (v + half * k2)
        k4 = G @ (v + dz * k3)
        v = v + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        for i in zero_idx:
            v[i] = 0.0
        if step % stride == 0:
            out[step // stride] = v
    return out


@njit(**_JIT)
def _segment_unitary(H0, phi, dz_seg):
    n = H0.shape[0]
    H = H0.copy()
    for i in range(n):
        H[i, i] += phi[i]
    lam, V = np.linalg.eigh(H)
    Vc = V.astype(np.complex128)
    ph = np.exp(1j * lam * dz_seg)
    return (Vc * ph.reshape(1, n)) @ Vc.T


@njit(**_JIT)
def _accumulate_outer(acc, psi):
    d = psi.size
    for i in range(d):
        pi = psi[i]
        for j in range(d):
            acc[i, j] += pi * np.conj(psi[j])


@njit(**_JIT)
def _pair_amplitudes_one(U, amp0, sign):
    n = U.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for p in range(n):
        for q in range(n):
            s = 0.0 + 0.0j
            for m in range(n):
                for k in range(n):
                    if amp0[m, k] != 0.0:
                        term = U[p, k] * U[q, m]
                        if sign != 0.0:
                            term = term + sign * (U[p, m] * U[q, k])
                        s += amp0[m, k] * term
            out[p, q] = s
    return out


@njit(**_JIT)
def segment_single_chunk(H0, noise, dz_seg, checks, psi0):
    m, n_seg, n = noise.shape
    acc = np.zeros((len(checks), n, n), dtype=np.complex128)
    for t in range(m):
        U = np.eye(n, dtype=np.complex128)
        ci = 0
        for k in range(n_seg):
            U = _segment_unitary(H0, noise[t, k], dz_seg) @ U
            if ci < len(checks) and k + 1 == checks[ci]:
                psi = U @ psi0
                _accumulate_outer(acc[ci], psi)
                ci += 1
    return acc


@njit(**_JIT)
def segment_two_chunk(H0, noise, dz_seg, checks, amp0, sign):
    m, n_seg, n = noise.shape
    D = n * n
    acc = np.zeros((len(checks), D, D), dtype=np.complex128)
    for t in range(m):
        U = np.eye(n, dtype=np.complex128)
        ci = 0
        for k in range(n_seg):
            U = _segment_unitary(H0, noise[t, k], dz_seg) @ U
            if ci < len(checks) and k + 1 == checks[ci]:
                psi = _pair_amplitudes_one(U, amp0, sign).reshape(D)
                _accumulate_outer(acc[ci], psi)
                ci += 1
    return acc


@njit(**_JIT)
def segment_propagators(H0, noise, dz_seg, checks):
    n = H0.shape[0]
    U = np.eye(n, dtype=np.complex128)
    out = np.empty((len(checks), n, n), dtype=np.complex128)
    ci = 0
    for k in range(noise.shape[0]):
        U = _segment_unitary(H0, noise[k], dz_seg) @ U
        if ci < len(checks) and k + 1 == checks[ci]:
            out[ci] = U
            ci += 1
    return out


@njit(**_JIT)
def _wiener_step(U, beta, kappa, gamma, dwk, dz):
    n = beta.size
    dU = (1j * (kappa @ U)) * dz
    for p in range(n):
        coef = (1j * beta[p] - 0.5 * gamma[p]) * dz + 1j * np.sqrt(gamma[p]) * dwk[p]
        for s in range(n):
            dU[p, s] += coef * U[p, s]
    U = U + dU
    for s in range(n):
        norm = 0.0
        for p in range(n):
            norm += U[p, s].real ** 2 + U[p, s].imag ** 2
        norm = np.sqrt(norm)
        for p in range(n):
            U[p, s] /= norm
    return U


@njit(**_JIT)
def wiener_propagators(beta, kappa, gamma, dn, dz, checks):
    n = beta.size
    kap = kappa.astype(np.complex128)
    U = np.eye(n, dtype=np.complex128)
    out = np.empty((len(checks), n, n), dtype=np.complex128)
    sqdz = np.sqrt(dz)
    ci = 0
    for k in range(dn.shape[0]):
        U = _wiener_step(U, beta, kap, gamma, dn[k] * sqdz, dz)
        if ci < len(checks) and k + 1 == checks[ci]:
            out[ci] = U
            ci += 1
    return out


@njit(**_JIT)
def wiener_single_chunk(beta, kappa, gamma, dn, dz, checks, psi0):
    m, n_steps, n = dn.shape
    kap = kappa.astype(np.complex128)
    acc = np.zeros((len(checks), n, n), dtype=np.complex128)
    sqdz = np.sqrt(dz)
    for t in range(m):
        U = np.eye(n, dtype=np.complex128)
        ci = 0
        for k in range(n_steps):
            U = _wiener_step(U, beta, kap, gamma, dn[t, k] * sqdz, dz)
            if ci < len(checks) and k + 1 == checks[ci]:
                psi = U @ psi0
                _accumulate_outer(acc[ci], psi)
                ci += 1
    return acc


@njit(**_JIT)
def wiener_two_chunk(beta, kappa, gamma, dn, dz, checks, amp0, sign):
    m, n_steps, n = dn.shape
    kap = kappa.astype(np.complex128)
    D = n * n
    acc = np.zeros((len(checks), D, D), dtype=np.complex128)
    sqdz = np.sqrt(dz)
    for t in range(m):
        U = np.eye(n, dtype=np.complex128)
        ci = 0
        for k in range(n_steps):
            U = _wiener_step(U, beta, kap, gamma, dn[t, k] * sqdz, dz)
            if ci < len(checks) and k + 1 == checks[ci]:
                psi = _pair_amplitudes_one(U, amp0, sign).reshape(D)
                _accumulate_outer(acc[ci], psi)
                ci += 1
    return acc
