"""Pure-numpy kernel implementations.

Trajectory chunks are vectorized over the realization axis; the RK4 loop
leans on BLAS matvecs. Semantics match the numba backend exactly.
"""

from __future__ import annotations

import numpy as np


def rk4_samples(G, v0, dz, total_steps, stride, zero_idx):
    """Fixed-step RK4 on dv/dz = G v, sampling every `stride` steps.

    Returns (total_steps // stride + 1, len(v0)) with row 0 = v0. Entries
    listed in zero_idx are pinned to exact zero after every step.
    """
    v = v0.astype(np.complex128).copy()
    if zero_idx.size:
        v[zero_idx] = 0.0
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
        if zero_idx.size:
            v[zero_idx] = 0.0
        if step % stride == 0:
            out[step // stride] = v
    return out


def _segment_unitaries(H0, phi, dz_seg):
    """Batched one-segment site-basis propagators exp(i (H0 + diag(phi)) dz)."""
    m = phi.shape[0]
    n = H0.shape[0]
    H = np.broadcast_to(H0, (m, n, n)).copy()
    H[:, np.arange(n), np.arange(n)] += phi
    lam, V = np.linalg.eigh(H)
    ph = np.exp(1j * lam * dz_seg)
    return np.einsum("mij,mj,mkj->mik", V, ph, V.conj(), optimize=True)


def segment_single_chunk(H0, noise, dz_seg, checks, psi0):
    """Sum over chunk trajectories of psi psi^dagger at each checkpoint.

    noise: (M, S, n) pre-scaled segment energy offsets.
    checks: ascending 1-based segment counts at which to accumulate.
    """
    m, n_seg, n = noise.shape
    acc = np.zeros((len(checks), n, n), dtype=np.complex128)
    U = np.broadcast_to(np.eye(n, dtype=np.complex128), (m, n, n)).copy()
    ci = 0
    for k in range(n_seg):
        U = _segment_unitaries(H0, noise[:, k, :], dz_seg) @ U
        if ci < len(checks) and k + 1 == checks[ci]:
            psi = U @ psi0
            acc[ci] = np.einsum("mi,mj->ij", psi, psi.conj())
            ci += 1
    return acc


def _pair_amplitudes(U, amp0, sign):
    """Two-particle amplitudes from single-particle propagators.

    Psi_{p,q} = sum_{m,n} amp0_{m,n} (U_{p,n} U_{q,m} + sign * U_{p,m} U_{q,n});
    sign 0 selects the unsymmetrized product for distinguishable pairs.
    """
    direct = np.einsum("mn,Bpn,Bqm->Bpq", amp0, U, U, optimize=True)
    if sign == 0.0:
        return direct
    exch = np.einsum("mn,Bpm,Bqn->Bpq", amp0, U, U, optimize=True)
    return direct + sign * exch


def segment_two_chunk(H0, noise, dz_seg, checks, amp0, sign):
    """Sum over chunk trajectories of Psi Psi^dagger at each checkpoint."""
    m, n_seg, n = noise.shape
    D = n * n
    acc = np.zeros((len(checks), D, D), dtype=np.complex128)
    U = np.broadcast_to(np.eye(n, dtype=np.complex128), (m, n, n)).copy()
    ci = 0
    for k in range(n_seg):
        U = _segment_unitaries(H0, noise[:, k, :], dz_seg) @ U
        if ci < len(checks) and k + 1 == checks[ci]:
            psi = _pair_amplitudes(U, amp0, sign).reshape(m, D)
            acc[ci] = np.einsum("ma,mb->ab", psi, psi.conj())
            ci += 1
    return acc


def segment_propagators(H0, noise, dz_seg, checks):
    """Single-trajectory propagators at the given segment counts.

    noise: (S, n) for one realization; returns (C, n, n).
    """
    n = H0.shape[0]
    U = np.eye(n, dtype=np.complex128)
    out = np.empty((len(checks), n, n), dtype=np.complex128)
    ci = 0
    for k in range(noise.shape[0]):
        U = _segment_unitaries(H0, noise[None, k, :], dz_seg)[0] @ U
        if ci < len(checks) and k + 1 == checks[ci]:
            out[ci] = U
            ci += 1
    return out


def _wiener_step_matrix(U, beta, kappa, gamma, dwk, dz):
    """One Euler-Maruyama step of the Ito propagator equation.

    dU_{p,s} = (i beta_p U_{p,s} + i sum_r kappa_{p,r} U_{r,s}
                - gamma_p/2 U_{p,s}) dz + i sqrt(gamma_p) U_{p,s} dW_p,
    followed by renormalization of each column.
    """
    dU = ((1j * beta - 0.5 * gamma)[..., :, None] * U + 1j * (kappa @ U)) * dz \
        + 1j * (np.sqrt(gamma)[..., :, None] * dwk[..., :, None]) * U
    U = U + dU
    norms = np.sqrt(np.sum(np.abs(U) ** 2, axis=-2, keepdims=True))
    return U / norms


def wiener_propagators(beta, kappa, gamma, dn, dz, checks):
    """Single-trajectory white-noise propagators at the given step counts.

    dn: (S, n) standard normals; the Wiener increment is dn * sqrt(dz).
    """
    n = beta.size
    U = np.eye(n, dtype=np.complex128)
    out = np.empty((len(checks), n, n), dtype=np.complex128)
    sqdz = np.sqrt(dz)
    ci = 0
    for k in range(dn.shape[0]):
        U = _wiener_step_matrix(U, beta, kappa, gamma, dn[k] * sqdz, dz)
        if ci < len(checks) and k + 1 == checks[ci]:
            out[ci] = U
            ci += 1
    return out


def wiener_single_chunk(beta, kappa, gamma, dn, dz, checks, psi0):
    """Chunked Euler-Maruyama analogue of segment_single_chunk.

    dn: (M, S, n) standard normals.
    """
    m, n_steps, n = dn.shape
    acc = np.zeros((len(checks), n, n), dtype=np.complex128)
    U = np.broadcast_to(np.eye(n, dtype=np.complex128), (m, n, n)).copy()
    sqdz = np.sqrt(dz)
    ci = 0
    for k in range(n_steps):
        U = _wiener_step_matrix(U, beta[None, :], kappa, gamma[None, :], dn[:, k, :] * sqdz, dz)
        if ci < len(checks) and k + 1 == checks[ci]:
            psi = U @ psi0
            acc[ci] = np.einsum("mi,mj->ij", psi, psi.conj())
            ci += 1
    return acc


def wiener_two_chunk(beta, kappa, gamma, dn, dz, checks, amp0, sign):
    """Chunked Euler-Maruyama analogue of segment_two_chunk."""
    m, n_steps, n = dn.shape
    D = n * n
    acc = np.zeros((len(checks), D, D), dtype=np.complex128)
    U = np.broadcast_to(np.eye(n, dtype=np.complex128), (m, n, n)).copy()
    sqdz = np.sqrt(dz)
    ci = 0
    for k in range(n_steps):
        U = _wiener_step_matrix(U, beta[None, :], kappa, gamma[None, :], dn[:, k, :] * sqdz, dz)
        if ci < len(checks) and k + 1 == checks[ci]:
            psi = _pair_amplitudes(U, amp0, sign).reshape(m, D)
            acc[ci] = np.einsum("ma,mb->ab", psi, psi.conj())
            ci += 1
    return acc
