#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Covers the two hot paths: RK4 superoperator stepping and segment-model
trajectory ensembles. Both backends are imported directly so one process
can time the two side by side regardless of DEPHNET_DISABLE_NUMBA.
"""

import argparse
import time

import numpy as np

import dephnet as dn
from dephnet._kernels import numba_backend, numpy_backend


def timeit(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    net = dn.reference_trimer("quantum")
    G = dn.two_particle_generator(net).matrix
    v0 = np.array(dn.separable_pair(net, 0, 1, dn.BOSON).rho.entries).reshape(-1)
    zero = np.empty(0, dtype=np.int64)

    rng = np.random.default_rng(0)
    H0 = net.hamiltonian()
    sigma = np.sqrt(net.dephasing_rates / 0.01)
    noise = rng.standard_normal((64, 1200, 3)) * sigma
    checks = np.array([400, 800, 1200], dtype=np.int64)
    psi0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    amp0 = np.zeros((3, 3), dtype=complex)
    amp0[1, 0] = 1.0

    cases = {
        "rk4 81x81, 20k steps": lambda b: b.rk4_samples(G, v0, 1e-3, 20_000, 1000, zero),
        "segment single, 64 traj x 1200 segs": lambda b: b.segment_single_chunk(
            H0, noise, 0.01, checks, psi0),
        "segment two-particle, 64 traj x 1200 segs": lambda b: b.segment_two_chunk(
            H0, noise, 0.01, checks, amp0, 1.0),
    }

    # warm the jit before timing
    for make in cases.values():
        make(numba_backend)

    print(f"{'case':45s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, make in cases.items():
        t_np = timeit(lambda: make(numpy_backend), args.repeat)
        t_nb = timeit(lambda: make(numba_backend), args.repeat)
        print(f"{name:45s} {t_np:9.3f}s {t_nb:9.3f}s {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
