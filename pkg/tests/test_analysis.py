import numpy as np
import pytest

import dephnet as dn
from dephnet.density import SITE_BASIS, DensityMatrix
from dephnet.engine import CorrelationMatrix
from conftest import random_network


def random_density(rng, d, basis=SITE_BASIS):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = x @ x.conj().T
    return DensityMatrix(d, rho / np.trace(rho).real, basis)


def test_coherence_norm_cases(quantum_net):
    diag = DensityMatrix(3, np.diag([0.2, 0.3, 0.5]).astype(complex))
    assert dn.coherence_norm(diag) == 0.0
    sep = dn.separable_pair(quantum_net, 0, 1, dn.BOSON)
    assert dn.coherence_norm(sep.rho) == pytest.approx(1.0)


def test_relative_entropy_cases():
    diag = DensityMatrix(3, np.diag([0.2, 0.3, 0.5]).astype(complex))
    assert dn.relative_entropy_coherence(diag) == pytest.approx(0.0, abs=1e-12)
    plus = DensityMatrix(2, np.full((2, 2), 0.5, dtype=complex))
    assert dn.relative_entropy_coherence(plus) == pytest.approx(1.0, abs=1e-12)


def test_trace_distance_cases():
    rng = np.random.default_rng(31)
    a = random_density(rng, 4)
    assert dn.trace_distance(a, a) == 0.0
    e0 = DensityMatrix(2, np.diag([1.0, 0.0]).astype(complex))
    e1 = DensityMatrix(2, np.diag([0.0, 1.0]).astype(complex))
    assert dn.trace_distance(e0, e1) == pytest.approx(1.0)
    with pytest.raises(dn.DimensionMismatch):
        dn.trace_distance(e0, random_density(rng, 3))


def test_trace_distance_metric_axioms():
    rng = np.random.default_rng(32)
    states = [random_density(rng, 3) for _ in range(6)]
    for a in states:
        for b in states:
            dab = dn.trace_distance(a, b)
            assert 0.0 <= dab <= 1.0 + 1e-12
            assert abs(dab - dn.trace_distance(b, a)) < 1e-12
            if a is not b:
                assert dab > 1e-10  # distinct random states
            for c in states:
                assert dab <= dn.trace_distance(a, c) + dn.trace_distance(c, b) + 1e-10


def test_similarity_cases():
    g = CorrelationMatrix(np.array([[0.3, 0.2], [0.2, 0.3]]))
    assert dn.similarity(g, g) == pytest.approx(1.0, abs=1e-12)
    a = CorrelationMatrix(np.array([[1.0, 0.0], [0.0, 0.0]]))
    b = CorrelationMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert dn.similarity(a, b) == 0.0
    with pytest.raises(dn.ZeroMatrix):
        dn.similarity(a, CorrelationMatrix(np.zeros((2, 2))))


def test_similarity_rescaling_invariance():
    rng = np.random.default_rng(33)
    a = CorrelationMatrix(rng.uniform(0.0, 1.0, size=(3, 3)))
    b = CorrelationMatrix(rng.uniform(0.0, 1.0, size=(3, 3)))
    base = dn.similarity(a, b)
    # powers of two rescale exactly
    assert dn.similarity(CorrelationMatrix(4.0 * a.g2), b) == base
    assert dn.similarity(a, CorrelationMatrix(0.25 * b.g2)) == base
    assert dn.similarity(CorrelationMatrix(3.0 * a.g2), b) == pytest.approx(base, rel=1e-12)


def test_detect_steady_state(quantum_net, gen2_quantum, steady_records):
    rec = steady_records["separable"]
    z_star = dn.detect_steady_state(gen2_quantum, rec, 1e-4)
    # pinned from the dense-exponential reference; the residual max-norm
    # crosses 1e-4 between z = 42 and z = 43
    assert z_star == pytest.approx(42.4, abs=0.2)
    assert dn.detect_steady_state(gen2_quantum, rec, 1e-12) is None


def test_detect_steady_state_noiseless(noiseless_net):
    gen = dn.single_particle_generator(noiseless_net)
    rec = dn.evolve_single(gen, dn.pure_site_state(3, 0), 100.0)
    assert dn.detect_steady_state(gen, rec, 1e-4) is None


def test_coherence_series_monotone_tail(gen1_classical):
    # start from a coherent superposition so there is coherence to lose
    psi = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
    rho0 = dn.site_density(np.outer(psi, psi.conj()))
    rec = dn.evolve_single(gen1_classical, rho0, 30.0)
    series = dn.coherence_series(rec)
    assert np.all(series.c_norm >= 0.0)
    assert np.all(series.c_rel_entropy >= 0.0)
    for values in (series.c_norm, series.c_rel_entropy):
        early = values[series.z_grid <= 2.0]
        assert values[-1] <= early.min()
    assert series.c_norm[-1] < 0.002


def test_two_particle_coherence_survives(quantum_net, steady_records):
    # indistinguishable inputs keep order-one coherence forever, while a
    # single particle under the same rates loses all of it
    final = steady_records["separable"].final()
    assert dn.coherence_norm(final) > 0.1
    gen1 = dn.single_particle_generator(quantum_net)
    single = dn.evolve_single(gen1, dn.pure_site_state(3, 0), 100.0)
    assert dn.coherence_norm(single.final()) < 0.01


def test_certify_dfs_trimer(quantum_net, gen2_quantum):
    report = dn.certify_dfs(quantum_net, gen2_quantum)
    assert len(report["zero_decay_elements"]) == 9 + 6
    assert len(report["decaying_elements"]) == 81 - 15
    rates = {tuple(map(tuple, e["index"])): e["rate"] for e in report["decaying_elements"]}
    g = quantum_net.dephasing_rates
    assert rates[((0, 1), (0, 2))] == pytest.approx(0.5 * (g[1] + g[2]), rel=1e-15)
    assert all(e["rate"] > 0.0 for e in report["decaying_elements"])


def test_certify_dfs_random_networks():
    rng = np.random.default_rng(34)
    for _ in range(10):
        net = random_network(rng, n=4)
        report = dn.certify_dfs(net)
        assert len(report["zero_decay_elements"]) == 16 + 12
