import numpy as np
import pytest

import dephnet as dn


@pytest.fixture(scope="session")
def classical_net():
    return dn.reference_trimer("classical")


@pytest.fixture(scope="session")
def quantum_net():
    return dn.reference_trimer("quantum")


@pytest.fixture(scope="session")
def noiseless_net():
    return dn.reference_trimer("noiseless")


@pytest.fixture(scope="session")
def gen1_classical(classical_net):
    return dn.single_particle_generator(classical_net)


@pytest.fixture(scope="session")
def gen2_quantum(quantum_net):
    return dn.two_particle_generator(quantum_net)


@pytest.fixture(scope="session")
def steady_records(quantum_net, gen2_quantum):
    """z=100 two-particle records for the four standard inputs."""
    inputs = {
        "separable": dn.separable_pair(quantum_net, 0, 1, dn.BOSON),
        "entangled": dn.entangled_nn(quantum_net, 0, 1),
        "mixture": dn.classically_correlated_mix(quantum_net, 0, 1),
        "distinguishable": dn.distinguishable_incoherent(quantum_net, 0, 1),
        "fermion": dn.separable_pair(quantum_net, 0, 1, dn.FERMION),
    }
    return {name: dn.evolve_two(gen2_quantum, state, 100.0)
            for name, state in inputs.items()}


def random_network(rng, n=None, gamma_floor=0.0):
    """Connected random network with non-negative rates."""
    if n is None:
        n = int(rng.integers(2, 7))
    kappa = rng.normal(0.0, 1.0, size=(n, n))
    kappa = 0.5 * (kappa + kappa.T)
    np.fill_diagonal(kappa, 0.0)
    # ring couplings guarantee connectivity
    for i in range(n):
        j = (i + 1) % n
        if kappa[i, j] == 0.0:
            kappa[i, j] = kappa[j, i] = 0.5
    beta = rng.normal(0.0, 1.0, size=n)
    gamma = gamma_floor + rng.uniform(0.0, 2.0, size=n)
    return dn.build_network(kappa, beta, gamma)


def steady_state_from_invariants(net, rho0):
    """Closed-form steady state of the two-particle flow.

    For a connected network with every rate positive, the flow's only
    conserved functionals are the trace and the expectation of the
    particle-exchange operator P, and its fixed points are spanned by the
    identity and P. Solving a I + b P against both invariants of rho0
    gives the state every initial condition relaxes to.
    """
    n = net.n_sites
    D = n * n
    P = dn.swap_matrix(n)
    t0 = float(np.trace(rho0).real)
    s0 = float(np.trace(P @ rho0).real)
    A = np.array([[D, n], [n, D]], dtype=float)
    a, b = np.linalg.solve(A, [t0, s0])
    return a * np.eye(D) + b * P
