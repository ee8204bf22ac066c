import numpy as np
import pytest

import dephnet as dn
from dephnet.density import check_density
from dephnet.generators import pair_index
from dephnet.states import check_statistics


def test_density_matrix_validation():
    rho = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    dn.site_density(rho)  # valid pure state
    with pytest.raises(dn.InvariantViolation):
        check_density(np.array([[0.5, 0.5], [0.4, 0.5]], dtype=complex))
    with pytest.raises(dn.InvariantViolation):
        check_density(np.eye(2, dtype=complex))  # trace 2
    with pytest.raises(dn.InvariantViolation):
        check_density(np.array([[1.5, 0.0], [0.0, -0.5]], dtype=complex))


def test_pure_site_state():
    rho = dn.pure_site_state(3, 0)
    assert rho.trace() == 1.0
    assert rho.purity() == pytest.approx(1.0)
    assert rho.entries[0, 0] == 1.0
    with pytest.raises(dn.DimensionMismatch):
        dn.pure_site_state(3, 3)


def test_separable_boson_entries(quantum_net):
    state = dn.separable_pair(quantum_net, 0, 1, dn.BOSON)
    rho = state.rho.entries
    a, b = pair_index(0, 1, 3), pair_index(1, 0, 3)
    nz = np.nonzero(rho)
    assert len(nz[0]) == 4
    assert rho[a, a] == rho[b, b] == rho[a, b] == rho[b, a] == 0.5
    assert state.rho.trace() == pytest.approx(1.0)


def test_separable_fermion_entries(quantum_net):
    state = dn.separable_pair(quantum_net, 0, 1, dn.FERMION)
    rho = state.rho.entries
    a, b = pair_index(0, 1, 3), pair_index(1, 0, 3)
    assert rho[a, b] == rho[b, a] == -0.5
    assert state.rho.trace() == pytest.approx(1.0)
    with pytest.raises(dn.SameSiteFermion):
        dn.separable_pair(quantum_net, 1, 1, dn.FERMION)


def test_entangled_entries(quantum_net):
    state = dn.entangled_nn(quantum_net, 0, 1)
    rho = state.rho.entries
    ii, jj = pair_index(0, 0, 3), pair_index(1, 1, 3)
    assert rho[ii, jj] == 0.5
    assert state.rho.trace() == pytest.approx(1.0)
    assert state.rho.purity() == pytest.approx(1.0)
    with pytest.raises(dn.FermionNotAllowed):
        dn.entangled_nn(quantum_net, 0, 1, statistics=dn.FERMION)


def test_classically_correlated_entries(quantum_net):
    state = dn.classically_correlated_mix(quantum_net, 0, 1)
    rho = state.rho.entries
    assert np.count_nonzero(rho) == 2
    assert dn.coherence_norm(state.rho) == 0.0
    assert state.rho.purity() == pytest.approx(0.5)
    with pytest.raises(dn.FermionNotAllowed):
        dn.classically_correlated_mix(quantum_net, 0, 1, statistics=dn.FERMION)


def test_distinguishable_entries(quantum_net):
    state = dn.distinguishable_incoherent(quantum_net, 0, 1)
    rho = state.rho.entries
    a, b = pair_index(0, 1, 3), pair_index(1, 0, 3)
    assert rho[a, a] == rho[b, b] == 0.5
    assert np.count_nonzero(rho) == 2
    assert dn.coherence_norm(state.rho) == 0.0
    assert state.rho.trace() == pytest.approx(1.0)
    assert state.statistics == dn.DISTINGUISHABLE


def test_exchange_symmetry_checks(quantum_net):
    boson = dn.separable_pair(quantum_net, 0, 1, dn.BOSON)
    check_statistics(boson.rho.entries, 3, dn.BOSON)
    with pytest.raises(dn.InvariantViolation):
        check_statistics(boson.rho.entries, 3, dn.FERMION)
    fermion = dn.separable_pair(quantum_net, 0, 1, dn.FERMION)
    check_statistics(fermion.rho.entries, 3, dn.FERMION)
    bad = np.array(fermion.rho.entries)
    bad[pair_index(0, 0, 3), pair_index(0, 0, 3)] += 1e-6
    with pytest.raises(dn.InvariantViolation):
        check_statistics(bad, 3, dn.FERMION)


def test_explicit_state_validation(quantum_net):
    boson = dn.separable_pair(quantum_net, 0, 1, dn.BOSON)
    again = dn.explicit_state(quantum_net, boson.rho.entries, dn.BOSON)
    assert again.statistics == dn.BOSON
    with pytest.raises(dn.DimensionMismatch):
        dn.explicit_state(quantum_net, np.eye(4, dtype=complex) / 4, dn.BOSON)
