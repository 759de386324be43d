"""Separability witness: closed-form energy, Fock oracle, optimizer."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ringcat.witness as witness_mod
from ringcat import (
    ContractError,
    DomainError,
    OptimizationError,
    RingParams,
    SeparableAnsatz,
    build_basis,
    build_site_hamiltonian,
    condensate_vector,
    lowest_eigenpairs,
    minimize_separable_energy,
    separable_energy,
    separable_energy_fock,
)


def test_uniform_condensate_energy_closed_form():
    # u = (1,1,1)/sqrt(3): E = -2 N J cos(phi) + U N (N-1) / 3
    u = np.ones(3) / np.sqrt(3)
    for phi in (0.0, 0.4, np.pi / 3):
        p = RingParams.uniform(M=3, N=4, U=0.7, J=1.2, phi=phi)
        expected = -2 * 4 * 1.2 * np.cos(phi) + 0.7 * 4 * 3 / 3
        assert separable_energy(u, p) == pytest.approx(expected, abs=1e-12)


def test_single_site_condensate_pays_full_interaction():
    u = np.array([1.0, 0.0, 0.0])
    p = RingParams.uniform(M=3, N=5, U=0.9, J=1.0, phi=0.3)
    assert separable_energy(u, p) == pytest.approx(0.9 * 5 * 4, abs=1e-12)


def test_flow_mode_condensate_tracks_single_branch_dispersion():
    # clockwise-mode condensate u_j = e^{-2 pi i j/3}/sqrt(3):
    # E = -2 N J cos(phi - 2 pi / 3) + U N (N-1)/3
    u = np.exp(-2j * np.pi * np.arange(3) / 3) / np.sqrt(3)
    N, U, J = 3, 0.5, 1.0
    for phi in (0.0, np.pi / 6, np.pi / 3):
        p = RingParams.uniform(M=3, N=N, U=U, J=J, phi=phi)
        expected = -2 * N * J * np.cos(phi - 2 * np.pi / 3) + U * N * (N - 1) / 3
        assert separable_energy(u, p) == pytest.approx(expected, abs=1e-12)
    # at the crossing the two branch condensates are degenerate
    p = RingParams.uniform(M=3, N=N, U=U, J=J, phi=np.pi / 3)
    u0 = np.ones(3) / np.sqrt(3)
    assert separable_energy(u, p) == pytest.approx(separable_energy(u0, p), abs=1e-10)


def _random_unit(rng, M=3):
    u = rng.standard_normal(M) + 1j * rng.standard_normal(M)
    return u / np.linalg.norm(u)


def test_closed_form_matches_fock_expectation_on_random_ansatze():
    rng = np.random.default_rng(11)
    for N in (2, 3, 4):
        basis = build_basis(3, N)
        for _ in range(34):  # ~100 total across the three fillings
            u = _random_unit(rng)
            p = RingParams(
                M=3,
                N=N,
                U=float(rng.uniform(0, 2)),
                J=tuple(rng.uniform(0.2, 1.5, size=3)),
                phi=tuple(rng.uniform(-1.5, 1.5, size=3)),
            )
            a = separable_energy(u, p)
            b = separable_energy_fock(u, p, basis)
            assert a == pytest.approx(b, abs=1e-9 * max(1.0, abs(b)))


def test_separable_energies_respect_variational_bound():
    rng = np.random.default_rng(5)
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=np.pi / 3)
    basis = build_basis(3, 3)
    e0 = float(lowest_eigenpairs(build_site_hamiltonian(p, basis), 1).eigenvalues[0])
    for _ in range(200):
        assert separable_energy(_random_unit(rng), p) >= e0 - 1e-9


def test_condensate_vector_examples():
    basis = build_basis(3, 2)
    v = condensate_vector(np.array([1.0, 0.0, 0.0]), basis)
    assert v[basis.index_of((2, 0, 0))] == pytest.approx(1.0)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    one = build_basis(3, 1)
    w = condensate_vector(np.ones(3) / np.sqrt(3), one)
    assert np.allclose(w, np.ones(3) / np.sqrt(3))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000), N=st.integers(1, 5))
def test_condensate_vector_is_normalized(seed, N):
    basis = build_basis(3, N)
    u = _random_unit(np.random.default_rng(seed))
    assert np.linalg.norm(condensate_vector(u, basis)) == pytest.approx(1.0)


def test_ansatz_normalization_contract():
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=0.0)
    with pytest.raises(ContractError):
        separable_energy(np.array([1.0, 1.0, 0.0]), p)
    with pytest.raises(DomainError):
        separable_energy(np.array([1.0, 0.0]), p)
    with pytest.raises(DomainError):
        SeparableAnsatz.from_amplitudes(np.zeros(3))


def test_ansatz_gauge_is_first_nonzero_real_positive():
    a = SeparableAnsatz.from_amplitudes(np.array([0.0, 1j, 1.0]))
    assert a.amplitudes[1].real == pytest.approx(abs(a.amplitudes[1]))
    assert a.amplitudes[1].imag == pytest.approx(0.0, abs=1e-15)


def test_minimizer_recovers_uniform_condensate_without_twist():
    # U = 0, phi = 0: the zero-flow condensate is the exact ground state
    p = RingParams.uniform(M=3, N=3, U=0.0, J=1.0, phi=0.0)
    rep = minimize_separable_energy(p, restarts=12, seed=3)
    assert rep.margin == pytest.approx(0.0, abs=1e-8)
    assert not rep.certified
    assert rep.e_sep_min == pytest.approx(-6.0, abs=1e-8)
    mags = np.abs(rep.argmin.amplitudes)
    assert np.allclose(mags, 1 / np.sqrt(3), atol=1e-4)


def test_positive_margin_at_the_crossing():
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=np.pi / 3)
    rep = minimize_separable_energy(p, restarts=32, seed=7)
    assert rep.certified and rep.margin > 0
    # best separable state hits the first excited level exactly: the exact
    # ground is the entangled cat of the two branch condensates
    assert rep.e_sep_min == pytest.approx(-2.0, abs=1e-9)
    assert rep.margin == pytest.approx(0.3142659426826657, abs=1e-9)
    assert rep.restarts_converged >= 30


def test_positive_margin_without_twist_when_interacting():
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=0.0)
    rep = minimize_separable_energy(p, restarts=16, seed=2)
    assert rep.certified
    assert rep.e_sep_min == pytest.approx(-5.0, abs=1e-9)
    assert rep.margin == pytest.approx(0.0959322802724945, abs=1e-8)


def test_witness_determinism_and_seed_dependence():
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=np.pi / 3)
    a = minimize_separable_energy(p, restarts=8, seed=1)
    b = minimize_separable_energy(p, restarts=8, seed=1)
    assert np.array_equal(a.argmin.amplitudes, b.argmin.amplitudes)
    assert a.e_sep_min == b.e_sep_min
    c = minimize_separable_energy(p, restarts=8, seed=99)
    assert c.e_sep_min == pytest.approx(a.e_sep_min, abs=1e-7)


def test_restart_validation():
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=0.0)
    with pytest.raises(DomainError):
        minimize_separable_energy(p, restarts=0)


def test_all_restarts_failing_raises(monkeypatch):
    monkeypatch.setitem(witness_mod._NM_OPTIONS, "maxfev", 1)
    p = RingParams.uniform(M=3, N=3, U=0.5, J=1.0, phi=np.pi / 3)
    with pytest.raises(OptimizationError):
        minimize_separable_energy(p, restarts=4, seed=0)
