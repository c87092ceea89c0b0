"""Fock engine: construction, evolution, displacement, moments."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize
from scipy.special import gammaln
from scipy.stats import poisson

from kerrshift import (
    AmplitudeTooLarge,
    KerrScenario,
    OrderTooHigh,
    ZeroMeanPhoton,
    coherent_state,
    displace,
    field_moment,
    g_factors,
    kerr_evolve,
    photon_distribution,
    photon_statistics,
    shift_amplitude,
    DisplacementSetting,
)


def test_vacuum_state():
    state = coherent_state(0)
    assert state.amplitudes[0] == 1.0
    assert np.all(state.amplitudes[1:] == 0)
    assert state.n_trunc >= 1
    assert state.tail_mass == 0.0


def test_coherent_alpha2_is_poissonian():
    stats = photon_statistics(coherent_state(2.0))
    assert stats.mean == pytest.approx(4.0, abs=1e-10)
    assert stats.variance == pytest.approx(4.0, abs=1e-9)
    assert stats.fano == pytest.approx(1.0, abs=1e-10)


def test_coherent_alpha10_mass_against_poisson_tail():
    # oracle: direct Poisson tail summation. The raw tail above n=160 for
    # lambda=100 is 1.26e-8, so the mass below 160 sits at 1 - 2e-8 level,
    # while the full truncated state carries everything but < 1e-12.
    state = coherent_state(10.0)
    mass_160 = float(np.sum(photon_distribution(state)[:161]))
    assert mass_160 == pytest.approx(float(poisson.cdf(160, 100.0)), abs=1e-10)
    assert mass_160 >= 1.0 - 2e-8
    assert float(np.sum(photon_distribution(state))) == pytest.approx(1.0, abs=1e-12)
    assert state.tail_mass < 1e-12
    assert state.n_trunc >= 220


def test_coherent_validation():
    with pytest.raises(ValueError):
        coherent_state(2.0, tol=1e-3)
    with pytest.raises(ValueError):
        coherent_state(2.0, tol=0.0)
    with pytest.raises(AmplitudeTooLarge):
        coherent_state(201.0)


def test_kerr_identity_at_zero():
    state = coherent_state(2.0)
    out = kerr_evolve(state, 0.0)
    assert np.array_equal(out.amplitudes, state.amplitudes)


@given(kz=st.floats(-2.0, 2.0), alpha=st.floats(0.3, 6.0))
@settings(max_examples=30, deadline=None)
def test_kerr_preserves_photon_distribution(kz, alpha):
    # diagonal phases: probabilities move by at most one rounding of the
    # complex multiply
    state = coherent_state(alpha)
    before = photon_distribution(state)
    after = photon_distribution(kerr_evolve(state, kz))
    assert np.max(np.abs(after - before)) < 1e-15


def test_displaced_vacuum_is_coherent():
    delta = 1.3 - 0.4j
    displaced = displace(coherent_state(0), delta)
    target = coherent_state(delta)
    n = min(displaced.n_trunc, target.n_trunc) + 1
    assert np.max(np.abs(displaced.amplitudes[:n] - target.amplitudes[:n])) < 1e-10


def test_displace_zero_is_identity():
    state = kerr_evolve(coherent_state(3.0), 0.07)
    assert displace(state, 0) is state


@given(re=st.floats(-1.4, 1.4), im=st.floats(-1.4, 1.4))
@settings(max_examples=15, deadline=None)
def test_displacement_round_trip(re, im):
    delta = complex(re, im)  # |delta| <= 2
    state = kerr_evolve(coherent_state(3.0), 0.05)
    back = displace(displace(state, delta), -delta)
    overlap = np.vdot(back.amplitudes[: state.n_trunc + 1], state.amplitudes)
    assert abs(overlap) ** 2 >= 1.0 - 1e-9


def test_norm_preserved_through_pipeline():
    state = displace(kerr_evolve(coherent_state(4.0 + 1.0j), 0.03), 0.8 - 0.2j)
    assert float(np.sum(photon_distribution(state))) == pytest.approx(1.0, abs=1e-12)


def test_field_moment_coherent():
    alpha = 1.7 - 0.6j
    state = coherent_state(alpha)
    assert field_moment(state, 1, 1) == pytest.approx(abs(alpha) ** 2, rel=1e-12)
    assert field_moment(state, 0, 1) == pytest.approx(alpha, rel=1e-12)
    assert field_moment(state, 1, 0) == pytest.approx(np.conj(alpha), rel=1e-12)


def test_field_moment_order_cap():
    state = coherent_state(1.0)
    with pytest.raises(OrderTooHigh):
        field_moment(state, 3, 2)


def _kerr_moment_oracles(alpha, kz):
    scenario = KerrScenario(alpha, kz)
    g1, g2 = g_factors(scenario)
    a2 = abs(alpha) ** 2
    first = alpha * np.exp(1j * kz) * np.exp(2j * a2 * kz) * g1
    second = alpha ** 2 * np.exp(4j * kz) * np.exp(4j * a2 * kz) * g2
    dag_sq = alpha * a2 * np.exp(3j * kz) * np.exp(2j * a2 * kz) * g1
    return first, second, dag_sq


def test_kerr_moments_match_closed_forms():
    alpha, kz = 2.0, 0.1
    state = kerr_evolve(coherent_state(alpha), kz)
    first, second, dag_sq = _kerr_moment_oracles(alpha, kz)
    assert field_moment(state, 0, 1) == pytest.approx(first, rel=1e-10)
    assert field_moment(state, 1, 0) == pytest.approx(np.conj(first), rel=1e-10)
    assert field_moment(state, 0, 2) == pytest.approx(second, rel=1e-10)
    assert field_moment(state, 1, 2) == pytest.approx(dag_sq, rel=1e-10)


@pytest.mark.parametrize("alpha,kz_frac", [
    (2.0, 0.5), (8.5 + 3.0j, 1.0), (17.0, 2.0), (-21.0 + 21.0j, 3.0), (30.0, 3.0),
])
def test_moment_oracle_equivalence_to_large_alpha(alpha, kz_frac):
    # closed forms vs direct summation, up to |alpha| = 30 and kz = 3 (Kz)_app
    a = abs(alpha)
    kz = kz_frac * (np.sqrt(3) / 2) ** (1 / 3) / a ** 2
    state = kerr_evolve(coherent_state(alpha), kz)
    first, second, dag_sq = _kerr_moment_oracles(alpha, kz)
    assert abs(field_moment(state, 0, 1) - first) <= 1e-8 * abs(first)
    assert abs(field_moment(state, 0, 2) - second) <= 1e-8 * abs(second)
    assert abs(field_moment(state, 1, 2) - dag_sq) <= 1e-8 * abs(dag_sq)


def test_photon_statistics_vacuum_raises():
    state = coherent_state(0)
    assert photon_distribution(state)[0] == 1.0
    with pytest.raises(ZeroMeanPhoton):
        photon_statistics(state)


def test_photon_distribution_is_poisson_for_coherent():
    alpha = 3.0
    probs = photon_distribution(coherent_state(alpha))
    n = np.arange(len(probs))
    expected = np.exp(-alpha ** 2 + 2 * n * np.log(alpha) - gammaln(n + 1))
    assert np.max(np.abs(probs - expected)) < 1e-12


def test_displaced_kerr_spotlight_alpha10():
    # variance ~ 1.99 and mean slightly below 100 at the published optimum
    from kerrshift import optimize_beta

    scenario = KerrScenario(10.0, 0.0218)
    opt = optimize_beta(scenario)
    delta = shift_amplitude(scenario, DisplacementSetting(beta=opt.beta_opt))
    state = displace(kerr_evolve(coherent_state(10.0), 0.0218), delta)
    stats = photon_statistics(state)
    assert stats.variance == pytest.approx(1.99, abs=0.05)
    assert abs(stats.mean - 98.6) < 0.7
    assert stats.fano == pytest.approx(opt.fano_min, abs=1e-9)


def _fock_fano_minimum(state, seed_delta):
    def objective(xy):
        shifted = displace(state, complex(xy[0], xy[1]))
        return photon_statistics(shifted).fano

    res = minimize(objective, [seed_delta.real, seed_delta.imag], method="Nelder-Mead",
                   options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 4000})
    return res.fun


def test_hamiltonian_variant_is_a_rigid_rotation():
    alpha, kz = 3.0, 0.11
    base = coherent_state(alpha)
    state_sq = kerr_evolve(base, kz, variant="n_squared")
    state_nn = kerr_evolve(base, kz, variant="n_n_minus_1")
    # field moments differ by the rigid rotation e^{-i kz}
    rot = np.exp(-1j * kz)
    assert field_moment(state_nn, 0, 1) == pytest.approx(
        rot * field_moment(state_sq, 0, 1), rel=1e-12)
    assert field_moment(state_nn, 0, 2) == pytest.approx(
        rot ** 2 * field_moment(state_sq, 0, 2), rel=1e-12)
    # the optimally displaced Fano factor is rotation invariant
    scenario = KerrScenario(alpha, kz)
    from kerrshift import optimize_beta

    seed = shift_amplitude(scenario, DisplacementSetting(beta=optimize_beta(scenario).beta_opt))
    f_sq = _fock_fano_minimum(state_sq, seed)
    f_nn = _fock_fano_minimum(state_nn, seed * rot)
    assert abs(f_sq - f_nn) < 1e-8


def test_kerr_variant_validation():
    with pytest.raises(ValueError):
        kerr_evolve(coherent_state(1.0), 0.1, variant="cubic")
