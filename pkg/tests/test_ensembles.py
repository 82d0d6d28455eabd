import numpy as np
from hypothesis import given
from hypothesis.strategies import floats
from pytest import approx, mark, raises

from seqrx.constants import families
from seqrx.ensembles import (
    ChannelParams,
    StateFamily,
    analytic_overlap,
    as_family,
    binary_entropy,
    bpsk_average_spectrum,
    bpsk_capacity,
    codeword_state,
    g_capacity,
    holevo_capacity,
    phase_average,
    private_capacity,
    reading_state,
)
from seqrx.errors import InvalidParams, UnknownFamily, UnsupportedFamily
from seqrx.fockspace import FockCutoff, coherent_state, entropy, thermal_state, trace_distance


def test_g_capacity_values():
    assert g_capacity(0.0) == 0.0
    assert g_capacity(1.0) == approx(2.0, abs=1e-12)
    assert g_capacity(0.5) == approx(1.377443, abs=1e-6)
    with raises(InvalidParams):
        g_capacity(-0.1)


def test_g_capacity_is_increasing_and_concave():
    values = np.array([g_capacity(x) for x in np.linspace(0.0, 20.0, 401)])
    assert np.all(np.diff(values) > 0)
    assert np.all(np.diff(values, n=2) < 0)


def test_holevo_capacity_of_lossless_channel():
    assert holevo_capacity(ChannelParams(eta=1.0, ns=1.0)) == approx(2.0, abs=1e-12)
    assert holevo_capacity(ChannelParams(eta=0.5, ns=2.0)) == approx(2.0, abs=1e-12)


def test_private_capacity_vanishes_at_half_transmissivity():
    for ns in (0.1, 1.0, 2.0, 7.5):
        assert private_capacity(ChannelParams(eta=0.5, ns=ns)) == 0.0


def test_private_capacity_is_below_holevo_capacity():
    params = ChannelParams(eta=0.8, ns=3.0)
    assert 0.0 < private_capacity(params) < holevo_capacity(params)


def test_bpsk_capacity_at_half_ln2():
    assert bpsk_capacity(np.log(2.0) / 2.0) == approx(binary_entropy(0.75), abs=1e-9)
    assert binary_entropy(0.75) == approx(0.811278, abs=1e-6)


def test_bpsk_capacity_is_entropy_of_average_state():
    ns = 0.3
    spectrum = bpsk_average_spectrum(ns)
    assert spectrum.sum() == approx(1.0)
    assert bpsk_capacity(ns) == approx(-np.sum(spectrum * np.log2(spectrum)), abs=1e-12)
    assert bpsk_capacity(ns) < g_capacity(ns)


def test_channel_params_validation():
    with raises(InvalidParams):
        ChannelParams(eta=1.5, ns=1.0)
    with raises(InvalidParams):
        ChannelParams(eta=0.5, ns=-1.0)


def test_state_family():
    assert StateFamily(families.READING_III, 1.0).modes_per_symbol == 2
    assert StateFamily(families.COHERENT).modes_per_symbol == 1
    assert np.sinh(StateFamily(families.READING_II, 0.7).squeezing) ** 2 == approx(0.7)
    assert as_family(families.READING_II, 0.4) == StateFamily(families.READING_II, 0.4)
    with raises(UnknownFamily):
        StateFamily("reading_IV")
    with raises(InvalidParams):
        StateFamily(families.READING_II, -1.0)


def test_coherent_overlap_closed_form():
    alpha = 0.5
    overlap = analytic_overlap(families.COHERENT, alpha, -alpha)
    assert isinstance(overlap, complex)
    assert overlap == approx(np.exp(-2 * alpha**2))


def test_reading_overlap_of_opposite_phases():
    family = StateFamily(families.READING_III, 1.0)
    assert analytic_overlap(family, 0.0, np.pi) == approx(1.0 / 3.0)
    assert analytic_overlap(family, 1.2, 1.2) == approx(1.0)


def test_overlap_broadcasts():
    a = np.array([[0.1], [0.2 + 0.1j]])
    b = np.array([[0.3, -0.4, 0.5j]])
    assert analytic_overlap(families.COHERENT, a, b).shape == (2, 3)


@given(floats(-1.2, 1.2), floats(-1.2, 1.2), floats(-1.2, 1.2), floats(-1.2, 1.2))
def test_coherent_overlap_matches_fock_space(ar, ai, br, bi):
    cutoff = FockCutoff(40)
    a, b = complex(ar, ai), complex(br, bi)
    explicit = coherent_state(a, cutoff).inner(coherent_state(b, cutoff))
    assert explicit == approx(analytic_overlap(families.COHERENT, a, b), abs=1e-10)


@mark.parametrize("tag", [families.READING_II, families.READING_III])
@given(floats(0.0, 2 * np.pi), floats(0.0, 2 * np.pi))
def test_reading_overlap_matches_fock_space(tag, theta_a, theta_b):
    family = StateFamily(tag, 0.5)
    cutoff = FockCutoff(80)
    explicit = reading_state(family, theta_a, cutoff).inner(reading_state(family, theta_b, cutoff))
    assert explicit == approx(analytic_overlap(family, theta_a, theta_b), abs=1e-10)


def test_reading_state_layout():
    cutoff = FockCutoff(30)
    single = reading_state(StateFamily(families.READING_II, 0.5), 0.3, cutoff)
    pair = reading_state(StateFamily(families.READING_III, 0.5), 0.3, cutoff)
    assert single.modes == 1
    assert pair.modes == 2
    assert pair.norm() == approx(1.0)
    # The signal mode alone is thermal, whatever the phase.
    assert pair.mean_photon_number(0) == approx(0.5, abs=1e-4)
    assert pair.mean_photon_number(1) == approx(0.5, abs=1e-4)
    with raises(UnsupportedFamily):
        reading_state(StateFamily(families.COHERENT), 0.3, cutoff)


def test_codeword_state_modes():
    cutoff = FockCutoff(20)
    coherent = codeword_state(StateFamily(families.COHERENT), np.array([0.2, -0.3, 0.1j]), cutoff)
    reading = codeword_state(StateFamily(families.READING_III, 0.2), np.array([0.0, np.pi]), cutoff)
    assert coherent.modes == 3
    assert reading.modes == 4


def test_phase_averaged_reading_probe_is_thermal():
    cutoff = FockCutoff(32)
    averaged = phase_average(families.READING_II, 1.0, 64, cutoff)
    assert trace_distance(averaged, thermal_state(1.0, cutoff)) < 1e-9


def test_phase_averaged_coherent_state_has_poisson_diagonal():
    cutoff = FockCutoff(30)
    averaged = phase_average(families.COHERENT, 1.0, 64, cutoff)
    np.testing.assert_allclose(
        averaged.diagonal(), np.abs(coherent_state(1.0, cutoff).amplitudes) ** 2, atol=1e-12
    )
    assert entropy(averaged) > 0.0
    with raises(InvalidParams):
        phase_average(families.COHERENT, 1.0, 0, cutoff)
