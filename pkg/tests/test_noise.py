import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from xstate_discord import (
    ChannelSpec, InvalidInputError, apply_single_qubit_channel, apply_two_qubit_channel,
    kraus_set, unruh_transform_closed, validate_density_matrix,
)
from xstate_discord.noise import KINDS, completeness_residue
from xstate_discord.states import is_x_form

from conftest import I2, PHI_PLUS, SX, SY, SZ, rand_rho

prob = st.floats(0, 1)
coef = st.floats(-1, 1)


def explicit_two_qubit(rho, ops):
    out = np.zeros((4, 4), dtype=complex)
    for a in ops:
        for b in ops:
            k = np.kron(a, b)
            out += k @ rho @ k.conj().T
    return out


@pytest.mark.parametrize("kind", KINDS)
def test_completeness_grid(kind):
    for p in np.linspace(0, 1, 101):
        assert completeness_residue(kraus_set(ChannelSpec(kind, p))) <= 1e-12


def test_phase_flip_p0():
    ops = kraus_set(ChannelSpec("pf", 0))
    assert_allclose(ops[0], I2)
    assert_allclose(ops[1], 0)


def test_depolarizing_p1():
    ops = kraus_set(ChannelSpec("dep", 1))
    assert_allclose(ops[0], 0.5 * I2)
    for k, s in zip(ops[1:], (SX, SY, SZ)):
        assert_allclose(k, 0.5 * s)
    assert completeness_residue(ops) == 0


def test_amplitude_damping_036():
    m0, m1 = kraus_set(ChannelSpec("ad", 0.36))
    assert_allclose(m0, np.diag([1, 0.8]))
    assert_allclose(m1, [[0, 0.6], [0, 0]])


def test_spec_validation():
    with pytest.raises(InvalidInputError):
        ChannelSpec("bitflip", 0.1)
    with pytest.raises(InvalidInputError):
        ChannelSpec("ad", 1.5)
    with pytest.raises(InvalidInputError):
        ChannelSpec("ad", -0.01)
    assert ChannelSpec("dep", 0.2).kind == "depolarizing"


@pytest.mark.parametrize("kind", KINDS)
def test_p_zero_identity(kind, rng):
    rho = rand_rho(rng)
    assert_allclose(apply_two_qubit_channel(rho, ChannelSpec(kind, 0)), rho, atol=1e-15)
    for which in (0, 1):
        assert_allclose(apply_single_qubit_channel(rho, ChannelSpec(kind, 0), which), rho,
                        atol=1e-15)


def test_full_damping_of_bell():
    out = apply_two_qubit_channel(PHI_PLUS, ChannelSpec("ad", 1))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert_allclose(out, expected, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(coef, coef, coef, prob)
def test_phase_flip_on_bell_diagonal(c1, c2, c3, p):
    rho = _raw(c1, c2, c3)
    out = apply_two_qubit_channel(rho, ChannelSpec("pf", p))
    f = (1 - 2 * p) ** 2
    assert_allclose(out, _raw(f * c1, f * c2, c3), atol=1e-15)


def _raw(c1, c2, c3):
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1 + c3) / 4
    m[1, 1] = m[2, 2] = (1 - c3) / 4
    m[0, 3] = m[3, 0] = (c1 - c2) / 4
    m[1, 2] = m[2, 1] = (c1 + c2) / 4
    return m


@pytest.mark.parametrize("kind", KINDS)
def test_single_then_single_equals_product(kind, rng):
    for p in (0.13, 0.5, 0.91):
        spec = ChannelSpec(kind, p)
        rho = rand_rho(rng)
        seq = apply_single_qubit_channel(apply_single_qubit_channel(rho, spec, 0), spec, 1)
        assert_allclose(seq, apply_two_qubit_channel(rho, spec), atol=1e-14)
        assert_allclose(apply_two_qubit_channel(rho, spec),
                        explicit_two_qubit(rho, kraus_set(spec)), atol=1e-14)


def test_depolarize_half_of_bell():
    out = apply_single_qubit_channel(PHI_PLUS, ChannelSpec("dep", 1), 1)
    assert_allclose(out, np.eye(4) / 4, atol=1e-15)


def test_bad_qubit_selector():
    with pytest.raises(InvalidInputError):
        apply_single_qubit_channel(PHI_PLUS, ChannelSpec("dep", 1), 2)


def test_full_depolarizing_maps_everything_to_identity(rng):
    for _ in range(50):
        assert_allclose(apply_two_qubit_channel(rand_rho(rng), ChannelSpec("dep", 1)),
                        np.eye(4) / 4, atol=1e-14)


def test_trace_and_positivity_random(rng):
    for _ in range(1000):
        rho = rand_rho(rng, rank=int(rng.integers(1, 5)))
        spec = ChannelSpec(KINDS[rng.integers(3)], rng.random())
        out = apply_two_qubit_channel(rho, spec)
        assert abs(np.trace(out) - 1) < 1e-12
        assert np.linalg.eigvalsh(out)[0] > -1e-12


@settings(max_examples=100, deadline=None)
@given(coef, coef, coef, st.floats(0, np.pi / 4), prob, st.sampled_from(KINDS))
def test_x_form_preserved(c1, c2, c3, r, p, kind):
    rho = unruh_transform_closed((c1, c2, c3), r)
    out = apply_two_qubit_channel(rho, ChannelSpec(kind, p))
    assert is_x_form(out, tol=0)


@settings(max_examples=100, deadline=None)
@given(coef, coef, coef, st.floats(0, np.pi / 4), prob)
def test_phase_flip_symmetry(c1, c2, c3, r, p):
    rho = unruh_transform_closed((c1, c2, c3), r)
    a = apply_two_qubit_channel(rho, ChannelSpec("pf", p))
    b = apply_two_qubit_channel(rho, ChannelSpec("pf", 1 - p))
    assert_allclose(a, b, atol=1e-15)


def test_channel_output_valid_after_unruh():
    for kind in KINDS:
        for p in np.linspace(0, 1, 11):
            out = apply_two_qubit_channel(unruh_transform_closed((1, -1, 1), np.pi / 6),
                                          ChannelSpec(kind, p))
            assert validate_density_matrix(out).valid
