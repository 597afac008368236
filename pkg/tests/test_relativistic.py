import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from xstate_discord import (
    InvalidInputError, make_x_state, partial_trace, preset, rindler_embed_and_trace,
    unruh_transform_closed, validate_density_matrix,
)
from xstate_discord.relativistic import rindler_isometry

from conftest import I2, PHI_PLUS, rand_rho

PRESETS = ["bell", "werner", "general-fig4"]


def printed_matrix(c, r):
    """Entry-by-entry transcription of the accelerated-frame X-state as typeset."""
    c1, c2, c3 = c
    cp, cm = c1 + c2, c1 - c2
    co, si = np.cos(r), np.sin(r)
    m = np.zeros((4, 4))
    m[0, 0] = (1 + c3) * co ** 2
    m[1, 1] = (1 + c3) * si ** 2 + (1 - c3)
    m[2, 2] = (1 - c3) * co ** 2
    m[3, 3] = (1 + c3) + (1 - c3) * si ** 2
    m[0, 3] = m[3, 0] = cm * co
    m[1, 2] = m[2, 1] = cp * co
    return m / 4


@pytest.mark.parametrize("name", PRESETS)
def test_r_zero_is_identity(name):
    p = preset(name)
    assert_allclose(unruh_transform_closed(p, 0), make_x_state(p), atol=0)
    assert_allclose(rindler_embed_and_trace(make_x_state(p), 0), make_x_state(p), atol=1e-15)


def test_bell_at_pi_over_4():
    rho = unruh_transform_closed(preset("bell"), np.pi / 4)
    assert_allclose(np.diag(rho).real, [0.25, 0.25, 0, 0.5], atol=1e-15)
    assert_allclose(rho[0, 3], np.sqrt(2) / 4, atol=1e-15)
    assert_allclose(rho[3, 0], np.sqrt(2) / 4, atol=1e-15)
    assert rho[1, 2] == 0


def test_zero_coefficients_at_pi_over_4():
    rho = unruh_transform_closed((0, 0, 0), np.pi / 4)
    assert_allclose(rho, np.diag([1 / 8, 3 / 8, 1 / 8, 3 / 8]), atol=1e-15)
    assert_allclose(rho, np.kron(I2 / 2, np.diag([0.25, 0.75])), atol=1e-15)


def test_bell_marginals_at_pi_over_4():
    out = rindler_embed_and_trace(PHI_PLUS, np.pi / 4)
    assert_allclose(partial_trace(out, keep=0), I2 / 2, atol=1e-15)
    assert_allclose(partial_trace(out, keep=1), np.diag([0.25, 0.75]), atol=1e-15)


@pytest.mark.parametrize("name", PRESETS)
def test_closed_form_matches_oracle_20_grid(name):
    p = preset(name)
    for r in np.linspace(0, np.pi / 4, 20):
        assert_allclose(unruh_transform_closed(p, r),
                        rindler_embed_and_trace(make_x_state(p), r), atol=1e-12, rtol=0)


@pytest.mark.parametrize("name", PRESETS)
def test_printed_matrix_agrees_with_oracle(name):
    # the typeset matrix already has unit trace and matches the oracle
    p = preset(name)
    for r in np.linspace(0, np.pi / 4, 9):
        lit = printed_matrix(p.c, r)
        assert abs(np.trace(lit) - 1) < 1e-15
        assert_allclose(lit, rindler_embed_and_trace(make_x_state(p), r), atol=1e-12)


def test_isometry():
    for r in np.linspace(0, np.pi / 4, 5):
        V = rindler_isometry(r)
        assert V.shape == (8, 4)
        assert_allclose(V.conj().T @ V, np.eye(4), atol=1e-15)


def test_r_domain():
    with pytest.raises(InvalidInputError):
        unruh_transform_closed(preset("bell"), -0.1)
    with pytest.raises(InvalidInputError):
        rindler_embed_and_trace(PHI_PLUS, 1.0)


def test_valid_output_for_general_inputs(rng):
    for _ in range(200):
        rho = rand_rho(rng)
        out = rindler_embed_and_trace(rho, rng.uniform(0, np.pi / 4))
        assert validate_density_matrix(out).valid
        assert_allclose(partial_trace(out, keep=0), partial_trace(rho, keep=0), atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(0, np.pi / 4))
def test_alice_marginal_and_oracle(c1, c2, c3, r):
    rho = unruh_transform_closed((c1, c2, c3), r)
    assert_allclose(partial_trace(rho, keep=0), I2 / 2, atol=1e-15)
    assert abs(np.trace(rho) - 1) < 1e-14
    mask = ~(np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool)))
    assert np.all(rho[mask] == 0)
    oracle = rindler_embed_and_trace(_x_raw(c1, c2, c3), r)
    assert_allclose(rho, oracle, atol=1e-12)


def _x_raw(c1, c2, c3):
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = (1 + c3) / 4
    m[1, 1] = m[2, 2] = (1 - c3) / 4
    m[0, 3] = m[3, 0] = (c1 - c2) / 4
    m[1, 2] = m[2, 1] = (c1 + c2) / 4
    return m
