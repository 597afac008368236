import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from xstate_discord import InvalidInputError
from xstate_discord.linalg import (
    FanoDecomposition, eigenvalues_hermitian, fano_compose, fano_decompose, hs_norm_sq,
    partial_trace, von_neumann_entropy,
)
from xstate_discord.relativistic import unruh_transform_closed
from xstate_discord.states import make_x_state

from conftest import I2, PHI_PLUS, SX, SY, SZ, rand_rho


def pauli_expectations(rho):
    """Direct trace formulas, written out independently of the library."""
    paulis = (SX, SY, SZ)
    x = [np.trace(rho @ np.kron(s, I2)).real for s in paulis]
    y = [np.trace(rho @ np.kron(I2, s)).real for s in paulis]
    T = [[np.trace(rho @ np.kron(s, t)).real for t in paulis] for s in paulis]
    return np.array(x), np.array(y), np.array(T)


class TestFano:
    def test_maximally_mixed(self):
        f = fano_decompose(np.eye(4) / 4)
        assert_allclose(f.x, 0, atol=1e-15)
        assert_allclose(f.y, 0, atol=1e-15)
        assert_allclose(f.T, 0, atol=1e-15)

    def test_x_state_reads_off_coefficients(self):
        f = fano_decompose(make_x_state((0.3, -0.2, 0.5)))
        assert_allclose(f.x, 0, atol=1e-15)
        assert_allclose(f.y, 0, atol=1e-15)
        assert_allclose(f.T, np.diag([0.3, -0.2, 0.5]), atol=1e-15)

    def test_unruh_bell_at_pi_over_4(self):
        rho = unruh_transform_closed((1, -1, 1), np.pi / 4)
        x, y, T = pauli_expectations(rho)
        f = fano_decompose(rho)
        assert_allclose(f.x, x, atol=1e-14)
        assert_allclose(f.y, y, atol=1e-14)
        assert_allclose(f.T, T, atol=1e-14)
        assert_allclose(f.y, [0, 0, -0.5], atol=1e-14)
        assert_allclose(f.T, np.diag([np.sqrt(2) / 2, -np.sqrt(2) / 2, 0.5]), atol=1e-14)

    def test_compose_zero_is_identity(self):
        m = fano_compose(FanoDecomposition(np.zeros(3), np.zeros(3), np.zeros((3, 3))))
        assert_allclose(m, np.eye(4) / 4)

    def test_compose_bell(self):
        m = fano_compose(FanoDecomposition(np.zeros(3), np.zeros(3), np.diag([1.0, -1.0, 1.0])))
        assert_allclose(m, PHI_PLUS, atol=1e-15)
        assert_allclose(eigenvalues_hermitian(m), [0, 0, 0, 1], atol=1e-14)

    def test_round_trip_random(self, rng):
        for _ in range(100):
            rho = rand_rho(rng)
            assert_allclose(fano_compose(fano_decompose(rho)), rho, atol=1e-12)

    def test_non_hermitian_rejected(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.1
        with pytest.raises(InvalidInputError):
            fano_decompose(m)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=15, max_size=15))
def test_round_trip_hermitian_unit_trace(coords):
    c = np.array(coords)
    f = FanoDecomposition(c[:3], c[3:6], c[6:].reshape(3, 3))
    m = fano_compose(f)
    assert abs(np.trace(m) - 1) < 1e-14
    g = fano_decompose(m)
    assert_allclose(np.concatenate([g.x, g.y, g.T.ravel()]), c, atol=1e-12)


class TestPartialTrace:
    def test_bell_marginals(self):
        assert_allclose(partial_trace(PHI_PLUS, keep=0), I2 / 2, atol=1e-15)
        assert_allclose(partial_trace(PHI_PLUS, keep=1), I2 / 2, atol=1e-15)

    def test_product_state(self, rng):
        a, b = rand_rho(rng, 2), rand_rho(rng, 2)
        assert_allclose(partial_trace(np.kron(a, b), keep=0), a, atol=1e-14)
        assert_allclose(partial_trace(np.kron(a, b), keep=1), b, atol=1e-14)

    def test_three_qubits(self, rng):
        a, b, c = (rand_rho(rng, 2) for _ in range(3))
        big = np.kron(np.kron(a, b), c)
        assert_allclose(partial_trace(big, keep=(0, 1)), np.kron(a, b), atol=1e-14)
        assert_allclose(partial_trace(big, keep=(0, 2)), np.kron(a, c), atol=1e-14)
        assert_allclose(partial_trace(big, keep=1), b, atol=1e-14)

    def test_unruh_state_alice_marginal_is_half_identity(self):
        for c in [(1, -1, 1), (-0.8, -0.8, -0.8), (0.2, -0.3, 0.3)]:
            for r in np.linspace(0, np.pi / 4, 7):
                rho = unruh_transform_closed(c, r)
                assert_allclose(partial_trace(rho, keep=0), I2 / 2, atol=1e-15)

    def test_bad_selector(self):
        with pytest.raises(InvalidInputError):
            partial_trace(PHI_PLUS, keep=2)
        with pytest.raises(InvalidInputError):
            partial_trace(PHI_PLUS, keep=0, dims=(2, 3))

    def test_trace_and_positivity_preserved(self, rng):
        for _ in range(1000):
            rho = rand_rho(rng, 8 if rng.random() < 0.5 else 4)
            nq = int(np.log2(rho.shape[0]))
            red = partial_trace(rho, keep=int(rng.integers(nq)))
            assert abs(np.trace(red) - 1) < 1e-12
            assert np.linalg.eigvalsh(red)[0] > -1e-12


class TestSpectrum:
    def test_examples(self):
        assert_allclose(eigenvalues_hermitian(np.eye(4) / 4), [0.25] * 4)
        assert_allclose(eigenvalues_hermitian(np.diag([0.4, 0.1, 0.3, 0.2])), [0.1, 0.2, 0.3, 0.4])
        # Bell-diagonal formula (1 + e.c)/4 with e1 e2 e3 = -1 gives 0.05 (x3) and 0.85
        assert_allclose(eigenvalues_hermitian(make_x_state((-0.8, -0.8, -0.8))),
                        [0.05, 0.05, 0.05, 0.85], atol=1e-14)

    def test_sum_and_square_sum(self, rng):
        for _ in range(100):
            rho = rand_rho(rng)
            lam = eigenvalues_hermitian(rho)
            assert abs(lam.sum() - np.trace(rho).real) < 1e-10
            assert abs((lam ** 2).sum() - hs_norm_sq(rho)) < 1e-10

    def test_non_hermitian(self):
        with pytest.raises(InvalidInputError):
            eigenvalues_hermitian(np.array([[0, 1], [0, 0]]))


class TestEntropy:
    def test_values(self):
        assert von_neumann_entropy(PHI_PLUS) == pytest.approx(0, abs=1e-12)
        assert von_neumann_entropy(I2 / 2) == pytest.approx(1)
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2)

    def test_permutation_invariance(self, rng):
        p = rng.dirichlet(np.ones(4))
        perm = rng.permutation(4)
        assert von_neumann_entropy(np.diag(p)) == pytest.approx(von_neumann_entropy(np.diag(p[perm])))


def test_hs_norm():
    assert hs_norm_sq(np.zeros((4, 4))) == 0
    assert hs_norm_sq(np.eye(4)) == 4
    assert hs_norm_sq(PHI_PLUS) == pytest.approx(1)
