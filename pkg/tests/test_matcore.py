import numpy as np
import pytest

from quantum import matcore
from quantum.exceptions import DimensionError, PreconditionError
from quantum.matcore import RegisterShape, dagger
from quantum.channelzoo import I2, X, Z, P0, P1
from quantum.qstate import random_density


def _random_hermitian(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + dagger(g)) / 2


def _random_matrix(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


class TestKron:
    def test_identity(self):
        assert np.allclose(matcore.kron(I2, I2), np.eye(4))

    def test_basis_projector(self):
        expected = np.zeros((4, 4))
        expected[1, 1] = 1
        assert np.allclose(matcore.kron(P0, P1), expected)

    def test_entrywise_table(self):
        k = matcore.kron(X, Z)
        for r in range(4):
            for c in range(4):
                assert k[r, c] == X[r // 2, c // 2] * Z[r % 2, c % 2]


class TestPartialTrace:
    def test_bell_marginal(self):
        bell = np.zeros((4, 4), dtype=complex)
        for a in (0, 3):
            for b in (0, 3):
                bell[a, b] = 0.5
        out = matcore.partial_trace(bell, RegisterShape((2, 2)), keep=[0])
        assert np.allclose(out, I2 / 2)

    def test_product_factorizes(self, rng):
        rho = random_density((2,), rng).mat
        sigma = 3.0 * random_density((3,), rng).mat
        out = matcore.partial_trace(np.kron(rho, sigma), RegisterShape((2, 3)), keep=[0])
        assert np.allclose(out, rho * 3.0)

    def test_preserves_trace(self, rng):
        shape = RegisterShape((2, 2))
        for _ in range(20):
            rho = random_density(shape, rng).mat
            for keep in ([0], [1]):
                assert np.trace(matcore.partial_trace(rho, shape, keep)).real == pytest.approx(1.0, abs=1e-12)

    def test_composes(self, rng):
        shape = RegisterShape((2, 3, 2))
        rho = random_density(shape, rng).mat
        step = matcore.partial_trace(rho, shape, keep=[0, 2])
        step = matcore.partial_trace(step, RegisterShape((2, 2)), keep=[0])
        once = matcore.partial_trace(rho, shape, keep=[0])
        assert matcore.max_abs(step - once) <= 1e-12

    def test_keeps_original_order(self, rng):
        a = random_density((2,), rng).mat
        b = random_density((3,), rng).mat
        c = random_density((2,), rng).mat
        out = matcore.partial_trace(matcore.kron(a, b, c), RegisterShape((2, 3, 2)), keep=[2, 0])
        assert np.allclose(out, np.kron(a, c))

    def test_inconsistent_shape(self):
        with pytest.raises(DimensionError):
            matcore.partial_trace(np.eye(4), RegisterShape((2, 3)), keep=[0])

    def test_empty_keep(self):
        with pytest.raises(DimensionError):
            matcore.partial_trace(np.eye(4), RegisterShape((2, 2)), keep=[])


class TestEmbedAndApply:
    def test_embed_matches_kron_on_first_register(self):
        out = matcore.embed_operator(X, RegisterShape((2, 2)), [0])
        assert np.allclose(out, np.kron(X, I2))

    def test_embed_reordered_registers(self):
        cnot_12 = np.kron(P0, I2) + np.kron(P1, X)
        cnot_21 = np.kron(I2, P0) + np.kron(X, P1)
        assert np.allclose(matcore.embed_operator(cnot_12, RegisterShape((2, 2)), [1, 0]), cnot_21)

    def test_apply_matches_embedding(self, rng):
        shape = RegisterShape((2, 3, 2))
        rho = random_density(shape, rng).mat
        u = np.kron(X, Z)
        full = matcore.embed_operator(u, shape, [2, 0])
        out, new_shape = matcore.apply_on_registers([u], rho, shape, [2, 0])
        assert new_shape == shape
        assert matcore.max_abs(out - full @ rho @ dagger(full)) <= 1e-12

    def test_apply_changes_dimension(self, rng):
        shape = RegisterShape((2, 2))
        rho = random_density(shape, rng).mat
        iso = np.zeros((3, 2), dtype=complex)
        iso[0, 0] = iso[2, 1] = 1
        out, new_shape = matcore.apply_on_registers([iso], rho, shape, [1], out_dims=(3,))
        assert new_shape.dims == (2, 3)
        assert np.trace(out).real == pytest.approx(1.0)

    def test_apply_to_vector(self):
        v = np.array([1, 0, 0, 0], dtype=complex)
        out = matcore.apply_to_vector(X, v, RegisterShape((2, 2)), [1])
        assert np.allclose(out, [0, 1, 0, 0])


class TestEig:
    def test_identity(self):
        vals, _ = matcore.eig_hermitian(I2)
        assert np.allclose(vals, [1, 1])

    def test_z(self):
        vals, vecs = matcore.eig_hermitian(Z)
        assert np.allclose(vals, [1, -1])
        assert abs(vecs[0, 0]) == pytest.approx(1.0)
        assert abs(vecs[1, 1]) == pytest.approx(1.0)

    @pytest.mark.parametrize('method', ['lapack', 'jacobi'])
    def test_x(self, method):
        vals, vecs = matcore.eig_hermitian(X, method=method)
        assert np.allclose(vals, [1, -1])
        assert matcore.max_abs(vecs @ np.diag(vals) @ dagger(vecs) - X) <= 1e-9
        assert abs(vecs[0, 0]) == pytest.approx(1 / np.sqrt(2))

    @pytest.mark.parametrize('method', ['lapack', 'jacobi'])
    def test_reconstruction_random(self, rng, method):
        for _ in range(100):
            d = int(rng.integers(2, 17))
            m = _random_hermitian(rng, d)
            vals, vecs = matcore.eig_hermitian(m, method=method)
            assert np.all(np.diff(vals) <= 1e-12)
            assert matcore.max_abs(vecs @ np.diag(vals) @ dagger(vecs) - m) <= 1e-9
            assert matcore.max_abs(dagger(vecs) @ vecs - np.eye(d)) <= 1e-9

    def test_jacobi_agrees_with_lapack(self, rng):
        for _ in range(20):
            m = _random_hermitian(rng, 8)
            a, _ = matcore.eig_hermitian(m, method='jacobi')
            b, _ = matcore.eig_hermitian(m, method='lapack')
            assert np.allclose(a, b, atol=1e-10)

    def test_non_hermitian_rejected(self):
        with pytest.raises(PreconditionError):
            matcore.eig_hermitian(np.array([[0, 1], [0, 0]]))


class TestSvd:
    def test_identity(self):
        _, s, _ = matcore.svd(I2)
        assert np.allclose(s, [1, 1])

    def test_zero(self):
        _, s, _ = matcore.svd(np.zeros((2, 2)))
        assert np.allclose(s, 0)

    def test_random_against_eig(self, rng):
        m = _random_matrix(rng, 4)
        u, s, vh = matcore.svd(m)
        assert matcore.max_abs(dagger(u) @ u - np.eye(4)) <= 1e-9
        assert matcore.max_abs(vh @ dagger(vh) - np.eye(4)) <= 1e-9
        assert matcore.max_abs(u @ np.diag(s) @ vh - m) <= 1e-9
        vals, _ = matcore.eig_hermitian(dagger(m) @ m)
        assert np.allclose(s, np.sqrt(np.clip(vals, 0, None)), atol=1e-9)


class TestNorms:
    def test_identity(self):
        assert matcore.trace_norm(np.eye(4)) == pytest.approx(4.0)

    def test_z(self):
        assert matcore.trace_norm(Z) == pytest.approx(2.0)

    def test_pure_difference(self):
        plus = np.full((2, 2), 0.5)
        assert matcore.trace_norm(P0 - plus) == pytest.approx(np.sqrt(2))

    def test_adjoint_and_triangle(self, rng):
        for _ in range(50):
            a, b = _random_matrix(rng, 4), _random_matrix(rng, 4)
            assert matcore.trace_norm(a) == pytest.approx(matcore.trace_norm(dagger(a)))
            assert matcore.trace_norm(a + b) <= matcore.trace_norm(a) + matcore.trace_norm(b) + 1e-9


class TestRoots:
    def test_sqrt_identity(self):
        assert np.allclose(matcore.sqrt_psd(I2), I2)

    def test_sqrt_scaled_projector(self):
        assert np.allclose(matcore.sqrt_psd(4 * P0), 2 * P0)

    def test_inv_sqrt_pseudo_inverse(self):
        assert np.allclose(matcore.inv_sqrt_psd(np.diag([4.0, 0.0])), np.diag([0.5, 0.0]))

    def test_sqrt_reconstructs(self, rng):
        for _ in range(20):
            m = random_density((4,), rng, rank=2).mat
            r = matcore.sqrt_psd(m)
            assert matcore.max_abs(r @ r - m) <= 1e-9

    def test_inv_sqrt_gives_support_projector(self, rng):
        m = random_density((4,), rng, rank=2).mat
        r = matcore.inv_sqrt_psd(m)
        proj = matcore.support_projector(m)
        assert matcore.max_abs(r @ m @ r - proj) <= 1e-8
        assert np.trace(proj).real == pytest.approx(2.0)

    def test_negative_rejected(self):
        with pytest.raises(PreconditionError):
            matcore.sqrt_psd(np.diag([1.0, -0.1]))
