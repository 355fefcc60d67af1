import numpy as np
import pytest
from scipy.linalg import expm, logm

import oracles
from remcalc import (
    AnnihilatorCertificate,
    ExpGerm,
    FactoredPoly,
    InputError,
    NumericalError,
    Poly,
    PolyGerm,
    RationalGerm,
    X,
    characteristic_polynomial,
    companion_matrix,
    matrix_exp,
    matrix_function,
    minimal_polynomial,
    poly_apply,
)


def crandn(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


class TestPolyApply:
    def test_identity_poly(self, rng):
        A = crandn(rng, 3, 3)
        assert np.allclose(poly_apply(X, A), A)

    def test_constant(self, rng):
        A = crandn(rng, 3, 3)
        assert np.allclose(poly_apply(Poly([5.0]), A), 5 * np.eye(3))

    def test_cayley_hamilton(self):
        D = X**2 - 3 * X + 2
        assert np.max(np.abs(poly_apply(D, companion_matrix(D)))) < 1e-12

    def test_rejects_non_square(self):
        with pytest.raises(InputError):
            poly_apply(X, np.ones((2, 3)))


class TestCharacteristic:
    def test_matches_numpy(self, rng):
        for q in range(1, 7):
            A = crandn(rng, q, q)
            ref = np.poly(A)[::-1]
            assert oracles.rel_err(characteristic_polynomial(A).coeffs, ref) < 1e-10


class TestMinimal:
    def test_identity(self):
        cert = minimal_polynomial(np.eye(4))
        assert cert.poly.allclose(X - 1)
        assert cert.kind == "minimal"

    def test_derogatory_diagonal(self):
        assert minimal_polynomial(np.diag([1.0, 1.0, 2.0])).poly.allclose(X**2 - 3 * X + 2)

    def test_companion(self):
        D = X**2 - X - 1
        assert minimal_polynomial(companion_matrix(D)).poly.allclose(D)

    def test_jordan_block(self):
        A = np.array([[2.0, 1.0], [0.0, 2.0]])
        cert = minimal_polynomial(A)
        assert cert.factored.factors == ((2, 2),)

    def test_similarity_invariance(self, rng):
        S = crandn(rng, 4, 4)
        J = np.diag([1.0, 1.0, -2.0, -2.0]).astype(complex)
        J[2, 3] = 1.0
        A = S @ J @ np.linalg.inv(S)
        cert = minimal_polynomial(A)
        assert cert.factored.multiplicities == [2, 1]
        assert np.allclose(cert.factored.roots, [-2, 1], atol=1e-6)
        assert cert.residual_norm <= cert.tolerance * cert.scale

    def test_order_limit(self):
        with pytest.raises(InputError):
            minimal_polynomial(np.eye(65))


class TestMatrixFunction:
    def test_polynomial_germ_equals_horner(self, rng):
        A = crandn(rng, 4, 4)
        P = Poly(crandn(rng, 7))
        assert oracles.rel_err(matrix_function(PolyGerm(P), A), poly_apply(P, A)) < 1e-9

    def test_identity_germ(self, rng):
        A = crandn(rng, 3, 3)
        assert np.allclose(matrix_function(PolyGerm(X), A), A)

    def test_inverse_via_rational_germ(self, rng):
        A = crandn(rng, 4, 4)
        M = matrix_function(RationalGerm(Poly([1.0]), X), A)
        assert np.allclose(M @ A, np.eye(4), atol=1e-9)

    def test_annihilator_independence(self, rng):
        A = crandn(rng, 4, 4)
        f = ExpGerm(0.6)
        a = matrix_function(f, A)
        b = matrix_function(f, A, annihilator=characteristic_polynomial(A))
        assert np.linalg.norm(a - b) <= 1e-9 * np.linalg.norm(a)

    def test_factored_annihilator(self):
        A = np.diag([1.0, 1.0, 2.0])
        M = matrix_function(ExpGerm(1.0), A, annihilator=FactoredPoly(1.0, [(1.0, 3), (2.0, 2)]))
        assert np.allclose(M, np.diag(np.exp([1.0, 1.0, 2.0])))

    def test_certificate_reused(self):
        A = np.diag([1.0, 2.0])
        cert = minimal_polynomial(A)
        assert isinstance(cert, AnnihilatorCertificate)
        assert np.allclose(matrix_function(ExpGerm(1.0), A, annihilator=cert), np.diag(np.exp([1.0, 2.0])))

    def test_bad_annihilator(self):
        with pytest.raises(NumericalError) as exc:
            matrix_function(ExpGerm(1.0), np.diag([1.0, 2.0]), annihilator=X - 1)
        assert exc.value.code == "annihilation_failed"

    def test_multiplicative(self, rng):
        A = crandn(rng, 3, 3) / 2
        f, g = PolyGerm(Poly([1.0, 2.0, 0.5])), ExpGerm(0.3)
        fg = matrix_function(f * g, A)
        assert np.allclose(fg, matrix_function(f, A) @ matrix_function(g, A))


class TestMatrixExp:
    def test_zero_time_is_identity(self, rng):
        A = crandn(rng, 5, 5)
        assert np.array_equal(matrix_exp(0.0, A), np.eye(5))

    def test_nilpotent(self):
        N = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert np.max(np.abs(matrix_exp(2.5, N) - (np.eye(2) + 2.5 * N))) < 1e-12

    def test_diagonal(self):
        lam = np.array([1.0, -0.5 + 2j])
        assert np.allclose(matrix_exp(0.7, np.diag(lam)), np.diag(np.exp(0.7 * lam)), rtol=1e-10, atol=0)

    def test_matches_scipy(self, rng):
        for q in range(1, 8):
            A = crandn(rng, q, q) / np.sqrt(q)
            assert oracles.rel_err(matrix_exp(1.3, A), expm(1.3 * A)) < 1e-10

    def test_log_round_trip(self, rng):
        A = crandn(rng, 3, 3) / 4
        assert np.allclose(logm(matrix_exp(1.0, A)), A, atol=1e-10)
