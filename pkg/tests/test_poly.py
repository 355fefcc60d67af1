import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from remcalc import FactoredPoly, InputError, NumericalError, Poly, X, companion_matrix, find_roots
from remcalc import minimal_polynomial, poly_divrem_classical
from remcalc.poly import poly_from_factored, taylor_coefficients

coeff_lists = st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=1, max_size=9)


class TestPoly:
    def test_canonical_form_drops_trailing_zeros(self):
        p = Poly([1.0, 2.0, 0.0, 0.0])
        assert p.degree == 1
        assert p.coeffs.tolist() == [1, 2]

    def test_zero_has_no_numeric_degree(self):
        z = Poly([0.0, 0.0])
        assert z.is_zero
        assert z.degree is None
        assert z.coeffs.size == 0

    def test_coefficients_are_read_only(self):
        p = Poly([1.0, 2.0])
        with pytest.raises(ValueError):
            p.coeffs[0] = 5

    def test_rejects_non_finite(self):
        with pytest.raises(InputError):
            Poly([1.0, np.nan])

    def test_difference_of_squares(self):
        assert (X + 1) * (X - 1) == X**2 - 1

    def test_derivative(self):
        assert (X**3).derivative() == 3 * X**2
        assert Poly([5.0]).derivative().is_zero

    def test_evaluate_at_i(self):
        assert (X**2 - 1)(1j) == -2

    def test_evaluate_vectorized(self):
        p = Poly([1.0, -3.0, 2.0])
        x = np.array([0.0, 1.0, 2.0])
        assert np.allclose(p(x), 1 - 3 * x + 2 * x**2)

    def test_scalar_arithmetic(self):
        p = Poly([1.0, 2.0])
        assert 2 * p == Poly([2.0, 4.0])
        assert p - 1 == Poly([0.0, 2.0])
        assert 1 - p == Poly([0.0, -2.0])
        assert -p == Poly([-1.0, -2.0])

    def test_hash_and_eq(self):
        assert hash(Poly([1.0, 2.0])) == hash(Poly([1.0, 2.0, 0.0]))
        assert Poly([1.0]) != Poly([1.0, 1.0])

    def test_allclose(self):
        assert Poly([1.0, 2.0]).allclose(Poly([1.0 + 1e-12, 2.0]))
        assert not Poly([1.0, 2.0]).allclose(Poly([1.0, 2.1]))

    @given(coeff_lists, coeff_lists)
    def test_multiplication_matches_convolution(self, a, b):
        prod = Poly(a) * Poly(b)
        ref = Poly(np.convolve(a, b))
        assert prod.allclose(ref, rtol=1e-12)


class TestClassicalDivision:
    def test_two_roots(self):
        q, r = poly_divrem_classical(X**2, (X - 1) * (X - 2))
        assert q == Poly([1.0])
        assert r == 3 * X - 2

    def test_remainder_theorem(self):
        f = Poly([3.0, -2.0, 0.5, 1.0])
        _, r = poly_divrem_classical(f, X - 2)
        assert np.isclose(r.coeffs[0], f(2.0))

    def test_zero_dividend(self):
        q, r = poly_divrem_classical(Poly([]), X - 1)
        assert q.is_zero and r.is_zero

    def test_zero_divisor(self):
        with pytest.raises(InputError) as exc:
            poly_divrem_classical(X, Poly([]))
        assert exc.value.code == "zero_divisor"

    def test_overflow_is_numerical_failure(self):
        with pytest.raises(NumericalError) as exc:
            poly_divrem_classical(Poly([1.0]), Poly([1e-320]))
        assert exc.value.code == "non_finite"

    @given(coeff_lists, coeff_lists)
    @settings(max_examples=200)
    def test_identity(self, f, d):
        d = Poly(d)
        if d.is_zero or np.abs(d.leading) < max(1e-3 * np.abs(d.coeffs).max(), 1e-100):
            return
        f = Poly(f)
        q, r = divmod(f, d)
        assert r.is_zero or r.degree < d.degree
        back = q * d + r
        scale = max(np.abs(f.coeffs).max(initial=0.0), 1.0)
        assert np.max(np.abs(back.padded(f.coeffs.size + 1) - f.padded(f.coeffs.size + 1))) <= 1e-8 * scale * (
            1 + np.abs(q.coeffs).max(initial=0.0)
        )

    def test_matches_numpy(self, rng):
        for _ in range(50):
            f = rng.normal(size=9) + 1j * rng.normal(size=9)
            d = rng.normal(size=4) + 1j * rng.normal(size=4)
            q_ref, r_ref = oracles.long_division(f, d)
            q, r = poly_divrem_classical(Poly(f), Poly(d))
            assert oracles.rel_err(q.coeffs, q_ref) < 1e-12
            assert oracles.rel_err(r.coeffs, r_ref) < 1e-10


class TestFactored:
    def test_expand(self):
        assert poly_from_factored(FactoredPoly(1.0, [(1, 1), (2, 1)])) == X**2 - 3 * X + 2
        assert poly_from_factored(FactoredPoly(5.0, [])) == Poly([5.0])
        assert poly_from_factored(FactoredPoly(1.0, [(0, 3)])) == X**3

    def test_merges_equal_roots_and_sorts(self):
        fp = FactoredPoly(2.0, [(2, 1), (1, 1), (2, 2)])
        assert fp.factors == ((1, 1), (2, 3))
        assert fp.degree == 4

    def test_validation(self):
        with pytest.raises(InputError):
            FactoredPoly(0.0, [(1, 1)])
        with pytest.raises(InputError):
            FactoredPoly(1.0, [(1, 0)])
        with pytest.raises(InputError):
            FactoredPoly(1.0, [(1, 1.5)])

    def test_cofactor_is_monic(self):
        fp = FactoredPoly(3.0, [(1, 2), (-1, 1)])
        assert fp.cofactor(1) == X + 1
        assert fp.multiplicity(1) == 2
        with pytest.raises(InputError) as exc:
            fp.index(5)
        assert exc.value.code == "not_a_root"

    def test_evaluate(self):
        fp = FactoredPoly(2.0, [(1, 2)])
        assert fp(3.0) == 8.0


class TestTaylorCoefficients:
    def test_binomial_shift(self):
        c = taylor_coefficients(np.array([0, 0, 1], dtype=complex), 1.0, 2)
        assert np.allclose(c, [1, 2, 1])

    def test_truncation(self):
        c = taylor_coefficients(np.array([0, -1, 0, 1], dtype=complex), 2.0, 1)
        assert np.allclose(c, [6, 11])


class TestFindRoots:
    def test_simple(self):
        fp = find_roots(X**2 - 3 * X + 2)
        assert fp.roots == [1, 2]
        assert fp.multiplicities == [1, 1]

    def test_pure_power(self):
        fp = find_roots(X**3)
        assert fp.factors == ((0, 3),)

    def test_clusters_double_root(self):
        fp = find_roots((X - 1) ** 2 * (X + 1), cluster_tol=1e-8)
        assert fp.multiplicities == [1, 2]
        assert np.allclose(fp.roots, [-1, 1], atol=1e-12)

    def test_high_multiplicity(self):
        fp = find_roots((X - 1) ** 5)
        assert fp.multiplicities == [5]
        assert abs(fp.roots[0] - 1) < 1e-10

    def test_close_but_distinct(self):
        fp = find_roots((X - 1) * (X - 1.001))
        assert fp.multiplicities == [1, 1]

    def test_keeps_leading(self):
        fp = find_roots(Poly([6.0, -10.0, 4.0]))
        assert fp.leading == 4
        assert np.allclose(fp.roots, [1, 1.5])

    def test_random_back_substitution(self, rng):
        for n in range(1, 10):
            roots = oracles.separated_roots(rng, n, sep=0.2)
            p = Poly(oracles.expand(roots, [1] * n))
            fp = find_roots(p)
            assert fp.degree == n
            assert oracles.rel_err(fp.expand().coeffs, p.coeffs) < 1e-10

    def test_rejects_constants(self):
        for p in (Poly([3.0]), Poly([])):
            with pytest.raises(InputError):
                find_roots(p)

    def test_complex_roots_of_real_poly(self):
        fp = find_roots(X**2 + 1)
        assert np.allclose(sorted(fp.roots, key=lambda z: z.imag), [-1j, 1j])


class TestCompanion:
    def test_degree_one(self):
        assert np.allclose(companion_matrix(X - 3), [[3]])

    def test_columns(self):
        a0, a1 = 2.0, -5.0
        A = companion_matrix(Poly([a0, a1, 1.0]))
        assert np.allclose(A @ [1, 0], [0, 1])
        assert np.allclose(A @ [0, 1], [-a0, -a1])

    def test_minimal_polynomial_is_divisor(self):
        D = X**2 - X - 1
        assert minimal_polynomial(companion_matrix(D)).poly.allclose(D)

    def test_requires_monic(self):
        with pytest.raises(InputError) as exc:
            companion_matrix(2 * X + 1)
        assert exc.value.code == "not_monic"

    def test_matches_oracle(self, rng):
        d = np.append(rng.normal(size=5), 1.0)
        assert np.allclose(companion_matrix(Poly(d)), oracles.companion(d))


def test_errors_have_codes():
    assert InputError("x").code == "invalid_input"
    assert NumericalError("x").code == "numerical_failure"
    assert InputError("x", code="custom").code == "custom"
    assert isinstance(InputError("x"), ValueError)
