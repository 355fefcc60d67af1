from math import factorial

import numpy as np
import pytest

import oracles
from remcalc import (
    ExpGerm,
    InputError,
    Jet,
    Poly,
    PolyGerm,
    PrincipalPart,
    RationalGerm,
    X,
    as_germ,
    jet_exp_times,
    jet_invert,
    jet_mul,
    jet_of_exp,
    jet_of_poly,
)


def test_jet_of_poly_binomial_shift():
    assert jet_of_poly(X**2, 1.0, 2) == Jet(1.0, [1, 2, 1])


def test_jet_of_poly_order_zero_is_value():
    assert jet_of_poly(X**2, 1.0, 0) == Jet(1.0, [1])


def test_jet_of_poly_derivatives():
    assert jet_of_poly(X**3 - X, 2.0, 1) == Jet(2.0, [6, 11])


def test_jet_of_poly_keeps_trailing_zeros():
    j = jet_of_poly(X, 0.0, 4)
    assert j.order == 4
    assert j.coeffs.tolist() == [0, 1, 0, 0, 0]


def test_truncation_compatibility(rng):
    p = Poly(rng.normal(size=7))
    assert jet_of_poly(p, 0.3, 5).truncate(2).allclose(jet_of_poly(p, 0.3, 2))


def test_mul_identity_and_truncation():
    f = Jet(2.0, [1, 3, -1])
    assert jet_mul(f, Jet.constant(1.0, 2.0, 2)) == f
    assert jet_mul(Jet(0.5, [1, 1]), Jet(0.5, [1, -1])) == Jet(0.5, [1, 0])


def test_mul_matches_poly_product():
    jx = jet_of_poly(X, 1.0, 2)
    assert jet_mul(jx, jx).allclose(jet_of_poly(X**2, 1.0, 2))


def test_order_is_min_of_operands():
    f = Jet(0.0, [1, 2, 3])
    g = Jet(0.0, [1, 1])
    assert (f + g).order == 1
    assert jet_mul(f, g).order == 1


def test_ring_morphism(rng):
    p = Poly(rng.normal(size=5) + 1j * rng.normal(size=5))
    q = Poly(rng.normal(size=4))
    a = 0.7 - 0.2j
    assert jet_of_poly(p * q, a, 4).allclose(jet_mul(jet_of_poly(p, a, 4), jet_of_poly(q, a, 4)))
    assert jet_of_poly(p + q, a, 4).allclose(jet_of_poly(p, a, 4) + jet_of_poly(q, a, 4))


def test_center_mismatch():
    with pytest.raises(InputError) as exc:
        Jet(0.0, [1]) + Jet(1.0, [1])
    assert exc.value.code == "center_mismatch"


def test_invert_unit():
    assert jet_invert(Jet(3.0, [1, 0, 0])) == Jet(3.0, [1, 0, 0])


def test_invert_geometric_series():
    assert jet_invert(Jet(0.0, [1, -1, 0, 0])).allclose(Jet(0.0, [1, 1, 1, 1]))


def test_invert_matches_geometric_expansion():
    a, b, mu, order = 0.5 + 0.5j, -1.0, 3, 5
    j = jet_invert(jet_of_poly((X - b) ** mu, a, order))
    assert np.allclose(j.coeffs, oracles.inverse_power_series(a, b, mu, order))


def test_invert_non_unit():
    with pytest.raises(InputError) as exc:
        jet_invert(Jet(0.0, [0, 1]))
    assert exc.value.code == "not_unit"


def test_exp_jets():
    assert jet_of_exp(0.0, 2.0, 2).allclose(Jet(2.0, [1, 0, 0]))
    assert jet_of_exp(1.0, 0.0, 3).allclose(Jet(0.0, [1, 1, 1 / 2, 1 / 6]))
    a = 0.3j
    assert jet_mul(jet_of_exp(0.4, a, 4), jet_of_exp(-1.1, a, 4)).allclose(jet_of_exp(-0.7, a, 4))


def test_exp_jet_general_center():
    t, a, order = 1.7, 0.5 - 1j, 4
    ref = [np.exp(t * a) * t**n / factorial(n) for n in range(order + 1)]
    assert np.allclose(jet_of_exp(t, a, order).coeffs, ref)


def test_exp_times():
    f = Jet(0.0, [-0.5, -0.25])
    assert jet_exp_times(0.0, f).allclose(f)
    assert jet_exp_times(1.3, Jet.constant(1.0, 0.0, 3)).allclose(jet_of_exp(1.3, 0.0, 3))
    # e^X / (X - 2) at 0: (1 + X)(-1/2 - X/4) = -1/2 - 3/4 X
    assert jet_exp_times(1.0, f).allclose(Jet(0.0, [-0.5, -0.75]))


def test_derivative_and_to_poly():
    j = jet_of_poly(X**3, 1.0, 3)
    assert j.to_poly().allclose(X**3)
    assert j.derivative().allclose(jet_of_poly(3 * X**2, 1.0, 2))


def test_principal_part_evaluation():
    pp = PrincipalPart(1.0, (2.0, 3.0))
    x = 3.0
    assert np.isclose(pp(x), 2 / (x - 1) + 3 / (x - 1) ** 2)
    with pytest.raises(InputError):
        PrincipalPart(0.0, ())


def test_germs():
    a = 0.25
    r = RationalGerm(Poly([1.0]), X - 2)
    assert r.jet_at(a, 3).allclose(jet_invert(jet_of_poly(X - 2, a, 3)))
    with pytest.raises(InputError) as exc:
        r.jet_at(2.0, 1)
    assert exc.value.code == "pole"
    prod = PolyGerm(X) * ExpGerm(2.0)
    ref = jet_mul(jet_of_poly(X, a, 3), jet_of_exp(2.0, a, 3))
    assert prod.jet_at(a, 3).allclose(ref)
    s = PolyGerm(X) + ExpGerm(1.0) - PolyGerm(Poly([1.0]))
    assert np.isclose(s.jet_at(0.0, 0).value, 0.0)
    assert isinstance(as_germ(Poly([1.0, 2.0])), PolyGerm)
    with pytest.raises(InputError):
        as_germ("not a germ")
