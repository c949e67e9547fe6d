import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.integrate import quad
from scipy.special import ellipkinc

from cgc_elliptic import (
    CharacteristicError,
    DivergenceError,
    EllipticDomainError,
    Modulus,
    ModulusRegime,
    PoleError,
    TransformError,
    complete_E,
    complete_F,
    complete_Pi,
    incomplete_E,
    incomplete_F,
    incomplete_Pi,
    integral_sn2,
    jacobi,
    jacobi_general,
    jacobi_imaginary_argument,
    pi_imaginary_argument,
    pi_transforms,
)

from oracles import jacobi_rhs, rk4

QUAD = dict(epsabs=1e-14, epsrel=1e-13, limit=200)


# =============================================================================
# MODULUS
# =============================================================================

def test_modulus_regimes():
    assert Modulus.from_raw(0.6).regime is ModulusRegime.STANDARD
    assert Modulus.from_raw(2.0).regime is ModulusRegime.RECIPROCAL
    assert Modulus.from_raw(0.6j).regime is ModulusRegime.IMAGINARY
    assert Modulus.from_raw(-0.6).p == 0.6
    assert Modulus.from_raw(2.0).transformed().p == 0.5


def test_modulus_snapping():
    assert Modulus.from_raw(1e-13).p == 0.0
    assert Modulus.from_raw(1.0 - 1e-13).p == 1.0
    assert Modulus.from_raw(1e-13).is_trigonometric
    assert Modulus.from_raw(1.0 - 1e-13).is_hyperbolic
    assert not Modulus.from_raw(0.5).is_trigonometric
    assert not Modulus.from_raw(0.5).is_hyperbolic


@pytest.mark.parametrize("p", [0.0, 0.1, 0.6, 0.99, 1.0])
def test_complementary_modulus(p):
    m = Modulus.from_raw(p)
    assert abs(m.p ** 2 + m.q ** 2 - 1.0) <= 1e-15


def test_modulus_rejects_mixed_complex():
    with pytest.raises(EllipticDomainError):
        Modulus.from_raw(0.3 + 0.2j)


# =============================================================================
# JACOBI FUNCTIONS
# =============================================================================

def test_trigonometric_limit():
    ev = jacobi(0.5, 0.0)
    assert ev.sn == math.sin(0.5)
    assert ev.cn == math.cos(0.5)
    assert ev.dn == 1.0


def test_hyperbolic_limit():
    ev = jacobi(0.5, 1.0)
    assert_allclose(ev.sn, math.tanh(0.5), rtol=0, atol=1e-15)
    assert_allclose(ev.cn, 1 / math.cosh(0.5), rtol=0, atol=1e-15)
    assert_allclose(ev.dn, 1 / math.cosh(0.5), rtol=0, atol=1e-15)


def test_jacobi_matches_rk4_oracle():
    expected = rk4(jacobi_rhs(0.49), [0.0, 1.0, 1.0], 1.0, 2000)
    ev = jacobi(1.0, 0.7)
    assert_allclose([ev.sn, ev.cn, ev.dn], expected, rtol=0, atol=1e-10)


def test_jacobi_rejects_bad_input():
    with pytest.raises(EllipticDomainError):
        jacobi(float("nan"), 0.5)
    with pytest.raises(EllipticDomainError):
        jacobi(0.3, 1.5)


@settings(max_examples=200, deadline=None)
@given(p=st.one_of(st.floats(0.0, 0.999), st.just(1.0)), frac=st.floats(-1.0, 1.0))
def test_pythagorean_laws(p, frac):
    m = Modulus.from_raw(p)
    span = 4 * complete_F(m) if m.p < 1 else 20.0
    ev = jacobi(frac * span, m)
    assert abs(ev.sn ** 2 + ev.cn ** 2 - 1) <= 1e-12
    assert abs(ev.dn ** 2 + m.m * ev.sn ** 2 - 1) <= 1e-12


@pytest.mark.parametrize("p", [0.0, 0.3, 0.7, 0.95, 1.0])
def test_derivative_identities(p):
    s = np.linspace(-3.0, 3.0, 61)
    h = 1e-6
    ev, up, down = jacobi(s, p), jacobi(s + h, p), jacobi(s - h, p)

    def d(attr):
        return (getattr(up, attr) - getattr(down, attr)) / (2 * h)

    assert_allclose(d("am"), ev.dn, rtol=0, atol=1e-6)
    assert_allclose(d("sn"), ev.cn * ev.dn, rtol=0, atol=1e-6)
    assert_allclose(d("cn"), -ev.sn * ev.dn, rtol=0, atol=1e-6)
    assert_allclose(d("dn"), -p * p * ev.sn * ev.cn, rtol=0, atol=1e-6)


@pytest.mark.parametrize("p", [0.2, 0.6, 0.9])
def test_characterising_odes(p):
    m = p * p
    s = np.linspace(0.1, 3.0, 40)
    ev = jacobi(s, p)
    sn_prime = ev.cn * ev.dn
    cn_prime = -ev.sn * ev.dn
    dn_prime = -m * ev.sn * ev.cn
    assert_allclose(sn_prime ** 2, (1 - ev.sn ** 2) * (1 - m * ev.sn ** 2), atol=1e-10)
    assert_allclose(cn_prime ** 2, (1 - ev.cn ** 2) * (1 - m + m * ev.cn ** 2), atol=1e-10)
    assert_allclose(dn_prime ** 2, (1 - ev.dn ** 2) * (ev.dn ** 2 - 1 + m), atol=1e-10)


@pytest.mark.parametrize("p", [0.0, 0.4, 0.8, 0.99])
def test_periodicity(p):
    F = complete_F(p)
    s = np.linspace(-2 * F, 2 * F, 101)
    ev, shifted = jacobi(s, p), jacobi(s + 4 * F, p)
    assert_allclose(shifted.sn, ev.sn, atol=1e-10)
    assert_allclose(shifted.cn, ev.cn, atol=1e-10)
    assert_allclose(jacobi(s + 2 * F, p).dn, ev.dn, atol=1e-10)


@pytest.mark.parametrize("p", [0.0, 0.5, 0.9])
def test_amplitude_is_continuous(p):
    F = complete_F(p)
    s = np.linspace(-3 * F, 3 * F, 301)
    ev = jacobi(s, p)
    assert np.all(np.diff(ev.am) > 0)
    assert_allclose(jacobi(s + 2 * F, p).am, ev.am + math.pi, atol=1e-12)
    assert_allclose(np.sin(ev.am), ev.sn, atol=1e-12)
    assert_allclose(np.cos(ev.am), ev.cn, atol=1e-12)


def test_ratio_functions():
    ev = jacobi(0.7, 0.6)
    assert_allclose(ev.ratio("sd"), ev.sn / ev.dn)
    assert_allclose(ev.ratio("nc"), 1 / ev.cn)
    assert_allclose(ev.ratio("cs"), ev.cn / ev.sn)


# =============================================================================
# TRANSFORMED JACOBI FUNCTIONS
# =============================================================================

def test_reciprocal_modulus_dn():
    assert_allclose(jacobi_general(0.8, 2.0, "dn"), jacobi(1.6, 0.5).cn, rtol=0, atol=1e-15)


@pytest.mark.parametrize("s", [0.3, 0.8, 1.7])
def test_reciprocal_modulus_against_rk4(s):
    expected = rk4(jacobi_rhs(4.0), [0.0, 1.0, 1.0], s, 4000)
    got = [jacobi_general(s, 2.0, name) for name in ("sn", "cn", "dn")]
    assert_allclose(got, expected, atol=1e-10)


@pytest.mark.parametrize("p", [0.3, 0.6, 2.5])
def test_imaginary_modulus_cn_at_zero(p):
    assert jacobi_general(0.0, complex(0, p), "cn") == 1.0


def test_imaginary_modulus_against_rk4():
    sn, cn, dn = rk4(jacobi_rhs(-0.36), [0.0, 1.0, 1.0], 0.9, 4000)
    assert_allclose(jacobi_general(0.9, 0.6j, "sn"), sn, atol=1e-10)
    assert_allclose(jacobi_general(0.9, 0.6j, "cn"), cn, atol=1e-10)
    assert_allclose(jacobi_general(0.9, 0.6j, "dn"), dn, atol=1e-10)


def test_imaginary_modulus_formula():
    p_prime, q_prime = 0.6 / math.sqrt(1.36), 1 / math.sqrt(1.36)
    expected = q_prime * jacobi(0.9 * math.sqrt(1.36), p_prime).ratio("sd")
    assert_allclose(jacobi_general(0.9, 0.6j, "sn"), expected, rtol=1e-13)


def test_ratio_pole_is_located():
    F = complete_F(0.6)
    with pytest.raises(PoleError) as err:
        jacobi_general(F, 0.6, "nc")
    assert abs(err.value.pole - F) < 1e-12


def test_unknown_ratio_name():
    with pytest.raises(EllipticDomainError):
        jacobi_general(0.1, 0.5, "xy")


def test_imaginary_argument_at_zero():
    value = jacobi_imaginary_argument(0.0, 0.6, "cn")
    assert value.value == 1.0 and not value.imaginary


def test_imaginary_argument_cn():
    value = jacobi_imaginary_argument(0.4, 0.6, "cn")
    assert not value.imaginary
    assert_allclose(value.value, jacobi(0.4, 0.8).ratio("nc"), rtol=1e-13)


def test_imaginary_argument_against_complex_rk4():
    sn, cn, dn = rk4(jacobi_rhs(0.36), [0.0, 1.0, 1.0], 0.4j, 4000)
    sn_val = jacobi_imaginary_argument(0.4, 0.6, "sn")
    assert sn_val.imaginary
    assert_allclose(sn_val.to_complex(), sn, atol=1e-10)
    assert_allclose(jacobi_imaginary_argument(0.4, 0.6, "cn").to_complex(), cn, atol=1e-10)
    assert_allclose(jacobi_imaginary_argument(0.4, 0.6, "dn").to_complex(), dn, atol=1e-10)
    ns = jacobi_imaginary_argument(0.4, 0.6, "ns")
    assert_allclose(ns.to_complex(), 1 / sn, atol=1e-9)


def test_imaginary_argument_pole():
    with pytest.raises(PoleError) as err:
        jacobi_imaginary_argument(complete_F(0.8), 0.6, "dn")
    assert abs(err.value.pole - complete_F(0.8)) < 1e-12


# =============================================================================
# COMPLETE INTEGRALS
# =============================================================================

def test_complete_trivial_values():
    assert complete_F(0.0) == math.pi / 2
    for p in (0.0, 0.3, 0.8):
        assert complete_Pi(0.0, p) == complete_F(p)


@pytest.mark.parametrize("p", [0.2, 0.5, 0.9])
def test_complete_integrals_against_quadrature(p):
    m = p * p
    F_ref, _ = quad(lambda u: 1 / math.sqrt(1 - m * math.sin(u) ** 2), 0, math.pi / 2, **QUAD)
    E_ref, _ = quad(lambda u: math.sqrt(1 - m * math.sin(u) ** 2), 0, math.pi / 2, **QUAD)
    assert abs(complete_F(p) - F_ref) < 1e-12
    assert abs(complete_E(p) - E_ref) < 1e-12
    for k in (-2.0, 0.3, 0.9):
        Pi_ref, _ = quad(
            lambda u: 1 / ((1 - k * math.sin(u) ** 2) * math.sqrt(1 - m * math.sin(u) ** 2)),
            0, math.pi / 2, **QUAD,
        )
        assert abs(complete_Pi(k, p) - Pi_ref) < 1e-11


def test_complete_errors():
    with pytest.raises(DivergenceError):
        complete_F(1.0)
    with pytest.raises(CharacteristicError):
        complete_Pi(1.0, 0.5)


# =============================================================================
# INCOMPLETE INTEGRALS
# =============================================================================

@pytest.mark.parametrize("p", [0.0, 0.4, 0.9])
def test_pi_zero_characteristic_is_F(p):
    s = np.linspace(-4.0, 4.0, 17)
    assert_allclose(incomplete_Pi(0.0, p, s), incomplete_F(s, p))
    assert_allclose(incomplete_F(s, p), s, atol=1e-12)


def test_pi_trigonometric_closed_form():
    expected = math.atan(math.sqrt(0.5) * math.tan(0.7)) / math.sqrt(0.5)
    assert abs(incomplete_Pi(0.5, 0.0, 0.7) - expected) < 1e-13


@pytest.mark.parametrize("k,p,s", [(0.3, 0.6, 0.4), (-1.5, 0.8, 2.9), (0.9, 0.2, -5.0), (1.4, 0.7, 0.6)])
def test_pi_against_quadrature(k, p, s):
    m = p * p
    ref, _ = quad(lambda u: 1 / (1 - k * jacobi(u, p).sn ** 2), 0, s, **QUAD)
    assert abs(incomplete_Pi(k, p, s) - ref) < 1e-11


@pytest.mark.parametrize("n", range(1, 7))
def test_pi_quasi_periodicity(n):
    k, p, s = 0.3, 0.6, 0.4
    F, Pk = complete_F(p), complete_Pi(k, p)
    assert abs(incomplete_Pi(k, p, s + 2 * n * F) - incomplete_Pi(k, p, s) - 2 * n * Pk) < 1e-11
    assert abs(incomplete_Pi(k, p, n * F) - n * Pk) < 1e-11


def test_e_against_quadrature():
    ref, _ = quad(lambda u: jacobi(u, 0.6).dn ** 2, 0, 3.7, **QUAD)
    assert abs(incomplete_E(3.7, 0.6) - ref) < 1e-11
    sn2_ref, _ = quad(lambda u: jacobi(u, 0.6).sn ** 2, 0, 3.7, **QUAD)
    assert abs(integral_sn2(3.7, 0.6) - sn2_ref) < 1e-11


@pytest.mark.parametrize("k", [-1.0, 0.5, 1.0, 2.0])
def test_pi_hyperbolic_closed_form(k):
    ref, _ = quad(lambda u: 1 / (1 - k * math.tanh(u) ** 2), 0, 0.6, **QUAD)
    assert abs(incomplete_Pi(k, 1.0, 0.6) - ref) < 1e-12


def test_pi_pole_crossing_is_located():
    p, k = 0.5, 2.0
    with pytest.raises(PoleError) as err:
        incomplete_Pi(k, p, complete_F(p))
    assert abs(err.value.pole - ellipkinc(math.asin(1 / math.sqrt(k)), p * p)) < 1e-12


# =============================================================================
# Π TRANSFORMATIONS
# =============================================================================

def test_pi_reciprocal_modulus():
    k, p, a, s = 0.2, 0.5, 1.0, 0.3
    lhs, _ = quad(lambda u: 1 / (1 - k * jacobi_general(u, 1 / p, "sn") ** 2), 0, a * s, **QUAD)
    assert abs(pi_transforms(k, 1 / p, a, s) - lhs) < 1e-12
    assert abs(pi_transforms(k, 1 / p, a, s) - p * incomplete_Pi(k * p * p, p, a * s / p)) < 1e-15


def test_pi_reciprocal_modulus_reduces_to_F():
    assert abs(pi_transforms(0.0, 2.0, 1.0, 0.3) - 0.5 * incomplete_F(0.6, 0.5)) < 1e-15


def test_pi_imaginary_modulus():
    k, p, a, s = 0.4, 0.3, 1.0, 0.5
    lhs, _ = quad(lambda u: 1 / (1 - k * jacobi_general(u, complex(0, p), "sn") ** 2), 0, a * s, **QUAD)
    assert abs(pi_transforms(k, complex(0, p), a, s) - lhs) < 1e-10
    # k' = 0 exercises the E reduction
    lhs0, _ = quad(lambda u: 1 / (1 + p * p * jacobi_general(u, complex(0, p), "sn") ** 2), 0, s, **QUAD)
    assert abs(pi_transforms(-p * p, complex(0, p), 1.0, s) - lhs0) < 1e-10


@pytest.mark.parametrize("k", [0.4, 1.0, 2.5])
def test_pi_imaginary_argument(k):
    p, a, s = 0.6, 1.2, 0.5

    def integrand(v):
        # sn_p(iv)² = -sc_q(v)²
        sc = jacobi_imaginary_argument(v, p, "sn").value
        return 1 / (1 + k * sc ** 2)

    ref, _ = quad(integrand, 0, a * s, **QUAD)
    got = pi_transforms(k, p, a, s, imaginary_argument=True)
    assert got.imaginary
    assert abs(got.value - ref) < 1e-11


def test_pi_imaginary_argument_branch_mismatch():
    with pytest.raises(TransformError):
        pi_imaginary_argument(1.0, 0.6, 1.0, 0.5, branch="general")
    with pytest.raises(TransformError):
        pi_imaginary_argument(0.5, 0.6, 1.0, 0.5, branch="unit")


def test_pi_transforms_rejects_zero_scale():
    with pytest.raises(EllipticDomainError):
        pi_transforms(0.2, 2.0, 0.0, 0.3)
