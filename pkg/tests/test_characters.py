import numpy as np
import pytest

from venturicalc import (DomainError, bessel_j, build_model, eigen_residual,
                         laplace_rep, phi_closed, phi_from_laplace, phi_ode,
                         phi_volterra)
from venturicalc.models import WeightProfile


def mpmath_conical(lam, x):
    """Independent oracle: P_{i lam - 1/2}(cosh x) via mpmath."""
    import mpmath as mp

    mp.mp.dps = 25
    return float(mp.re(mp.legenp(mp.mpc(-0.5, lam), 0, mp.cosh(x), type=3)))


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def test_phi_closed_normalization(models):
    for model in models.values():
        assert phi_closed(model, 1.3, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_phi_closed_cosh(cosh_model):
    assert phi_closed(cosh_model, 2.0, 1.5) == pytest.approx(np.cos(3.0) / np.cosh(1.5))


def test_phi_closed_sl2c_trivial_character(sl2c_model):
    for x in (0.3, 1.0, 4.0):
        assert phi_closed(sl2c_model, 1j, x) == pytest.approx(1.0, abs=1e-12)


def test_phi_closed_sl2c_removable_singularities(sl2c_model):
    assert phi_closed(sl2c_model, 0.0, 2.0) == pytest.approx(2.0 / np.sinh(2.0))
    assert phi_closed(sl2c_model, 1e-9, 2.0) == pytest.approx(2.0 / np.sinh(2.0), rel=1e-9)


def test_phi_closed_mehler_trivial_character(mehler_model):
    for x in (0.5, 1.0, 2.0):
        assert np.real(phi_closed(mehler_model, 0.5j, x)) == pytest.approx(1.0, abs=1e-8)


def test_phi_closed_mehler_vs_mpmath(mehler_model):
    for x in (0.1, 0.5, 1.0, 2.0, 5.0, 8.0):
        for lam in (0.0, 0.5, 1.0, 4.0):
            got = phi_closed(mehler_model, lam, x)
            assert got == pytest.approx(mpmath_conical(lam, x), abs=1e-10), (lam, x)


def test_phi_closed_even_and_real(models):
    for model in models.values():
        a = phi_closed(model, 1.7, 2.0)
        b = phi_closed(model, -1.7, 2.0)
        assert a == pytest.approx(b, abs=1e-12)
        assert abs(np.imag(a)) < 1e-10


# ---------------------------------------------------------------------------
# ODE engine
# ---------------------------------------------------------------------------

def test_phi_ode_sl2c_value(sl2c_model):
    ev = phi_ode(sl2c_model.profile, 2.0, np.array([1.0]))[0]
    assert ev.value == pytest.approx(np.sin(2.0) / (2 * np.sinh(1.0)), abs=1e-6)
    assert ev.value == pytest.approx(0.38687, abs=5e-5)


def test_phi_ode_agrees_with_closed(models):
    xs = np.linspace(0.1, 8.0, 30)
    for model in models.values():
        for lam in (0.5, 1.0, 2.0, 4.0):
            got = np.array([e.value for e in phi_ode(model.profile, lam, xs)])
            ref = phi_closed(model, lam, xs)
            assert np.max(np.abs(got - ref)) < 1e-6, (model.name, lam)


def test_phi_ode_trivial_character_sl2c(sl2c_model):
    got = [e.value for e in phi_ode(sl2c_model.profile, 1j, np.array([0.5, 2.0, 5.0]))]
    assert np.max(np.abs(np.asarray(got) - 1.0)) < 1e-8


def test_phi_ode_rejects_bad_targets(sl2c_model):
    with pytest.raises(DomainError):
        phi_ode(sl2c_model.profile, 1.0, np.array([2.0, 1.0]))


def test_eigen_residual_all_engines(models):
    for model in models.values():
        for lam in (0.5, 2.0):
            r = eigen_residual(model.profile, lam, 1.5,
                               lambda s: np.real(phi_closed(model, lam, s)))
            assert r < 1e-5 * (1 + lam**2), (model.name, lam)


# ---------------------------------------------------------------------------
# Bessel factor
# ---------------------------------------------------------------------------

def test_bessel_j_zero_frequency_beta_value():
    # at lam=0 the integral is a Beta function and j_0(x) = x^(gamma+1/2)
    for g in (0.5, 1.0, 2.0):
        for x in (0.5, 1.5):
            assert bessel_j(g, 0.0, x) == pytest.approx(x ** (g + 0.5), rel=1e-10)


def test_bessel_j_matches_scipy():
    # independent oracle: j(x) = G(g+1) 2^g lam^-g sqrt(x) J_g(lam x)
    from scipy.special import gamma as G
    from scipy.special import jv

    for g in (0.5, 1.0, 1.5):
        for lam in (0.7, 2.0):
            for x in (0.4, 1.0, 3.0):
                ref = G(g + 1) * 2**g * lam**-g * np.sqrt(x) * jv(g, lam * x)
                assert bessel_j(g, lam, x) == pytest.approx(ref, rel=1e-10)


def test_bessel_j_differential_residual():
    # -j'' + (4g^2-1)/(4x^2) j = lam^2 j, residual by central differences
    g, lam, h = 1.0, 1.5, 1e-4
    for x in (0.5, 1.0, 2.0):
        j0 = bessel_j(g, lam, x)
        jp = bessel_j(g, lam, x + h)
        jm = bessel_j(g, lam, x - h)
        d2 = (jp - 2 * j0 + jm) / h**2
        res = -d2 + (4 * g**2 - 1) / (4 * x**2) * j0 - lam**2 * j0
        assert abs(res) < 1e-6


def test_bessel_j_gamma_half_is_sinc():
    lam, x = 1.3, 2.0
    assert bessel_j(0.5, lam, x) == pytest.approx(np.sin(lam * x) / lam, rel=1e-12)


def test_bessel_j_domain():
    with pytest.raises(DomainError):
        bessel_j(0.3, 1.0, 1.0)


# ---------------------------------------------------------------------------
# Volterra engine
# ---------------------------------------------------------------------------

def test_volterra_sl2c_exact(sl2c_model):
    evs = phi_volterra(sl2c_model.profile, 2.0, xmax=8.0)
    for e in evs:
        assert abs(e.rho) < 1e-12
        assert e.value == pytest.approx(np.sin(2 * e.x) / (2 * np.sinh(e.x)), abs=1e-9)


SINH3 = WeightProfile(
    gamma=1.0, omega0=1.5,
    m=lambda x: 8 * np.sinh(np.asarray(x)) ** 3,
    q=lambda x: 8 * (np.sinh(np.asarray(x)) / np.asarray(x)) ** 3,
    dlogq=lambda x: 3 * (1 / np.tanh(x) - 1 / x),
    d2logq=lambda x: 3 * (1 / x**2 - 1 / np.sinh(x) ** 2),
    dlogm=lambda x: 3 / np.tanh(x),
)


def test_volterra_sinh3_vs_ode():
    for lam in (0.5, 1.0, 2.0):
        evs = phi_volterra(SINH3, lam, xmax=5.0)
        xs = np.array([e.x for e in evs if 0.1 <= e.x <= 5.0])
        vol = np.array([e.value for e in evs if 0.1 <= e.x <= 5.0])
        ode = np.array([e.value for e in phi_ode(SINH3, lam, xs)])
        assert np.max(np.abs(vol - ode)) < 1e-5


def test_volterra_lam0_positive_nonincreasing():
    evs = phi_volterra(SINH3, 0.0, xmax=5.0)
    vals = np.array([np.real(e.value) for e in evs])
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) <= 1e-12)


def test_volterra_requires_gamma(mehler_model):
    with pytest.raises(DomainError):
        phi_volterra(mehler_model.profile, 1.0)


# ---------------------------------------------------------------------------
# Laplace representation
# ---------------------------------------------------------------------------

def test_laplace_rep_cosh_atoms(cosh_model):
    rep = laplace_rep(cosh_model, 1.0)
    assert len(rep.atoms) == 2
    assert rep.total_mass == pytest.approx(1 / np.cosh(1.0), abs=1e-14)
    assert rep.total_mass == pytest.approx(0.64805, abs=1e-5)


def test_laplace_rep_sl2c_mass(sl2c_model):
    rep = laplace_rep(sl2c_model, 2.0)
    assert rep.total_mass == pytest.approx(2 / np.sinh(2.0), abs=1e-10)
    assert rep.total_mass == pytest.approx(0.551445, abs=1e-5)


def test_laplace_rep_mehler_mass_is_conical(mehler_model):
    for x in (0.5, 1.0, 2.0, 4.0):
        rep = laplace_rep(mehler_model, x)
        assert rep.total_mass == pytest.approx(mpmath_conical(0.0, x), abs=1e-10)


def test_laplace_mass_equals_phi0(models):
    for model in models.values():
        for x in (0.5, 1.0, 2.0, 4.0):
            rep = laplace_rep(model, x)
            assert rep.total_mass == pytest.approx(
                float(np.real(phi_closed(model, 0.0, x))), abs=1e-8)


def test_phi_from_laplace_matches_closed(models):
    for model in models.values():
        for lam in (0.5, 1.5):
            for x in (0.5, 1.0, 3.0):
                assert phi_from_laplace(model, lam, x) == pytest.approx(
                    float(np.real(phi_closed(model, lam, x))), abs=1e-8)


def test_phi_from_laplace_cosh_exact_atoms(cosh_model):
    lam, x = 1.5, 1.0
    assert phi_from_laplace(cosh_model, lam, x) == pytest.approx(
        np.cos(lam * x) / np.cosh(x), abs=1e-15)


def test_phi_from_laplace_sl2c_antiderivative(sl2c_model):
    lam, x = 1.5, 1.0
    assert phi_from_laplace(sl2c_model, lam, x) == pytest.approx(
        np.sin(lam * x) / (lam * np.sinh(x)), abs=1e-8)


def test_strip_bound_inequality(models):
    # |phi_{t+is}(x)| <= int cosh(s u) dtau_x(u)
    s, t, x = 0.4, 2.0, 3.0
    for model in models.values():
        rep = laplace_rep(model, x)
        lhs = abs(phi_closed(model, t + 1j * s, x))
        rhs = np.real(rep.integrate(lambda u: np.cosh(s * u)))
        assert lhs <= rhs + 1e-12


def test_cosine_family_bound_constant(models):
    # int cosh(omega0 u) dtau_x(du) = 1 at the model rate for all three models
    for model in models.values():
        w0 = model.omega0
        sup = max(np.real(laplace_rep(model, x).integrate(lambda u: np.cosh(w0 * u)))
                  for x in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0))
        assert sup == pytest.approx(1.0, abs=1e-8)
