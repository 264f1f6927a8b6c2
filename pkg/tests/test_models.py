import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from venturicalc import (ConfigurationError, DomainError, SampledFunction,
                         build_model, lp_norm, make_grid, q_profile,
                         validate_weight)


def test_build_model_values(sl2c_model, mehler_model, cosh_model):
    assert sl2c_model.profile.m(1.0) == pytest.approx(4 * np.sinh(1.0) ** 2)
    assert sl2c_model.profile.m(1.0) == pytest.approx(5.5244, abs=1e-4)
    # Plancherel reference shapes
    lam = np.array([0.5, 1.0, 3.0])
    assert mehler_model.plancherel(lam) == pytest.approx(lam * np.tanh(np.pi * lam))
    assert cosh_model.plancherel(lam) == pytest.approx(np.full(3, 2 / np.pi))
    assert sl2c_model.plancherel(lam) == pytest.approx(lam**2 / (4 * np.pi))


def test_build_model_unknown_tag():
    with pytest.raises(ConfigurationError):
        build_model("torus")


def test_model_parameters(models):
    assert models["cosh"].omega0 == 1.0
    assert models["mehler"].omega0 == 0.5
    assert models["sl2c"].omega0 == 1.0
    assert models["sl2c"].profile.gamma == 0.5
    assert models["mehler"].profile.gamma == 0.0
    assert not models["cosh"].chebli_trimeche


def test_q_profile_sl2c_vanishes(sl2c_model):
    for x in (0.3, 1.0, 2.5, 7.0):
        _, Q = q_profile(sl2c_model.profile, x)
        assert abs(Q) < 1e-10


def test_q_profile_constant_q_zero_rate():
    from venturicalc import WeightProfile

    prof = WeightProfile(gamma=0.5, omega0=0.0,
                         m=lambda x: x**2, q=lambda x: np.ones_like(np.asarray(x, dtype=float)))
    _, Q = q_profile(prof, 1.7)
    assert abs(Q) < 1e-9


def test_q_profile_mehler_vs_symbolic():
    # oracle: symbolic differentiation of the four-term formula
    import sympy as sp

    x = sp.symbols("x", positive=True)
    q = sp.sinh(x) / x
    dl = sp.diff(sp.log(q), x)
    Q = sp.Rational(1, 2) * sp.diff(dl, x) + dl**2 / 4 + dl / (2 * x) - sp.Rational(1, 4)
    expected = float(Q.subs(x, 1).evalf())
    mehler = build_model("mehler")
    _, got = q_profile(mehler.profile, 1.0)
    assert got == pytest.approx(expected, abs=1e-8)


def test_q_profile_domain_error(mehler_model):
    with pytest.raises(DomainError):
        q_profile(mehler_model.profile, -1.0)


def test_q_profile_finite_difference_path():
    # no analytic derivatives supplied: central differences at 1e-5 x
    from venturicalc import WeightProfile

    prof = WeightProfile(gamma=0.5, omega0=1.0,
                         m=lambda x: 4 * np.sinh(np.asarray(x)) ** 2,
                         q=lambda x: 4 * (np.sinh(np.asarray(x)) / np.asarray(x)) ** 2)
    _, Q = q_profile(prof, 1.0)
    assert abs(Q) < 1e-7


def test_validate_weight_sl2c_passes(sl2c_model):
    rep = validate_weight(sl2c_model.profile)
    assert rep.all_pass


def test_validate_weight_cosh_fails_small_x(cosh_model):
    rep = validate_weight(cosh_model.profile)
    assert rep["small_x_ratio"].passed is False
    assert rep["growth_limit"].passed is True


def test_validate_weight_power_law_limit():
    from venturicalc import WeightProfile

    prof = WeightProfile(gamma=0.5, omega0=0.0,
                         m=lambda x: np.asarray(x, dtype=float) ** 2,
                         q=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                         dlogq=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                         d2logq=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                         dlogm=lambda x: 2 / np.asarray(x, dtype=float))
    rep = validate_weight(prof)
    assert rep["growth_limit"].passed is True


def test_grid_mass_matches_analytic(models):
    for name, model in models.items():
        grid = make_grid(model, xmax=20.0, panels=32, nodes_per_panel=16)
        got = np.sum(grid.measure_weights)
        assert got == pytest.approx(model.analytic_mass(20.0), rel=1e-12, abs=1e-8)
        assert np.all(np.diff(grid.nodes) > 0)
        assert np.all(grid.quad_weights > 0)


def test_lp_norm_values(cosh_model):
    grid = make_grid(cosh_model, xmax=1.0, panels=8, nodes_per_panel=16)
    one = SampledFunction.from_callable(grid, lambda x: np.ones_like(x))
    expected = np.sqrt((1 + np.sinh(1) * np.cosh(1)) / 2)
    assert lp_norm(grid, one, 2) == pytest.approx(expected, abs=1e-8)
    zero = SampledFunction.from_callable(grid, lambda x: np.zeros_like(x))
    assert lp_norm(grid, zero, 2) == 0.0


def test_lp_norm_domain_error(grids):
    with pytest.raises(DomainError):
        lp_norm(grids["cosh"], np.ones(grids["cosh"].n), 0.5)


@settings(max_examples=25, deadline=None)
@given(c=st.floats(-50, 50), p=st.sampled_from([1.0, 2.0, 4.0]))
def test_lp_norm_homogeneity(c, p):
    model = build_model("cosh")
    grid = make_grid(model, xmax=5.0, panels=8, nodes_per_panel=8)
    f = np.exp(-grid.nodes)
    assert lp_norm(grid, c * f, p) == pytest.approx(abs(c) * lp_norm(grid, f, p), rel=1e-12)


def test_lp_norm_monotone(grids):
    grid = grids["mehler"]
    f = np.exp(-grid.nodes)
    g = 2 * f
    for p in (1.0, 2.0, 3.5):
        assert lp_norm(grid, f, p) <= lp_norm(grid, g, p)


def test_cumulative_integral(grids):
    grid = grids["cosh"]
    got = grid.cumulative(np.exp(-grid.nodes))
    expected = 1 - np.exp(-grid.nodes)
    assert np.max(np.abs(got - expected)) < 1e-12
