import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from venturicalc import (SampledFunction, SpectralFunction, TruncationError,
                         VenturiRegion, build_model, convolve, forward, inverse,
                         lp_norm, make_grid, pair_table, phi_closed,
                         plancherel_calibration, product_formula_residual,
                         venturi_contains, venturi_norm_probe)
from venturicalc.transforms import plancherel_energy_gap


def rel_l2(grid, got, want):
    return (lp_norm(grid, SampledFunction(grid, got - want), 2)
            / lp_norm(grid, SampledFunction(grid, want), 2))


# ---------------------------------------------------------------------------
# forward / inverse
# ---------------------------------------------------------------------------

def test_forward_zero(models, grids):
    for name, model in models.items():
        f = SampledFunction.from_callable(grids[name], lambda x: np.zeros_like(x))
        fh = forward(model, f)
        assert np.all(fh.values == 0.0)


def test_forward_mehler_sech3(mehler_model):
    grid = make_grid(mehler_model, xmax=60.0, panels=48, nodes_per_panel=16)
    lams = np.linspace(0.25, 4.0, 16)
    f = SampledFunction.from_callable(grid, lambda x: np.cosh(x / 2) ** -3)
    fh = forward(mehler_model, f, lams)
    ref = 8 * lams / np.sinh(np.pi * lams)
    assert np.max(np.abs(fh.values - ref) / np.abs(ref)) < 1e-3


def test_forward_real_for_real_even_data(mehler_model, grids):
    f = SampledFunction.from_callable(grids["mehler"], lambda x: np.exp(-x**2))
    fh = forward(mehler_model, f)
    assert np.max(np.abs(np.imag(fh.values))) < 1e-10


def test_forward_tail_violation(cosh_model, grids):
    f = SampledFunction.from_callable(grids["cosh"], lambda x: np.ones_like(x))
    with pytest.raises(TruncationError):
        forward(cosh_model, f)


def test_roundtrip_all_models(models):
    for name, model in models.items():
        xmax = 30.0 if name == "cosh" else 20.0
        grid = make_grid(model, xmax=xmax, panels=int(1.6 * xmax), nodes_per_panel=16)
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2) * x**2)
        back = inverse(model, forward(model, f), grid)
        assert rel_l2(grid, back.values, f.values) < 1e-4, name


def test_roundtrip_cosh_sech2():
    # fhat = pi sech(pi lam / 2) decays slower than the Gaussian cases, so the
    # spectral tail rule forces a wider lambda grid
    model = build_model("cosh")
    grid = make_grid(model, xmax=30.0, panels=48, nodes_per_panel=16)
    f = SampledFunction.from_callable(grid, lambda x: np.cosh(x) ** -2)
    fh = forward(model, f, SpectralFunction.on_grid(16.0, 800))
    ref = np.pi / 2 / np.cosh(np.pi * fh.lambda_nodes / 2)
    assert np.max(np.abs(fh.values - ref)) < 1e-8
    back = inverse(model, fh, grid)
    assert rel_l2(grid, back.values, f.values) < 1e-4


def test_inverse_zero(models, grids):
    for name, model in models.items():
        fh = SpectralFunction.on_grid()
        f = inverse(model, fh, grids[name])
        assert np.all(f.values == 0.0)


def test_plancherel_calibration_constants(models):
    # measured against the reference shapes: 2/pi (cosh), lam tanh(pi lam)
    # (mehler) need no correction; the sl2c reference lam^2/(4 pi) needs c=2,
    # i.e. the working density is lam^2/(2 pi)
    assert plancherel_calibration(models["cosh"]) == pytest.approx(1.0, abs=1e-9)
    assert plancherel_calibration(models["mehler"]) == pytest.approx(1.0, abs=1e-9)
    assert plancherel_calibration(models["sl2c"]) == pytest.approx(2.0, abs=1e-9)


def test_plancherel_energy(models):
    for name, model in models.items():
        xmax = 30.0 if name == "cosh" else 20.0
        grid = make_grid(model, xmax=xmax, panels=int(1.6 * xmax), nodes_per_panel=16)
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2) * x**2)
        assert plancherel_energy_gap(model, f) < 1e-4, name


# ---------------------------------------------------------------------------
# pair table
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def pair_report():
    return pair_table()


def test_pair_table_sech3(pair_report):
    assert pair_report["sech3_row"].passed


def test_pair_table_sech5_corrected(pair_report):
    assert pair_report["sech5_row"].passed
    assert pair_report["sech5_row"].measured < 1e-6


@pytest.mark.xfail(strict=True,
                   reason="quoted reference (16/3) lam^3 cosech(pi lam) does not "
                          "match the transform; see sech5_row for the verified shape")
def test_pair_table_sech5_quoted_reference(pair_report):
    assert pair_report["sech5_row_quoted_reference"].measured < 1e-3


def test_pair_table_even_power(pair_report):
    assert pair_report["sech2_ratio_constancy"].passed
    assert pair_report["sech2_constant"].measured == pytest.approx(2 * np.pi, rel=1e-6)


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------

def test_convolution_commutative(models, grids):
    # smooth even-extendable data: both kernel routes agree to quadrature
    # precision; radial data with a kink at 0 (e.g. x exp(-x^2)) costs the
    # cubic interpolation ~1e-4 instead, checked separately below
    for name, model in models.items():
        grid = grids[name]
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2))
        g = SampledFunction.from_callable(grid, lambda x: x**2 * np.exp(-x**2))
        a = convolve(model, f, g).values
        b = convolve(model, g, f).values
        assert np.max(np.abs(a - b)) < 1e-10, name


def test_convolution_commutative_kinked(models, grids):
    for name, model in models.items():
        grid = grids[name]
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2))
        g = SampledFunction.from_callable(grid, lambda x: x * np.exp(-x**2))
        a = convolve(model, f, g).values
        b = convolve(model, g, f).values
        assert np.max(np.abs(a - b)) < 1e-3, name


def test_convolution_homomorphism(models, grids):
    for name, model in models.items():
        grid = grids[name]
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2) * x**2)
        g = SampledFunction.from_callable(grid, lambda x: np.exp(-((x - 1.0) / 0.8) ** 2))
        fg = convolve(model, f, g)
        lhs = forward(model, fg).values
        fh = forward(model, f).values
        gh = forward(model, g).values
        den = np.max(np.abs(fh * gh))
        assert np.max(np.abs(lhs - fh * gh)) / den < 1e-4, name


def test_convolution_delta_approx(cosh_model, grids):
    grid = grids["cosh"]
    f = SampledFunction.from_callable(grid, lambda x: np.exp(-((x - 2.0) / 0.9) ** 2))
    for w in (0.1, 0.05):
        bump = np.exp(-(grid.nodes / w) ** 2)
        bump /= np.sum(bump * grid.measure_weights)
        d = SampledFunction(grid, bump)
        err = np.max(np.abs(convolve(cosh_model, f, d).values - f.values))
        assert err < 4.0 * w**2
    # quadratic in the width
    errs = []
    for w in (0.2, 0.1):
        bump = np.exp(-(grid.nodes / w) ** 2)
        bump /= np.sum(bump * grid.measure_weights)
        errs.append(np.max(np.abs(convolve(cosh_model, f,
                                           SampledFunction(grid, bump)).values - f.values)))
    assert errs[1] < 0.35 * errs[0]


def test_convolution_support(cosh_model, grids):
    grid = grids["cosh"]
    f = SampledFunction.from_callable(
        grid, lambda x: np.where(np.abs(x - 1) < 0.5,
                                 np.exp(-1 / np.maximum(1 - ((x - 1) / 0.5) ** 2, 1e-12)), 0.0))
    conv = convolve(cosh_model, f, f).values
    support = grid.nodes[np.abs(conv) > 1e-10]
    assert support[-1] <= 2 + 2 * 0.5 + 2 * grid.spacing


# ---------------------------------------------------------------------------
# product formula
# ---------------------------------------------------------------------------

def test_product_formula_lattice(models):
    for name, model in models.items():
        tol = 1e-4 if name == "mehler" else 1e-8
        for lam in (0.5, 1.0, 2.0):
            for x in (0.5, 1.0, 2.0):
                for y in (0.7, 1.3, 2.4):
                    assert product_formula_residual(model, lam, x, y) < tol, (name, lam, x, y)


def test_product_formula_cosh_exact(cosh_model):
    assert product_formula_residual(cosh_model, 2.0, 1.0, 1.5) < 1e-10


def test_product_formula_trivial_point(sl2c_model, mehler_model):
    assert product_formula_residual(sl2c_model, 1j, 1.0, 2.0) < 1e-8
    assert product_formula_residual(mehler_model, 0.5j, 1.0, 0.7) < 1e-8


# ---------------------------------------------------------------------------
# Venturi regions
# ---------------------------------------------------------------------------

def test_venturi_contains_strip_and_sector():
    reg = VenturiRegion(np.pi / 4, 1.0)
    assert venturi_contains(0.5j, reg)
    assert venturi_contains(10 + 9j, reg)       # arg = 0.7328 < pi/4
    assert not venturi_contains(9 + 10j, reg)   # arg = 0.8380 > pi/4
    assert not venturi_contains(2j, reg)


@settings(max_examples=60, deadline=None)
@given(re=st.floats(-30, 30), im=st.floats(-30, 30),
       th=st.floats(0.1, 1.4), om=st.floats(0.05, 3.0))
def test_venturi_symmetries(re, im, th, om):
    z = complex(re, im)
    reg = VenturiRegion(th, om)
    assert venturi_contains(z, reg) == venturi_contains(-z, reg)
    assert venturi_contains(z, reg) == venturi_contains(np.conj(z), reg)


@settings(max_examples=40, deadline=None)
@given(re=st.floats(-20, 20), im=st.floats(-20, 20), s=st.sampled_from([3.0, 20.0]))
def test_venturi_dilatation(re, im, s):
    z = complex(re, im)
    th, om = 0.6, 0.8
    assert venturi_contains(z, VenturiRegion(th, om)) == \
        venturi_contains(s * z, VenturiRegion(th, s * om))


def sech3_transform(z):
    return 8 * z / np.sinh(np.pi * z) if z != 0 else 8 / np.pi


def test_probe_constant():
    rep = venturi_norm_probe(lambda z: 1.0, VenturiRegion(np.pi / 4, 0.5))
    assert rep["sup_f"].measured == pytest.approx(1.0)


def test_probe_sech3_finite():
    rep = venturi_norm_probe(sech3_transform, VenturiRegion(np.pi / 4, 0.9))
    assert rep["sup_f"].measured < 1e3
    assert rep["poles_detected"].measured == 0


def test_probe_pole_approach():
    sups = [venturi_norm_probe(sech3_transform,
                               VenturiRegion(np.pi / 4, om))["sup_f"].measured
            for om in (0.9, 0.99, 0.999)]
    assert sups[0] < sups[1] < sups[2]


def test_probe_blow_up_flag():
    rep = venturi_norm_probe(lambda z: 1e7, VenturiRegion(np.pi / 4, 0.5))
    assert rep["blow_up_flag"].measured > 0
