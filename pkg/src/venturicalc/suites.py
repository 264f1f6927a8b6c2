"""Named verification suites run by the CLI.

Each suite function returns a CheckReport.  Suites are deterministic for a
fixed seed; every check name is unique within its suite so that tolerance
overrides can address them.
"""

from __future__ import annotations

import numpy as np

from . import characters as ch
from . import fracint as fr
from . import multipliers as mu
from . import opcalc as oc
from . import transforms as tr
from . import waves as wv
from .models import SampledFunction, build_model, lp_norm, make_grid, validate_weight
from .report import Check, CheckReport

DEFAULT_TOLS = {
    "characters.engine_agreement": 1e-6,
    "characters.volterra_vs_ode": 1e-5,
    "characters.laplace_mass": 1e-8,
    "characters.eigen_residual_scale": 1e-5,
    "transforms.pair_rtol": 1e-3,
    "transforms.roundtrip": 1e-4,
    "transforms.product_explicit": 1e-8,
    "transforms.product_mehler": 1e-4,
    "transforms.homomorphism": 1e-4,
    "fracint.semigroup": 1e-7,
    "fracint.left_inverse": 1e-6,
    "fracint.mehler_link": 1e-6,
    "fracint.derivative_relation": 1e-5,
    "waves.eigen_action": 1e-6,
    "waves.residual": 1e-3,
    "waves.frac_wave": 1e-3,
    "opcalc.diagonalization": 1e-3,
    "opcalc.homomorphism": 1e-3,
    "opcalc.multiplier": 1e-4,
    "opcalc.moments": 1e-10,
    "opcalc.hermite_eigen": 1e-3,
    "multipliers.factorization": 1e-6,
}


def _tol(tols, name):
    return tols[name]


def _merged(overrides):
    tols = dict(DEFAULT_TOLS)
    if overrides:
        tols.update(overrides)
    return tols


def _models(model_filter):
    names = ("cosh", "mehler", "sl2c") if model_filter in (None, "all") else (model_filter,)
    return [build_model(n) for n in names]


def suite_characters(model_filter=None, seed=1234, grid_cfg=None, tols=None):
    tols = _merged(tols)
    rep = CheckReport()
    lam_set = (0.5, 1.0, 2.0, 4.0)
    xs = np.linspace(0.1, 8.0, 40)
    for model in _models(model_filter):
        worst = 0.0
        for lam in lam_set:
            ode = ch.phi_ode(model.profile, lam, xs)
            closed = ch.phi_closed(model, lam, xs)
            worst = max(worst, float(np.max(np.abs([e.value for e in ode] - closed))))
        rep.add(Check.residual(f"{model.name}_ode_vs_closed", worst,
                               _tol(tols, "characters.engine_agreement"),
                               detail="max over lam in {0.5,1,2,4}, x in [0.1, 8]"))
        mass_gap = 0.0
        for x in (0.5, 1.0, 2.0, 4.0):
            repx = ch.laplace_rep(model, x)
            mass_gap = max(mass_gap, abs(repx.total_mass
                                         - np.real(ch.phi_closed(model, 0.0, x))))
        rep.add(Check.residual(f"{model.name}_laplace_mass", mass_gap,
                               _tol(tols, "characters.laplace_mass"),
                               detail="tau_x total mass vs phi_0(x), x in {0.5,1,2,4}"))
        gap = 0.0
        for lam in (0.5, 2.0):
            for x in (0.8, 2.0, 3.0):
                gap = max(gap, abs(ch.phi_from_laplace(model, lam, x)
                                   - ch.phi_closed(model, lam, x)))
        rep.add(Check.residual(f"{model.name}_laplace_vs_closed", gap, 1e-6,
                               detail="cosine transform of tau_x vs direct character"))

    # Volterra engine: sl2c exact, sinh^3 profile vs ODE
    sl2c = build_model("sl2c")
    evs = ch.phi_volterra(sl2c.profile, 2.0, xmax=8.0)
    verr = max(abs(e.value - ch.phi_closed(sl2c, 2.0, e.x)) for e in evs)
    rho_max = max(abs(e.rho) for e in evs)
    rep.add(Check.residual("sl2c_volterra_exact", verr, 1e-8,
                           detail=f"rho stays {rho_max:.1e}; phi matches sin(lx)/(l sinh x)"))
    from .models import WeightProfile

    sinh3 = WeightProfile(
        gamma=1.0, omega0=1.5,
        m=lambda x: 8 * np.sinh(x) ** 3,
        q=lambda x: 8 * (np.sinh(x) / x) ** 3,
        dlogq=lambda x: 3 * (1 / np.tanh(x) - 1 / x),
        d2logq=lambda x: 3 * (1 / x**2 - 1 / np.sinh(x) ** 2),
        dlogm=lambda x: 3 / np.tanh(x),
    )
    worst = 0.0
    for lam in (0.5, 1.0, 2.0):
        evs = ch.phi_volterra(sinh3, lam, xmax=5.0)
        sel = [(e.x, e.value) for e in evs if 0.1 <= e.x <= 5.0]
        ode = ch.phi_ode(sinh3, lam, np.array([x for x, _ in sel]))
        worst = max(worst, max(abs(v - o.value) for (_, v), o in zip(sel, ode)))
    rep.add(Check.residual("sinh3_volterra_vs_ode", worst,
                           _tol(tols, "characters.volterra_vs_ode"),
                           detail="m = 8 sinh^3 x profile, lam in {0.5,1,2}, x in [0.1,5]"))

    # weight validation statuses
    sl_rep = validate_weight(sl2c.profile)
    rep.add(Check("sl2c_hypotheses", 1.0 if sl_rep.all_pass else 0.0, 1.0, None,
                  sl_rep.all_pass, detail="all three construction hypotheses hold"))
    cosh_rep = validate_weight(build_model("cosh").profile)
    small_x_fails = cosh_rep["small_x_ratio"].passed is False
    rep.add(Check("cosh_outside_volterra_class", 1.0 if small_x_fails else 0.0, 1.0, None,
                  small_x_fails, detail="cosh weight fails the small-x hypothesis (m(0)=1)"))
    return rep


def suite_transforms(model_filter=None, seed=1234, grid_cfg=None, tols=None):
    tols = _merged(tols)
    rep = CheckReport()
    if model_filter in (None, "all", "mehler"):
        rep.extend(tr.pair_table(rtol=_tol(tols, "transforms.pair_rtol")))
    for model in _models(model_filter):
        xmax = 30.0 if model.name == "cosh" else 20.0
        grid = make_grid(model, xmax=xmax, panels=int(xmax * 1.6), nodes_per_panel=16)
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2) * x**2)
        finv = tr.inverse(model, tr.forward(model, f), grid)
        err = (lp_norm(grid, SampledFunction(grid, finv.values - f.values), 2)
               / lp_norm(grid, f, 2))
        rep.add(Check.residual(f"{model.name}_roundtrip", err,
                               _tol(tols, "transforms.roundtrip"),
                               detail="inverse(forward(x^2 exp(-x^2))), relative L2(m)"))
        rep.add(Check.info(f"{model.name}_plancherel_constant",
                           tr.plancherel_calibration(model),
                           detail="measured c multiplying the reference spectral density"))
        rep.add(Check.residual(f"{model.name}_plancherel_energy",
                               tr.plancherel_energy_gap(model, f), 1e-4,
                               detail="int |f|^2 m dx vs int |fhat|^2 c pi0 dlam"))
        # product formula on a 3x3x3 lattice
        worst = 0.0
        for lam in (0.5, 1.0, 2.0):
            for x in (0.5, 1.0, 2.0):
                for y in (0.7, 1.3, 2.4):
                    worst = max(worst, tr.product_formula_residual(model, lam, x, y))
        tolname = ("transforms.product_mehler" if model.name == "mehler"
                   else "transforms.product_explicit")
        rep.add(Check.residual(f"{model.name}_product_formula", worst, _tol(tols, tolname),
                               detail="|phi(x*y) - phi(x) phi(y)| on 3x3x3 lattice"))
        # convolution homomorphism
        g = SampledFunction.from_callable(grid, lambda x: np.exp(-((x - 1.0) / 0.8) ** 2))
        fg = tr.convolve(model, f, g)
        lhs = tr.forward(model, fg)
        fh, gh = tr.forward(model, f), tr.forward(model, g)
        num = np.max(np.abs(lhs.values - fh.values * gh.values))
        den = np.max(np.abs(fh.values * gh.values))
        rep.add(Check.residual(f"{model.name}_convolution_homomorphism", num / den,
                               _tol(tols, "transforms.homomorphism"),
                               detail="(f*g)^ vs fhat ghat, relative sup"))
    # venturi probes
    reg = tr.VenturiRegion(np.pi / 4, 0.9)
    probe = tr.venturi_norm_probe(lambda z: 8 * z / np.sinh(np.pi * z) if z != 0 else 8 / np.pi,
                                  reg)
    rep.add(Check("venturi_sech3_transform_bounded", probe["sup_f"].measured, 1e6, None,
                  probe["sup_f"].measured < 1e6,
                  detail="8 lam cosech(pi lam) finite on V(pi/4, 0.9) offset mesh"))
    sups = []
    for om in (0.9, 0.99, 0.999):
        p = tr.venturi_norm_probe(lambda z: 8 * z / np.sinh(np.pi * z) if z != 0 else 8 / np.pi,
                                  tr.VenturiRegion(np.pi / 4, om))
        sups.append(p["sup_f"].measured)
    rep.add(Check("venturi_pole_approach_monotone", sups[-1], None, None,
                  bool(sups[0] < sups[1] < sups[2]),
                  detail=f"suprema {[f'{s:.1f}' for s in sups]} grow as omega -> 1"))
    return rep


def suite_fracint(model_filter=None, seed=1234, grid_cfg=None, tols=None):
    tols = _merged(tols)
    rep = CheckReport()
    pairs = [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0)]
    tests = {"cos2t": lambda t: np.cos(2 * t), "exp-t": np.exp, "t^2": lambda t: t**2}
    worst = 0.0
    for a, b in pairs:
        for name, f in tests.items():
            for x in (0.5, 1.0, 2.0, 4.0):
                inner = lambda t: np.array([fr.w_alpha(f, b, ti) if ti > 0 else 0.0
                                            for ti in np.atleast_1d(t)])
                lhs = fr.w_alpha(inner, a, x)
                rhs = fr.w_alpha(f, a + b, x)
                worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-12))
    rep.add(Check.residual("semigroup_w", worst, _tol(tols, "fracint.semigroup"),
                           detail="W_a W_b = W_(a+b) on {cos 2t, e^-t, t^2}, relative"))
    worst = 0.0
    for name, f in tests.items():
        for x in (0.7, 1.3):
            lhs = fr.w_alpha(lambda t: np.array([fr.u_beta(f, 0.5, ti) if ti > 0 else 0.0
                                                 for ti in np.atleast_1d(t)]), 0.5, x)
            rhs = fr.u_beta(f, 1.0, x)
            worst = max(worst, abs(lhs - rhs))
    rep.add(Check.residual("mixed_wu", worst, 1e-7, detail="W_1/2 U_1/2 = U_1"))
    dw = abs(fr.ddx(lambda x: np.real(fr.w_alpha(lambda t: np.cos(2 * t), 1.0, x)), 1.0)
             / np.sinh(1.0) - np.cos(2.0))
    du = abs(fr.ddx(lambda x: np.real(fr.u_beta(np.exp, 1.0, x)), 1.3) - np.exp(1.3))
    rep.add(Check.residual("left_inverse_w", dw, _tol(tols, "fracint.left_inverse"),
                           detail="cosech x D W_1 = I on cos 2t at x=1"))
    rep.add(Check.residual("left_inverse_u", du, _tol(tols, "fracint.left_inverse"),
                           detail="D U_1 = I on exp(-t) at x=1.3"))
    for nu in (0, 1, 2):
        sub = fr.mehler_dirichlet_check(nu, 1.0 if nu else 2.0, 1.0 if nu else 0.7)
        for c in sub:
            c.name = f"nu{nu}_{c.name}"
        rep.extend(sub)
    worst_margin = 0.0
    for n in (1, 2, 3):
        for x in (6.0, 9.0, 12.0):
            ratio, env = fr.growth_ratio(n, 0.5, x)
            worst_margin = max(worst_margin, ratio / (env * 1.1))
    rep.add(Check.bound("scalar_growth_bound", worst_margin, 1.0,
                        detail="W_n(cosh(t/2))/sinh^n x vs envelope*(1+0.1), n<=3"))
    return rep


def suite_waves(model_filter=None, seed=1234, grid_cfg=None, tols=None):
    tols = _merged(tols)
    rep = CheckReport()
    for name in ("cosh", "sl2c"):
        if model_filter not in (None, "all", name):
            continue
        model = build_model(name)
        grid = make_grid(model, xmax=20.0, panels=32, nodes_per_panel=16)
        worst = 0.0
        for lam in (0.5, 1.0, 2.0, 4.0):
            phi = SampledFunction.from_callable(
                grid, lambda x, l=lam: np.real(ch.phi_closed(model, l, x)))
            for t in (0.5, 1.0, 2.0):
                u = wv.cosine_apply(model, t, phi, check_support=False)
                worst = max(worst, float(np.max(np.abs(
                    u.values - np.cos(lam * t) * phi.values))))
        rep.add(Check.residual(f"{name}_eigen_action", worst,
                               _tol(tols, "waves.eigen_action"),
                               detail="cos(tA) phi_lam = cos(lam t) phi_lam"))
        bump = SampledFunction.from_callable(grid, lambda x: np.exp(-((x - 3.0) / 0.7) ** 2))
        rep.add(Check.residual(f"{name}_wave_equation_residual",
                               wv.wave_residual(model, bump, 1.0),
                               _tol(tols, "waves.residual"),
                               detail="second differences in t vs spatial operator"))
        hb = SampledFunction.from_callable(
            grid, lambda x: np.where(np.abs(x - 2.0) < 1.5,
                                     np.exp(-1 / np.maximum(1 - ((x - 2) / 1.5) ** 2, 1e-12)), 0.0))
        supp0 = wv.support_radius(model, 0.0, hb)
        excess = 0.0
        for t in (1.0, 2.5, 5.0):
            excess = max(excess, wv.support_radius(model, t, hb) - supp0 - t)
        rep.add(Check.bound(f"{name}_finite_propagation", excess, 2 * grid.spacing,
                            detail="support radius grows at most at unit speed (+2 cells)"))
        # cosine functional equation
        worst = 0.0
        for (s, t) in ((1.0, 0.5), (2.0, 1.0)):
            lhs = (wv.cosine_apply(model, s + t, bump).values
                   + wv.cosine_apply(model, abs(s - t), bump).values)
            u = wv.cosine_apply(model, t, bump)
            rhs = 2 * wv.cosine_apply(model, s, u).values
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        rep.add(Check.residual(f"{name}_cosine_functional_equation", worst, 1e-6,
                               detail="cos((s+t)A)+cos((s-t)A) = 2 cos(sA)cos(tA)"))
    if model_filter in (None, "all", "cosh"):
        model = build_model("cosh")
        for p in (2.0, 4.0, 8.0):
            rep.extend(wv.norm_growth(model, p, (0.5, 1.5, 3.0, 5.0), trials=8, seed=seed))
        for n in (1, 2, 3):
            rep.extend(wv.wn_growth(model, n, (1.0, 2.0), trials=4, seed=seed))
    if model_filter in (None, "all", "sl2c"):
        model = build_model("sl2c")
        grid = make_grid(model, xmax=20.0, panels=32, nodes_per_panel=16)
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-((x - 2.0) / 0.8) ** 2))
        sm = wv.spherical_mean(1.0, f)
        rep.add(Check("spherical_mean_positive", float(np.min(sm.values)), None, None,
                      bool(np.min(sm.values) > -1e-12), detail="A_t preserves positivity"))
        ones = SampledFunction.from_callable(grid, lambda x: np.ones_like(x))
        rep.add(Check.residual("spherical_mean_constants",
                               float(np.max(np.abs(wv.spherical_mean(1.5, ones).values - 1.0))),
                               1e-10, detail="A_t 1 = 1"))
        mass0 = np.sum(f.values * grid.measure_weights)
        mass1 = np.sum(sm.values * grid.measure_weights)
        rep.add(Check.residual("spherical_mean_mass", abs(mass1 - mass0) / mass0, 1e-6,
                               detail="translation preserves int f m dx"))
        rep.extend(wv.frac_wave_check(1.0, f, rtol=_tol(tols, "waves.frac_wave")))
    return rep


def suite_opcalc(model_filter=None, seed=1234, grid_cfg=None, tols=None):
    tols = _merged(tols)
    rep = CheckReport()
    lam_probe = (1.0, 2.0)
    for name in ("cosh", "sl2c"):
        if model_filter not in (None, "all", name):
            continue
        model = build_model(name)
        grid = make_grid(model, xmax=20.0, panels=32, nodes_per_panel=16)
        ctx = oc.discretize(model, grid, p=2.0)
        mask = oc.interior_mask(grid)
        f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2))
        K = oc.t_a(ctx, f)
        worst = 0.0
        for lam in lam_probe:
            phi = np.real(ch.phi_closed(model, lam, grid.nodes))
            target = tr.forward(model, f, np.array([lam])).values[0]
            got = K.apply(phi)
            num = np.sqrt(np.sum(((got - target * phi) ** 2 * grid.measure_weights)[mask]))
            den = np.sqrt(np.sum((phi ** 2 * grid.measure_weights)[mask])) * abs(target)
            worst = max(worst, num / den)
        rep.add(Check.residual(f"{name}_diagonalization", worst,
                               _tol(tols, "opcalc.diagonalization"),
                               detail="T_A(f) phi_lam = fhat(lam) phi_lam, interior"))
        g = SampledFunction.from_callable(grid, lambda x: x * np.exp(-x**2))
        rep.add(Check.residual(f"{name}_homomorphism",
                               oc.homomorphism_residual(ctx, f, g),
                               _tol(tols, "opcalc.homomorphism"),
                               detail="T_A(f*g) vs T_A(f) T_A(g), interior Frobenius"))
        rep.extend(_renamed(oc.schur_dominates(K, grid, trials=200, seed=seed), f"{name}_"))
        if name == "cosh":
            rep.add(Check.residual(
                "cosh_multiplier_identity",
                oc.multiplier_residual(ctx, lambda x: np.exp(-x**2),
                                       lambda xi: np.sqrt(np.pi) * np.exp(-xi**2 / 4), 1.0),
                _tol(tols, "opcalc.multiplier"),
                detail="Fourier-side operator on phi_lam vs scalar inversion value"))
            fh, Fh = oc.hermite_example(2)
            xg = np.linspace(-12, 12, 4001)
            mom = max(abs(np.trapezoid(xg**j * fh(xg), xg)) for j in range(4))
            rep.add(Check.residual("hermite_moments", mom, _tol(tols, "opcalc.moments"),
                                   detail="int x^j H4(x) exp(-x^2) dx = 0, j < 4"))
            L = oc.lambda_fc(ctx, fh, Fh)
            worst = 0.0
            for lam in (0.5, 1.5):
                phi = np.real(ch.phi_closed(model, lam, grid.nodes))
                got = L.apply(phi)
                num = np.sqrt(np.sum(((got - fh(lam) * phi) ** 2 * grid.measure_weights)[mask]))
                den = np.sqrt(np.sum((phi ** 2 * grid.measure_weights)[mask]))
                worst = max(worst, num / den)
            rep.add(Check.residual("hermite_eigen_action", worst,
                                   _tol(tols, "opcalc.hermite_eigen"),
                                   detail="Lambda_A(H4 gaussian) phi_lam = f(lam) phi_lam"))
    return rep


def _renamed(report, prefix):
    for c in report:
        c.name = prefix + c.name
    return report


def suite_multipliers(model_filter=None, seed=1234, grid_cfg=None, tols=None):
    tols = _merged(tols)
    rep = CheckReport()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(3, 13))
        vals = rng.normal(size=n)
        s = float(rng.uniform(1.0, 3.0))
        a = mu.s_variation(mu.VariationSample(np.arange(n, dtype=float), vals), s)
        b = mu.s_variation_bruteforce(vals, s)
        worst = max(worst, abs(a - b))
    rep.add(Check.residual("s_variation_exact", worst, 1e-12,
                           detail="DP vs exhaustive enumeration, 100 random n<=12"))
    mono_ok = True
    for _ in range(50):
        vals = rng.normal(size=10)
        vs = [mu.s_variation(mu.VariationSample(np.arange(10.0), vals), s)
              for s in (1.0, 1.5, 2.0, 3.0)]
        mono_ok &= all(vs[i] >= vs[i + 1] - 1e-12 for i in range(3))
    rep.add(Check("variation_monotone_in_s", 1.0 if mono_ok else 0.0, 1.0, None, mono_ok,
                  detail="var_s nonincreasing in s, 50 random samples"))
    h = lambda l: np.where(l == 0, 8 / np.pi, 8 * l / np.sinh(np.pi * np.where(l == 0, 1, l)))
    norm = mu.marcinkiewicz_norm(h, 2.0, j_range=(-6, 4))
    rep.add(Check.info("ms_norm_sech3_transform", norm.ms_norm,
                       detail="Marcinkiewicz norm of 8 lam cosech(pi lam), s=2, j in [-6,4]"))
    model = build_model("cosh")
    grid = make_grid(model, xmax=20.0, panels=32, nodes_per_panel=16)
    ctx = oc.discretize(model, grid)
    ghat = tr.SpectralFunction.on_grid(12.0, 600)
    ghat.values = np.exp(-ghat.lambda_nodes**2)
    lam_mat, sub = mu.transfer_apply(ctx, ghat, test_vectors=6, seed=seed)
    rep.extend(sub)
    # eigen-action of the transferred operator
    worst = 0.0
    for lam in (0.5, 1.5):
        phi = np.real(ch.phi_closed(model, lam, grid.nodes))
        target = mu.multiplier_value(ghat, lam, 2.0, grid)
        mask = oc.interior_mask(grid)
        num = np.sqrt(np.sum(((lam_mat @ phi - target * phi) ** 2 * grid.measure_weights)[mask]))
        den = np.sqrt(np.sum((phi ** 2 * grid.measure_weights)[mask]))
        worst = max(worst, num / den / max(abs(target), 1e-12))
    rep.add(Check.residual("transfer_eigen_action", worst, 1e-3,
                           detail="Lambda(g) phi_lam vs scalar multiplier value"))
    # round trip of the cosh-side synthesis
    f = SampledFunction.from_callable(grid, lambda x: np.exp(-x**2))
    fh = tr.forward(model, f)
    g = mu.g_from_ghat(fh, grid)
    err = lp_norm(grid, SampledFunction(grid, g.values - f.values), 2) / lp_norm(grid, f, 2)
    rep.add(Check.residual("g_from_ghat_roundtrip", err, 1e-4,
                           detail="cosine synthesis inverts the cosh-model transform"))
    return rep


SUITES = {
    "characters": suite_characters,
    "transforms": suite_transforms,
    "fracint": suite_fracint,
    "waves": suite_waves,
    "opcalc": suite_opcalc,
    "multipliers": suite_multipliers,
}
