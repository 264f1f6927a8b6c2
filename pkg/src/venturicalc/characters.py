"""Hypergroup characters phi_lambda and their Laplace representations.

Four evaluation engines, kept deliberately independent so they can serve as
oracles for each other:

  * phi_closed    closed forms (cosh, sl2c) and the conical-function
                  integral for mehler;
  * phi_ode       direct integration of the Sturm-Liouville equation from a
                  Taylor seed next to the singular origin;
  * phi_volterra  the Bessel-plus-correction construction: psi = j + rho with
                  rho solving a Volterra integral equation by Picard
                  iteration (needs gamma >= 1/2);
  * phi_from_laplace  quadrature of cos(lambda t) against the measure tau_x.

All engines normalize phi_lambda(0) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gamma as gamma_fn

from .errors import ConvergenceError, DomainError, IntegrationError
from .models import make_grid
from .quadrature import gauss_jacobi, gauss_legendre


@dataclass
class CharacterEval:
    lam: complex
    x: float
    value: complex
    psi: complex | None = None          # sqrt(m) * phi
    rho: complex | None = None          # Volterra correction (j + rho = psi, pre-normalization)
    bessel_part: complex | None = None


@dataclass
class MeasureRep:
    """tau_x as point atoms plus a density on (-x, x), with a precomputed
    quadrature (quad_nodes/quad_weights) that already absorbs any endpoint
    singularity of the density."""

    x: float
    atoms: list
    density: Callable | None
    quad_nodes: np.ndarray
    quad_weights: np.ndarray

    def integrate(self, fn):
        total = sum(mass * fn(loc) for loc, mass in self.atoms)
        if len(self.quad_nodes):
            total = total + np.sum(self.quad_weights * fn(self.quad_nodes))
        return total

    @property
    def total_mass(self):
        return float(np.real(self.integrate(lambda t: 1.0 + 0.0 * np.asarray(t, dtype=float))))


def _cos(z):
    return np.cos(z)


def _sinc(z):
    """sin(z)/z, stable near 0, complex-capable."""
    z = np.asarray(z)
    small = np.abs(z) < 1e-6
    zs = np.where(small, 1.0, z)
    out = np.where(small, 1 - z**2 / 6, np.sin(zs) / zs)
    return out


# ---------------------------------------------------------------------------
# closed forms / integral representation
# ---------------------------------------------------------------------------

def _mehler_weights(x, freq, nper=16):
    """Quadrature nodes/weights on (0, x) for the conical-function integral

        phi_lambda(x) = (sqrt2/pi) int_0^x cos(lambda y) / sqrt(cosh x - cosh y) dy.

    Uniform panels sized against the oscillation `freq`, with a Gauss-Jacobi
    end panel absorbing the (x - y)^(-1/2) singularity; cosh x - cosh y is
    evaluated as 2 sinh((x+y)/2) sinh((x-y)/2) to avoid cancellation.
    Returned weights include the 1/sqrt(...) density and the sqrt2/pi front
    factor, so phi = sum_i w_i cos(lambda y_i).
    """
    width = min(x, 2.0 / max(1.0, freq))
    npan = max(2, int(np.ceil(x / width)))
    edges = np.linspace(0.0, x, npan + 1)
    tgl, wgl = gauss_legendre(nper)
    tgj, wgj = gauss_jacobi(nper, -0.5, 0.0)

    def dens(y):
        return 1.0 / np.sqrt(2.0 * np.sinh((x + y) / 2) * np.sinh((x - y) / 2))

    a = edges[:-2][:, None]
    b = edges[1:-1][:, None]
    y_gl = (a + (b - a) * (tgl[None, :] + 1) / 2).ravel()
    w_gl = (((b - a) / 2) * wgl[None, :]).ravel() * dens(y_gl)
    a_end = edges[-2]
    y_gj = a_end + (x - a_end) * (tgj + 1) / 2
    w_gj = np.sqrt((x - a_end) / 2) * wgj * np.sqrt(x - y_gj) * dens(y_gj)
    ys = np.concatenate([y_gl, y_gj])
    ws = np.concatenate([w_gl, w_gj]) * (np.sqrt(2.0) / np.pi)
    return ys, ws


def _phi_mehler(lam, x, nper=16):
    if x == 0:
        return 1.0 + 0j if np.iscomplexobj(np.asarray(lam)) else 1.0
    y, w = _mehler_weights(float(x), abs(lam), nper)
    return np.sum(w * np.cos(lam * y))


def phi_closed(model, lam, x):
    """Closed-form / integral-representation character value phi_lambda(x).

    Vectorized over x.  Real lambda yields real output.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if model.name == "cosh":
        out = np.cos(lam * x) / np.cosh(x)
    elif model.name == "sl2c":
        out = _sinc(lam * x) * x / np.sinh(np.where(x == 0, 1.0, x))
        out = np.where(x == 0, 1.0 + 0 * out, out)
    elif model.name == "mehler":
        out = np.array([_phi_mehler(lam, xx) for xx in x])
    else:
        raise DomainError(f"phi_closed has no closed form for model {model.name!r}")
    if scalar:
        out = out[()] if out.ndim == 0 else out[0]
    return out


def character_matrix(model, lams, xs, nper=16):
    """phi_{lambda_k}(x_j) as a (len(lams), len(xs)) array, real lambdas."""
    lams = np.asarray(lams, dtype=float)
    xs = np.asarray(xs, dtype=float)
    if model.name == "cosh":
        return np.cos(np.outer(lams, xs)) / np.cosh(xs)[None, :]
    if model.name == "sl2c":
        return _sinc(np.outer(lams, xs)) * (xs / np.sinh(xs))[None, :]
    out = np.empty((len(lams), len(xs)))
    fmax = float(np.max(np.abs(lams))) if len(lams) else 1.0
    for j, x in enumerate(xs):
        y, w = _mehler_weights(float(x), fmax, nper)
        out[:, j] = np.cos(np.outer(lams, y)) @ w
    return out


_PHI_CACHE = {}


def cached_character_matrix(model, grid, lam_nodes, lam_key):
    key = (grid.key, lam_key)
    got = _PHI_CACHE.get(key)
    if got is None:
        got = character_matrix(model, lam_nodes, grid.nodes)
        _PHI_CACHE[key] = got
    return got


# ---------------------------------------------------------------------------
# ODE engine
# ---------------------------------------------------------------------------

def phi_ode(profile, lam, x_targets, rtol=1e-11, atol=1e-12):
    """Integrate -phi'' - (m'/m) phi' = (lam^2 + omega0^2) phi outward.

    Starts at x0 = 1e-4 from the Taylor seed
        phi ~ 1 - mu x^2 / (4 (gamma+1)),   mu = lam^2 + omega0^2,
    which removes the regular singular point from the integrator's path.
    """
    x_targets = np.atleast_1d(np.asarray(x_targets, dtype=float))
    if np.any(np.diff(x_targets) <= 0):
        raise DomainError("x_targets must be strictly increasing")
    if x_targets[-1] > 50:
        raise DomainError("x_targets must stay within (0, 50]")
    mu = lam**2 + profile.omega0**2
    x0 = 1e-4
    c = 4 * (profile.gamma + 1)
    y0 = np.array([1 - mu * x0**2 / c, -2 * mu * x0 / c],
                  dtype=complex if np.iscomplexobj(np.asarray(mu)) else float)

    def rhs(x, y):
        return [y[1], -profile.log_deriv_m(x) * y[1] - mu * y[0]]

    targets = x_targets[x_targets > x0]
    sol = solve_ivp(rhs, [x0, x_targets[-1]], y0, t_eval=targets,
                    rtol=rtol, atol=atol, method="RK45")
    if not sol.success:
        raise IntegrationError(f"character ODE integration failed: {sol.message}")
    vals = dict(zip(targets, sol.y[0]))
    out = []
    for x in x_targets:
        v = vals.get(x, 1 - mu * x**2 / c)
        out.append(CharacterEval(lam, float(x), v, psi=v * np.sqrt(profile.m(max(x, x0)))))
    return out


# ---------------------------------------------------------------------------
# Bessel factor and Volterra engine
# ---------------------------------------------------------------------------

def bessel_j(gamma, lam, x, nper=96):
    """Normalized Bessel-type factor j_lambda(x) ~ x^(gamma+1/2) as x -> 0.

    Evaluated from its integral representation after s = x sin(theta):

        j(x) = G(g+1) x^(g+1/2) / (G(1/2) G(g+1/2))
               * int_{-pi/2}^{pi/2} cos^{2g}(theta) cos(lambda x sin theta) dtheta.
    """
    if gamma < 0.5:
        raise DomainError("bessel_j requires gamma >= 1/2")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    t, w = gauss_legendre(nper)
    th = (t + 1) * np.pi / 4
    wth = w * np.pi / 4
    cos_pow = np.cos(th) ** (2 * gamma)
    pref = gamma_fn(gamma + 1) / (gamma_fn(0.5) * gamma_fn(gamma + 0.5)) * x ** (gamma + 0.5)
    integ = 2 * (np.cos(lam * np.outer(x, np.sin(th))) @ (wth * cos_pow))
    out = pref * integ
    return out[0] if scalar else out


def phi_volterra(profile, lam, grid=None, xmax=8.0, tol=1e-12, maxiter=200):
    """Characters from the Volterra construction psi = j + rho, phi = psi/sqrt(m).

    rho solves
        rho(x) = int_0^x sin(lam (x-y))/lam * Q(y) j(y) dy
               + int_0^x sin(lam (x-y))/lam * (Q(y) + (4 g^2 - 1)/(4 y^2)) rho(y) dy
    by Picard iteration from rho = 0 until the sup change drops below `tol`.
    The grid must be panel-structured with log refinement near 0, where rho
    vanishes like y^(gamma + 5/2).
    """
    if profile.gamma < 0.5:
        raise DomainError("phi_volterra requires gamma >= 1/2")
    if grid is None:
        grid = _volterra_grid(profile, xmax)
    x = grid.nodes
    Q = profile.bigQ(x)
    j = bessel_j(profile.gamma, lam, x)
    fac = Q + (4 * profile.gamma**2 - 1) / (4 * x**2)
    lamc = lam if lam != 0 else 1e-155
    sx, cx = np.sin(lamc * x), np.cos(lamc * x)

    def volterra(g):
        c1 = grid.cumulative(cx * g)
        c2 = grid.cumulative(sx * g)
        return (sx * c1 - cx * c2) / lamc

    rhs0 = volterra(Q * j)
    rho = np.zeros_like(j)
    for _ in range(maxiter):
        rho_new = rhs0 + volterra(fac * rho)
        delta = np.max(np.abs(rho_new - rho))
        rho = rho_new
        if delta < tol:
            break
    else:
        raise ConvergenceError(f"Volterra iteration did not reach {tol} in {maxiter} steps")

    psi = j + rho
    phi_raw = psi / np.sqrt(profile.m(x))
    # normalize by matching the Taylor value at the smallest node
    mu = lam**2 + profile.omega0**2
    scale = (1 - mu * x[0]**2 / (4 * (profile.gamma + 1))) / phi_raw[0]
    phi = scale * phi_raw
    return [CharacterEval(lam, float(xx), phi[i], psi=scale * psi[i],
                          rho=scale * rho[i], bessel_part=scale * j[i])
            for i, xx in enumerate(x)]


def _volterra_grid(profile, xmax):
    class _Shim:   # make_grid only needs .m and .name
        name = "volterra"

        @staticmethod
        def m(x):
            return profile.m(x)

    panels = max(16, int(np.ceil(xmax / 0.5)))
    return make_grid(_Shim, xmax=xmax, panels=panels, nodes_per_panel=16, log_refine=10)


# ---------------------------------------------------------------------------
# Laplace representation
# ---------------------------------------------------------------------------

def laplace_rep(model, x, nper=64):
    """The positive measure tau_x with phi_lambda(x) = int cos(lambda t) dtau_x.

    cosh:   atoms of mass 1/(2 cosh x) at +-x;
    sl2c:   uniform density 1/(2 sinh x) on [-x, x];
    mehler: density 1/(pi sqrt2 sqrt(cosh x - cosh |t|)) on (-x, x), with the
            endpoint singularity absorbed into the stored quadrature.
    """
    x = float(x)
    if x <= 0:
        raise DomainError("laplace_rep requires x > 0")
    if model.name == "cosh":
        mass = 1 / (2 * np.cosh(x))
        return MeasureRep(x, [(-x, mass), (x, mass)], None,
                          np.empty(0), np.empty(0))
    if model.name == "sl2c":
        t, w = gauss_legendre(nper)
        nodes = x * t
        weights = x * w / (2 * np.sinh(x))
        return MeasureRep(x, [], lambda t: np.full_like(np.asarray(t, dtype=float),
                                                        1 / (2 * np.sinh(x))),
                          nodes, weights)
    # mehler: reuse the character quadrature symmetrically on both signs
    y, w = _mehler_weights(x, 1.0, nper)
    nodes = np.concatenate([-y[::-1], y])
    weights = np.concatenate([w[::-1], w]) / 2
    dens = lambda t: 1 / (np.pi * np.sqrt(2.0) * np.sqrt(np.cosh(x) - np.cosh(np.asarray(t))))
    return MeasureRep(x, [], dens, nodes, weights)


def phi_from_laplace(model, lam, x):
    """Character via its Laplace representation (cosine transform of tau_x)."""
    rep = laplace_rep(model, x)
    return rep.integrate(lambda t: np.cos(lam * t))


def eigen_residual(profile, lam, x, phi_fn, h=1e-3):
    """|phi'' + (m'/m) phi' + (lam^2 + omega0^2) phi| by central differences
    on a local 5-point stencil; phi_fn evaluates the character pointwise."""
    stencil = x + h * np.array([-2, -1, 0, 1, 2])
    v = np.array([phi_fn(s) for s in stencil])
    d1 = (-v[4] + 8 * v[3] - 8 * v[1] + v[0]) / (12 * h)
    d2 = (-v[4] + 16 * v[3] - 30 * v[2] + 16 * v[1] - v[0]) / (12 * h**2)
    mu = lam**2 + profile.omega0**2
    return abs(d2 + profile.log_deriv_m(x) * d1 + mu * v[2])
