"""Grid-discretized operator functional calculus.

An OperatorContext realizes L^p(m) on a grid for the cosh or sl2c model and
exposes cos(tA) and phi_A(x) as dense matrices.  T_A(f) = int f phi_A m dx
is assembled through the models' closed translation kernels:

  cosh:  F(s,u) = [ft(u-s) + ft(u+s)] / (2 cosh s cosh u),  ft = f(|.|) cosh
  sl2c:  F(s,t) = [P(s+t) - P(|s-t|)] / (2 sinh s sinh t),  P = int_0^. f sinh

both symmetric, acting as (Kh)(s) = sum_t F(s,t) h(t) m(t) w(t).  The slow
route (time quadrature of cosine matrices) is kept for cross-checks and for
the Fourier-side operators (multiplier action and the even functional
calculus), where no closed kernel exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_hermite

from .errors import DomainError, TruncationError
from .models import SampledFunction
from .quadrature import gauss_legendre, interp_weights
from .report import Check, CheckReport
from .transforms import forward, interp_matrix_eval
from .waves import half_density


@dataclass
class KernelMatrix:
    """Dense kernel F(p_i, q_j) with the measure weights of both axes."""

    entries: np.ndarray
    row_measure: np.ndarray
    col_measure: np.ndarray

    def apply(self, h):
        return self.entries @ (np.asarray(h) * self.col_measure)

    def compose(self, other):
        ent = self.entries @ (other.entries * self.col_measure[:, None])
        return KernelMatrix(ent, self.row_measure, other.col_measure)

    def action(self):
        """Matrix acting on coefficient vectors (kernel times column measure)."""
        return self.entries * self.col_measure[None, :]


def interior_mask(grid, frac=0.9):
    return grid.nodes <= frac * grid.xmax


def frobenius_gap(A, B, mask):
    """Relative Frobenius distance of two action matrices on the interior block."""
    sub = np.ix_(mask, mask)
    denom = np.linalg.norm(B[sub])
    return float(np.linalg.norm(A[sub] - B[sub]) / denom)


@dataclass
class OperatorContext:
    model: object
    grid: object
    p: float = 2.0
    _cache: dict = field(default_factory=dict, repr=False)

    def cosine_matrix(self, t):
        """Dense matrix of cos(tA) via the translation formula and local
        cubic interpolation; columns beyond the truncation radius are
        zero-filled."""
        t = float(abs(t))
        grid = self.grid
        w, parity = half_density(self.model)
        s = grid.nodes
        n = grid.n
        M = np.zeros((n, n))
        wcol = w(s)
        for pts in (s + t, s - t):
            sign = np.where(pts < 0, float(parity), 1.0)
            idx, wts = interp_weights(s, np.abs(pts), parity=1)
            np.add.at(M, (np.repeat(np.arange(n), 4), idx.ravel()),
                      (wts * sign[:, None]).ravel())
        M *= wcol[None, :] / (2 * w(s))[:, None]
        return M

    def phi_a_matrix(self, x):
        """phi_A(x) = int cos(tA) dtau_x as a dense matrix."""
        from .characters import laplace_rep

        rep = laplace_rep(self.model, x)
        n = self.grid.n
        M = np.zeros((n, n))
        for loc, mass in rep.atoms:
            M += mass * self.cosine_matrix(abs(loc))
        if len(rep.quad_nodes):
            # pair up +-t nodes: cos(tA) is even in t
            pos = rep.quad_nodes > 0
            for t, wq in zip(rep.quad_nodes[pos], rep.quad_weights[pos]):
                M += 2 * wq * self.cosine_matrix(t)
        return M

    def cosine_applier(self, t):
        return self.cosine_matrix(t)

    def phi_a_applier(self, x):
        return self.phi_a_matrix(x)


def discretize(model, grid, p=2.0):
    if model.name not in ("cosh", "sl2c"):
        raise DomainError("explicit cosine machinery exists for cosh and sl2c only")
    return OperatorContext(model, grid, float(p))


# ---------------------------------------------------------------------------
# T_A via closed kernels
# ---------------------------------------------------------------------------

def t_a(ctx, f, tail_tol=1e-8):
    """T_A(f) = int_0^inf f(x) phi_A(x) m(x) dx as a KernelMatrix."""
    grid = ctx.grid
    x = grid.nodes
    fv = f.values if isinstance(f, SampledFunction) else np.asarray(f)
    tail = abs(fv[-1]) * ctx.model.m(x[-1])
    if tail > tail_tol:
        raise TruncationError(f"f m tail {tail:.2e} exceeds {tail_tol:.0e}", tail=tail)
    if ctx.model.name == "cosh":
        ft = fv * np.cosh(x)
        diff = interp_matrix_eval(x, ft, x[:, None] - x[None, :], parity=1)
        summ = interp_matrix_eval(x, ft, x[:, None] + x[None, :], parity=1)
        K = (diff + summ) / (2 * np.outer(np.cosh(x), np.cosh(x)))
    else:
        P = grid.cumulative(fv * np.sinh(x))
        Pd = interp_matrix_eval(x, P, np.abs(x[:, None] - x[None, :]), parity=0,
                                fill=P[-1], zero_at_origin=True)
        Ps = interp_matrix_eval(x, P, x[:, None] + x[None, :], parity=0,
                                fill=P[-1], zero_at_origin=True)
        K = (Ps - Pd) / (2 * np.outer(np.sinh(x), np.sinh(x)))
    return KernelMatrix(K, grid.measure_weights, grid.measure_weights)


def t_a_slow(ctx, f, nper=None):
    """T_A(f) by direct quadrature of phi_A over x (cross-check route)."""
    grid = ctx.grid
    fv = f.values if isinstance(f, SampledFunction) else np.asarray(f)
    n = grid.n
    M = np.zeros((n, n))
    for xj, fj, mwj in zip(grid.nodes, fv, grid.measure_weights):
        if fj == 0.0:
            continue
        M += fj * mwj * ctx.phi_a_matrix(xj)
    # convert action matrix back to kernel form
    K = M / grid.measure_weights[None, :]
    return KernelMatrix(K, grid.measure_weights, grid.measure_weights)


def homomorphism_residual(ctx, f, g):
    """Relative interior Frobenius gap of T_A(f*g) vs T_A(f) T_A(g)."""
    from .transforms import convolve

    fg = convolve(ctx.model, f, g)
    lhs = t_a(ctx, fg)
    rhs = t_a(ctx, f).compose(t_a(ctx, g))
    mask = interior_mask(ctx.grid)
    return frobenius_gap(lhs.action(), rhs.action(), mask)


# ---------------------------------------------------------------------------
# Fourier-side operators
# ---------------------------------------------------------------------------

def _time_truncation(Ff, omega0, tol=1e-12, tmax_cap=200.0):
    T = 4.0
    while abs(Ff(T)) * np.cosh(omega0 * T) > tol:
        T *= 1.3
        if T > tmax_cap:
            raise TruncationError("Fourier transform does not decay against cosh(omega0 t)")
    return T


def fourier_calculus_matrix(ctx, Ff, nper=128):
    """(1/2pi) int_R Ff(t) cos(tA) dt = (1/pi) int_0^inf Ff(t) cos(tA) dt."""
    T = _time_truncation(Ff, ctx.model.omega0)
    tg, wg = gauss_legendre(nper)
    ts = (tg + 1) * T / 2
    ws = wg * T / 2
    n = ctx.grid.n
    M = np.zeros((n, n))
    for t, w in zip(ts, ws):
        M += w * Ff(t) * ctx.cosine_matrix(t)
    return M / np.pi


def multiplier_residual(ctx, f, Ff, lam, nper=128):
    """Gap between the Fourier-side operator acting on phi_lam and the scalar
    (1/2pi) int Ff(xi) cos(xi lam) dxi (which Fourier inversion makes f(lam))."""
    from .characters import phi_closed

    M = fourier_calculus_matrix(ctx, Ff, nper)
    T = _time_truncation(Ff, ctx.model.omega0)
    tg, wg = gauss_legendre(nper)
    ts = (tg + 1) * T / 2
    ws = wg * T / 2
    scalar = np.sum(ws * Ff(ts) * np.cos(ts * lam)) / np.pi
    phi = np.real(phi_closed(ctx.model, lam, ctx.grid.nodes))
    mask = interior_mask(ctx.grid)
    num = np.sqrt(np.sum(((M @ phi - scalar * phi) ** 2 * ctx.grid.measure_weights)[mask]))
    den = np.sqrt(np.sum((phi ** 2 * ctx.grid.measure_weights)[mask]))
    return float(num / den)


def hermite_example(nu):
    """f = H_{2 nu}(z) exp(-z^2) with its Fourier transform
    Ff(xi) = sqrt(pi) (-1)^nu xi^(2 nu) exp(-xi^2/4)."""
    deg = 2 * nu
    f = lambda z: eval_hermite(deg, z) * np.exp(-np.asarray(z) ** 2)
    Ff = lambda xi: np.sqrt(np.pi) * (-1) ** nu * np.asarray(xi) ** deg * np.exp(-np.asarray(xi) ** 2 / 4)
    return f, Ff


def lambda_fc(ctx, f, Ff, nper=128, validate=True):
    """Even functional calculus f(A) = (1/2pi) int Ff(t) cos(tA) dt.

    With validate=True the supplied transform is first checked against a
    direct Fourier quadrature of f at a few frequencies.
    """
    if validate:
        xg, wg = gauss_legendre(256)
        X = 12.0
        xs = (xg + 1) * X / 2
        ws = wg * X / 2
        for xi in (0.5, 1.5, 3.0):
            direct = 2 * np.sum(ws * f(xs) * np.cos(xi * xs))
            if abs(direct - Ff(xi)) > 1e-8 * max(1.0, abs(Ff(xi))):
                raise DomainError(
                    f"supplied Fourier transform disagrees with direct quadrature at xi={xi}")
    M = fourier_calculus_matrix(ctx, Ff, nper)
    K = M / ctx.grid.measure_weights[None, :]
    return KernelMatrix(K, ctx.grid.measure_weights, ctx.grid.measure_weights)


# ---------------------------------------------------------------------------
# Schur bound
# ---------------------------------------------------------------------------

def schur_bound(K):
    """max of the two weighted kernel sums; dominates ||K||_{L^p} for all p."""
    row = np.max(np.abs(K.entries) @ K.col_measure)
    col = np.max(K.row_measure @ np.abs(K.entries))
    return float(max(row, col))


def schur_dominates(K, grid, p_list=(1.0, 2.0, np.inf), trials=200, seed=4242):
    """Sampled check that the Schur bound dominates ||Kh||_p/||h||_p."""
    from .models import lp_norm
    from .waves import random_bump

    bound = schur_bound(K)
    rng = np.random.default_rng(seed)
    rep = CheckReport()
    worst = 0.0
    for _ in range(trials):
        h = random_bump(grid, rng, support=(0.5, 0.9 * grid.xmax))
        for p in p_list:
            r = lp_norm(grid, K.apply(h.values), p) / lp_norm(grid, h.values, p)
            worst = max(worst, r)
    rep.add(Check.bound("schur_dominates_sampled_norms", worst, bound,
                        detail=f"max over {trials} bumps, p in {list(p_list)}"))
    rep.add(Check.info("schur_bound", bound))
    return rep
