"""Composite quadrature utilities shared across the library.

Everything here is deterministic and cache-friendly: rules are keyed by
(node count, exponents) and reused.  Panel grids carry enough structure to
integrate from 0 up to an arbitrary interior node with spectral accuracy
(per-panel Legendre antiderivatives), which the Volterra character engine
and the convolution kernels rely on.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy.special import roots_jacobi, roots_legendre


@lru_cache(maxsize=64)
def gauss_legendre(n):
    return roots_legendre(n)


@lru_cache(maxsize=256)
def gauss_jacobi(n, alpha, beta):
    """Nodes/weights for weight (1-t)^alpha (1+t)^beta on [-1, 1]."""
    return roots_jacobi(n, alpha, beta)


def panel_edges(xmax, panels, log_refine=0):
    """Uniform panel edges on [0, xmax]; optionally subdivide the first
    panel geometrically (ratio 2) down to xmax/panels * 2**-log_refine."""
    edges = np.linspace(0.0, float(xmax), panels + 1)
    if log_refine:
        first = edges[1]
        sub = first * 2.0 ** (-np.arange(log_refine, 0, -1, dtype=float))
        edges = np.concatenate([[0.0], sub, edges[1:]])
    return edges


def panel_nodes(edges, nper):
    """Composite Gauss-Legendre nodes/weights over the given panel edges."""
    t, w = gauss_legendre(nper)
    a = edges[:-1][:, None]
    b = edges[1:][:, None]
    nodes = a + (b - a) * (t[None, :] + 1) / 2
    weights = (b - a) / 2 * w[None, :]
    return nodes.ravel(), weights.ravel()


@lru_cache(maxsize=16)
def _partial_integration_matrix(nper):
    """E @ inv(V):  values at GL nodes -> integrals int_{-1}^{t_i} of the
    degree nper-1 interpolant.  Exact for polynomials, spectral otherwise."""
    t, _ = gauss_legendre(nper)
    V = npleg.legvander(t, nper - 1)
    E = np.zeros((nper, nper))
    for k in range(nper):
        c = np.zeros(nper + 1)
        c[k] = 1.0
        ci = npleg.legint(c)
        E[:, k] = npleg.legval(t, ci) - npleg.legval(-1.0, ci)
    return E @ np.linalg.inv(V)


def cumulative_integral(edges, nper, weights, values):
    """int_0^{x_i} h for every composite node x_i, given samples h(x_i).

    Within each panel the interpolant is integrated exactly; across panels
    full-panel integrals accumulate.  `values` may be real or complex.
    """
    npan = len(edges) - 1
    hv = values.reshape(npan, nper)
    wv = weights.reshape(npan, nper)
    full = (hv * wv).sum(axis=1)
    prior = np.concatenate([[0.0], np.cumsum(full)[:-1]])
    half = (edges[1:] - edges[:-1]) / 2
    part = (_partial_integration_matrix(nper) @ hv.T).T * half[:, None]
    return (prior[:, None] + part).ravel()


# ---------------------------------------------------------------------------
# local cubic interpolation (4-point Lagrange), with parity extension at 0
# ---------------------------------------------------------------------------

def _cubic_stencil(nodes, q):
    """Indices (m, 4) and Lagrange weights (m, 4) interpolating at points q.

    q must lie within [nodes[0], nodes[-1]]; callers clamp/reflect first.
    """
    n = len(nodes)
    j = np.searchsorted(nodes, q)
    j0 = np.clip(j - 2, 0, n - 4)
    idx = j0[:, None] + np.arange(4)[None, :]
    xs = nodes[idx]
    w = np.ones((len(q), 4))
    for a in range(4):
        for b in range(4):
            if a != b:
                w[:, a] *= (q - xs[:, b]) / (xs[:, a] - xs[:, b])
    return idx, w


def interp_weights(nodes, q, parity=1):
    """Sparse interpolation weights at query points q for data on (0, xmax].

    Data is extended across 0 with the given parity (+1 even, -1 odd) and
    taken as 0 beyond the last node.  Returns (idx, w) with idx (m, 4) into
    the node array and w the signed cubic weights (rows of zeros where the
    query falls outside the covered range).
    """
    q = np.asarray(q, dtype=float)
    sign = np.where(q < 0, float(parity), 1.0)
    qa = np.abs(q)
    inside = qa <= nodes[-1]
    qc = np.clip(qa, nodes[0], nodes[-1])
    idx, w = _cubic_stencil(nodes, qc)
    w = w * sign[:, None]
    # below the first node: keep the one-sided cubic (data smooth through 0
    # after parity extension); beyond the top node: zero fill
    w[~inside] = 0.0
    return idx, w


def interp_eval(nodes, values, q, parity=1):
    idx, w = interp_weights(nodes, np.atleast_1d(q), parity)
    out = (values[idx] * w).sum(axis=1)
    return out if np.ndim(q) else out[0]
