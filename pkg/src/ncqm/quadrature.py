"""Numerical quadrature oracles, kept independent of the closed-form integrals.

The 3D oracle evaluates fields pointwise on a spherical product grid
(Gauss-Legendre in cos(theta), uniform in phi, scaled generalized
Gauss-Laguerre in r).  Terms are grouped by envelope and by parity of their
radial degree so each group's radial integrand is smooth in the Laguerre
variable.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np
from scipy.special import roots_genlaguerre, roots_legendre

from .symfield import MixedEnvelopeError, ScalarField

__all__ = ["integrate_r3_numeric", "angular_grid"]


def angular_grid(n_theta: int, n_phi: int):
    """Unit vectors and weights; weights sum to 4*pi."""
    t, wt = roots_legendre(n_theta)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    st = np.sqrt(1 - t * t)
    nx = np.outer(st, np.cos(phi)).ravel()
    ny = np.outer(st, np.sin(phi)).ravel()
    nz = np.repeat(t, n_phi)
    w = np.repeat(wt, n_phi) * (2 * np.pi / n_phi)
    return np.stack([nx, ny, nz]), w


def _group_values(terms, r, n):
    """Sum of coeff * x^a * r^s over the grid (r outer, directions inner), envelopes stripped."""
    pts = r[:, None, None] * n[None, :, :]  # (nr, 3, ndir)
    out = np.zeros((r.size, n.shape[1]), dtype=complex)
    for (mono, s, _b, _g), c in terms:
        v = np.ones_like(out, dtype=float)
        for axis, a in enumerate(mono):
            if a:
                v = v * pts[:, axis, :] ** a
        if s:
            v = v * (r ** s)[:, None]
        out += complex(c) * v
    return out


def integrate_r3_numeric(field: ScalarField, n_radial: int = 48, n_theta: int | None = None,
                         n_phi: int | None = None) -> complex:
    if field.dim != 3:
        raise ValueError("3D oracle only")
    groups = defaultdict(list)
    max_deg = 0
    for key, c in field.terms():
        mono, s, beta, gamma = key
        if beta and gamma:
            raise MixedEnvelopeError("oracle groups need a single envelope")
        if not beta and not gamma:
            raise ValueError("oracle needs a decaying envelope")
        j = sum(mono) + s
        groups[(beta, gamma, j % 2)].append((key, c))
        max_deg = max(max_deg, sum(mono))
    n_theta = n_theta or max_deg // 2 + 4
    n_phi = n_phi or max_deg + 4
    n, wang = angular_grid(n_theta, n_phi)
    total = 0j
    for (beta, gamma, _parity), terms in sorted(groups.items()):
        jmin = min(sum(k[0]) + k[1] for k, _ in terms)
        if beta:
            beta = float(beta)
            # integral r^2 F e^{-beta r^2} dr, u = beta r^2: (1/(2 beta^{3/2})) int e^{-u} u^{1/2} F du
            alpha = (jmin + 1) / 2
            if alpha <= -1:
                raise ValueError("radial integrand not integrable at the origin")
            u, wu = roots_genlaguerre(n_radial, alpha)
            r = np.sqrt(u / beta)
            vals = _group_values(terms, r, n) @ wang
            total += np.sum(wu * u ** (0.5 - alpha) * vals) / (2 * beta ** 1.5)
        else:
            gamma = float(gamma)
            # integral r^2 F e^{-gamma r} dr, t = gamma r: gamma^{-3} int e^{-t} t^2 F dt
            alpha = 2 + jmin
            if alpha <= -1:
                raise ValueError("radial integrand not integrable at the origin")
            t, wtt = roots_genlaguerre(n_radial, alpha)
            r = t / gamma
            vals = _group_values(terms, r, n) @ wang
            total += np.sum(wtt * t ** (2.0 - alpha) * vals) / gamma ** 3
    return complex(total)
