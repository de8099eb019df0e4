"""Pure-numpy implementation of the hot spectrum kernel.

Reference implementation for the compiled Cython extension; selected at
import time when the extension is unavailable or explicitly requested via
OAMSCHMIDT_BACKEND=python.
"""

from __future__ import annotations

import math

import numpy as np

NAME = "python"


def mode_integrand(rho_s, rho_i, cos_dphi, w_p, n_modes, half_thickness, kp0, n_so, eta_p):
    """Per-mode integrand u_p(rho_p^2) * Phi on one radial row.

    Returns a complex array of shape (n_modes, len(rho_i), len(cos_dphi))
    whose coefficient-weighted sum over p is the full integrand V * Phi.
    """
    rho_i = np.asarray(rho_i, dtype=float)
    cos_dphi = np.asarray(cos_dphi, dtype=float)
    cross = 2.0 * rho_s * rho_i[:, None] * cos_dphi[None, :]
    diag = rho_s * rho_s + rho_i[:, None] ** 2

    dkz = kp0 * (n_so - eta_p) - (diag - cross) / (2.0 * eta_p * kp0)
    arg = dkz * half_thickness
    phi = np.sinc(arg / np.pi) * np.exp(1j * arg)

    x = w_p * w_p * (diag + cross) / 2.0
    envelope = math.sqrt(w_p * w_p / (2.0 * math.pi)) * np.exp(-x / 2.0) * phi

    out = np.empty((n_modes, rho_i.size, cos_dphi.size), dtype=complex)
    prev = np.ones_like(x)
    cur = 1.0 - x
    for p in range(n_modes):
        if p == 0:
            lag = prev
        elif p == 1:
            lag = cur
        else:
            prev, cur = cur, ((2 * p - 1 - x) * cur - (p - 1) * prev) / p
            lag = cur
        sign = -1.0 if p % 2 else 1.0
        out[p] = sign * lag * envelope
    return out
