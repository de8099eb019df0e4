"""Special functions, quadrature grids and the angular Fourier reduction.

Everything downstream (pump shaping, phase matching, spectrum integrals)
is built on the three primitives here: associated Laguerre polynomials via
the stable three-term recurrence, composite Gauss-Legendre radial grids,
and the collapse of the double angular integral to a single FFT over the
angle difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, DomainError, UnsupportedOrderError

MAX_LAGUERRE_ORDER = 200

# exp(i*pi*(p - |l|/2)) = i**(2p - |l|), evaluated exactly
_QUARTER_PHASES = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)


def laguerre(p, alpha, x):
    """Associated Laguerre polynomial L_p^alpha(x) by three-term recurrence.

    `x` may be a scalar or an ndarray; the result matches its shape.
    """
    if p < 0 or alpha < 0:
        raise DomainError(f"laguerre indices must be non-negative, got p={p}, alpha={alpha}")
    if p > MAX_LAGUERRE_ORDER:
        raise UnsupportedOrderError(
            f"laguerre order p={p} exceeds supported bound {MAX_LAGUERRE_ORDER}"
        )
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("laguerre argument must be finite")
    prev = np.ones_like(x)
    if p == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(1, p):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def lg_radial(l, p, w, rho):
    """Azimuth-stripped momentum-space LG amplitude at radius `rho`.

    The full mode is lg_radial(l, p, w, rho) * exp(i*l*phi); the angular
    factor is handled separately by the Fourier reduction.
    """
    rho = np.asarray(rho, dtype=float)
    if not (np.isfinite(w) and w > 0):
        raise DomainError(f"waist must be positive and finite, got {w}")
    if not np.all(np.isfinite(rho)) or np.any(rho < 0):
        raise DomainError("radial momentum must be finite and non-negative")
    la = abs(l)
    norm = math.sqrt(w * w * math.factorial(p) / (2.0 * math.pi * math.factorial(la + p)))
    u = w * rho / math.sqrt(2.0)
    x = w * w * rho * rho / 2.0
    phase = _QUARTER_PHASES[(2 * p - la) % 4]
    val = norm * u**la * laguerre(p, la, x) * np.exp(-x / 2.0) * phase
    return val if np.ndim(val) else complex(val)


def gauss_legendre(n, a, b):
    """Gauss-Legendre nodes and weights mapped to [a, b]."""
    if n < 1:
        raise DomainError(f"node count must be >= 1, got {n}")
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return half * (x + 1.0) + a, half * w


@dataclass(frozen=True)
class RadialGrid:
    """Composite Gauss-Legendre grid over [0, rho_max] for d(rho) integrals."""

    nodes: np.ndarray
    weights: np.ndarray
    rho_max: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise DomainError("nodes and weights must be matching 1-d arrays")
        if np.any(nodes <= 0) or np.any(np.diff(nodes) <= 0):
            raise DomainError("radial nodes must be strictly positive and increasing")
        if np.any(weights <= 0):
            raise DomainError("radial weights must be positive")
        ref = self.rho_max**2 / 2.0
        got = float(np.sum(weights * nodes))
        if abs(got - ref) > 1e-12 * ref:
            raise DomainError("radial grid fails the rho*d(rho) moment check")

    @classmethod
    def build(cls, n_nodes, rho_max, segments=4):
        """Composite rule: `segments` equal panels, n_nodes total."""
        if n_nodes < segments:
            segments = 1
        per = n_nodes // segments
        extra = n_nodes - per * segments
        edges = np.linspace(0.0, rho_max, segments + 1)
        xs, ws = [], []
        for k in range(segments):
            n_k = per + (1 if k < extra else 0)
            x, w = gauss_legendre(n_k, edges[k], edges[k + 1])
            xs.append(x)
            ws.append(w)
        return cls(np.concatenate(xs), np.concatenate(ws), float(rho_max))

    def __len__(self):
        return self.nodes.size


@dataclass(frozen=True)
class AngularGrid:
    """M uniform samples of the angle difference over [-pi, pi), M a power of two."""

    sample_count: int
    samples: np.ndarray = field(init=False)

    def __post_init__(self):
        m = self.sample_count
        if m < 4 or m & (m - 1):
            raise DomainError(f"angular sample count must be a power of two >= 4, got {m}")
        object.__setattr__(
            self, "samples", -np.pi + 2.0 * np.pi * np.arange(m) / m
        )

    def __len__(self):
        return self.sample_count


def angular_fourier(samples, l_max):
    """Double-angle Fourier integrals F_l for |l| <= l_max from Delta-phi samples.

    For f depending on the angles only through Delta-phi, the double integral
    over (phi_s, phi_i) against exp(-i*l*(phi_s - phi_i)) equals
    2*pi * integral of f(Dphi) * exp(-i*l*Dphi), which is evaluated here by the
    trapezoid/FFT rule on the uniform AngularGrid.

    `samples` has shape (..., M); the result has shape (..., 2*l_max + 1) with
    index k corresponding to l = k - l_max.
    """
    samples = np.asarray(samples, dtype=complex)
    m = samples.shape[-1]
    if m < 4 * l_max:
        raise AliasingError(
            f"angular sample count {m} below anti-aliasing bound 4*l_max={4 * l_max}"
        )
    spec = np.fft.fft(samples, axis=-1)
    ls = np.arange(-l_max, l_max + 1)
    # grid starts at -pi, so bin l carries the phase (-1)^l
    signs = np.where(ls % 2 == 0, 1.0, -1.0)
    picked = spec[..., ls % m]
    return (4.0 * np.pi**2 / m) * signs * picked
