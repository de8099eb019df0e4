"""Shaped pump amplitude: coherent superposition of radial LG modes (l_p = 0).

The pump enters the spectrum integrals only through
rho_p^2 = rho_s^2 + rho_i^2 + 2*rho_s*rho_i*cos(Delta-phi), so like the
phase-matching function it depends on the azimuths only via their difference.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegeneratePumpError, DomainError
from .modes import laguerre


def normalize_coefficients(raw):
    """Unit-norm coefficient list with a canonical global phase.

    The overall scale and phase of the superposition are gauge freedom; both
    are fixed here (sum |alpha|^2 = 1, first nonzero entry rotated onto the
    positive real axis) so optimization never wanders along flat directions.
    """
    arr = np.asarray(raw, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise ConfigError("coefficient list must be a non-empty 1-d sequence")
    norm = np.linalg.norm(arr)
    if norm == 0.0:
        raise DegeneratePumpError("all pump coefficients are zero")
    arr = arr / norm
    lead = arr[np.flatnonzero(arr)[0]]
    arr = arr * (abs(lead) / lead)
    return arr


@dataclass(frozen=True)
class PumpConfig:
    """Pump wavelength, waist and normalized superposition coefficients."""

    wavelength: float  # m
    waist: float  # m
    coefficients: np.ndarray  # complex, index p = 0..N-1

    def __post_init__(self):
        if not self.waist > 0:
            raise DomainError(f"pump waist must be positive, got {self.waist}")
        if not self.wavelength > 0:
            raise DomainError(f"pump wavelength must be positive, got {self.wavelength}")
        object.__setattr__(self, "coefficients", normalize_coefficients(self.coefficients))

    @property
    def n_modes(self):
        return self.coefficients.size

    def with_coefficients(self, raw):
        return PumpConfig(self.wavelength, self.waist, np.asarray(raw, dtype=complex))


def pad_coefficients(raw, n_modes):
    """Zero-pad a shorter coefficient list up to n_modes; reject longer ones."""
    arr = np.asarray(raw, dtype=complex)
    if arr.size > n_modes:
        raise ConfigError(
            f"coefficient list of length {arr.size} exceeds requested mode count {n_modes}"
        )
    out = np.zeros(n_modes, dtype=complex)
    out[: arr.size] = arr
    return out


def pump_mode_radial(p, w_p, rho_p_sq):
    """Single l=0 pump mode evaluated at rho_p^2 (azimuth already reduced)."""
    x = w_p * w_p * np.asarray(rho_p_sq) / 2.0
    sign = -1.0 if p % 2 else 1.0  # exp(i*pi*p) taken exactly
    return math.sqrt(w_p * w_p / (2.0 * math.pi)) * sign * laguerre(p, 0, x) * np.exp(-x / 2.0)


def pump_amplitude(rho_s, rho_i, delta_phi, pump):
    """Shaped pump amplitude V at (rho_s, rho_i, Delta-phi); vectorized."""
    rho_s = np.asarray(rho_s, dtype=float)
    rho_i = np.asarray(rho_i, dtype=float)
    rho_p_sq = rho_s**2 + rho_i**2 + 2.0 * rho_s * rho_i * np.cos(delta_phi)
    out = np.zeros(np.broadcast(rho_p_sq, 0.0).shape, dtype=complex)
    for p, alpha in enumerate(pump.coefficients):
        if alpha != 0:
            out = out + alpha * pump_mode_radial(p, pump.waist, rho_p_sq)
    return out if out.ndim else complex(out)


def load_coefficients(path):
    """Read a coefficient file: JSON array of [re, im] pairs."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    try:
        return np.array([complex(re, im) for re, im in raw])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"coefficient file {path} is not an array of [re, im] pairs") from exc


def save_coefficients(path, coefficients):
    pairs = [[float(c.real), float(c.imag)] for c in np.asarray(coefficients, dtype=complex)]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pairs, fh, indent=2)
        fh.write("\n")
