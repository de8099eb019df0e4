"""Dispersion, anisotropy and phase matching for a type-I negative uniaxial crystal.

The pump is extraordinary-polarized, the down-converted photons ordinary.
The main computational path uses the paraxial phase mismatch reduced to the
angle difference Delta-phi; the full transverse-momentum expression (pump
walk-off term and ellipticity factors included) is kept as a verification
oracle behind `delta_kz_full`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy.optimize import bisect

from .errors import DispersionRangeError, DomainError, UnphasematchableError


@dataclass(frozen=True)
class SellmeierSet:
    """n^2 = A + B/(lambda_um^2 - C) - D*lambda_um^2 for both polarizations."""

    ordinary: tuple[float, float, float, float]
    extraordinary: tuple[float, float, float, float]
    valid_range: tuple[float, float]  # meters
    material: str = "unknown"

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls._from_dict(raw)

    @classmethod
    def bbo(cls):
        raw = json.loads(
            resources.files("oamschmidt.data").joinpath("bbo_sellmeier.json").read_text()
        )
        return cls._from_dict(raw)

    @classmethod
    def _from_dict(cls, raw):
        def coeffs(key):
            d = raw[key]
            return (float(d["A"]), float(d["B"]), float(d["C"]), float(d["D"]))

        lo, hi = raw["valid_range_nm"]
        return cls(
            ordinary=coeffs("ordinary"),
            extraordinary=coeffs("extraordinary"),
            valid_range=(lo * 1e-9, hi * 1e-9),
            material=raw.get("material", "unknown"),
        )

    def index(self, wavelength, polarization):
        lo, hi = self.valid_range
        if not (lo <= wavelength <= hi):
            raise DispersionRangeError(
                f"wavelength {wavelength * 1e9:.1f} nm outside dispersion validity "
                f"[{lo * 1e9:.0f}, {hi * 1e9:.0f}] nm"
            )
        a, b, c, d = getattr(self, polarization)
        lam2 = (wavelength * 1e6) ** 2
        return math.sqrt(a + b / (lam2 - c) - d * lam2)


@dataclass(frozen=True)
class CrystalConfig:
    """Crystal thickness, phase-matching angle and pump wavelength (SI, radians)."""

    thickness: float  # m
    theta_p: float  # rad
    pump_wavelength: float  # m
    sellmeier: SellmeierSet = field(default_factory=SellmeierSet.bbo)
    degenerate: bool = True  # lambda_s = lambda_i = 2 * lambda_p

    def __post_init__(self):
        if not self.thickness > 0:
            raise DomainError(f"crystal thickness must be positive, got {self.thickness}")
        if not 0 < self.theta_p < math.pi / 2:
            raise DomainError(f"theta_p must lie in (0, pi/2), got {self.theta_p}")
        for lam in (self.pump_wavelength, 2 * self.pump_wavelength):
            n_o, n_e = refractive_indices(lam, self)
            if not n_o > n_e:
                raise DomainError("crystal is not negative uniaxial at the working wavelengths")

    @property
    def k_pump(self):
        """Vacuum pump wavenumber K_p0 = 2*pi/lambda_p."""
        return 2.0 * math.pi / self.pump_wavelength

    @property
    def n_signal(self):
        """Ordinary index at the degenerate down-converted wavelength."""
        return self.sellmeier.index(2.0 * self.pump_wavelength, "ordinary")


@dataclass(frozen=True)
class AnisotropyParams:
    alpha_p: float
    beta_p: float
    gamma_p: float
    eta_p: float


def refractive_indices(wavelength, config):
    """(n_o, n_e) at `wavelength` from the crystal's Sellmeier set."""
    s = config.sellmeier
    return s.index(wavelength, "ordinary"), s.index(wavelength, "extraordinary")


def anisotropy(config, theta_p=None):
    """Pump walk-off/ellipticity parameters at the phase-matching angle."""
    n_po, n_pe = refractive_indices(config.pump_wavelength, config)
    th = config.theta_p if theta_p is None else theta_p
    s2, c2 = math.sin(th) ** 2, math.cos(th) ** 2
    denom = n_po**2 * s2 + n_pe**2 * c2
    return AnisotropyParams(
        alpha_p=(n_po**2 - n_pe**2) * math.sin(th) * math.cos(th) / denom,
        beta_p=n_po * n_pe / denom,
        gamma_p=n_po / math.sqrt(denom),
        eta_p=n_po * n_pe / math.sqrt(denom),
    )


def delta_kz(rho_s, rho_i, delta_phi, config):
    """Longitudinal phase mismatch in the Delta-phi-reduced paraxial form.

    Valid for degenerate type-I SPDC with negligible pump walk-off; the
    unreduced expression lives in `delta_kz_full`.
    """
    eta = anisotropy(config).eta_p
    kp0 = config.k_pump
    q2 = (
        np.asarray(rho_s) ** 2
        + np.asarray(rho_i) ** 2
        - 2.0 * np.asarray(rho_s) * np.asarray(rho_i) * np.cos(delta_phi)
    )
    return kp0 * (config.n_signal - eta) - q2 / (2.0 * eta * kp0)


def delta_kz_full(rho_s, rho_i, phi_s, phi_i, config):
    """Unreduced phase mismatch with walk-off and ellipticity terms.

    Depends on the two azimuths individually (through the transverse pump
    momentum q_p = q_s + q_i); used to quantify the accuracy of the reduced
    path, never inside the spectrum integrals.
    """
    par = anisotropy(config)
    kp0 = config.k_pump
    n_so = config.n_signal
    ks0 = kp0 / 2.0
    rho_s = np.asarray(rho_s, dtype=float)
    rho_i = np.asarray(rho_i, dtype=float)
    qpx = rho_s * np.cos(phi_s) + rho_i * np.cos(phi_i)
    qpy = rho_s * np.sin(phi_s) + rho_i * np.sin(phi_i)
    k_pz = (
        -par.alpha_p * qpx
        + par.eta_p * kp0
        - (par.beta_p**2 * qpx**2 + par.gamma_p**2 * qpy**2) / (2.0 * par.eta_p * kp0)
    )
    k_sz = n_so * ks0 - rho_s**2 / (2.0 * n_so * ks0)
    k_iz = n_so * ks0 - rho_i**2 / (2.0 * n_so * ks0)
    return k_sz + k_iz - k_pz


def phase_matching(rho_s, rho_i, delta_phi, config):
    """Phase-matching amplitude sinc(dkz*L/2) * exp(i*dkz*L/2)."""
    arg = delta_kz(rho_s, rho_i, delta_phi, config) * config.thickness / 2.0
    # np.sinc is sin(pi x)/(pi x); rescale to the unnormalized convention
    return np.sinc(arg / np.pi) * np.exp(1j * arg)


def collinear_angle(config):
    """Angle theta_p at which eta_p equals the down-converted ordinary index."""
    n_po, n_pe = refractive_indices(config.pump_wavelength, config)
    n_so = config.n_signal
    if not n_pe < n_so < n_po:
        raise UnphasematchableError(
            f"no collinear phase matching: need n_e(pump) < n_o(down) < n_o(pump), "
            f"got {n_pe:.4f}, {n_so:.4f}, {n_po:.4f}"
        )

    def mismatch(th):
        return anisotropy(config, theta_p=th).eta_p - n_so

    eps = 1e-9
    return bisect(mismatch, eps, math.pi / 2 - eps, xtol=1e-10)


def ring_radius(config):
    """Transverse radius of the sinc peak for back-to-back emission.

    Zero in the collinear or anti-collinear-tuned regime (n_so <= eta_p).
    """
    eta = anisotropy(config).eta_p
    dn = config.n_signal - eta
    if dn <= 0:
        return 0.0
    return config.k_pump * math.sqrt(eta * dn / 2.0)


def phase_matching_radius(config):
    """Back-to-back radius where the sinc argument first reaches -pi.

    Unlike `ring_radius` this stays finite at and below the collinear angle,
    where the sinc support is set by the crystal length alone; it is the
    right truncation scale for the radial quadrature domain.
    """
    eta = anisotropy(config).eta_p
    kp0 = config.k_pump
    dn_term = max(kp0 * (config.n_signal - eta), 0.0)
    return math.sqrt(eta * kp0 * (dn_term + 2.0 * math.pi / config.thickness) / 2.0)
