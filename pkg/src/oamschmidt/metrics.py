"""Target spectrum generators and figures of merit (R^2, E_f, K_a)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, UndefinedRSquaredError

TARGET_SHAPES = ("gaussian", "triangular", "rectangular")


@dataclass(frozen=True)
class TargetSpectrum:
    """Normalized target spectrum on the window l in [-D, D].

    `width` is the standard deviation for gaussian targets and the full
    (base) width for triangular and rectangular ones.
    """

    shape: str
    width: float
    D: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (2 * self.D + 1,):
            raise DomainError(f"target must have 2D+1={2 * self.D + 1} entries")
        if abs(values.sum() - 1.0) > 1e-12:
            raise DomainError("target spectrum not normalized")

    @property
    def l_values(self):
        return np.arange(-self.D, self.D + 1)


def make_target(shape, width, D):
    """Build a gaussian/triangular/rectangular target spectrum.

    An even rectangular width cannot be centered on integer l; the plateau is
    placed on l in [-width/2, width/2 - 1] so it still holds exactly `width`
    modes of probability 1/width each. Odd widths are exactly symmetric.
    """
    if shape not in TARGET_SHAPES:
        raise ConfigError(
            f"unknown target shape {shape!r}; choose one of {', '.join(TARGET_SHAPES)}"
        )
    if not width > 0:
        raise ConfigError(f"target width must be positive, got {width}")
    if width > 2 * D:
        raise ConfigError(f"target width {width} exceeds the window 2D={2 * D}")
    l = np.arange(-D, D + 1)
    if shape == "gaussian":
        values = np.exp(-(l.astype(float) ** 2) / (2.0 * width**2))
    elif shape == "triangular":
        values = np.maximum(0.0, 1.0 - np.abs(l) / (width / 2.0))
    else:
        w = int(width)
        if w != width:
            raise ConfigError(f"rectangular width must be an integer, got {width}")
        lo = -(w // 2)
        hi = lo + w - 1
        values = ((l >= lo) & (l <= hi)).astype(float)
    return TargetSpectrum(shape=shape, width=width, D=D, values=values / values.sum())


def _values(spectrum):
    return np.asarray(getattr(spectrum, "values", spectrum), dtype=float)


def r_squared(target, observed):
    """Coefficient of determination between target and observed spectra, in percent.

    Unclamped: poor fits can go negative.
    """
    t = _values(target)
    o = _values(observed)
    if t.shape != o.shape:
        raise DomainError(f"window mismatch: target {t.shape} vs observed {o.shape}")
    total = np.sum((t - t.mean()) ** 2)
    if total == 0.0:
        raise UndefinedRSquaredError("target spectrum is constant; R^2 undefined")
    return float((1.0 - np.sum((t - o) ** 2) / total) * 100.0)


def entanglement_of_formation(spectrum):
    """Shannon entropy of the Schmidt weights, in bits (0*log0 := 0)."""
    s = _values(spectrum)
    nz = s[s > 0]
    return float(-np.sum(nz * np.log2(nz)))


def schmidt_number(spectrum):
    """Effective dimensionality K_a = 1 / sum(S_l^2)."""
    s = _values(spectrum)
    return float(1.0 / np.sum(s**2))
