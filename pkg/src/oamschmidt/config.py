"""INI configuration ingestion with explicit units at the surface.

Config files carry human units (mm, nm, um, degrees); everything handed to
the physics layer is SI and radians. Sections: [crystal], [pump], [target],
[swarm], [grids]. CLI flags override individual keys.
"""

from __future__ import annotations

import configparser
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .crystal import CrystalConfig, SellmeierSet
from .engine import Grids
from .errors import ConfigError
from .metrics import make_target
from .optimize import SwarmConfig
from .pump import PumpConfig, load_coefficients, pad_coefficients


@dataclass
class RunConfig:
    """Parsed config file plus typed accessors for the physics objects."""

    path: Path
    parser: configparser.ConfigParser

    def _get(self, section, key, cast, default=None, required=False):
        if not self.parser.has_option(section, key):
            if required:
                raise ConfigError(f"{self.path}: missing required key '{key}' in [{section}]")
            return default
        raw = self.parser.get(section, key)
        try:
            return cast(raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(
                f"{self.path}: bad value {raw!r} for key '{key}' in [{section}]: {exc}"
            ) from exc

    def crystal(self, theta_p_deg=None, thickness_mm=None):
        thickness = thickness_mm if thickness_mm is not None else self._get(
            "crystal", "thickness_mm", float, default=10.0
        )
        theta = theta_p_deg if theta_p_deg is not None else self._get(
            "crystal", "theta_p_deg", float, default=28.71
        )
        wavelength_nm = self._get("crystal", "pump_wavelength_nm", float, default=405.0)
        sellmeier_file = self._get("crystal", "sellmeier_file", str)
        if sellmeier_file:
            sellmeier = SellmeierSet.from_file(self.path.parent / sellmeier_file)
        else:
            sellmeier = SellmeierSet.bbo()
        return CrystalConfig(
            thickness=thickness * 1e-3,
            theta_p=math.radians(theta),
            pump_wavelength=wavelength_nm * 1e-9,
            sellmeier=sellmeier,
        )

    def n_modes(self):
        return self._get("pump", "n_modes", int, default=5)

    def pump(self, require_coefficients=False):
        waist_um = self._get("pump", "waist_um", float, default=320.0)
        wavelength_nm = self._get("crystal", "pump_wavelength_nm", float, default=405.0)
        coeff_file = self._get("pump", "coefficients", str)
        inline = self._get("pump", "coefficients_json", str)
        n = self.n_modes()
        if coeff_file:
            raw = load_coefficients(self.path.parent / coeff_file)
        elif inline:
            try:
                raw = np.array([complex(re, im) for re, im in json.loads(inline)])
            except (TypeError, ValueError) as exc:
                raise ConfigError(
                    f"{self.path}: 'coefficients_json' in [pump] must be an array "
                    f"of [re, im] pairs: {exc}"
                ) from exc
        elif require_coefficients:
            raise ConfigError(
                f"{self.path}: [pump] must provide 'coefficients' or 'coefficients_json'"
            )
        else:
            raw = np.array([1.0 + 0.0j])
        return PumpConfig(
            wavelength=wavelength_nm * 1e-9,
            waist=waist_um * 1e-6,
            coefficients=pad_coefficients(raw, n),
        )

    def half_window(self):
        return self._get("target", "half_window", int, default=150)

    def target(self):
        shape = self._get("target", "shape", str, required=True)
        width = self._get("target", "width", float, required=True)
        return make_target(shape, width, self.half_window())

    def has_target(self):
        return self.parser.has_section("target") and self.parser.has_option("target", "shape")

    def swarm(self, seed=None):
        return SwarmConfig(
            particle_count=self._get("swarm", "particles", int, default=40),
            iteration_count=self._get("swarm", "iterations", int, default=150),
            inertia=self._get("swarm", "inertia", float, default=0.729),
            cognitive=self._get("swarm", "cognitive", float, default=1.49445),
            social=self._get("swarm", "social", float, default=1.49445),
            bounds=(
                self._get("swarm", "bound_low", float, default=-1.0),
                self._get("swarm", "bound_high", float, default=1.0),
            ),
            seed=seed if seed is not None else self._get("swarm", "seed", int, default=0),
        )

    def grids(self, pump, crystal, D, tier=None):
        tier = tier or self._get("grids", "tier", str, default="fine")
        if tier not in ("coarse", "fine"):
            raise ConfigError(f"{self.path}: grid tier must be 'coarse' or 'fine', got {tier!r}")
        return Grids.build(
            pump,
            crystal,
            D,
            tier=tier,
            rho_max=self._get("grids", "rho_max", float),
            radial_nodes=self._get("grids", "radial_nodes", int),
            angular_samples=self._get("grids", "angular_samples", int),
        )

    def snapshot(self):
        """Full resolved key/value view for the run manifest."""
        return {s: dict(self.parser.items(s)) for s in self.parser.sections()}


def load_config(path):
    path = Path(path)
    if not path.is_file():
        from .presets import available_presets, preset_path

        bundled = preset_path(str(path))
        if bundled is None:
            raise ConfigError(
                f"config file not found: {path} (and no bundled preset of that "
                f"name; available presets: {', '.join(available_presets())})"
            )
        path = Path(str(bundled))
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return RunConfig(path=path, parser=parser)
