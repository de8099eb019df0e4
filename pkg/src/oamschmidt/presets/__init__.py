"""Bundled run configurations for the documented crystal/target scenarios.

Three families:
  - ``l{5,10,15}_<shape>_w<width>[_n8]``: fixed, experimentally optimized pump
    coefficients for each crystal thickness and target shape; intended for the
    ``spectrum`` and ``postselect`` commands.
  - ``optimize_*`` / ``sweep_*``: inverse-design scenarios without fixed
    coefficients; intended for the ``optimize`` and ``sweep`` commands.
  - ``postselect_gaussian_pump``: single-mode pump for radial-mode analysis.

``load_config`` accepts a bare preset name wherever it accepts a path.
"""

from __future__ import annotations

from importlib import resources


def _root():
    return resources.files(__name__)


def available_presets():
    """Sorted preset names (without the .ini extension)."""
    return sorted(
        entry.name[: -len(".ini")]
        for entry in _root().iterdir()
        if entry.name.endswith(".ini")
    )


def preset_path(name):
    """Filesystem path of a bundled preset, or None if no such preset."""
    entry = _root().joinpath(f"{name}.ini")
    return entry if entry.is_file() else None
