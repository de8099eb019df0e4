import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oamschmidt import CrystalConfig, PumpConfig
from oamschmidt.engine import Grids
from oamschmidt.modes import AngularGrid, RadialGrid


@pytest.fixture(scope="session")
def crystal():
    """The reference crystal: 10-mm BBO at 28.71 degrees, 405-nm pump."""
    return CrystalConfig(
        thickness=10e-3, theta_p=np.radians(28.71), pump_wavelength=405e-9
    )


@pytest.fixture(scope="session")
def gaussian_pump():
    """Single-mode (gaussian) pump at the experimental waist."""
    return PumpConfig(wavelength=405e-9, waist=320e-6, coefficients=[1.0])


@pytest.fixture(scope="session")
def shaped_pump():
    """A five-mode pump with generic complex coefficients."""
    return PumpConfig(
        wavelength=405e-9,
        waist=320e-6,
        coefficients=[0.21 + 0.94j, -0.13 + 0.19j, -0.09 - 0.01j, -0.01 - 0.03j, 0.03 - 0.02j],
    )


@pytest.fixture(scope="session")
def small_grids(gaussian_pump, crystal):
    """Cheap grids adequate for |l| <= ~20 sanity checks."""
    return Grids.build(gaussian_pump, crystal, 20, tier="coarse",
                       radial_nodes=64, angular_samples=128)


def matched_grids(pump, crystal, radial_nodes=48, angular_samples=64):
    """Small custom grids shared between fast path and brute-force oracles."""
    from oamschmidt.engine import default_rho_max

    radial = RadialGrid.build(radial_nodes, default_rho_max(pump, crystal))
    return Grids(radial, AngularGrid(angular_samples))
