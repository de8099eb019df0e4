"""Simulator and inverse-design optimizer for the OAM Schmidt spectrum of
photon pairs from type-I SPDC with a radially shaped pump."""

from ._core import available_backends, backend_name
from .crystal import (
    AnisotropyParams,
    CrystalConfig,
    SellmeierSet,
    anisotropy,
    collinear_angle,
    delta_kz,
    delta_kz_full,
    phase_matching,
    phase_matching_radius,
    refractive_indices,
    ring_radius,
)
from .engine import (
    Grids,
    JointRadialDistribution,
    SchmidtSpectrum,
    joint_radial_distribution,
    matched_detection_waist,
    mode_coefficient,
    postselected_spectrum,
    postselection_fraction,
    radial_sum_convergence,
    schmidt_spectrum,
)
from .metrics import (
    TargetSpectrum,
    entanglement_of_formation,
    make_target,
    r_squared,
    schmidt_number,
)
from .modes import AngularGrid, RadialGrid, angular_fourier, gauss_legendre, laguerre, lg_radial
from .optimize import (
    OptimizationResult,
    SwarmConfig,
    generation_accuracy,
    pso_minimize,
    refine_coefficients,
    sweep,
)
from .pump import PumpConfig, normalize_coefficients, pump_amplitude

__version__ = "0.1.0"
