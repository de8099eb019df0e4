import math

import numpy as np
import pytest

from oamschmidt import (
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
from oamschmidt.errors import DispersionRangeError, DomainError


def eimerl_bbo_index(wavelength_um, polarization):
    """Independent evaluation of the published BBO dispersion relation."""
    if polarization == "o":
        n2 = 2.7405 + 0.0184 / (wavelength_um**2 - 0.0179) - 0.0155 * wavelength_um**2
    else:
        n2 = 2.3730 + 0.0128 / (wavelength_um**2 - 0.0156) - 0.0044 * wavelength_um**2
    return math.sqrt(n2)


class TestDispersion:
    def test_values_match_independent_evaluation(self, crystal):
        for lam_nm in (405.0, 810.0):
            n_o, n_e = refractive_indices(lam_nm * 1e-9, crystal)
            assert n_o == pytest.approx(eimerl_bbo_index(lam_nm / 1000.0, "o"), rel=1e-12)
            assert n_e == pytest.approx(eimerl_bbo_index(lam_nm / 1000.0, "e"), rel=1e-12)

    def test_normal_dispersion(self, crystal):
        n405, _ = refractive_indices(405e-9, crystal)
        n810, _ = refractive_indices(810e-9, crystal)
        assert n405 > n810

    def test_negative_uniaxial(self, crystal):
        for lam in (405e-9, 810e-9):
            n_o, n_e = refractive_indices(lam, crystal)
            assert n_o > n_e

    def test_out_of_range_wavelength(self, crystal):
        with pytest.raises(DispersionRangeError):
            refractive_indices(200e-9, crystal)

    def test_sellmeier_file_round_trip(self, tmp_path, crystal):
        import json

        data = {
            "material": "test",
            "valid_range_nm": [300, 1100],
            "ordinary": {"A": 2.7405, "B": 0.0184, "C": 0.0179, "D": 0.0155},
            "extraordinary": {"A": 2.3730, "B": 0.0128, "C": 0.0156, "D": 0.0044},
        }
        path = tmp_path / "disp.json"
        path.write_text(json.dumps(data))
        s = SellmeierSet.from_file(path)
        assert s.index(405e-9, "ordinary") == pytest.approx(
            crystal.sellmeier.index(405e-9, "ordinary"), rel=1e-14
        )


class TestConfigValidation:
    def test_rejects_nonpositive_thickness(self):
        with pytest.raises(DomainError):
            CrystalConfig(thickness=0.0, theta_p=0.5, pump_wavelength=405e-9)

    def test_rejects_angle_outside_open_interval(self):
        with pytest.raises(DomainError):
            CrystalConfig(thickness=1e-2, theta_p=0.0, pump_wavelength=405e-9)
        with pytest.raises(DomainError):
            CrystalConfig(thickness=1e-2, theta_p=math.pi / 2, pump_wavelength=405e-9)


class TestAnisotropy:
    def test_on_axis_limit(self, crystal):
        par = anisotropy(crystal, theta_p=1e-12)
        n_po, _ = refractive_indices(405e-9, crystal)
        assert par.alpha_p == pytest.approx(0.0, abs=1e-9)
        assert par.eta_p == pytest.approx(n_po, rel=1e-9)

    def test_perpendicular_limit(self, crystal):
        par = anisotropy(crystal, theta_p=math.pi / 2 - 1e-12)
        _, n_pe = refractive_indices(405e-9, crystal)
        assert par.alpha_p == pytest.approx(0.0, abs=1e-9)
        assert par.eta_p == pytest.approx(n_pe, rel=1e-9)
        assert par.gamma_p == pytest.approx(1.0, rel=1e-9)

    def test_reference_point_frozen_values(self, crystal):
        # published rounded values at 28.71 deg; agreement limited by the
        # rounding of the published numbers themselves
        par = anisotropy(crystal)
        assert par.alpha_p == pytest.approx(0.066895, abs=1e-3)
        assert par.beta_p == pytest.approx(1.039873, abs=1e-3)
        assert par.gamma_p == pytest.approx(1.058809, abs=1e-3)
        assert par.eta_p == pytest.approx(1.661000, abs=1e-3)

    def test_eta_between_principal_indices(self, crystal):
        n_po, n_pe = refractive_indices(405e-9, crystal)
        for th in np.linspace(0.05, math.pi / 2 - 0.05, 9):
            eta = anisotropy(crystal, theta_p=float(th)).eta_p
            assert n_pe <= eta <= n_po

    def test_eta_monotone_decreasing_in_theta(self, crystal):
        thetas = np.linspace(0.01, math.pi / 2 - 0.01, 40)
        etas = [anisotropy(crystal, theta_p=float(t)).eta_p for t in thetas]
        assert np.all(np.diff(etas) < 0)


class TestDeltaKz:
    def test_zero_on_axis_at_collinear_angle(self, crystal):
        from dataclasses import replace

        theta_c = collinear_angle(crystal)
        col = replace(crystal, theta_p=theta_c)
        # scale of delta_kz away from matching is ~1e3 1/m; the root finder
        # leaves a residual far below any physical scale
        assert abs(delta_kz(0.0, 0.0, 0.0, col)) < 1e-3

    def test_swap_symmetry(self, crystal):
        a = delta_kz(1e4, 3e4, 0.7, crystal)
        b = delta_kz(3e4, 1e4, 0.7, crystal)
        assert a == pytest.approx(b, rel=1e-14)

    def test_even_in_delta_phi(self, crystal):
        a = delta_kz(2e4, 5e4, 1.1, crystal)
        b = delta_kz(2e4, 5e4, -1.1, crystal)
        assert a == pytest.approx(b, rel=1e-14)

    def test_transverse_term_cancels_on_diagonal(self, crystal):
        par = anisotropy(crystal)
        expected = crystal.k_pump * (crystal.n_signal - par.eta_p)
        assert delta_kz(4e4, 4e4, 0.0, crystal) == pytest.approx(expected, rel=1e-12)

    def test_full_expression_reduces_at_small_momenta(self, crystal):
        # on axis both forms equal K_p0 (n_so - eta_p)
        simple = delta_kz(0.0, 0.0, 0.0, crystal)
        full = delta_kz_full(0.0, 0.0, 0.0, 0.0, crystal)
        assert full == pytest.approx(simple, rel=1e-9)

    def test_full_expression_depends_on_pump_momentum_only_through_sum(self, crystal):
        # rotating both azimuths together changes the full form only through
        # the walk-off/ellipticity terms; with q_s = -q_i it is rotation-invariant
        a = delta_kz_full(3e4, 3e4, 0.3, 0.3 - math.pi, crystal)
        b = delta_kz_full(3e4, 3e4, 1.9, 1.9 - math.pi, crystal)
        assert a == pytest.approx(b, rel=1e-12)


class TestPhaseMatching:
    def test_unity_at_perfect_matching(self, crystal):
        from dataclasses import replace

        col = replace(crystal, theta_p=collinear_angle(crystal))
        phi = phase_matching(0.0, 0.0, 0.0, col)
        assert phi == pytest.approx(1.0 + 0.0j, abs=1e-6)

    def test_magnitude_bounded(self, crystal):
        rng = np.random.default_rng(3)
        rho = rng.uniform(0, 3e5, 200)
        rho2 = rng.uniform(0, 3e5, 200)
        dphi = rng.uniform(-np.pi, np.pi, 200)
        assert np.all(np.abs(phase_matching(rho, rho2, dphi, crystal)) <= 1.0 + 1e-12)

    def test_sinc_zero(self, crystal):
        # solve for the rho (with rho_s = rho_i = rho, dphi = pi) putting the
        # argument at exactly pi
        par = anisotropy(crystal)
        kp0 = crystal.k_pump
        c0 = kp0 * (crystal.n_signal - par.eta_p)
        target = 2.0 * math.pi / crystal.thickness  # dkz where arg = pi
        rho2 = (c0 - target) * 2.0 * par.eta_p * kp0 / 4.0
        rho = math.sqrt(rho2)
        assert abs(phase_matching(rho, rho, math.pi, crystal)) < 1e-12

    def test_continuity_across_zero_mismatch(self, crystal):
        from dataclasses import replace

        col = replace(crystal, theta_p=collinear_angle(crystal))
        vals = phase_matching(np.linspace(0, 100.0, 5), 0.0, 0.0, col)
        assert np.all(np.isfinite(vals))
        assert np.allclose(vals, 1.0, atol=1e-9)


class TestCollinearAngle:
    def test_published_angle(self, crystal):
        angle = math.degrees(collinear_angle(crystal))
        assert angle == pytest.approx(28.65, abs=0.10)

    def test_defining_equation(self, crystal):
        theta_c = collinear_angle(crystal)
        assert anisotropy(crystal, theta_p=theta_c).eta_p == pytest.approx(
            crystal.n_signal, abs=1e-9
        )


class TestEmissionGeometry:
    def test_ring_radius_positive_above_collinear(self, crystal):
        assert ring_radius(crystal) > 0
        # the sinc magnitude on the dphi = pi diagonal peaks on the ring
        rho = np.linspace(1.0, 3e5, 4000)
        mags = np.abs(phase_matching(rho, rho, math.pi, crystal))
        peak_rho = rho[int(np.argmax(mags))]
        assert peak_rho == pytest.approx(ring_radius(crystal), rel=2e-3)

    def test_ring_radius_zero_at_collinear(self, crystal):
        from dataclasses import replace

        col = replace(crystal, theta_p=collinear_angle(crystal))
        assert ring_radius(col) == 0.0

    def test_phase_matching_radius_finite_everywhere(self, crystal):
        from dataclasses import replace

        col = replace(crystal, theta_p=collinear_angle(crystal))
        assert phase_matching_radius(col) > 0
        assert phase_matching_radius(crystal) > ring_radius(crystal)
