import math
import textwrap

import numpy as np
import pytest

from oamschmidt.config import load_config
from oamschmidt.errors import ConfigError
from oamschmidt.presets import available_presets, preset_path


def write_config(tmp_path, body, name="run.ini"):
    path = tmp_path / name
    path.write_text(textwrap.dedent(body), encoding="utf-8")
    return path


FULL = """
    [crystal]
    thickness_mm = 5
    theta_p_deg = 28.65
    pump_wavelength_nm = 405

    [pump]
    waist_um = 320
    n_modes = 3
    coefficients_json = [[0.8, 0.0], [0.0, 0.6]]

    [target]
    shape = gaussian
    width = 10
    half_window = 25

    [swarm]
    particles = 12
    iterations = 20
    seed = 9

    [grids]
    tier = coarse
    radial_nodes = 32
    angular_samples = 128
"""


class TestUnits:
    def test_crystal_si_round_trip(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        crystal = cfg.crystal()
        assert crystal.thickness == pytest.approx(5e-3, rel=1e-12)
        assert crystal.theta_p == pytest.approx(math.radians(28.65), rel=1e-12)
        assert crystal.pump_wavelength == pytest.approx(405e-9, rel=1e-12)

    def test_pump_units_and_padding(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        pump = cfg.pump()
        assert pump.waist == pytest.approx(320e-6, rel=1e-12)
        assert pump.n_modes == 3
        # inline pairs normalized and zero-padded to n_modes
        assert pump.coefficients[2] == 0.0
        assert np.linalg.norm(pump.coefficients) == pytest.approx(1.0)

    def test_overrides_win(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        crystal = cfg.crystal(theta_p_deg=28.71, thickness_mm=10.0)
        assert crystal.theta_p == pytest.approx(math.radians(28.71))
        assert crystal.thickness == pytest.approx(10e-3)


class TestSections:
    def test_target(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        target = cfg.target()
        assert target.shape == "gaussian"
        assert target.D == 25
        assert cfg.has_target()

    def test_swarm_and_seed_override(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        assert cfg.swarm().seed == 9
        assert cfg.swarm(seed=123).seed == 123
        assert cfg.swarm().particle_count == 12

    def test_grids_overrides(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        grids = cfg.grids(cfg.pump(), cfg.crystal(), 25)
        assert len(grids.radial) == 32
        assert len(grids.angular) == 128

    def test_grid_tier_validated(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        with pytest.raises(ConfigError):
            cfg.grids(cfg.pump(), cfg.crystal(), 10, tier="medium")

    def test_missing_target_keys(self, tmp_path):
        cfg = load_config(write_config(tmp_path, "[crystal]\nthickness_mm = 10\n"))
        assert not cfg.has_target()
        with pytest.raises(ConfigError):
            cfg.target()

    def test_bad_value_reported_with_key(self, tmp_path):
        cfg = load_config(write_config(tmp_path, "[crystal]\nthickness_mm = thick\n"))
        with pytest.raises(ConfigError, match="thickness_mm"):
            cfg.crystal()

    def test_require_coefficients(self, tmp_path):
        cfg = load_config(write_config(tmp_path, "[pump]\nwaist_um = 320\n"))
        with pytest.raises(ConfigError):
            cfg.pump(require_coefficients=True)
        # without the requirement a plain gaussian pump is assumed
        assert cfg.pump().coefficients[0] == 1.0

    def test_snapshot_covers_all_sections(self, tmp_path):
        cfg = load_config(write_config(tmp_path, FULL))
        snap = cfg.snapshot()
        assert set(snap) == {"crystal", "pump", "target", "swarm", "grids"}
        assert snap["crystal"]["thickness_mm"] == "5"


class TestPresets:
    def test_bundled_preset_by_name(self):
        cfg = load_config("l10_gaussian_w20")
        assert cfg.target().shape == "gaussian"
        assert cfg.pump(require_coefficients=True).n_modes == 5

    def test_unknown_name_lists_presets(self, tmp_path):
        with pytest.raises(ConfigError, match="no bundled preset"):
            load_config(tmp_path / "nope.ini")

    def test_all_presets_parse(self):
        names = available_presets()
        assert len(names) >= 20
        for name in names:
            cfg = load_config(name)
            crystal = cfg.crystal()
            pump = cfg.pump()
            assert crystal.thickness > 0
            assert pump.n_modes >= 1
            if cfg.has_target():
                cfg.target()

    def test_preset_path_none_for_unknown(self):
        assert preset_path("does_not_exist") is None
