import numpy as np
import pytest

from oamschmidt import schmidt_spectrum
from oamschmidt._core import available_backends, backend_name, get_backend
from conftest import matched_grids


class TestSelection:
    def test_cython_extension_present(self):
        # the compiled extension is part of the build; its absence means a
        # broken install, not an acceptable fallback
        assert "cython" in available_backends()
        assert "python" in available_backends()

    def test_named_lookup(self):
        assert get_backend("python").NAME == "python"
        assert get_backend("cython").NAME == "cython"
        with pytest.raises(ValueError):
            get_backend("fortran")

    def test_active_backend_reported(self):
        assert backend_name() in available_backends()


class TestKernelAgreement:
    def test_mode_integrand_matches(self, shaped_pump, crystal):
        from oamschmidt.engine import _kernel_args

        grids = matched_grids(shaped_pump, crystal, radial_nodes=32, angular_samples=64)
        w_p, n_modes, half_L, kp0, n_so, eta = _kernel_args(shaped_pump, crystal)
        nodes = grids.radial.nodes
        cos_d = np.cos(grids.angular.samples)
        py = get_backend("python").mode_integrand(
            nodes[7], nodes, cos_d, w_p, n_modes, half_L, kp0, n_so, eta
        )
        cy = get_backend("cython").mode_integrand(
            nodes[7], nodes, cos_d, w_p, n_modes, half_L, kp0, n_so, eta
        )
        assert py.shape == cy.shape == (n_modes, len(nodes), len(cos_d))
        scale = np.max(np.abs(py))
        assert np.max(np.abs(py - cy)) < 1e-12 * scale

    def test_spectra_agree_end_to_end(self, shaped_pump, crystal):
        grids = matched_grids(shaped_pump, crystal, radial_nodes=40, angular_samples=64)
        a = schmidt_spectrum(shaped_pump, crystal, 10, grids=grids,
                             backend=get_backend("python"))
        b = schmidt_spectrum(shaped_pump, crystal, 10, grids=grids,
                             backend=get_backend("cython"))
        assert np.max(np.abs(a.values - b.values)) < 1e-12
