# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled spectrum kernel: per-mode integrand u_p(rho_p^2) * Phi.

Mirrors numpy_backend.mode_integrand; the two are cross-checked in the test
suite and benchmarked against each other in benchmarks/backend_bench.py.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, sin, sqrt, M_PI

cnp.import_array()

NAME = "cython"


def mode_integrand(double rho_s,
                   cnp.ndarray[cnp.float64_t, ndim=1] rho_i,
                   cnp.ndarray[cnp.float64_t, ndim=1] cos_dphi,
                   double w_p, int n_modes, double half_thickness,
                   double kp0, double n_so, double eta_p):
    cdef Py_ssize_t n_i = rho_i.shape[0]
    cdef Py_ssize_t n_m = cos_dphi.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] out = np.empty(
        (n_modes, n_i, n_m), dtype=np.complex128)

    cdef double[::1] ri = np.ascontiguousarray(rho_i)
    cdef double[::1] cd = np.ascontiguousarray(cos_dphi)
    cdef double complex[:, :, ::1] ov = out

    cdef double norm = sqrt(w_p * w_p / (2.0 * M_PI))
    cdef double dn_term = kp0 * (n_so - eta_p)
    cdef double inv2ek = 1.0 / (2.0 * eta_p * kp0)
    cdef double w2h = w_p * w_p / 2.0

    cdef Py_ssize_t i, m, p
    cdef double diag, cross, dkz, arg, snc, x, env
    cdef double complex phi, base
    cdef double lp_prev, lp_cur, lp_next

    for i in range(n_i):
        diag = rho_s * rho_s + ri[i] * ri[i]
        for m in range(n_m):
            cross = 2.0 * rho_s * ri[i] * cd[m]
            dkz = dn_term - (diag - cross) * inv2ek
            arg = dkz * half_thickness
            if arg > 1e-8 or arg < -1e-8:
                snc = sin(arg) / arg
            else:
                snc = 1.0 - arg * arg / 6.0
            phi = snc * (cos(arg) + 1j * sin(arg))
            x = w2h * (diag + cross)
            env = norm * exp(-0.5 * x)
            base = env * phi

            lp_prev = 1.0
            ov[0, i, m] = base
            if n_modes > 1:
                lp_cur = 1.0 - x
                ov[1, i, m] = -lp_cur * base
                for p in range(2, n_modes):
                    lp_next = ((2.0 * p - 1.0 - x) * lp_cur - (p - 1.0) * lp_prev) / p
                    lp_prev = lp_cur
                    lp_cur = lp_next
                    if p % 2:
                        ov[p, i, m] = -lp_cur * base
                    else:
                        ov[p, i, m] = lp_cur * base
    return out
