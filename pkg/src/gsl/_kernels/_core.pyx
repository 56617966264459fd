# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for the split-step integrator.

The nonlinear substep rotates each sample by exp(i * prefactor * f(|psi|^2)).
Fusing the modulus, the nonlinearity and the rotation into one pass removes
four full-size temporaries per substep.  The complex field is addressed as
an interleaved (re, im) float64 buffer.
"""

from libc.math cimport cos, sin, pow


cdef inline double _f_eval(double rho, int family, double p0, double p1) nogil:
    cdef double s
    if family == 0:                       # 1 - rho
        return 1.0 - rho
    elif family == 1:                     # 1 - rho + a (1-rho)^(2p-1)
        s = 1.0 - rho
        return s + p0 * pow(s, 2.0 * p1 - 1.0)
    elif family == 2:                     # alpha (1 - rho^beta)
        return p0 * (1.0 - pow(rho, p1))
    else:                                 # 1/(1+g rho)^2 - 1/(1+g)^2
        s = 1.0 + p0 * rho
        return 1.0 / (s * s) - p1


def nonlinear_phase(double[::1] buf, double prefactor,
                    int family, double p0, double p1):
    """In-place psi *= exp(i prefactor f(|psi|^2)); buf interleaves re/im."""
    cdef Py_ssize_t i, n = buf.shape[0] // 2
    cdef double re, im, rho, ang, c, s
    with nogil:
        for i in range(n):
            re = buf[2 * i]
            im = buf[2 * i + 1]
            rho = re * re + im * im
            ang = prefactor * _f_eval(rho, family, p0, p1)
            c = cos(ang)
            s = sin(ang)
            buf[2 * i] = re * c - im * s
            buf[2 * i + 1] = re * s + im * c
