"""Shared discrete calculus: derivatives, quadrature, simple fits.

All modules use the same discretization choices (trapezoid quadrature,
centered 4th-order differences) so that discretization errors cancel in
round trips.
"""

import numpy as np

__all__ = [
    "fd_derivative",
    "fd_second_derivative",
    "spectral_derivative",
    "trapezoid",
    "cumulative_from_anchor",
    "loglinear_fit",
]

# 4th-order one-sided stencils for the first derivative at the boundary
_FWD = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0


def fd_derivative(y, h, periodic=False):
    """Centered 4th-order first derivative on a uniform grid.

    Non-periodic grids use 4th-order one-sided stencils on the two points
    nearest each edge.
    """
    y = np.asarray(y)
    n = y.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples for the 4th-order stencil")
    d = np.empty_like(y, dtype=np.result_type(y.dtype, float))
    if periodic:
        ym2, ym1 = np.roll(y, 2), np.roll(y, 1)
        yp1, yp2 = np.roll(y, -1), np.roll(y, -2)
        d[:] = (ym2 - 8.0 * ym1 + 8.0 * yp1 - yp2) / (12.0 * h)
        return d
    d[2:-2] = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    for i in (0, 1):
        d[i] = np.dot(_FWD, y[i : i + 5]) / h
        d[-1 - i] = -np.dot(_FWD, y[-1 - i : -6 - i : -1]) / h
    return d


_FWD2 = np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0]) / 12.0


def fd_second_derivative(y, h, periodic=False):
    """Centered 4th-order second derivative on a uniform grid."""
    y = np.asarray(y)
    n = y.shape[0]
    if n < 6:
        raise ValueError("need at least 6 samples for the 4th-order stencil")
    d = np.empty_like(y, dtype=np.result_type(y.dtype, float))
    if periodic:
        ym2, ym1 = np.roll(y, 2), np.roll(y, 1)
        yp1, yp2 = np.roll(y, -1), np.roll(y, -2)
        d[:] = (-ym2 + 16.0 * ym1 - 30.0 * y + 16.0 * yp1 - yp2) / (12.0 * h * h)
        return d
    d[2:-2] = (
        -y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]
    ) / (12.0 * h * h)
    for i in (0, 1):
        d[i] = np.dot(_FWD2, y[i : i + 6]) / (h * h)
        d[-1 - i] = np.dot(_FWD2, y[-1 - i : -7 - i : -1]) / (h * h)
    return d


def spectral_derivative(y, h):
    """First derivative of a periodic sample set via the FFT."""
    y = np.asarray(y)
    n = y.shape[0]
    xi = 2.0 * np.pi * np.fft.fftfreq(n, d=h)
    return np.fft.ifft(1j * xi * np.fft.fft(y))


def trapezoid(y, h):
    """Trapezoid rule with uniform spacing (h * sum with half-weight ends)."""
    y = np.asarray(y)
    return h * (np.sum(y) - 0.5 * (y[0] + y[-1]))


def cumulative_from_anchor(y, h, i0):
    """Cumulative trapezoid integral measured from grid index ``i0``.

    Returns an array I with I[j] = integral from x[i0] to x[j]; exact for
    the trapezoid rule in both directions.
    """
    y = np.asarray(y, dtype=float)
    inc = 0.5 * h * (y[1:] + y[:-1])
    out = np.zeros_like(y)
    out[1:] = np.cumsum(inc)
    return out - out[i0]


def loglinear_fit(x, y):
    """Least-squares fit log y = intercept + slope * x.

    Returns (slope, intercept, r_squared).  Non-positive y values are
    rejected by the caller; here they would produce NaNs.
    """
    x = np.asarray(x, dtype=float)
    ly = np.log(np.asarray(y, dtype=float))
    slope, intercept = np.polyfit(x, ly, 1)
    resid = ly - (intercept + slope * x)
    ss_tot = np.sum((ly - np.mean(ly)) ** 2)
    r2 = 1.0 - float(np.sum(resid**2)) / float(ss_tot) if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2
