"""Kernel backend selection.

The split-step integrator spends most of its time in the pointwise
nonlinear phase rotation; a compiled (Cython) version of that loop is used
when the extension built, otherwise a numpy fallback.  Set
``GSL_FORCE_FALLBACK=1`` to pin the numpy path (used by the parity tests
and the benchmark).
"""

import os

import numpy as np

try:
    from . import _core

    HAVE_COMPILED = True
except ImportError:  # extension not built on this platform
    _core = None
    HAVE_COMPILED = False


def backend_name():
    if HAVE_COMPILED and not os.environ.get("GSL_FORCE_FALLBACK"):
        return "compiled"
    return "numpy"


def nonlinear_phase_numpy(psi, prefactor, nl):
    """psi *= exp(i * prefactor * f(|psi|^2)), in place (numpy reference)."""
    np.multiply(psi, np.exp(1j * prefactor * nl(np.abs(psi) ** 2, 0)), out=psi)
    return psi


def nonlinear_phase(psi, prefactor, nl):
    """In-place nonlinear phase rotation with the active backend."""
    if HAVE_COMPILED and not os.environ.get("GSL_FORCE_FALLBACK"):
        family, p0, p1 = nl.kernel_params()
        _core.nonlinear_phase(psi.view(np.float64), float(prefactor), family, p0, p1)
        return psi
    return nonlinear_phase_numpy(psi, prefactor, nl)
