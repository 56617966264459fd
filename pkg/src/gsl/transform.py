"""Correspondence between the complex field and the hydrodynamic pair.

The forward map lifts (eta, v) to psi = sqrt(1 - eta) exp(-i Int_0^x v + i
theta); the inverse recovers eta = 1 - |psi|^2 and v from the derivative
pairing v = Re(i psi' conj(psi)) / |psi|^2, never from unwrapped arguments
(branch cuts would poison fields with large winding).  Also provides the
field metric and the hydro energy-space norm.
"""

import numpy as np

from .errors import VacuumError
from .fields import HydroField, WaveField
from .numerics import cumulative_from_anchor, fd_derivative, trapezoid

__all__ = [
    "to_original",
    "to_hydro",
    "metric_d",
    "hydro_norm",
    "hydro_distance_to_chain",
    "VACUUM_THRESHOLD",
]

# |psi| below this is treated as a vacuum touch: the hydro chart breaks down
VACUUM_THRESHOLD = 1e-6


def to_original(q, theta=0.0):
    """Lift a hydro pair to the complex field with phase theta at x = 0."""
    if q.max_eta() >= 1.0:
        raise VacuumError(f"max eta = {q.max_eta():.6g} >= 1")
    phase = -cumulative_from_anchor(q.v, q.grid.h, q.grid.anchor_index) + theta
    psi = np.sqrt(1.0 - q.eta) * np.exp(1j * phase)
    return WaveField(q.grid, psi, kappa=0.0)


def _derivative_of_physical(w):
    """d/dx of the physical field, 4th-order, gauge handled exactly."""
    if w.grid.periodic and w.kappa != 0.0:
        du = fd_derivative(w.psi, w.grid.h, periodic=True)
        ramp = np.exp(-1j * w.kappa * w.grid.x)
        return (du - 1j * w.kappa * w.psi) * ramp
    return fd_derivative(w.physical_psi(), w.grid.h, periodic=w.grid.periodic)


def to_hydro(w):
    """Invert the lift: returns (HydroField, theta0) with theta0 = arg psi(0)."""
    psi = w.physical_psi()
    mod2 = np.abs(psi) ** 2
    if np.sqrt(mod2.min()) <= VACUUM_THRESHOLD:
        raise VacuumError(f"min |psi| = {np.sqrt(mod2.min()):.3g} at vacuum threshold")
    dpsi = _derivative_of_physical(w)
    eta = 1.0 - mod2
    v = np.real(1j * dpsi * np.conj(psi)) / mod2
    theta0 = float(np.angle(psi[w.grid.anchor_index]))
    return HydroField(w.grid, eta, v), theta0


def metric_d(w1, w2):
    """Field distance: local sup + L2 of density difference + L2 of derivative."""
    w1.grid.require_same(w2.grid)
    x = w1.grid.x
    h = w1.grid.h
    p1, p2 = w1.physical_psi(), w2.physical_psi()
    window = np.abs(x) <= 1.0
    sup_local = float(np.max(np.abs(p1 - p2)[window]))
    dens = np.abs(p1) ** 2 - np.abs(p2) ** 2
    l2_dens = float(np.sqrt(trapezoid(dens**2, h)))
    ddiff = _derivative_of_physical(w1) - _derivative_of_physical(w2)
    l2_der = float(np.sqrt(trapezoid(np.abs(ddiff) ** 2, h)))
    return sup_local + l2_dens + l2_der


def hydro_norm(q):
    """Energy-space norm: sqrt(|eta|_{H1}^2 + |v|_{L2}^2)."""
    h = q.grid.h
    deta = fd_derivative(q.eta, h, periodic=q.grid.periodic)
    return float(
        np.sqrt(trapezoid(q.eta**2 + deta**2, h) + trapezoid(q.v**2, h))
    )


def hydro_distance_to_chain(q, nl, spec):
    """Norm distance from q to the chain with the given speeds/centers."""
    from .chain import build_hydro_chain  # local import: chain builds on top of us

    ref = build_hydro_chain(nl, spec, q.grid)
    diff = HydroField(q.grid, q.eta - ref.eta, q.v - ref.v)
    return hydro_norm(diff)
