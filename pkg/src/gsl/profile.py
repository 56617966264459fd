"""Traveling-wave profiles in hydrodynamic variables.

A wave of speed 0 < c < c_s moving on the unit background is described by
the density deficit eta_c solving

    eta'' = 2 (1-eta) f(1-eta) - 2 F(1-eta) - c^2 eta,

centered so the deepest point sits at x = 0, together with the mass-equation
first integral v_c = c eta_c / (2 (1 - eta_c)) and the energy-type first
integral

    (eta')^2 = G(eta) := 4 F(1-eta) (1-eta) - c^2 eta^2.

The amplitude eta_c(0) is the smallest positive root of G.  Integration
runs outward from the center with classic RK4; past the turning-point
region the state is advanced along the decaying branch eta' = -sqrt(G(eta))
(the same equation, in first-integral form), which is immune to the e^{kx}
growth of stray errors that contaminates the raw second-order march.  Both
first integrals are verified on the result.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InversionError, ProfileFailureError, SpeedNotAdmissibleError
from .fields import Grid1D, HydroField
from .numerics import fd_derivative, fd_second_derivative, trapezoid

__all__ = [
    "TravelingWaveProfile",
    "amplitude_from_speed",
    "speed_from_amplitude",
    "solve_profile",
    "profile_residual",
    "decay_length",
    "get_profile",
    "clear_profile_cache",
]

# amplitude this close to 1 means the dip grazes vacuum; treated inadmissible
_VACUUM_MARGIN = 1e-6


def _f_deficit(nl, eta):
    """f(1 - eta) without cancellation for small eta."""
    fn = getattr(nl, "f_at_deficit", None)
    if fn is not None:
        return fn(eta)
    return nl(1.0 - np.asarray(eta, dtype=float), 0)


def _F_deficit(nl, eta):
    """F(1 - eta) without cancellation for small eta."""
    fn = getattr(nl, "potential_at_deficit", None)
    if fn is not None:
        return fn(eta)
    return nl.potential(1.0 - np.asarray(eta, dtype=float))


def first_integral_G(nl, c, eta):
    """G(eta) = 4 F(1-eta)(1-eta) - c^2 eta^2."""
    eta = np.asarray(eta, dtype=float)
    return 4.0 * _F_deficit(nl, eta) * (1.0 - eta) - c**2 * eta**2


def decay_length(nl, c):
    """1 / sqrt(c_s^2 - c^2), the tail e-folding scale."""
    cs = nl.sound_speed
    if not 0.0 < c < cs:
        raise SpeedNotAdmissibleError(f"speed {c} outside (0, c_s={cs:.6g})")
    return 1.0 / np.sqrt(cs**2 - c**2)


def amplitude_from_speed(nl, c):
    """Smallest root of G in (0, 1): the centered wave's density deficit.

    Bracketing scan plus bisection to 1e-12.  The double root of G at 0 is
    removed by working with G/eta^2.
    """
    cs = nl.sound_speed
    if not 0.0 < c < cs:
        raise SpeedNotAdmissibleError(f"speed {c} outside (0, c_s={cs:.6g})")

    def g_hat(xi):
        return 4.0 * _F_deficit(nl, xi) * (1.0 - xi) / xi**2 - c**2

    scan = np.concatenate(
        [np.geomspace(1e-9, 0.05, 120), np.linspace(0.05, 1.0 - 1e-9, 600)[1:]]
    )
    vals = g_hat(scan)
    if vals[0] <= 0.0:
        raise SpeedNotAdmissibleError(f"no amplitude root for c = {c}")
    idx = np.flatnonzero(vals <= 0.0)
    if idx.size == 0:
        raise SpeedNotAdmissibleError(f"no amplitude root for c = {c}")
    lo, hi = scan[idx[0] - 1], scan[idx[0]]
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if g_hat(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    xi = 0.5 * (lo + hi)
    if xi >= 1.0 - _VACUUM_MARGIN:
        raise SpeedNotAdmissibleError(f"amplitude {xi:.8f} grazes vacuum for c = {c}")
    return float(xi)


def speed_from_amplitude(nl, xi):
    """Inverse amplitude map c = sqrt(4 F(1-xi)(1-xi)) / xi."""
    if not 0.0 < xi < 1.0:
        raise InversionError(f"amplitude {xi} outside (0, 1)")
    c2 = 4.0 * float(_F_deficit(nl, xi)) * (1.0 - xi) / xi**2
    if not 0.0 < c2 < nl.sound_speed**2:
        raise InversionError(f"amplitude {xi} maps outside (0, c_s): c^2 = {c2:.6g}")
    return float(np.sqrt(c2))


@dataclass
class TravelingWaveProfile:
    """Sampled centered profile (eta_c, v_c) for one speed."""

    c: float
    grid: Grid1D
    eta: np.ndarray
    v: np.ndarray
    amplitude: float
    decay_rate: float
    eta_prime: np.ndarray
    nl: object = None
    _splines: dict = field(default_factory=dict, repr=False)

    @property
    def x(self):
        return self.grid.x

    def hydro_field(self):
        return HydroField(self.grid, self.eta, self.v)

    def interpolators(self):
        """Cubic splines of eta and eta' (zero outside the sampled range)."""
        if "eta" not in self._splines:
            from scipy.interpolate import CubicSpline

            self._splines["eta"] = CubicSpline(self.x, self.eta, bc_type="natural")
            self._splines["eta_prime"] = CubicSpline(
                self.x, self.eta_prime, bc_type="natural"
            )
        return self._splines["eta"], self._splines["eta_prime"]

    def sample_shifted(self, x, center):
        """(eta, eta') of the profile recentered at ``center`` on points x."""
        sp_eta, sp_dpr = self.interpolators()
        xi = np.asarray(x, dtype=float) - center
        inside = np.abs(xi) <= -self.grid.x0
        eta = np.zeros_like(xi)
        dta = np.zeros_like(xi)
        eta[inside] = sp_eta(xi[inside])
        dta[inside] = sp_dpr(xi[inside])
        return eta, dta

    def to_csv(self, path):
        self.hydro_field().to_csv(path)


def _rk4_second_order(eta, etap, g, h, n_steps, x_start, xi):
    """March (eta, eta') through eta'' = g(eta); returns sample arrays."""
    out_eta = np.empty(n_steps + 1)
    out_etap = np.empty(n_steps + 1)
    out_eta[0], out_etap[0] = eta, etap
    for k in range(n_steps):
        k1e, k1p = etap, g(eta)
        e2 = eta + 0.5 * h * k1e
        k2e, k2p = etap + 0.5 * h * k1p, g(e2)
        e3 = eta + 0.5 * h * k2e
        k3e, k3p = etap + 0.5 * h * k2p, g(e3)
        e4 = eta + h * k3e
        k4e, k4p = etap + h * k3p, g(e4)
        eta = eta + (h / 6.0) * (k1e + 2.0 * k2e + 2.0 * k3e + k4e)
        etap = etap + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if not (np.isfinite(eta) and -1e-9 < eta < 1.0) or abs(eta) > 1.5 * xi:
            raise ProfileFailureError(
                f"profile left (0,1) at x = {x_start + (k + 1) * h:.4f}",
                last_x=x_start + k * h,
            )
        out_eta[k + 1], out_etap[k + 1] = eta, etap
    return out_eta, out_etap


def _rk4_manifold(eta0, rhs, h, n_steps, x_start):
    """March eta' = rhs(eta) (the decaying branch) with RK4."""
    out = np.empty(n_steps + 1)
    out[0] = eta = eta0
    for k in range(n_steps):
        k1 = rhs(eta)
        k2 = rhs(eta + 0.5 * h * k1)
        k3 = rhs(eta + 0.5 * h * k2)
        k4 = rhs(eta + h * k3)
        eta = eta + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(eta) or eta < 0.0:
            eta = 0.0
        out[k + 1] = eta
    return out


def solve_profile(nl, c, x_max=None, h=None):
    """Compute the centered profile for speed c on [-x_max, x_max].

    Defaults: h gives >= 20 points per decay length, x_max pushes the tail
    below 1e-12.  The ODE is integrated outward from (eta, eta') =
    (amplitude, 0); the symmetric half is mirrored.
    """
    xi = amplitude_from_speed(nl, c)
    kappa = 1.0 / decay_length(nl, c)
    if h is None:
        h = min(0.05 / kappa, 0.05)
    if x_max is None:
        x_max = 32.0 / kappa
    if h > 0.1 / kappa + 1e-12:
        raise ValueError(f"h = {h} too coarse; need h <= {0.1 / kappa:.4g}")
    if x_max < 15.0 / kappa - 1e-9:
        raise ValueError(f"x_max = {x_max} too small; need >= {15.0 / kappa:.4g}")

    m_out = int(np.ceil(x_max / h - 1e-12))
    sub = max(1, int(np.ceil(h / (0.02 / kappa))))
    hs = h / sub

    def g(e):
        return float(
            2.0 * (1.0 - e) * _f_deficit(nl, e) - 2.0 * _F_deficit(nl, e) - c**2 * e
        )

    def manifold_rhs(e):
        return -float(np.sqrt(max(first_integral_G(nl, c, e), 0.0)))

    # core region: raw second-order march from the center
    n_core = max(sub, int(np.ceil((1.0 / kappa) / hs)))
    n_core = sub * int(np.ceil(n_core / sub))
    n_core = min(n_core, m_out * sub)
    eta_a, etap_a = _rk4_second_order(xi, 0.0, g, hs, n_core, 0.0, xi)

    # tail: decaying branch of the first integral (stable direction)
    n_tail = m_out * sub - n_core
    if n_tail > 0:
        eta_b = _rk4_manifold(eta_a[-1], manifold_rhs, hs, n_tail, n_core * hs)
        eta_half = np.concatenate([eta_a, eta_b[1:]])
    else:
        eta_half = eta_a
    eta_half = eta_half[::sub]
    etap_half = np.array([manifold_rhs(e) for e in eta_half])
    etap_half[0] = 0.0
    # in the core the marched derivative is the more faithful sample
    core_pts = n_core // sub
    etap_half[1 : core_pts + 1] = etap_a[sub::sub][:core_pts]

    grid = Grid1D(x0=-m_out * h, h=h, n=2 * m_out + 1, periodic=False)
    eta = np.concatenate([eta_half[::-1], eta_half[1:]])
    eta_prime = np.concatenate([-etap_half[::-1], etap_half[1:]])
    if eta.max() >= 1.0 - _VACUUM_MARGIN or eta.min() < -1e-12:
        raise ProfileFailureError("profile left (0, 1)", last_x=None)
    eta = np.clip(eta, 0.0, None)
    v = c * eta / (2.0 * (1.0 - eta))

    # energy first integral must hold on the samples
    fi_gap = np.max(np.abs(eta_prime**2 - first_integral_G(nl, c, eta)))
    if fi_gap > 1e-8:
        raise ProfileFailureError(f"first-integral violation {fi_gap:.3g}")

    decay_rate = _fit_decay_rate(grid.x, eta, kappa)
    return TravelingWaveProfile(
        c=float(c),
        grid=grid,
        eta=eta,
        v=v,
        amplitude=xi,
        decay_rate=decay_rate,
        eta_prime=eta_prime,
        nl=nl,
    )


def _fit_decay_rate(x, eta, kappa_hint):
    """Exponential rate of the right tail by least squares on log eta."""
    half = x >= 0
    xm, em = x[half], eta[half]
    lo, hi = 1e-10, 1e-4
    window = (em > lo) & (em < hi)
    if np.count_nonzero(window) < 10:
        window = (em > 1e-12) & (em < 1e-3)
    if np.count_nonzero(window) < 4:
        return float("nan")
    slope = np.polyfit(xm[window], np.log(em[window]), 1)[0]
    return float(-slope)


def profile_residual(nl, p):
    """Discrete L2 norm of the traveling-wave equation on the lifted field.

    The profile is lifted back to the complex field and plugged into
    -i c u' + u'' + u f(|u|^2) with 4th-order differences; the norm runs
    over interior points (full centered stencils).
    """
    from .transform import to_original

    w = to_original(p.hydro_field(), 0.0)
    u = w.psi
    h = p.grid.h
    du = fd_derivative(u, h)
    d2u = fd_second_derivative(u, h)
    res = -1j * p.c * du + d2u + u * nl(np.abs(u) ** 2, 0)
    inner = res[3:-3]
    return float(np.sqrt(trapezoid(np.abs(inner) ** 2, h)))


_PROFILE_CACHE = {}
_PROFILE_CACHE_MAX = 4096


def get_profile(nl, c, x_max=None, h=None):
    """Memoized solve_profile (profiles are immutable)."""
    key = (nl, round(float(c), 14), x_max, h)
    prof = _PROFILE_CACHE.get(key)
    if prof is None:
        prof = solve_profile(nl, c, x_max=x_max, h=h)
        if len(_PROFILE_CACHE) >= _PROFILE_CACHE_MAX:
            _PROFILE_CACHE.pop(next(iter(_PROFILE_CACHE)))
        _PROFILE_CACHE[key] = prof
    return prof


def clear_profile_cache():
    _PROFILE_CACHE.clear()
