"""Catalog of admissible defocusing nonlinearities.

Each family provides closed-form derivatives up to third order and the
closed-form potential, plus the derived sound speed.  The whole solver stack
is parameterized by one of these objects; they are immutable, hashable and
cheap to pass around.

Conventions: the field equation couples through f(rho) with rho = |psi|^2,
the background sits at rho = 1 with f(1) = 0 and f'(1) < 0, and the sound
speed is c_s = sqrt(-2 f'(1)).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, UnsupportedOrderError

__all__ = [
    "Nonlinearity",
    "GrossPitaevskii",
    "PerturbedGP",
    "PurePower",
    "Saturated",
    "eval_f",
    "potential_F",
    "dispersion_omega",
    "check_hypotheses",
    "HypothesisReport",
    "nonlinearity_from_config",
    "nonlinearity_to_config",
]


class Nonlinearity:
    """Base class; subclasses implement f and F in closed form."""

    # integer tag consumed by the compiled kernels
    family_id = -1

    def __call__(self, rho, order=0):
        if order == 0:
            return self._f0(rho)
        if order == 1:
            return self._f1(rho)
        if order == 2:
            return self._f2(rho)
        if order == 3:
            return self._f3(rho)
        raise UnsupportedOrderError(f"analytic derivatives stop at order 3, got {order}")

    def potential(self, rho):
        """F(rho), the antiderivative of -f normalized to F(1) = 0."""
        return self._F(rho)

    @property
    def sound_speed(self):
        fp1 = float(self._f1(1.0))
        return float(np.sqrt(-2.0 * fp1))

    def kernel_params(self):
        """(family_id, p0, p1) triple for the compiled phase-rotation kernel."""
        return (self.family_id, 0.0, 0.0)

    # Deficit forms f(1 - eta), F(1 - eta): overridden where the naive
    # expression cancels catastrophically for small eta.
    def f_at_deficit(self, eta):
        return self._f0(1.0 - np.asarray(eta, dtype=float))

    def potential_at_deficit(self, eta):
        return self._F(1.0 - np.asarray(eta, dtype=float))

    def _validate_background(self):
        f1 = float(self._f0(1.0))
        if abs(f1) >= 1e-14:
            raise ValueError(f"f(1) = {f1!r}, background condition violated")
        if float(self._f1(1.0)) >= 0.0:
            raise ValueError("defocusing requires f'(1) < 0")


@dataclass(frozen=True)
class GrossPitaevskii(Nonlinearity):
    """f(rho) = 1 - rho."""

    family_id = 0

    def __post_init__(self):
        self._validate_background()

    def _f0(self, rho):
        return 1.0 - np.asarray(rho, dtype=float)

    def _f1(self, rho):
        return np.full_like(np.asarray(rho, dtype=float), -1.0)

    def _f2(self, rho):
        return np.zeros_like(np.asarray(rho, dtype=float))

    _f3 = _f2

    def _F(self, rho):
        rho = np.asarray(rho, dtype=float)
        return 0.5 * (1.0 - rho) ** 2

    def f_at_deficit(self, eta):
        return np.asarray(eta, dtype=float)

    def potential_at_deficit(self, eta):
        return 0.5 * np.asarray(eta, dtype=float) ** 2


@dataclass(frozen=True)
class PerturbedGP(Nonlinearity):
    """f(rho) = 1 - rho + a (1 - rho)^(2p-1) with integer p >= 2.

    The coefficient must satisfy 0 < a < p ((2p-1)/(2p-3))^(2p-3); outside
    this range the traveling-wave branch degenerates.
    """

    a: float
    p: int

    family_id = 1

    def __post_init__(self):
        if self.p < 2 or int(self.p) != self.p:
            raise ValueError(f"p must be an integer >= 2, got {self.p}")
        bound = self.p * ((2 * self.p - 1) / (2 * self.p - 3)) ** (2 * self.p - 3)
        if not 0.0 < self.a < bound:
            raise ValueError(f"a must lie in (0, {bound:.6g}), got {self.a}")
        self._validate_background()

    def _f0(self, rho):
        s = 1.0 - np.asarray(rho, dtype=float)
        return s + self.a * s ** (2 * self.p - 1)

    def _f1(self, rho):
        s = 1.0 - np.asarray(rho, dtype=float)
        m = 2 * self.p - 1
        return -1.0 - self.a * m * s ** (m - 1)

    def _f2(self, rho):
        s = 1.0 - np.asarray(rho, dtype=float)
        m = 2 * self.p - 1
        return self.a * m * (m - 1) * s ** (m - 2)

    def _f3(self, rho):
        s = 1.0 - np.asarray(rho, dtype=float)
        m = 2 * self.p - 1
        return -self.a * m * (m - 1) * (m - 2) * s ** (m - 3)

    def _F(self, rho):
        s = 1.0 - np.asarray(rho, dtype=float)
        return 0.5 * s**2 + self.a * s ** (2 * self.p) / (2 * self.p)

    def f_at_deficit(self, eta):
        eta = np.asarray(eta, dtype=float)
        return eta + self.a * eta ** (2 * self.p - 1)

    def potential_at_deficit(self, eta):
        eta = np.asarray(eta, dtype=float)
        return 0.5 * eta**2 + self.a * eta ** (2 * self.p) / (2 * self.p)

    def kernel_params(self):
        return (self.family_id, float(self.a), float(self.p))


@dataclass(frozen=True)
class PurePower(Nonlinearity):
    """f(rho) = alpha (1 - rho^beta) with alpha > 0 and beta > 1.

    Derivatives of order k >= beta + 1 are singular at rho = 0; callers
    needing high-order data should stay on rho > 0.
    """

    alpha: float
    beta: float

    family_id = 2

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.beta <= 1.0:
            raise ValueError(f"beta must be > 1, got {self.beta}")
        self._validate_background()

    def _f0(self, rho):
        rho = np.asarray(rho, dtype=float)
        return self.alpha * (1.0 - rho**self.beta)

    def _f1(self, rho):
        rho = np.asarray(rho, dtype=float)
        return -self.alpha * self.beta * rho ** (self.beta - 1.0)

    def _f2(self, rho):
        rho = np.asarray(rho, dtype=float)
        b = self.beta
        return -self.alpha * b * (b - 1.0) * rho ** (b - 2.0)

    def _f3(self, rho):
        rho = np.asarray(rho, dtype=float)
        b = self.beta
        return -self.alpha * b * (b - 1.0) * (b - 2.0) * rho ** (b - 3.0)

    def _F(self, rho):
        rho = np.asarray(rho, dtype=float)
        b = self.beta
        return self.alpha * ((1.0 - rho) - (1.0 - rho ** (b + 1.0)) / (b + 1.0))

    def f_at_deficit(self, eta):
        # 1 - (1-eta)^beta via expm1/log1p keeps full precision near eta = 0
        eta = np.asarray(eta, dtype=float)
        return -self.alpha * np.expm1(self.beta * np.log1p(-eta))

    def potential_at_deficit(self, eta):
        eta = np.asarray(eta, dtype=float)
        b1 = self.beta + 1.0
        return self.alpha * (eta + np.expm1(b1 * np.log1p(-eta)) / b1)

    def kernel_params(self):
        return (self.family_id, float(self.alpha), float(self.beta))


@dataclass(frozen=True)
class Saturated(Nonlinearity):
    """f(rho) = 1/(1 + gamma rho)^2 - 1/(1 + gamma)^2 with gamma > 0."""

    gamma: float

    family_id = 3

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        self._validate_background()

    def _f0(self, rho):
        g = self.gamma
        rho = np.asarray(rho, dtype=float)
        return 1.0 / (1.0 + g * rho) ** 2 - 1.0 / (1.0 + g) ** 2

    def _f1(self, rho):
        g = self.gamma
        rho = np.asarray(rho, dtype=float)
        return -2.0 * g / (1.0 + g * rho) ** 3

    def _f2(self, rho):
        g = self.gamma
        rho = np.asarray(rho, dtype=float)
        return 6.0 * g**2 / (1.0 + g * rho) ** 4

    def _f3(self, rho):
        g = self.gamma
        rho = np.asarray(rho, dtype=float)
        return -24.0 * g**3 / (1.0 + g * rho) ** 5

    def _F(self, rho):
        g = self.gamma
        rho = np.asarray(rho, dtype=float)
        return (
            1.0 / (g * (1.0 + g * rho))
            - 1.0 / (g * (1.0 + g))
            - (1.0 - rho) / (1.0 + g) ** 2
        )

    def f_at_deficit(self, eta):
        g = self.gamma
        eta = np.asarray(eta, dtype=float)
        a = 1.0 + g - g * eta
        b = 1.0 + g
        return g * eta * (2.0 * b - g * eta) / (a * a * b * b)

    def potential_at_deficit(self, eta):
        g = self.gamma
        eta = np.asarray(eta, dtype=float)
        a = 1.0 + g - g * eta
        b = 1.0 + g
        return g * eta**2 / (a * b * b)

    def kernel_params(self):
        return (self.family_id, float(self.gamma), 1.0 / (1.0 + self.gamma) ** 2)


def eval_f(nl, rho, order=0):
    """f^(order)(rho) from the closed-form expressions (never differenced)."""
    return nl(rho, order)


def potential_F(nl, rho):
    return nl.potential(rho)


def dispersion_omega(nl, xi):
    """Positive branch sqrt(xi^4 + c_s^2 xi^2) of the linear-wave frequency."""
    xi = np.asarray(xi, dtype=float)
    return np.sqrt(xi**4 + nl.sound_speed**2 * xi**2)


@dataclass
class HypothesisEntry:
    passed: bool
    detail: dict


@dataclass
class HypothesisReport:
    """Per-hypothesis outcome of the finite-grid sanity gates.

    These are sanity checks over a sampled grid, not proofs; a failure is a
    report entry rather than an exception.
    """

    h0: HypothesisEntry
    h1: HypothesisEntry
    h2: HypothesisEntry
    h3: HypothesisEntry

    @property
    def all_passed(self):
        return all(e.passed for e in (self.h0, self.h1, self.h2, self.h3))


def _loglog_fit(x, y):
    # least-squares slope/intercept of log y against log x
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    return slope, intercept


def check_hypotheses(nl, rho_grid=None, tail_max=100.0):
    """Run the growth/curvature gates for one nonlinearity.

    H1: (c_s^2/4)(1-rho)^2 <= F(rho) pointwise on the grid.
    H2: F(rho) <= M |1-rho|^q on rho >= 2 with (M, q >= 2) fitted from the
        sampled tail.
    H3: f''(1) + 3 f'(1) != 0 (exact sign test on the analytic values).
    H0: |f''(rho)| <= C0 rho^(alpha1 - 3) on rho >= 1 with fitted (C0, alpha1),
        alpha1 >= 1.
    """
    if rho_grid is None:
        rho_grid = np.concatenate(
            [np.linspace(0.0, 4.0, 400), np.geomspace(4.0, tail_max, 60)]
        )
    rho_grid = np.asarray(rho_grid, dtype=float)
    if rho_grid.size == 0:
        raise ValueError("rho_grid must be nonempty")
    cs2 = nl.sound_speed**2

    # H1, pointwise
    F = nl.potential(rho_grid)
    lower = 0.25 * cs2 * (1.0 - rho_grid) ** 2
    margin = F - lower
    h1 = HypothesisEntry(
        passed=bool(np.all(margin >= -1e-12)),
        detail={
            "worst_margin": float(np.min(margin)),
            "worst_rho": float(rho_grid[int(np.argmin(margin))]),
        },
    )

    # H2, fitted upper bound on the tail rho >= 2
    tail = rho_grid[rho_grid >= 2.0]
    if tail.size >= 2:
        Ft = np.asarray(nl.potential(tail), dtype=float)
        good = Ft > 0
        if np.any(good):
            slope, _ = _loglog_fit(np.abs(1.0 - tail[good]), Ft[good])
            q = max(float(slope), 2.0)
            M = float(np.max(Ft[good] / np.abs(1.0 - tail[good]) ** q)) * (1 + 1e-9)
            ok = bool(np.all(Ft <= M * np.abs(1.0 - tail) ** q + 1e-12))
            h2 = HypothesisEntry(ok, {"M": M, "q": q, "fitted_slope": float(slope)})
        else:
            h2 = HypothesisEntry(True, {"note": "F vanishes on tail"})
    else:
        h2 = HypothesisEntry(False, {"note": "grid has no points >= 2"})

    # H3, exact
    h3_value = float(nl(1.0, 2) + 3.0 * nl(1.0, 1))
    h3 = HypothesisEntry(passed=h3_value != 0.0, detail={"value": h3_value})

    # H0, fitted polynomial envelope of f'' on rho >= 1, then pointwise
    head = rho_grid[rho_grid >= 1.0]
    f2 = np.abs(np.asarray(nl(head, 2), dtype=float))
    if np.all(f2 < 1e-300):
        h0 = HypothesisEntry(True, {"C0": 0.0, "alpha1": 1.0, "note": "f'' == 0"})
    else:
        pos = f2 > 0
        slope, _ = _loglog_fit(head[pos], f2[pos])
        alpha1 = max(float(slope) + 3.0, 1.0)
        C0 = float(np.max(f2 / head ** (alpha1 - 3.0))) * (1 + 1e-9)
        ok = bool(np.all(f2 <= C0 * head ** (alpha1 - 3.0) + 1e-12))
        detail = {"C0": C0, "alpha1": alpha1}
        if alpha1 > 1.5:
            # companion lower bound on F for strongly growing f''
            tail = rho_grid[rho_grid >= 2.0]
            Ft = np.asarray(nl.potential(tail), dtype=float)
            alpha2 = alpha1 - 0.5
            detail["alpha2"] = alpha2
            detail["F_lower_ok"] = bool(np.min(Ft / tail**alpha2) > 0.0)
            ok = ok and detail["F_lower_ok"]
        h0 = HypothesisEntry(ok, detail)

    return HypothesisReport(h0=h0, h1=h1, h2=h2, h3=h3)


_FAMILIES = {
    "gp": (GrossPitaevskii, ()),
    "gross_pitaevskii": (GrossPitaevskii, ()),
    "perturbed_gp": (PerturbedGP, ("a", "p")),
    "pure_power": (PurePower, ("alpha", "beta")),
    "saturated": (Saturated, ("gamma",)),
}


def nonlinearity_from_config(cfg, path="nonlinearity"):
    """Build a Nonlinearity from {"family": name, "params": {...}}."""
    if not isinstance(cfg, dict) or "family" not in cfg:
        raise ConfigError(path, "expected an object with a 'family' key")
    name = str(cfg["family"]).lower()
    if name not in _FAMILIES:
        raise ConfigError(f"{path}.family", f"unknown family {name!r}")
    cls, keys = _FAMILIES[name]
    params = cfg.get("params", {})
    unknown = set(params) - set(keys)
    if unknown:
        raise ConfigError(f"{path}.params", f"unexpected keys {sorted(unknown)}")
    missing = [k for k in keys if k not in params]
    if missing:
        raise ConfigError(f"{path}.params", f"missing keys {missing}")
    try:
        return cls(**{k: params[k] for k in keys})
    except ValueError as exc:
        raise ConfigError(f"{path}.params", str(exc)) from exc


def nonlinearity_to_config(nl):
    for name, (cls, keys) in _FAMILIES.items():
        if type(nl) is cls:
            return {"family": name, "params": {k: getattr(nl, k) for k in keys}}
    raise ValueError(f"unregistered nonlinearity {type(nl)!r}")
