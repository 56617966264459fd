"""Field containers: uniform 1D grids, complex wave fields, hydro pairs."""

import csv
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError

__all__ = ["Grid1D", "WaveField", "HydroField", "box_grid", "symmetric_grid"]


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid x[j] = x0 + j*h, j = 0..n-1.

    Periodic grids represent the box [x0, x0 + n*h) with wraparound; the
    right endpoint is excluded.
    """

    x0: float
    h: float
    n: int
    periodic: bool = False

    def __post_init__(self):
        if self.n < 2 or self.h <= 0:
            raise ValueError("grid needs n >= 2 and h > 0")

    @property
    def x(self):
        return self.x0 + self.h * np.arange(self.n)

    @property
    def length(self):
        """Box length (periodic) or extent of the sampled interval."""
        return self.h * (self.n if self.periodic else self.n - 1)

    @property
    def anchor_index(self):
        """Index of x = 0, which phase integrals are measured from."""
        i0 = int(round(-self.x0 / self.h))
        if not 0 <= i0 < self.n or abs(self.x0 + i0 * self.h) > 1e-9 * self.h:
            raise ValueError("grid does not contain x = 0")
        return i0

    def same_as(self, other):
        return (
            self.n == other.n
            and self.periodic == other.periodic
            and abs(self.x0 - other.x0) < 1e-12
            and abs(self.h - other.h) < 1e-15
        )

    def require_same(self, other):
        if not self.same_as(other):
            raise GridMismatchError(f"grid mismatch: {self} vs {other}")


def box_grid(length, n):
    """Periodic box [-length/2, length/2) with n points (n a power of two)."""
    if n & (n - 1):
        raise ValueError(f"n must be a power of two, got {n}")
    return Grid1D(x0=-0.5 * length, h=length / n, n=n, periodic=True)


def symmetric_grid(x_max, h):
    """Non-periodic grid covering [-x_max, x_max] with x = 0 on the grid."""
    m = int(np.ceil(x_max / h - 1e-12))
    return Grid1D(x0=-m * h, h=h, n=2 * m + 1, periodic=False)


@dataclass
class WaveField:
    """Complex field samples, plus the gauge wavenumber kappa.

    For kappa != 0 the stored samples are the gauged (periodic) field
    u = psi_phys * exp(i kappa x); ``physical_psi`` undoes the twist.
    """

    grid: Grid1D
    psi: np.ndarray
    kappa: float = 0.0

    def __post_init__(self):
        self.psi = np.asarray(self.psi, dtype=complex)
        if self.psi.shape != (self.grid.n,):
            raise GridMismatchError("psi length does not match grid")

    def physical_psi(self):
        if self.kappa == 0.0:
            return self.psi
        return self.psi * np.exp(-1j * self.kappa * self.grid.x)

    def modulus(self):
        return np.abs(self.psi)

    def copy(self):
        return WaveField(self.grid, self.psi.copy(), self.kappa)


@dataclass
class HydroField:
    """Density deficit eta = 1 - |psi|^2 and velocity v = -d/dx arg psi."""

    grid: Grid1D
    eta: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        self.eta = np.asarray(self.eta, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        if self.eta.shape != (self.grid.n,) or self.v.shape != (self.grid.n,):
            raise GridMismatchError("component length does not match grid")

    def max_eta(self):
        return float(np.max(self.eta))

    def copy(self):
        return HydroField(self.grid, self.eta.copy(), self.v.copy())

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "eta", "v"])
            for xj, ej, vj in zip(self.grid.x, self.eta, self.v):
                w.writerow([f"{xj:.17g}", f"{ej:.17g}", f"{vj:.17g}"])

    @classmethod
    def from_csv(cls, path, periodic=False):
        data = np.genfromtxt(path, delimiter=",", names=True)
        x = np.atleast_1d(data["x"])
        h = float(x[1] - x[0])
        grid = Grid1D(x0=float(x[0]), h=h, n=len(x), periodic=periodic)
        return cls(grid, np.atleast_1d(data["eta"]), np.atleast_1d(data["v"]))
