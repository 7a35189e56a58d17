"""Uniform grids, position/spectral fields and the Fourier-side propagator.

Conventions
-----------
Arrays are stored with shape ``(nz, ny, nx)`` so that the C-order linear
index is ``(iz*ny + iy)*nx + ix`` (x fastest).  Node ``(ix, iy, iz)`` sits at
``origin + (ix*hx, iy*hy, iz*hz)``.

The transforms approximate the continuum pair

    F(k) = integral d^3r f(r) exp(-i k.r)
    f(r) = (2 pi)^-3 integral d^3k F(k) exp(+i k.r)

by scaling the discrete FFT with the cell volume and applying the phase shift
for a non-zero grid origin.  With this scaling the L2 pairing satisfies
``<f, g> = (2 pi)^-3 <F, G>`` to round-off (see :func:`inner_product`).

A solution of ``u_tt = c^2 Lap(u)`` is stored as the pair of frequency-sign
spectral parts: the "plus" part evolves with ``exp(-i|k|ct)`` and the "minus"
part with ``exp(+i|k|ct)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .errors import GridMismatchError, NonFiniteFieldError, ValidationError

__all__ = [
    "Grid3",
    "ComplexField3",
    "SpectralField3",
    "SolutionSpectrum",
    "fft3",
    "ifft3",
    "inner_product",
    "spectral_inner_product",
    "norm",
    "propagate",
    "split_ivp",
]


@dataclass(frozen=True)
class Grid3:
    """Uniform 3-D sampling lattice.

    n_x, n_y, n_z   samples per axis (even, >= 8)
    h_x, h_y, h_z   spacing per axis (> 0)
    origin          coordinate of node (0, 0, 0)
    """

    n_x: int
    n_y: int
    n_z: int
    h_x: float
    h_y: float
    h_z: float
    origin: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for name, n in (("n_x", self.n_x), ("n_y", self.n_y), ("n_z", self.n_z)):
            if int(n) != n or n < 8 or n % 2 != 0:
                raise ValidationError(f"{name}={n}: grid sizes must be even integers >= 8")
        for name, h in (("h_x", self.h_x), ("h_y", self.h_y), ("h_z", self.h_z)):
            if not (h > 0):
                raise ValidationError(f"{name}={h}: spacings must be positive")
        if len(self.origin) != 3:
            raise ValidationError("origin must be a 3-vector")
        object.__setattr__(self, "origin", tuple(float(v) for v in self.origin))

    @classmethod
    def cubic(cls, n: int, extent: float, centered: bool = True) -> "Grid3":
        """Cube with ``n`` samples per axis spanning ``extent`` length units."""
        h = extent / n
        orig = (-extent / 2.0,) * 3 if centered else (0.0, 0.0, 0.0)
        return cls(n, n, n, h, h, h, orig)

    @classmethod
    def box(cls, n: int, extents: Tuple[float, float, float], centered: bool = True) -> "Grid3":
        hx, hy, hz = (e / n for e in extents)
        orig = tuple(-e / 2.0 for e in extents) if centered else (0.0, 0.0, 0.0)
        return cls(n, n, n, hx, hy, hz, orig)  # type: ignore[arg-type]

    @property
    def shape(self) -> Tuple[int, int, int]:
        """Array shape, z slowest."""
        return (self.n_z, self.n_y, self.n_x)

    @property
    def node_count(self) -> int:
        return self.n_x * self.n_y * self.n_z

    @property
    def cell_volume(self) -> float:
        return self.h_x * self.h_y * self.h_z

    def axes(self):
        """Per-axis coordinate arrays (x, y, z)."""
        ox, oy, oz = self.origin
        return (
            ox + self.h_x * np.arange(self.n_x),
            oy + self.h_y * np.arange(self.n_y),
            oz + self.h_z * np.arange(self.n_z),
        )

    def mesh(self):
        """Position meshes X, Y, Z with shape ``self.shape``."""
        x, y, z = self.axes()
        Z, Y, X = np.meshgrid(z, y, x, indexing="ij")
        return X, Y, Z

    def k_axes(self):
        """Per-axis angular wavenumber arrays in FFT order."""
        return (
            2.0 * np.pi * np.fft.fftfreq(self.n_x, self.h_x),
            2.0 * np.pi * np.fft.fftfreq(self.n_y, self.h_y),
            2.0 * np.pi * np.fft.fftfreq(self.n_z, self.h_z),
        )

    def k_mesh(self):
        """Wave-vector meshes KX, KY, KZ with shape ``self.shape``."""
        kx, ky, kz = self.k_axes()
        KZ, KY, KX = np.meshgrid(kz, ky, kx, indexing="ij")
        return KX, KY, KZ

    def k_mag(self):
        KX, KY, KZ = self.k_mesh()
        return np.sqrt(KX**2 + KY**2 + KZ**2)

    def k_stack(self):
        """All lattice wave vectors as a (3, node_count) array."""
        KX, KY, KZ = self.k_mesh()
        return np.stack([KX.ravel(), KY.ravel(), KZ.ravel()])


def _check_values(grid: Grid3, values: np.ndarray, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=np.complex128)
    if values.shape != grid.shape:
        raise ValidationError(
            f"{what}: values shape {values.shape} does not match grid shape {grid.shape}"
        )
    bad = ~np.isfinite(values.view(np.float64))
    if bad.any():
        flat = int(np.flatnonzero(bad)[0]) // 2
        iz, iy, ix = np.unravel_index(flat, grid.shape)
        raise NonFiniteFieldError(
            f"{what}: non-finite sample at (ix={ix}, iy={iy}, iz={iz}) "
            f"linear index {(iz * grid.n_y + iy) * grid.n_x + ix}"
        )
    return values


@dataclass(frozen=True)
class ComplexField3:
    """Complex samples of a position-space field on a :class:`Grid3`."""

    grid: Grid3
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values, "ComplexField3"))


@dataclass(frozen=True)
class SpectralField3:
    """Complex samples on the dual wave-vector lattice of a :class:`Grid3`.

    The k = 0 sample is stored like any other; operations that divide by |k|
    state how they treat it.
    """

    grid: Grid3
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.grid, self.values, "SpectralField3"))


@dataclass(frozen=True)
class SolutionSpectrum:
    """A wave-equation solution stored as its two frequency-sign parts.

    ``plus`` evolves with exp(-i|k|ct), ``minus`` with exp(+i|k|ct).
    ``notes`` records non-fatal warnings emitted while the object was built.
    """

    plus: SpectralField3
    minus: SpectralField3
    c: float
    notes: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.plus.grid != self.minus.grid:
            raise GridMismatchError("SolutionSpectrum parts must share one grid")
        if not (self.c > 0):
            raise ValidationError(f"wave speed c={self.c} must be positive")

    @property
    def grid(self) -> Grid3:
        return self.plus.grid


def _origin_phase(grid: Grid3, sign: int) -> tuple:
    # separable exp(sign * i k.origin) factors, broadcastable to grid.shape
    kx, ky, kz = grid.k_axes()
    ox, oy, oz = grid.origin
    px = np.exp(sign * 1j * kx * ox)[None, None, :]
    py = np.exp(sign * 1j * ky * oy)[None, :, None]
    pz = np.exp(sign * 1j * kz * oz)[:, None, None]
    return px, py, pz


def fft3(f: ComplexField3) -> SpectralField3:
    """Forward transform with the continuum scaling described in the module docstring."""
    g = f.grid
    out = np.fft.fftn(f.values)
    px, py, pz = _origin_phase(g, -1)
    out *= g.cell_volume
    out *= px
    out *= py
    out *= pz
    return SpectralField3(g, out)


def ifft3(F: SpectralField3) -> ComplexField3:
    """Inverse of :func:`fft3`, including origin phase and ``(2 pi)^-3`` factor."""
    g = F.grid
    px, py, pz = _origin_phase(g, +1)
    tmp = F.values * px
    tmp *= py
    tmp *= pz
    out = np.fft.ifftn(tmp)
    out /= g.cell_volume
    return ComplexField3(g, out)


def inner_product(f: ComplexField3, g: ComplexField3) -> complex:
    """L2 pairing ``sum f conj(g) * cell_volume`` (linear in the first slot)."""
    if f.grid != g.grid:
        raise GridMismatchError("inner_product requires fields on one grid")
    return complex(np.vdot(g.values, f.values) * f.grid.cell_volume)


def spectral_inner_product(F: SpectralField3, G: SpectralField3) -> complex:
    """Spectral-side pairing ``(2 pi)^-3 integral F conj(G) d^3k`` on the lattice."""
    if F.grid != G.grid:
        raise GridMismatchError("spectral_inner_product requires fields on one grid")
    g = F.grid
    return complex(np.vdot(G.values, F.values) / (g.node_count * g.cell_volume))


def norm(f) -> float:
    """L2 norm of a position or spectral field under its natural pairing."""
    if isinstance(f, ComplexField3):
        return float(np.sqrt(abs(inner_product(f, f))))
    if isinstance(f, SpectralField3):
        return float(np.sqrt(abs(spectral_inner_product(f, f))))
    raise ValidationError(f"norm: unsupported type {type(f)!r}")


def propagate(s: SolutionSpectrum, t: float) -> ComplexField3:
    """Field snapshot ``ifft3(plus * exp(-i|k|ct) + minus * exp(+i|k|ct))``."""
    g = s.grid
    if t == 0.0:
        total = s.plus.values + s.minus.values
    else:
        phase = s.c * t * g.k_mag()
        total = s.plus.values * np.exp(-1j * phase)
        total += s.minus.values * np.exp(1j * phase)
    return ifft3(SpectralField3(g, total))


# Relative size of the k=0 velocity amplitude above which split_ivp records
# that the zeroed bin actually carried data.  Truncation-level DC mass in
# otherwise mean-free data stays below this.
_DC_WARN_REL = 1e-6


def split_ivp(w: ComplexField3, v: ComplexField3, c: float) -> SolutionSpectrum:
    """Split initial data ``u(.,0) = w``, ``u_t(.,0) = v`` into sign parts.

    Implements ``plus/minus = (W -/+ V/(i c |k|)) / 2`` where W, V are the
    transforms of w and v.  The k = 0 bin of the ``V/|k|`` term is set to
    zero; if V(0) is not negligible this is recorded in ``notes`` and a
    RuntimeWarning is emitted, since the constant-velocity mode cannot be
    represented on the lattice.
    """
    if w.grid != v.grid:
        raise GridMismatchError("split_ivp requires w and v on one grid")
    if not (c > 0):
        raise ValidationError(f"wave speed c={c} must be positive")
    g = w.grid
    W = fft3(w).values
    V = fft3(v).values

    kmag = g.k_mag()
    kmag_safe = np.where(kmag == 0.0, 1.0, kmag)
    correction = V / (1j * c * kmag_safe)
    correction[kmag == 0.0] = 0.0

    notes = ()
    v_scale = np.max(np.abs(V))
    dc = abs(V[0, 0, 0])
    if v_scale > 0 and dc > _DC_WARN_REL * v_scale:
        msg = (
            f"split_ivp: velocity spectrum has |V(0)| = {dc:.3e} "
            f"({dc / v_scale:.2e} of peak); the k=0 bin of V/|k| was zeroed"
        )
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes = (msg,)

    plus = 0.5 * (W - correction)
    minus = 0.5 * (W + correction)
    return SolutionSpectrum(SpectralField3(g, plus), SpectralField3(g, minus), c, notes)


def solution_from_plus(F: SpectralField3, c: float) -> SolutionSpectrum:
    """Wrap a pure positive-frequency spectrum as a solution."""
    zero = SpectralField3(F.grid, np.zeros(F.grid.shape, dtype=np.complex128))
    return SolutionSpectrum(F, zero, c)


def solution_from_minus(F: SpectralField3, c: float) -> SolutionSpectrum:
    """Wrap a pure negative-frequency spectrum as a solution."""
    zero = SpectralField3(F.grid, np.zeros(F.grid.shape, dtype=np.complex128))
    return SolutionSpectrum(zero, F, c)
