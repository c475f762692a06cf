"""Coefficient map, orbit Fourier transform, and cross-Wigner distribution.

The orbit carries Lebesgue measure in (alpha, beta) coordinates scaled by
orbit_density = (2 pi lam)^{-n}; phase space carries (lam/2 pi)^n * Lebesgue.
Orbit samples live on the reciprocal lattice xi_j = (j - G/2) * eta with
eta = 2 pi / (G h): on that lattice the discrete kernel e^{-i<xi, x>} factors
into checkerboard-signed DFTs per axis and the weighted transform is exactly
unitary with an exact two-sided inverse, for every (lam, L, G).  Sampling the
orbit on the phase grid itself would break unitarity (alias ghosts) because
h^2 G / 2 pi is not an integer in general.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GridFunction, HermiteState, PhaseGrid
from .schroedinger import RepresentationContext, ambiguity_batch


@dataclass
class OrbitGridFunction:
    """Samples of a function on the flat orbit, on the reciprocal lattice.

    grid is the underlying phase grid (chart bookkeeping: same G, same n);
    the orbit's own axis is xi_axis with step eta = 2 pi / (G h).  values are
    row-major over (alpha_1..alpha_n, beta_1..beta_n), like GridFunction.
    """

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).ravel()
        if v.size != self.grid.num_points:
            raise ValueError("value count does not match grid size")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite values")
        object.__setattr__(self, "values", v)

    @property
    def eta(self) -> float:
        return 2.0 * np.pi / (self.grid.G * self.grid.h)

    @property
    def xi_axis(self) -> np.ndarray:
        return (np.arange(self.grid.G) - self.grid.G // 2) * self.eta

    @property
    def orbit_density(self) -> float:
        return (2.0 * np.pi * self.grid.lam) ** (-self.grid.n)

    @property
    def cell_weight(self) -> float:
        return self.eta ** (2 * self.grid.n)

    def reshape(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)

    def norm(self) -> float:
        return float(np.sqrt(self.orbit_density * self.cell_weight
                             * np.sum(np.abs(self.values) ** 2)))


def orbit_inner(u: OrbitGridFunction, v: OrbitGridFunction) -> complex:
    """L2 pairing on the orbit with its Liouville normalization, linear in u."""
    if u.grid != v.grid:
        raise ValueError("grid mismatch")
    return complex(u.orbit_density * u.cell_weight * np.vdot(v.values, u.values))


def _axis_dft(arr: np.ndarray, axis: int, sign: int) -> np.ndarray:
    """sum_j e^{-sign * i * xi_j * x_k} along one axis of reciprocal grids.

    With xi_j = (j - G/2) eta, x_k = (k - G/2) h and eta h = 2 pi / G the
    kernel is (-1)^{G/2} (-1)^j (-1)^k e^{-sign 2 pi i jk/G}, so the sum is a
    checkerboard-conjugated FFT (sign=+1) or inverse FFT times G (sign=-1).
    """
    G = arr.shape[axis]
    sgn = np.where(np.arange(G) % 2 == 0, 1.0, -1.0)
    gph = 1.0 if (G // 2) % 2 == 0 else -1.0
    moved = np.moveaxis(arr, axis, -1)
    if sign > 0:
        out = gph * sgn * np.fft.fft(moved * sgn, axis=-1)
    else:
        out = gph * sgn * (np.fft.ifft(moved * sgn, axis=-1) * G)
    return np.moveaxis(out, -1, axis)


def fourier_orbit(a: OrbitGridFunction) -> GridFunction:
    """a_hat(x) = orbit_density * sum_xi e^{-i<xi,x>} a(xi) * eta^{2n}.

    Unitary from L2(orbit) onto L2(phase space, mu): the weight identity
    orbit_density * density * (eta h G)^{2n} = 1 holds exactly because
    eta h G = 2 pi.
    """
    vals = a.reshape()
    for axis in range(vals.ndim):
        vals = _axis_dft(vals, axis, +1)
    vals = a.orbit_density * a.cell_weight * vals
    return GridFunction(grid=a.grid, values=vals.ravel())


def inverse_fourier_orbit(F: GridFunction) -> OrbitGridFunction:
    """Two-sided inverse of fourier_orbit (exact at the discrete level)."""
    vals = F.reshape()
    for axis in range(vals.ndim):
        vals = _axis_dft(vals, axis, -1)
    vals = F.grid.density * F.grid.cell_weight * vals
    return OrbitGridFunction(grid=F.grid, values=vals.ravel())


def coefficient_map(ctx: RepresentationContext, f: HermiteState,
                    phi: HermiteState) -> GridFunction:
    """values_k = (f | pi([a_k, b_k, 0]) phi) over the whole phase grid.

    n = 1 runs as one chirp-z batch; n > 1 contracts per-axis matrix-element
    tables (feasible for the small truncations where n > 1 is usable at all).
    Linear in f and conjugate-linear in phi by construction (the quadrature
    weights never see the coefficients).
    """
    cfg = ctx.cfg
    if f.dim != cfg.dim or phi.dim != cfg.dim:
        raise ValueError("state dimension mismatch")
    if cfg.n == 1:
        u = ctx.H @ f.coeffs
        vals = ambiguity_batch(ctx, u, phi.coeffs)[:, :, 0]
        return GridFunction(grid=ctx.grid, values=vals.ravel())
    return _coefficient_map_nd(ctx, f, phi)


def _coefficient_map_nd(ctx: RepresentationContext, f: HermiteState,
                        phi: HermiteState) -> GridFunction:
    """(f | pi(x) phi) = sum_{m,j} f_m conj(phi_j) prod_ax conj(R_ax[m_ax, j_ax])."""
    cfg = ctx.cfg
    n, M, G = cfg.n, cfg.M, cfg.G
    if G * G * M * M > 2 ** 22:
        raise MemoryError("per-axis table too large for the n > 1 path")
    ax = ctx.grid.axis
    T = np.empty((G, G, M, M), dtype=complex)
    for ia, a in enumerate(ax):
        for ib, b in enumerate(ax):
            T[ia, ib] = np.conj(ctx._rep_matrix_1d(a, b))
    F = f.coeffs.reshape((M,) * n)
    P = np.conj(phi.coeffs.reshape((M,) * n))
    if n == 2:
        out = np.einsum("ABmj,CDnl,mn,jl->ACBD", T, T, F, P, optimize=True)
    elif n == 3:
        out = np.einsum("ABmj,CDnl,EFpq,mnp,jlq->ACEBDF", T, T, T, F, P,
                        optimize=True)
    else:
        raise NotImplementedError("coefficient_map supports n <= 3")
    return GridFunction(grid=ctx.grid, values=out.ravel())


def wigner(ctx: RepresentationContext, f: HermiteState,
           phi: HermiteState) -> OrbitGridFunction:
    """Cross-Wigner distribution: the orbit function whose transform is (f|pi(.)phi)."""
    return inverse_fourier_orbit(coefficient_map(ctx, f, phi))


def moyal_residual(ctx: RepresentationContext,
                   f1: HermiteState, phi1: HermiteState,
                   f2: HermiteState, phi2: HermiteState) -> tuple[float, float]:
    """Deviation of both transform pairings from (f1|f2) * conj((phi1|phi2)).

    Returns (ambiguity-side residual, Wigner-side residual).
    """
    from .core import inner_l2

    target = f1.inner(f2) * np.conj(phi1.inner(phi2))
    A1 = coefficient_map(ctx, f1, phi1)
    A2 = coefficient_map(ctx, f2, phi2)
    amb = abs(inner_l2(A1, A2) - target)
    W1 = inverse_fourier_orbit(A1)
    W2 = inverse_fourier_orbit(A2)
    wig = abs(orbit_inner(W1, W2) - target)
    return float(amb), float(wig)
