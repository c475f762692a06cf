"""Configuration, phase-space grid, and the basic state/operator containers.

Everything downstream (representation, transforms, symbols) works on one shared
phase-space discretization: a uniform tensor grid on [-L, L)^{2n} carrying the
normalized measure density * Lebesgue with density = (lambda/(2*pi))**n.  States
live in a lambda-scaled Hermite basis truncated to M modes per axis, operators
are dense (M**n x M**n) matrices in that basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ConfigError(ValueError):
    """Invalid configuration (bad parameter values or grid resolution bounds)."""


class TruncationError(ValueError):
    """Requested evaluation outside the validity region of the truncation."""


@dataclass(frozen=True)
class ModelConfig:
    """Physical and numerical parameters.

    n: position dimension (the group has dimension 2n+1).
    lam: scale parameter lambda > 0 of the representation.
    M: Hermite truncation per axis; the truncated space has dimension M**n.
    L: phase-space half-width per axis.
    G: grid points per axis (even).
    tol_identity / tol_quadrature: verification tolerances.
    """

    n: int = 1
    lam: float = 1.0
    M: int = 16
    L: float = 0.0
    G: int = 128
    tol_identity: float = 1e-6
    tol_quadrature: float = 1e-5

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ConfigError("n must be a positive integer")
        if not (self.lam > 0 and np.isfinite(self.lam)):
            raise ConfigError("lambda must be a positive finite real")
        if int(self.M) != self.M or self.M < 1:
            raise ConfigError("M must be a positive integer")
        if not (self.L > 0 and np.isfinite(self.L)):
            raise ConfigError("L must be a positive finite real")
        if int(self.G) != self.G or self.G < 2 or self.G % 2 != 0:
            raise ConfigError("G must be an even integer >= 2")
        if not (self.tol_identity > 0 and self.tol_quadrature > 0):
            raise ConfigError("tolerances must be positive")
        validate_grid_resolution(self)

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.G

    @property
    def dim(self) -> int:
        """Dimension of the truncated state space, M**n."""
        return self.M ** self.n

    @property
    def density(self) -> float:
        return (self.lam / (2.0 * np.pi)) ** self.n


def default_L(lam: float, M: int) -> float:
    """Half-width covering the phase-space support of the first M Hermite modes."""
    return 4.0 * np.sqrt((2 * M + 1) / lam)


def default_config(n: int = 1, lam: float = 1.0, M: int = 16, L: float | None = None,
                   G: int = 128, tol_identity: float = 1e-6,
                   tol_quadrature: float = 1e-5) -> ModelConfig:
    if L is None:
        L = default_L(lam, M)
    return ModelConfig(n=n, lam=lam, M=M, L=L, G=G,
                       tol_identity=tol_identity, tol_quadrature=tol_quadrature)


def validate_grid_resolution(cfg: ModelConfig) -> None:
    """Both sides of the sampling tradeoff for Gaussian-class integrands.

    Coherent overlaps decay like exp(-lam*|x|^2/4), so the box must satisfy
    exp(-lam*L^2/4) < tol_quadrature or mass leaks past the boundary (grid too
    narrow).  Their bandwidth is ~sqrt(lam), so the step must satisfy
    exp(-pi^2/(lam*h^2)) < tol_quadrature or frequency content aliases (grid
    too coarse).
    """
    lam, L, tol = cfg.lam, cfg.L, cfg.tol_quadrature
    h = 2.0 * L / cfg.G
    edge = np.exp(-lam * L * L / 4.0)
    if not (edge < tol):
        raise ConfigError(
            "grid too narrow: exp(-lambda*L^2/4) = %.3e >= tol_quadrature = %.3e"
            % (edge, tol))
    alias = np.exp(-np.pi ** 2 / (lam * h * h))
    if not (alias < tol):
        raise ConfigError(
            "grid too coarse: exp(-pi^2/(lambda*h^2)) = %.3e >= tol_quadrature = %.3e"
            % (alias, tol))


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform tensor grid on [-L, L)^{2n}, points at (j - G/2)*h per axis.

    Point ordering is row-major over the axes (a_1..a_n, b_1..b_n).  The grid
    carries the normalized measure density * Lebesgue; one cell contributes
    density * cell_weight to integrals.
    """

    n: int
    lam: float
    L: float
    G: int

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.G

    @property
    def axis(self) -> np.ndarray:
        return (np.arange(self.G) - self.G // 2) * self.h

    @property
    def cell_weight(self) -> float:
        return self.h ** (2 * self.n)

    @property
    def density(self) -> float:
        return (self.lam / (2.0 * np.pi)) ** self.n

    @property
    def num_points(self) -> int:
        return self.G ** (2 * self.n)

    @property
    def shape(self) -> tuple:
        return (self.G,) * (2 * self.n)

    def points(self) -> np.ndarray:
        """(num_points, 2n) array of grid points, row-major axis order."""
        axes = np.meshgrid(*([self.axis] * (2 * self.n)), indexing="ij")
        return np.stack([ax.ravel() for ax in axes], axis=-1)

    @property
    def total_measure(self) -> float:
        return self.density * (2.0 * self.L) ** (2 * self.n)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PhaseGrid) and self.n == other.n
                and self.lam == other.lam and self.L == other.L and self.G == other.G)


def build_grid(cfg: ModelConfig) -> PhaseGrid:
    """Phase-space grid for a validated configuration."""
    validate_grid_resolution(cfg)
    return PhaseGrid(n=cfg.n, lam=cfg.lam, L=cfg.L, G=cfg.G)


@dataclass
class HermiteState:
    """Vector in the truncated state space, coefficients in the Hermite basis.

    For n > 1 the basis is the tensor product, multi-indices in row-major
    order over (m_1, ..., m_n).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficients")
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def inner(self, other: "HermiteState") -> complex:
        """(self | other), linear in self, conjugate-linear in other."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return complex(np.vdot(other.coeffs, self.coeffs))


def basis_state(dim: int, j: int) -> HermiteState:
    c = np.zeros(dim, dtype=complex)
    c[j] = 1.0
    return HermiteState(c)


@dataclass
class OperatorMatrix:
    """Dense operator on the truncated space, matrix in the Hermite basis.

    entries[m, k] is the coefficient of basis vector m in the image of basis
    vector k, so matrix-vector products act directly on HermiteState coeffs.
    """

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("operator matrix must be square")
        if not np.all(np.isfinite(a)):
            raise ValueError("non-finite entries")
        if self.hermitian and np.abs(a - a.conj().T).max() > 1e-12:
            raise ValueError("hermitian flag set but entries are not hermitian")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, f: HermiteState) -> HermiteState:
        if f.dim != self.dim:
            raise ValueError("dimension mismatch")
        return HermiteState(self.entries @ f.coeffs)

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, hermitian=self.hermitian)


def identity_operator(dim: int) -> OperatorMatrix:
    return OperatorMatrix(np.eye(dim, dtype=complex), hermitian=True)


def rank_one(u: HermiteState, v: HermiteState) -> OperatorMatrix:
    """u (x) v*: the operator f -> (f|v) u."""
    return OperatorMatrix(np.outer(u.coeffs, v.coeffs.conj()))


@dataclass
class GridFunction:
    """Complex samples of a phase-space function, one value per grid point."""

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).ravel()
        if v.size != self.grid.num_points:
            raise ValueError("value count does not match grid size")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite values")
        object.__setattr__(self, "values", v)

    def reshape(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape)

    def norm(self) -> float:
        return float(np.sqrt(self.grid.density * self.grid.cell_weight
                             * np.sum(np.abs(self.values) ** 2)))


def inner_l2(u: GridFunction, v: GridFunction) -> complex:
    """Discrete L2 pairing with the grid measure, linear in u."""
    if u.grid != v.grid:
        raise ValueError("grid mismatch")
    return complex(u.grid.density * u.grid.cell_weight * np.vdot(v.values, u.values))


def hs_inner(A: OperatorMatrix, B: OperatorMatrix) -> complex:
    """Hilbert-Schmidt pairing trace(B* A), linear in A."""
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    return complex(np.vdot(B.entries, A.entries))


def hermite_columns(t: np.ndarray, M: int, lam: float) -> np.ndarray:
    """Values of the lambda-scaled Hermite basis, shape t.shape + (M,).

    e_m(t) = lam^{1/4} (2^m m! sqrt(pi))^{-1/2} H_m(sqrt(lam) t) e^{-lam t^2/2},
    evaluated by the weighted three-term recurrence (stable: every column stays
    O(1), no separate polynomial/weight overflow).
    """
    t = np.asarray(t, dtype=float)
    y = np.sqrt(lam) * t
    H = np.zeros(t.shape + (M,))
    h0 = (lam / np.pi) ** 0.25 * np.exp(-y * y / 2.0)
    H[..., 0] = h0
    if M > 1:
        H[..., 1] = np.sqrt(2.0) * y * h0
    for m in range(2, M):
        H[..., m] = (np.sqrt(2.0 / m) * y * H[..., m - 1]
                     - np.sqrt((m - 1) / m) * H[..., m - 2])
    return H


def position_quadrature(cfg: ModelConfig) -> tuple[np.ndarray, float]:
    """Main-path 1D position grid (t, s) for representation quadrature.

    Half-width reaches the classical turning point of the top retained mode
    plus 10 Gaussian decay lengths; the step resolves both the fastest Hermite
    oscillation sqrt(lam(2M+1)) and the largest modulation frequency lam*L on
    the phase grid, with margin.
    """
    lam, M, L = cfg.lam, cfg.M, cfg.L
    R = np.sqrt((2 * M + 1) / lam) + 10.0 / np.sqrt(lam)
    s_max = min(0.2 / np.sqrt(lam * (2 * M + 1)), np.pi / (5.0 * lam * L))
    Np = int(np.ceil(2.0 * R / s_max)) | 1
    t = np.linspace(-R, R, Np)
    return t, float(t[1] - t[0])
