"""Independent brute-force reference implementations for validation.

Everything here exists to cross-check the fast paths and deliberately shares no
quadrature code with them: basis functions come from scipy.special.eval_hermite
instead of the in-package recurrence, integrals use this module's own position
grid or Gauss-Hermite nodes, and Fourier transforms are literal dense sums.
Oracles may be orders of magnitude slower by design; cost-guarded operations
refuse oversized inputs rather than degrade.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from scipy.special import eval_hermite

from .core import ModelConfig
from .heisenberg import HeisenbergElement

_MAX_MODE = 64  # eval_hermite values stay inside float64 range up to here


@dataclass(frozen=True)
class PositionGrid:
    """Oracle 1D position grid on [-R, R] with step s.

    Invariants (enforced): R >= L + 6/sqrt(lam) so displaced states up to the
    phase-grid edge keep their Gaussian tails inside the box, and
    s <= min(1/(4 sqrt(lam(2M+1))), pi/(4 lam L)) so both the fastest Hermite
    oscillation and the largest grid modulation frequency are resolved.
    """

    t: np.ndarray
    s: float
    R: float

    @staticmethod
    def for_config(cfg: ModelConfig) -> "PositionGrid":
        lam, M, L = cfg.lam, cfg.M, cfg.L
        R = L + 6.0 / np.sqrt(lam)
        s_max = min(1.0 / (4.0 * np.sqrt(lam * (2 * M + 1))),
                    np.pi / (4.0 * lam * L))
        num = int(np.ceil(2.0 * R / s_max)) + 1  # points, so step <= s_max
        if num % 2 == 0:
            num += 1  # odd count keeps t = 0 on the grid
        t = np.linspace(-R, R, num)
        return PositionGrid(t=t, s=float(t[1] - t[0]), R=float(R))

    def check(self, cfg: ModelConfig) -> None:
        if self.R < cfg.L + 6.0 / np.sqrt(cfg.lam) - 1e-12:
            raise ValueError("oracle grid half-width below invariant")
        s_max = min(1.0 / (4.0 * np.sqrt(cfg.lam * (2 * cfg.M + 1))),
                    np.pi / (4.0 * cfg.lam * cfg.L))
        if self.s > s_max * (1 + 1e-12):
            raise ValueError("oracle grid step above invariant")


def hermite_basis_value(lam: float, m: int, t: np.ndarray) -> np.ndarray:
    """e_m(t) via scipy's physicists' Hermite polynomial, explicit normalization."""
    if m > _MAX_MODE:
        raise ValueError("mode index beyond oracle overflow guard")
    y = np.sqrt(lam) * np.asarray(t, dtype=float)
    norm = lam ** 0.25 / np.sqrt(2.0 ** m * factorial(m) * np.sqrt(np.pi))
    return norm * eval_hermite(m, y) * np.exp(-y * y / 2.0)


def synthesize(coeffs: np.ndarray, grid: PositionGrid, lam: float) -> np.ndarray:
    """Pointwise values sum_m coeffs[m] e_m(t) on the oracle grid (n = 1)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    out = np.zeros(grid.t.shape, dtype=complex)
    for m, c in enumerate(coeffs):
        if c != 0.0:
            out += c * hermite_basis_value(lam, m, grid.t)
    return out


def oracle_matrix_element(cfg: ModelConfig, g: HeisenbergElement,
                          j: int, k: int, grid: PositionGrid | None = None) -> complex:
    """(pi(g) e_k | e_j) by direct position-space Riemann sum (n = 1).

    This is the (j, k) entry of the representation matrix: the coefficient of
    e_j in pi(g) e_k.  For central g = [0,0,c] and j = k it returns e^{i lam c}.
    """
    if cfg.n != 1:
        raise ValueError("oracle matrix elements are implemented for n = 1")
    if grid is None:
        grid = PositionGrid.for_config(cfg)
    grid.check(cfg)
    lam = cfg.lam
    a, b, c = float(g.a[0]), float(g.b[0]), g.c
    t = grid.t
    moved = hermite_basis_value(lam, k, t - a)
    phase = np.exp(1j * lam * (c - b * t + 0.5 * a * b))
    ej = hermite_basis_value(lam, j, t)
    return complex(grid.s * np.sum(phase * moved * ej))


def gauss_hermite_matrix_element(cfg: ModelConfig, g: HeisenbergElement,
                                 j: int, k: int, order: int = 180) -> complex:
    """(pi(g) e_k | e_j) by Gauss-Hermite quadrature (n = 1).

    Completing the square in e_j(t) e_k(t-a) leaves weight e^{-u^2} around
    u = sqrt(lam) t - atil/2 with atil = sqrt(lam) a:

      (pi(g)e_k|e_j) = e^{i lam (c + ab/2)} e^{-lam a^2/4}
          * int e^{-u^2} N_j H_j(u + atil/2) N_k H_k(u - atil/2)
                e^{-i sqrt(lam) b (u + atil/2)} du / sqrt(pi-free norms)

    evaluated on hermgauss nodes.  Third error profile, independent of both
    Riemann paths.
    """
    if cfg.n != 1:
        raise ValueError("oracle matrix elements are implemented for n = 1")
    if j > _MAX_MODE or k > _MAX_MODE:
        raise ValueError("mode index beyond oracle overflow guard")
    lam = cfg.lam
    a, b, c = float(g.a[0]), float(g.b[0]), g.c
    u, w = np.polynomial.hermite.hermgauss(order)
    atil = np.sqrt(lam) * a
    nj = 1.0 / np.sqrt(2.0 ** j * factorial(j) * np.sqrt(np.pi))
    nk = 1.0 / np.sqrt(2.0 ** k * factorial(k) * np.sqrt(np.pi))
    vals = (eval_hermite(j, u + atil / 2.0) * eval_hermite(k, u - atil / 2.0)
            * np.exp(-1j * np.sqrt(lam) * b * (u + atil / 2.0)))
    integral = np.sum(w * vals)
    return complex(np.exp(1j * lam * (c + 0.5 * a * b))
                   * np.exp(-lam * a * a / 4.0) * nj * nk * integral)


def displacement_element(lam: float, a: float, b: float, c: float,
                         j: int, k: int) -> complex:
    """Closed-form (pi([a,b,c]) e_k | e_j) for n = 1.

    With w = sqrt(lam/2)(a + ib),

      (pi(g)e_k|e_j) = e^{i lam c} e^{-|w|^2/2} sqrt(j! k!)
          * sum_r conj(w)^{j-r} (-w)^{k-r} / (r! (j-r)! (k-r)!).

    Acceptance cross-check only (n = 1, small j, k); the main path never uses it.
    """
    w = np.sqrt(lam / 2.0) * (a + 1j * b)
    total = 0.0 + 0.0j
    for r in range(min(j, k) + 1):
        total += (np.conj(w) ** (j - r) * (-w) ** (k - r)
                  / (factorial(r) * factorial(j - r) * factorial(k - r)))
    pref = np.exp(1j * lam * c) * np.exp(-abs(w) ** 2 / 2.0)
    return complex(pref * np.sqrt(float(factorial(j) * factorial(k))) * total)


def coherent_overlap_exact(lam: float, a: float, b: float) -> float:
    """|(phi | phi_{(a,b)})| = e^{-lam(a^2+b^2)/4}; the overlap is real positive."""
    return float(np.exp(-lam * (a * a + b * b) / 4.0))


def oracle_double_sum_ft(values: np.ndarray, xi_axis: np.ndarray, x_axis: np.ndarray,
                         orbit_density: float, sign: int = -1) -> np.ndarray:
    """Literal dense evaluation of the discrete orbit Fourier sum.

    out[x] = orbit_density * eta^{2n} * sum_xi exp(sign * i <xi, x>) values[xi],
    applied axis by axis with dense G x G phase matrices (no FFT anywhere).
    values has shape (G,)*2n.  Cost guard: G <= 32 per axis.
    """
    G = values.shape[0]
    if G > 32:
        raise ValueError("double-sum oracle limited to G <= 32 per axis")
    if any(s != G for s in values.shape):
        raise ValueError("expected a (G,)*2n hypercube of samples")
    eta = float(xi_axis[1] - xi_axis[0])
    E = np.exp(sign * 1j * np.outer(x_axis, xi_axis))
    out = values.astype(complex)
    ndim = values.ndim
    for axis in range(ndim):
        out = np.moveaxis(np.tensordot(E, np.moveaxis(out, axis, 0), axes=([1], [0])),
                          0, axis)
    return orbit_density * eta ** ndim * out


def analytic_symbol_gram(M: int) -> np.ndarray:
    """Closed-form Gram of the symbol map on matrix units (n = 1).

    S(e_i (x) e_j*)(x) = e^{-lam|x|^2/2} w^i conj(w)^j / sqrt(i! j!), so the
    L2(mu) pairing of columns (i,j) and (k,l) is radial-polar integrable:
    delta_{i+l, j+k} * p! / (2^{p+1} sqrt(i! j! k! l!)) with p = i + l.
    Lambda drops out entirely.
    """
    Gm = np.zeros((M * M, M * M))
    for i in range(M):
        for j in range(M):
            for k in range(M):
                for ll in range(M):
                    if i + ll != j + k:
                        continue
                    p = i + ll
                    val = factorial(p) / (2.0 ** (p + 1) * np.sqrt(
                        float(factorial(i) * factorial(j)
                              * factorial(k) * factorial(ll))))
                    Gm[i * M + j, k * M + ll] = val
    return Gm


def analytic_singular_values(M: int) -> np.ndarray:
    """Descending singular values of the truncated symbol map (n = 1)."""
    eig = np.linalg.eigvalsh(analytic_symbol_gram(M))
    eig = np.clip(eig, 0.0, None)
    return np.sqrt(eig)[::-1]
