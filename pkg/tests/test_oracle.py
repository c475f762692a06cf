"""Independent quadrature oracles and closed-form cross-checks.

Everything here is computed by a route disjoint from the main code path:
scipy's eval_hermite plus literal Riemann/Gauss-Hermite sums, closed-form
Laguerre matrix elements, and the analytic Gram of the symbol map.
"""
from __future__ import annotations

import numpy as np
import pytest

from berezin import HeisenbergElement, default_config
from berezin.oracle import (PositionGrid, analytic_singular_values,
                            analytic_symbol_gram, coherent_overlap_exact,
                            displacement_element, gauss_hermite_matrix_element,
                            hermite_basis_value, oracle_double_sum_ft,
                            oracle_matrix_element, synthesize)


def test_position_grid_invariants_hold_for_config():
    for lam in (0.5, 1.0, 4.0):
        for M in (4, 8, 16):
            cfg = default_config(lam=lam, M=M)
            grid = PositionGrid.for_config(cfg)
            grid.check(cfg)  # raises on violation
            assert grid.R >= cfg.L + 6.0 / np.sqrt(lam) - 1e-12
            assert 0.0 in grid.t


def test_position_grid_check_rejects_coarse_grid():
    cfg = default_config(lam=1.0)
    grid = PositionGrid.for_config(cfg)
    bad = PositionGrid(t=grid.t[::4], s=grid.s * 4, R=grid.R)
    with pytest.raises(ValueError, match="step"):
        bad.check(cfg)


def test_vacuum_value_at_origin():
    lam = 1.7
    cfg = default_config(lam=lam, M=4)
    grid = PositionGrid.for_config(cfg)
    coeffs = np.zeros(4, dtype=complex)
    coeffs[0] = 1.0
    vals = synthesize(coeffs, grid, lam)
    i0 = np.argmin(np.abs(grid.t))
    assert grid.t[i0] == 0.0
    assert vals[i0] == pytest.approx((lam / np.pi) ** 0.25, abs=1e-14)
    coeffs = np.zeros(4, dtype=complex)
    coeffs[1] = 1.0
    assert abs(synthesize(coeffs, grid, lam)[i0]) < 1e-14  # odd mode vanishes


def test_synthesized_mode_has_unit_norm():
    cfg = default_config(lam=1.0, M=8)
    grid = PositionGrid.for_config(cfg)
    coeffs = np.zeros(8, dtype=complex)
    coeffs[3] = 1.0
    vals = synthesize(coeffs, grid, cfg.lam)
    norm_sq = grid.s * np.sum(np.abs(vals) ** 2)
    assert norm_sq == pytest.approx(1.0, abs=cfg.tol_quadrature)


def test_oracle_central_element():
    cfg = default_config(lam=1.0, M=4)
    g = HeisenbergElement([0.0], [0.0], 0.3)
    for j in (0, 1):
        val = oracle_matrix_element(cfg, g, j, j)
        assert val == pytest.approx(np.exp(1j * 0.3), abs=1e-12)
    assert abs(oracle_matrix_element(cfg, g, 0, 1)) < 1e-12


def test_oracle_frozen_displacement_value():
    # (pi([1,0,0]) e_0 | e_0) at lam = 1 equals e^{-1/4}
    cfg = default_config(lam=1.0, M=4)
    val = oracle_matrix_element(cfg, HeisenbergElement([1.0], [0.0]), 0, 0)
    assert val == pytest.approx(0.7788007830714049, abs=1e-10)
    assert abs(val.imag) < 1e-12


def test_oracle_routes_agree():
    cfg = default_config(lam=2.0, M=6)
    g = HeisenbergElement([0.4], [-0.9], 0.7)
    for j, k in [(0, 0), (2, 1), (5, 3), (4, 4)]:
        riemann = oracle_matrix_element(cfg, g, j, k)
        gauss = gauss_hermite_matrix_element(cfg, g, j, k)
        assert riemann == pytest.approx(gauss, abs=1e-10)


def test_closed_form_matches_quadrature():
    cfg = default_config(lam=1.0, M=8)
    for (a, b, c) in [(0.4, -0.7, 0.0), (1.1, 0.3, 0.5), (-0.8, -0.2, -1.0)]:
        g = HeisenbergElement([a], [b], c)
        for j in range(5):
            for k in range(5):
                closed = displacement_element(cfg.lam, a, b, c, j, k)
                quad = oracle_matrix_element(cfg, g, j, k)
                assert closed == pytest.approx(quad, abs=1e-10)


def test_coherent_overlap_exact_values():
    assert coherent_overlap_exact(1.0, 1.0, 0.0) == pytest.approx(np.exp(-0.25))
    assert coherent_overlap_exact(4.0, 0.5, 0.5) == pytest.approx(np.exp(-0.5))
    assert coherent_overlap_exact(0.5, 0.0, 0.0) == 1.0


def test_double_sum_guard():
    xi = np.linspace(-1, 1, 8)
    x = np.linspace(-1, 1, 64)
    vals = np.ones((64, 64), dtype=complex)
    with pytest.raises(ValueError):
        oracle_double_sum_ft(vals, xi, x, 1.0)


def test_analytic_gram_structure():
    for M in (1, 2, 3, 4):
        G = analytic_symbol_gram(M)
        assert G.shape == (M * M, M * M)
        assert np.abs(G - G.T.conj()).max() < 1e-15
        assert np.linalg.eigvalsh(G).min() > 0.0


def test_analytic_singular_values_closed_forms():
    np.testing.assert_allclose(analytic_singular_values(1),
                               [np.sqrt(0.5)], atol=1e-15)
    root5 = np.sqrt(5.0) / 4.0
    np.testing.assert_allclose(analytic_singular_values(2),
                               [0.25 + root5, 0.5, 0.5, root5 - 0.25],
                               atol=1e-12)
    # frozen regression values for the next two truncations
    assert analytic_singular_values(3)[-1] == pytest.approx(
        0.11836557243109886, abs=1e-12)
    assert analytic_singular_values(4)[-1] == pytest.approx(
        0.04314713606049981, abs=1e-12)
