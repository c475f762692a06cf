"""Kernel, symbols, trace/HS identities, covariance, injectivity map."""
from __future__ import annotations

import numpy as np
import pytest

from berezin import (HeisenbergElement, OperatorMatrix, PhasePoint,
                     RepresentationContext, TruncationError, analysis,
                     basis_state, build_symbol_map, coherent_state,
                     covariance_residual, covariant_symbol, default_config,
                     full_symbol, gaussian_vector, hs_identity_residual,
                     hs_inner, identity_operator, injectivity_report,
                     inner_l2, kernel, onb_expansion_check, rank_one,
                     reconstruct, trace_identity_residual)
from berezin.core import GridFunction, ModelConfig
from berezin.oracle import analytic_singular_values


@pytest.fixture(scope="module")
def ctx():
    return RepresentationContext(default_config(lam=1.0))


@pytest.fixture(scope="module")
def ctx8():
    return RepresentationContext(default_config(lam=1.0, M=8))


def _random_operator(rng, dim, hermitian=False):
    E = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    if hermitian:
        E = 0.5 * (E + E.conj().T)
    return OperatorMatrix(entries=E, hermitian=hermitian)


def test_kernel_diagonal_is_one(ctx):
    for (a, b) in [(0.0, 0.0), (0.5, -0.5), (1.0, 1.0)]:
        val = kernel(ctx, PhasePoint([a], [b]), PhasePoint([a], [b]))
        assert val == pytest.approx(1.0, abs=ctx.cfg.tol_identity)


def test_kernel_hermitian_symmetry(ctx):
    x, y = PhasePoint([0.7], [-0.2]), PhasePoint([-0.4], [0.9])
    assert kernel(ctx, x, y) == pytest.approx(np.conj(kernel(ctx, y, x)),
                                              abs=1e-14)


def test_kernel_against_overlap_law(ctx):
    lam = ctx.cfg.lam
    for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.6, -0.8)]:
        val = kernel(ctx, PhasePoint([a], [b]), PhasePoint([0.0], [0.0]))
        assert abs(val) == pytest.approx(np.exp(-lam * (a * a + b * b) / 4.0),
                                         abs=1e-10)


def test_kernel_gram_is_psd(ctx):
    pts = [PhasePoint([a], [b])
           for a in (-1.0, 0.0, 1.0) for b in (-0.5, 0.5)]
    gram = np.array([[kernel(ctx, x, y) for y in pts] for x in pts])
    assert np.abs(gram - gram.conj().T).max() < 1e-13
    assert np.linalg.eigvalsh(gram).min() > -1e-10


def test_analysis_center_value_and_isometry(ctx):
    vac = gaussian_vector(ctx.cfg)
    u = analysis(ctx, vac)
    center = (ctx.cfg.G // 2) * ctx.cfg.G + ctx.cfg.G // 2
    assert u.values[center] == pytest.approx(1.0, abs=1e-12)
    f, g = basis_state(16, 3), basis_state(16, 1)
    uf, ug = analysis(ctx, f), analysis(ctx, g)
    assert inner_l2(uf, uf) == pytest.approx(1.0, abs=1e-10)
    assert abs(inner_l2(uf, ug)) < 1e-10


def test_analysis_reproducing_against_kernel_column(ctx):
    rng = np.random.default_rng(0)
    v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    from berezin import HermiteState
    f = HermiteState(coeffs=v / np.linalg.norm(v))
    u = analysis(ctx, f)
    iy = 63 * ctx.cfg.G + 70  # an interior grid point
    y = PhasePoint([ctx.grid.axis[63]], [ctx.grid.axis[70]])
    C = ctx.coherent_table()
    kcol = GridFunction(grid=ctx.grid,
                        values=C @ coherent_state(ctx, y).coeffs)
    assert inner_l2(u, kcol) == pytest.approx(u.values[iy], abs=1e-10)


def test_full_symbol_of_identity_is_kernel(ctx):
    x, y = PhasePoint([0.4], [0.4]), PhasePoint([-0.6], [0.1])
    assert full_symbol(ctx, identity_operator(16), x, y) == pytest.approx(
        kernel(ctx, x, y), abs=1e-14)


def test_full_symbol_rank_one_factorizes(ctx):
    # A = phi (x) phi*: K^A(x, y) = K(x, 0) K(0, y); exact because the
    # origin coherent state is the vacuum column itself
    vac = gaussian_vector(ctx.cfg)
    P = rank_one(vac, vac)
    zero = PhasePoint([0.0], [0.0])
    for (x, y) in [((0.5, 0.0), (0.0, 0.5)), ((1.0, -0.5), (-0.3, 0.2))]:
        xp, yp = PhasePoint([x[0]], [x[1]]), PhasePoint([y[0]], [y[1]])
        lhs = full_symbol(ctx, P, xp, yp)
        rhs = kernel(ctx, xp, zero) * kernel(ctx, zero, yp)
        assert lhs == pytest.approx(rhs, abs=1e-14)


def test_full_symbol_adjoint_swap(ctx):
    rng = np.random.default_rng(1)
    A = _random_operator(rng, 16)
    x, y = PhasePoint([0.3], [-0.7]), PhasePoint([0.9], [0.2])
    assert full_symbol(ctx, A.adjoint(), x, y) == pytest.approx(
        np.conj(full_symbol(ctx, A, y, x)), abs=1e-13)


def test_onb_expansion_examples(ctx):
    rng = np.random.default_rng(2)
    x, y = PhasePoint([0.5], [0.1]), PhasePoint([-0.2], [0.6])
    assert onb_expansion_check(ctx, identity_operator(16), x, y) < 1e-12
    assert onb_expansion_check(ctx, _random_operator(rng, 16), x, y) < 1e-12
    unit = rank_one(basis_state(16, 0), basis_state(16, 1))
    assert onb_expansion_check(ctx, unit, x, y) < 1e-12


def test_reconstruct_examples(ctx):
    vac = gaussian_vector(ctx.cfg)
    zero = PhasePoint([0.0], [0.0])
    val = reconstruct(ctx, identity_operator(16), vac, zero)
    assert val == pytest.approx(1.0, abs=ctx.cfg.tol_identity)
    null = OperatorMatrix(entries=np.zeros((16, 16), dtype=complex))
    assert reconstruct(ctx, null, vac, zero) == 0.0
    rng = np.random.default_rng(3)
    A = _random_operator(rng, 16, hermitian=True)
    direct = analysis(ctx, A.apply(vac)).values
    center = (ctx.cfg.G // 2) * ctx.cfg.G + ctx.cfg.G // 2
    assert reconstruct(ctx, A, vac, zero) == pytest.approx(
        direct[center], abs=1e-10)


def test_identity_symbol_on_faithful_disc():
    # S(Id)(x) = ||P_M pi(x) phi||^2: 1 where the truncation represents the
    # displaced vacuum, decaying toward the box corners; assert the constant
    # on the faithful disc |x| <= 2/sqrt(lam) and two-sided global bounds
    for lam in (0.5, 1.0, 4.0):
        cx = RepresentationContext(default_config(lam=lam))
        vals = covariant_symbol(cx, identity_operator(16)).reshape()
        ax = cx.grid.axis
        A, B = np.meshgrid(ax, ax, indexing="ij")
        disc = A ** 2 + B ** 2 <= (2.0 / np.sqrt(lam)) ** 2
        assert np.abs(vals[disc] - 1.0).max() < 1e-8
        assert vals.real.min() > -1e-12
        assert vals.real.max() < 1.0 + 1e-12
        assert np.abs(vals.imag).max() < 1e-12


def test_projector_symbol_is_gaussian(ctx8):
    vac = gaussian_vector(ctx8.cfg)
    vals = covariant_symbol(ctx8, rank_one(vac, vac)).reshape()
    ax = ctx8.grid.axis
    A, B = np.meshgrid(ax, ax, indexing="ij")
    lam = ctx8.cfg.lam
    target = np.exp(-lam * (A ** 2 + B ** 2) / 2.0)
    assert np.abs(vals - target).max() < 1e-8


def test_covariant_symbol_linearity_and_adjoint(ctx8):
    rng = np.random.default_rng(4)
    A = _random_operator(rng, 8)
    B = _random_operator(rng, 8)
    z = 1.3 - 0.4j
    lhs = covariant_symbol(
        ctx8, OperatorMatrix(entries=A.entries + z * B.entries)).values
    rhs = covariant_symbol(ctx8, A).values + z * covariant_symbol(ctx8, B).values
    assert np.abs(lhs - rhs).max() < 1e-12
    sym_adj = covariant_symbol(ctx8, A.adjoint()).values
    assert np.abs(sym_adj - np.conj(covariant_symbol(ctx8, A).values)).max() < 1e-12


def test_covariant_symbol_operator_norm_bound(ctx8):
    rng = np.random.default_rng(5)
    A = _random_operator(rng, 8)
    vals = covariant_symbol(ctx8, A).values
    opnorm = np.linalg.norm(A.entries, 2)
    assert np.abs(vals).max() <= opnorm + 1e-12


def test_psd_symbol_positivity(ctx8):
    rng = np.random.default_rng(6)
    E = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    A = OperatorMatrix(entries=E @ E.conj().T, hermitian=True)
    vals = covariant_symbol(ctx8, A).values
    assert vals.real.min() > -1e-10
    assert np.abs(vals.imag).max() < 1e-10


def test_trace_identity(ctx8):
    rng = np.random.default_rng(7)
    for _ in range(5):
        A = _random_operator(rng, 8)
        tr_norm = np.sum(np.linalg.svd(A.entries, compute_uv=False))
        assert trace_identity_residual(ctx8, A) < 1e-6 * tr_norm
    vac = gaussian_vector(ctx8.cfg)
    P = rank_one(vac, vac)
    assert trace_identity_residual(ctx8, P) < 1e-8
    assert abs(np.trace(P.entries) - 1.0) == 0.0
    null = OperatorMatrix(entries=np.zeros((8, 8), dtype=complex))
    assert trace_identity_residual(ctx8, null) == 0.0


def test_hs_identity():
    cfg = default_config(lam=1.0, M=6, G=64)
    cx = RepresentationContext(cfg)
    rng = np.random.default_rng(8)
    for _ in range(5):
        E = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        A = OperatorMatrix(entries=E)
        assert hs_identity_residual(cx, A) < 1e-5 * hs_inner(A, A).real


def test_residual_decay_with_box_size():
    # residuals track the Gaussian envelope e^{-lam L^2/4} as L grows
    lam = 1.0
    rng = np.random.default_rng(9)
    E = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    A = OperatorMatrix(entries=E)
    tr_norm = np.sum(np.linalg.svd(E, compute_uv=False))
    hs_norm = hs_inner(A, A).real
    residuals, bounds = [], []
    for scale in (4.0, 6.0, 8.0):
        L = scale / np.sqrt(lam)
        cfg = ModelConfig(n=1, lam=lam, M=4, L=L, G=128,
                          tol_identity=1e-6, tol_quadrature=0.05)
        cx = RepresentationContext(cfg)
        residuals.append((trace_identity_residual(cx, A) / tr_norm,
                          hs_identity_residual(cx, A) / hs_norm))
        bounds.append(np.exp(-lam * L * L / 4.0))
    for (tr_res, hs_res), bound in zip(residuals, bounds):
        assert tr_res < bound
        assert hs_res < bound
    for k in (0, 1):  # decay at least as fast as the envelope
        assert residuals[k + 1][0] / residuals[k][0] < bounds[k + 1] / bounds[k]
        assert residuals[k + 1][1] / residuals[k][1] < bounds[k + 1] / bounds[k]


def test_covariance_central_and_identity(ctx8):
    rng = np.random.default_rng(10)
    A = _random_operator(rng, 8, hermitian=True)
    assert covariance_residual(ctx8, A, HeisenbergElement([0.0], [0.0], 0.7)) \
        < 1e-12
    assert covariance_residual(ctx8, A, HeisenbergElement([0.0], [0.0], 0.0)) \
        == 0.0


def test_covariance_single_grid_steps(ctx):
    vac = gaussian_vector(ctx.cfg)
    P = rank_one(vac, vac)
    h = ctx.grid.h
    for g in (HeisenbergElement([h], [0.0]), HeisenbergElement([0.0], [h]),
              HeisenbergElement([h], [h], 0.3)):
        assert covariance_residual(ctx, P, g) < 10.0 * ctx.cfg.tol_identity


def test_covariance_rejects_off_lattice(ctx):
    A = identity_operator(16)
    with pytest.raises(ValueError, match="commensurate"):
        covariance_residual(ctx, A, HeisenbergElement([ctx.grid.h * 0.5], [0.0]))


def test_covariance_rejects_oversized_displacement(ctx):
    A = identity_operator(16)
    steps = int(np.floor(0.6 * ctx.cfg.L / ctx.grid.h))
    with pytest.raises(TruncationError):
        covariance_residual(ctx, A, HeisenbergElement([steps * ctx.grid.h], [0.0]))


def test_symbol_map_singular_values_match_analytic():
    for M in (1, 2, 3, 4):
        cx = RepresentationContext(default_config(lam=1.0, M=M))
        sv = build_symbol_map(cx).singular_values
        np.testing.assert_allclose(sv, analytic_singular_values(M), atol=1e-9)


def test_symbol_map_column_norms_match_symbol_norms(ctx8):
    # column (i,j) of the map is the weighted symbol of e_i (x) e_j*
    sm = build_symbol_map(ctx8)
    rng = np.random.default_rng(11)
    for _ in range(4):
        i, j = rng.integers(0, 8, size=2)
        unit = rank_one(basis_state(8, int(i)), basis_state(8, int(j)))
        sym = covariant_symbol(ctx8, unit)
        col = sm.entries[:, int(i) * 8 + int(j)]
        assert np.linalg.norm(col) == pytest.approx(sym.norm(), abs=1e-12)


def test_symbol_map_monotone_sigma_min():
    sigmas = []
    for M in (1, 2, 3, 4):
        cx = RepresentationContext(default_config(lam=1.0, M=M))
        sigmas.append(build_symbol_map(cx).singular_values[-1])
    assert all(s1 > s2 for s1, s2 in zip(sigmas, sigmas[1:]))


def test_symbol_map_deterministic():
    cx = RepresentationContext(default_config(lam=1.0, M=3))
    sv1 = build_symbol_map(cx).singular_values
    sv2 = build_symbol_map(RepresentationContext(
        default_config(lam=1.0, M=3))).singular_values
    np.testing.assert_array_equal(sv1, sv2)


def test_symbol_map_under_determined():
    cfg = ModelConfig(n=1, lam=1.0, M=20, L=6.9, G=16,
                      tol_identity=1e-6, tol_quadrature=1e-5)
    with pytest.raises(ValueError, match="under-determined"):
        build_symbol_map(RepresentationContext(cfg))


def test_injectivity_report_m1():
    rep = injectivity_report(RepresentationContext(default_config(lam=1.0, M=1)))
    assert rep["sigma_min"] == pytest.approx(np.sqrt(0.5), abs=1e-6)
    assert rep["verdict"] == "injective-at-truncation"
    assert rep["baselines"]["sigma_M1_closed_form"] == pytest.approx(np.sqrt(0.5))
    assert set(rep) == {"M", "n", "lambda", "grid", "sigma_min", "sigma_max",
                        "cond", "verdict", "baselines"}


def test_injectivity_report_m4_regression():
    rep = injectivity_report(RepresentationContext(default_config(lam=1.0, M=4)))
    assert rep["sigma_min"] == pytest.approx(0.04314713606049981, abs=1e-9)
    assert rep["verdict"] == "injective-at-truncation"
    assert rep["cond"] == pytest.approx(rep["sigma_max"] / rep["sigma_min"])
