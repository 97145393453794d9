r"""Grid calculus: exactness on linear data, refinement orders, gauge checks."""

import numpy as np
import numpy.testing as npt
import pytest

from glglab import grids as gg
from glglab import models as gm
from glglab.errors import RegionOutOfBounds, ShapeMismatch


def make_grid(nt=41, ns=41, kind="strip", t_range=(-2.0, 2.0),
              s_range=(0.0, 4.0)):
    return gg.Grid2D(kind=kind, t_range=t_range, s_range=s_range,
                     nt=nt, ns=ns)


def smooth_config(m, grid, seed=0):
    r"""A smooth nontrivial configuration for refinement studies."""
    tt, ss = grid.mesh()
    cfg = gg.FieldConfig.zeros(m, grid)
    for j in range(m.n):
        cfg.P[..., j] = (np.exp(0.2j * (j + 1) * tt) *
                         (1.0 + 0.3 * np.sin(0.7 * tt) * np.cos(0.5 * ss)))
    for a in range(m.k):
        cfg.a_t[..., a] = 0.2 * np.sin(0.6 * tt + a) * np.cos(0.4 * ss)
        cfg.a_s[..., a] = 0.1 * np.cos(0.3 * tt) * np.sin(0.8 * ss + a)
    return cfg


# ---------------------------------------------------------------------------
# Grid2D invariants
# ---------------------------------------------------------------------------

def test_grid_rejects_non_square_cells():
    with pytest.raises(ShapeMismatch):
        gg.Grid2D("strip", (0.0, 1.0), (0.0, 2.0), 11, 11)
    with pytest.raises(ShapeMismatch):
        gg.Grid2D("strip", (0.0, 1.0), (0.0, 1.0), 2, 2)
    with pytest.raises(ShapeMismatch):
        gg.Grid2D("torus", (0.0, 1.0), (0.0, 1.0), 11, 11)


def test_grid_spacing_and_axes():
    g = make_grid(nt=5, ns=9, t_range=(0.0, 1.0), s_range=(0.0, 2.0))
    assert abs(g.h - 0.25) < 1e-15
    npt.assert_allclose(g.t, [0, 0.25, 0.5, 0.75, 1.0])
    assert g.s.shape == (9,)


def test_subsample_shares_nodes_at_double_spacing():
    m = gm.preset("vortex")
    grid = make_grid(nt=41, ns=41)
    cfg = smooth_config(m, grid)
    coarse, ccfg = gg.subsample(grid, cfg)
    assert (coarse.nt, coarse.ns) == (21, 21)
    assert abs(coarse.h - 2.0 * grid.h) < 1e-15
    assert coarse.t_range == grid.t_range
    assert coarse.s_range == grid.s_range
    npt.assert_array_equal(ccfg.P, cfg.P[::2, ::2])
    npt.assert_array_equal(ccfg.a_s, cfg.a_s[::2, ::2])


def test_subsample_needs_even_interval_counts():
    m = gm.preset("vortex")
    grid = make_grid(nt=42, ns=42, t_range=(0.0, 4.1), s_range=(0.0, 4.1))
    cfg = gg.FieldConfig.zeros(m, grid)
    with pytest.raises(ShapeMismatch):
        gg.subsample(grid, cfg)


# ---------------------------------------------------------------------------
# covariant_derivatives
# ---------------------------------------------------------------------------

def test_constant_configuration_is_flat():
    m = gm.preset("fundamental", lam=1.0)
    grid = make_grid()
    cfg = gg.FieldConfig.constant(m, grid, np.array([1, 1, 0], complex))
    der = gg.covariant_derivatives(m, grid, cfg)
    assert np.max(np.abs(der.T)) == 0.0
    assert np.max(np.abs(der.S)) == 0.0
    assert np.max(np.abs(der.F)) == 0.0


def test_linear_connection_gives_exact_curvature():
    # a_t = s*e, a_s = 0: central and one-sided second-order stencils are
    # exact on linear data, so F = e at every node
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = gg.FieldConfig.zeros(m, grid)
    _, ss = grid.mesh()
    e = 0.73
    cfg.a_t[..., 0] = e * ss
    der = gg.covariant_derivatives(m, grid, cfg)
    npt.assert_allclose(der.F[..., 0], e, rtol=0, atol=1e-13)


def test_covariant_derivative_includes_action_term():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = gg.FieldConfig.constant(m, grid, np.array([2.0 + 0j]))
    cfg.a_t[..., 0] = 0.5
    der = gg.covariant_derivatives(m, grid, cfg)
    npt.assert_allclose(der.T[..., 0], 0.5 * 1j * 2.0, atol=1e-14)
    npt.assert_allclose(der.S, 0.0, atol=1e-14)


def test_shape_mismatch_raises():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = gg.FieldConfig.zeros(m, grid)
    bad = gg.FieldConfig(P=cfg.P[:, :-1], a_t=cfg.a_t, a_s=cfg.a_s)
    with pytest.raises(ShapeMismatch):
        gg.covariant_derivatives(m, grid, bad)


# ---------------------------------------------------------------------------
# residual
# ---------------------------------------------------------------------------

def test_trivial_solution_residual_zero():
    # q in mu^{-1}(delta) cap Crit(L), a = 0 solves both equations exactly
    m = gm.preset("fundamental", lam=1.0)
    grid = make_grid()
    cfg = gg.FieldConfig.constant(m, grid, np.array([1, 1, 0], complex))
    res = gg.residual(m, grid, cfg)
    assert res.max_norm == 0.0
    assert res.l2_norm == 0.0


def test_random_configuration_has_positive_residual():
    m = gm.preset("vortex")
    grid = make_grid(nt=11, ns=11)
    rng = np.random.default_rng(1)
    cfg = gg.FieldConfig(
        P=rng.standard_normal((11, 11, 1)) + 1j * rng.standard_normal((11, 11, 1)),
        a_t=rng.standard_normal((11, 11, 1)),
        a_s=rng.standard_normal((11, 11, 1)))
    res = gg.residual(m, grid, cfg)
    assert res.max_norm > 0.1
    assert res.l2_norm > 0.01


# ---------------------------------------------------------------------------
# energies
# ---------------------------------------------------------------------------

def test_energies_zero_on_trivial_solution():
    m = gm.preset("fundamental", lam=1.0)
    grid = make_grid()
    cfg = gg.FieldConfig.constant(m, grid, np.array([1, 1, 0], complex))
    e = gg.energies(m, grid, cfg)
    assert e.total == 0.0
    assert e.total_second == 0.0


def test_energy_breakdown_sums_and_positivity():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = smooth_config(m, grid)
    e = gg.energies(m, grid, cfg)
    parts = [e.e_T, e.e_JSH, e.e_F, e.e_mu]
    assert all(p >= 0 for p in parts)
    npt.assert_allclose(e.total, sum(parts), rtol=1e-14)
    npt.assert_allclose(e.total_second,
                        e.e_T + e.e_S + e.e_gradH + e.e_F + e.e_mu,
                        rtol=1e-14)


def test_region_energy_and_bounds():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = smooth_config(m, grid)
    full = gg.energies(m, grid, cfg)
    part = gg.energies(m, grid, cfg, region=(-1.0, 1.0, 1.0, 3.0))
    assert 0 < part.total < full.total
    with pytest.raises(RegionOutOfBounds):
        gg.energies(m, grid, cfg, region=(-3.0, 1.0, 0.0, 4.0))


def test_window_energies_cover_and_sum():
    m = gm.preset("vortex")
    grid = make_grid(nt=81, ns=41, t_range=(-4.0, 4.0), s_range=(0.0, 4.0))
    cfg = smooth_config(m, grid)
    centers, vals = gg.window_energies(m, grid, cfg, R=0.0)
    npt.assert_array_equal(centers, [-2, -1, 0, 1, 2])
    assert np.all(vals > 0)
    with pytest.raises(RegionOutOfBounds):
        gg.window_energies(m, grid, cfg, R=3.0)


# ---------------------------------------------------------------------------
# gauge transformations
# ---------------------------------------------------------------------------

def test_identity_gauge_is_noop():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = smooth_config(m, grid)
    out = gg.apply_gauge(m, grid, cfg, np.zeros((grid.ns, grid.nt, 1)))
    npt.assert_array_equal(out.P, cfg.P)
    npt.assert_array_equal(out.a_t, cfg.a_t)


def test_gauge_round_trip_recovers_configuration():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = smooth_config(m, grid)
    tt, ss = grid.mesh()
    u = np.stack([0.4 * np.sin(0.5 * tt) * np.cos(0.3 * ss)], axis=-1)
    back = gg.apply_gauge(m, grid, gg.apply_gauge(m, grid, cfg, u), -u)
    npt.assert_allclose(back.P, cfg.P, atol=1e-12)
    npt.assert_allclose(back.a_t, cfg.a_t, atol=1e-12)
    npt.assert_allclose(back.a_s, cfg.a_s, atol=1e-12)


def test_energies_gauge_invariant_to_second_order():
    m = gm.preset("vortex")
    errs = []
    for nt in (41, 81):
        grid = make_grid(nt=nt, ns=nt)
        cfg = smooth_config(m, grid)
        tt, ss = grid.mesh()
        u = np.stack([0.5 * np.sin(0.7 * tt) * np.cos(0.4 * ss)], axis=-1)
        e0 = gg.energies(m, grid, cfg).total
        e1 = gg.energies(m, grid, gg.apply_gauge(m, grid, cfg, u)).total
        errs.append(abs(e1 - e0))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


def test_residual_norm_gauge_invariant_to_second_order():
    m = gm.preset("vortex")
    errs = []
    for nt in (41, 81):
        grid = make_grid(nt=nt, ns=nt)
        cfg = smooth_config(m, grid)
        tt, ss = grid.mesh()
        u = np.stack([0.3 * np.sin(0.6 * tt + 0.2) * np.cos(0.5 * ss)],
                     axis=-1)
        r0 = gg.residual(m, grid, cfg).l2_norm
        r1 = gg.residual(m, grid, gg.apply_gauge(m, grid, cfg, u)).l2_norm
        errs.append(abs(r1 - r0))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


def test_pure_gauge_of_constant_is_near_flat():
    # u.(const q): residual fields equal gauge transports of 0 up to O(h^2)
    m = gm.preset("vortex")
    errs = []
    for nt in (41, 81):
        grid = make_grid(nt=nt, ns=nt)
        cfg = gg.FieldConfig.constant(m, grid, np.array([1.0 + 0j]))
        tt, ss = grid.mesh()
        u = np.stack([0.5 * np.sin(0.8 * tt) * np.cos(0.6 * ss)], axis=-1)
        out = gg.apply_gauge(m, grid, cfg, u)
        der = gg.covariant_derivatives(m, grid, out)
        errs.append(max(np.max(np.abs(der.T)), np.max(np.abs(der.S)),
                        np.max(np.abs(der.F))))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


# ---------------------------------------------------------------------------
# covariant_vector_derivative
# ---------------------------------------------------------------------------

def test_vector_derivative_trivial_cases():
    m = gm.preset("vortex")
    grid = make_grid()
    cfg = gg.FieldConfig.constant(m, grid, np.array([1.0 + 0j]))
    v = np.ones_like(cfg.P)
    npt.assert_array_equal(
        gg.covariant_vector_derivative(m, grid, cfg, v, "t"), 0.0)


def test_vector_derivative_chain_rule_oracle():
    # v = grad H(P), a = 0: nabla_t v = Hess H(d_t P) + O(h^2)
    m = gm.preset("fundamental", lam=1.0)
    errs = []
    for nt in (41, 81):
        grid = make_grid(nt=nt, ns=nt)
        cfg = smooth_config(m, grid)
        cfg.a_t[...] = 0.0
        cfg.a_s[...] = 0.0
        v = gm.grad_H(m, cfg.P)
        got = gg.covariant_vector_derivative(m, grid, cfg, v, "t")
        want = gm.hess_H_apply(m, cfg.P, gg.d_t(grid, cfg.P))
        errs.append(np.max(np.abs(got - want)))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


def test_commutator_identity_on_P():
    # (nabla_t nabla_s - nabla_s nabla_t) P + F~ = O(h^2)
    m = gm.preset("vortex")
    errs = []
    for nt in (41, 81):
        grid = make_grid(nt=nt, ns=nt)
        cfg = smooth_config(m, grid)
        der = gg.covariant_derivatives(m, grid, cfg)
        ts = gg.covariant_vector_derivative(m, grid, cfg, der.S, "t")
        st = gg.covariant_vector_derivative(m, grid, cfg, der.T, "s")
        comm = ts - st + gm.infinitesimal_action(m, cfg.P, der.F)
        interior = ~der.boundary_mask
        errs.append(np.max(np.abs(comm[interior])))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


def test_commutator_identity_on_vector_field():
    # Commutator on a general v for the flat target:
    # (nabla_t nabla_s - nabla_s nabla_t) v = J <Hess mu(v), F_A(dt,ds)>
    # and the 2-form coefficient F_A(dt,ds) = d_t a_s - d_s a_t = -F
    m = gm.preset("vortex")
    errs = []
    for nt in (41, 81):
        grid = make_grid(nt=nt, ns=nt)
        cfg = smooth_config(m, grid)
        tt, ss = grid.mesh()
        v = np.stack([np.exp(0.3j * tt) * np.cos(0.4 * ss)], axis=-1)
        der = gg.covariant_derivatives(m, grid, cfg)
        vs = gg.covariant_vector_derivative(m, grid, cfg, v, "s")
        vt_of_vs = gg.covariant_vector_derivative(m, grid, cfg, vs, "t")
        vt = gg.covariant_vector_derivative(m, grid, cfg, v, "t")
        vs_of_vt = gg.covariant_vector_derivative(m, grid, cfg, vt, "s")
        want = 1j * gm.hess_mu_pair(m, cfg.P, v, -der.F)
        comm = vt_of_vs - vs_of_vt - want
        inner = (slice(2, -2), slice(2, -2))      # two stencil layers deep
        errs.append(np.max(np.abs(comm[inner])))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_field_snapshot_round_trip(tmp_path):
    m = gm.preset("vortex")
    grid = make_grid(nt=11, ns=11)
    cfg = smooth_config(m, grid)
    d = tmp_path / "snap"
    gg.save_fields(str(d), m, grid, cfg)
    grid2, cfg2 = gg.load_fields(str(d), m)
    assert grid2 == grid
    npt.assert_array_equal(cfg2.P, cfg.P)
    npt.assert_array_equal(cfg2.a_t, cfg.a_t)
    npt.assert_array_equal(cfg2.a_s, cfg.a_s)


def test_field_snapshot_checks_model_hash(tmp_path):
    m = gm.preset("vortex")
    grid = make_grid(nt=11, ns=11)
    cfg = gg.FieldConfig.zeros(m, grid)
    d = tmp_path / "snap"
    gg.save_fields(str(d), m, grid, cfg)
    with pytest.raises(ShapeMismatch):
        gg.load_fields(str(d), gm.preset("xy"))


def test_snapshot_bytes_deterministic(tmp_path):
    m = gm.preset("vortex")
    grid = make_grid(nt=11, ns=11)
    cfg = smooth_config(m, grid)
    d1, d2 = tmp_path / "a", tmp_path / "b"
    gg.save_fields(str(d1), m, grid, cfg)
    gg.save_fields(str(d2), m, grid, cfg)
    for name in ("header.json", "P.bin", "a_t.bin", "a_s.bin"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_density_csv_export(tmp_path):
    m = gm.preset("vortex")
    grid = make_grid(nt=5, ns=5, t_range=(0.0, 1.0), s_range=(0.0, 1.0))
    cfg = smooth_config(m, grid)
    dens = gg.energy_density(m, grid, cfg)
    path = tmp_path / "density.csv"
    gg.export_density_csv(str(path), grid, dens)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t,s,value"
    assert len(lines) == 1 + 25
    t0, s0, v0 = (float(x) for x in lines[1].split(","))
    assert (t0, s0) == (0.0, 0.0)
    npt.assert_allclose(v0, dens[0, 0])
