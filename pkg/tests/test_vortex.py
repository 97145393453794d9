r"""Radial vortex: profile solver, energy quantization, decay, embedding."""

import numpy as np
import numpy.testing as npt
import pytest

from glglab import grids as gg
from glglab import models as gm
from glglab import vortex as gv
from glglab.errors import ConfigError, FitUnstable, GridExceedsProfile


@pytest.fixture(scope="module")
def profiles():
    return {n: gv.solve_radial_vortex(n) for n in (0, 1, 2, 3)}


def plane_grid(nt, radius):
    half = radius / np.sqrt(2.0)
    return gg.Grid2D("plane", (-half, half), (-half, half), nt, nt)


# ---------------------------------------------------------------------------
# Profile solver
# ---------------------------------------------------------------------------

def test_vacuum_profile_is_trivial(profiles):
    p = profiles[0]
    npt.assert_array_equal(p.u, 0.0)
    assert p.residual == 0.0
    assert gv.vortex_energy(p) == 0.0


def test_profiles_converge_below_tolerance(profiles):
    for n in (1, 2, 3):
        assert profiles[n].residual < 1e-10


def test_profile_invariants(profiles):
    for n in (1, 2, 3):
        p = profiles[n]
        assert np.max(p.u) <= 0.0
        assert abs(p.u[-1]) < 1e-6
        assert np.min(p.half_deficit) >= 0.0        # F = (1-|P|^2)/2 >= 0
        assert np.max(p.abs_P) <= 1.0 + 1e-12


def test_unit_vortex_core_and_monotonicity(profiles):
    p = profiles[1]
    assert 1.0 - p.abs_P[0] ** 2 > 0.999            # |P| ~ 0 at the core
    assert np.all(np.diff(p.abs_P) > -1e-12)        # |P| -> 1 monotonically


def test_double_vortex_origin_asymptote(profiles):
    # u ~ 4 log r near the origin: u - 4 log r is flat across the core
    p = profiles[2]
    v = p.u - 4.0 * np.log(p.r)
    assert abs(v[0] - v[200]) < 1e-3


def test_winding_validation():
    with pytest.raises(ConfigError):
        gv.solve_radial_vortex(-1)
    with pytest.raises(ConfigError):
        gv.solve_radial_vortex(1, r_min=2.0)


# ---------------------------------------------------------------------------
# Energy quantization
# ---------------------------------------------------------------------------

def test_energy_quantization_one_percent(profiles):
    for n in (1, 2, 3):
        E = gv.vortex_energy(profiles[n])
        assert abs(E - 2.0 * np.pi * n) / (2.0 * np.pi * n) < 0.01


def test_energy_2d_cross_check(profiles):
    p = profiles[1]
    grid = plane_grid(161, 11.9)
    E2 = gv.vortex_energy(p, grid=grid)
    assert abs(E2 - 2.0 * np.pi) / (2.0 * np.pi) < 0.01
    m = gm.preset("vortex")
    direct = gg.energies(m, grid, gv.embed_vortex(p, grid)).total
    npt.assert_allclose(E2, direct, rtol=1e-12)


# ---------------------------------------------------------------------------
# Decay fit
# ---------------------------------------------------------------------------

def test_decay_rate_fit(profiles):
    for n in (1, 2):
        rep = gv.vortex_decay_fit(profiles[n])
        assert rep.passed
        assert rep.scalars["rate"] >= 0.9
        assert rep.scalars["r_squared"] > 0.999


def test_decay_fit_rejects_vacuum(profiles):
    with pytest.raises(FitUnstable):
        gv.vortex_decay_fit(profiles[0])


def test_decay_fit_rejects_short_profile():
    p = gv.solve_radial_vortex(1, r_max=8.0)
    with pytest.raises(FitUnstable):
        gv.vortex_decay_fit(p)


# ---------------------------------------------------------------------------
# Embedding
# ---------------------------------------------------------------------------

def test_embed_vacuum_is_exact_constant(profiles):
    grid = plane_grid(21, 6.0)
    cfg = gv.embed_vortex(profiles[0], grid)
    npt.assert_array_equal(cfg.P, 1.0)
    npt.assert_array_equal(cfg.a_t, 0.0)
    m = gm.preset("vortex")
    assert gg.residual(m, grid, cfg).max_norm < 1e-14


def test_embed_rejects_oversized_grid(profiles):
    with pytest.raises(GridExceedsProfile):
        gv.embed_vortex(profiles[1], plane_grid(21, 20.0))


def test_embedded_residual_refines_at_second_order(profiles):
    m = gm.preset("vortex")
    p = profiles[1]
    errs = []
    for nt in (81, 161):
        grid = plane_grid(nt, 8.0)
        res = gg.residual(m, grid, gv.embed_vortex(p, grid))
        errs.append(res.l2_norm)
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


def test_moment_equation_nodewise_refinement(profiles):
    # |F + mu - 1/2| shrinks at second order away from the stencil edge
    m = gm.preset("vortex")
    p = profiles[1]
    errs = []
    for nt in (81, 161):
        grid = plane_grid(nt, 8.0)
        cfg = gv.embed_vortex(p, grid)
        der = gg.covariant_derivatives(m, grid, cfg)
        defect = np.abs(der.F + der.mu_field - m.delta)[..., 0]
        errs.append(np.max(defect[2:-2, 2:-2]))
    order = np.log2(errs[0] / errs[1])
    assert order > 1.8


def test_winding_number_from_embedded_phase(profiles):
    # the phase of P winds n times around a mid-radius circle
    p = profiles[2]
    grid = plane_grid(161, 8.0)
    cfg = gv.embed_vortex(p, grid)
    tt, ss = grid.mesh()
    theta = np.angle(tt + 1j * ss)
    phase = np.angle(cfg.P[..., 0])
    ring = (np.hypot(tt, ss) > 2.0) & (np.hypot(tt, ss) < 2.2)
    defect = (phase - p.n * theta + np.pi) % (2 * np.pi) - np.pi
    assert np.max(np.abs(defect[ring])) < 1e-10
