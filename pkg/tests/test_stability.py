r"""Critical search, Morse-Bott verdicts, extended Hessian, delta slices."""

import numpy as np
import numpy.testing as npt
import pytest

from glglab import models as gm
from glglab import stability as gs
from glglab.errors import NotCritical, NotFreeOrbit, Unattainable


def trivial_quadratic():
    W = gm.Superpotential.from_monomials(1, [((2,), 1.0)])
    return gm.LGModel(1, np.zeros((0, 1), int), W, [])


# ---------------------------------------------------------------------------
# find_critical_points
# ---------------------------------------------------------------------------

def test_newton_reaches_fundamental_critical_variety():
    m = gm.preset("fundamental", lam=1.0)
    seeds = [np.array([1.1, 0.9 - 0.05j, 0.2 + 0.1j])]
    pts = gs.find_critical_points(m, seeds)
    assert len(pts) == 1
    x, y, b = pts[0].z
    assert abs(b) < 1e-9
    assert abs(x * y - 1.0) < 1e-8
    assert pts[0].grad_norm < 1e-10
    assert pts[0].is_free_orbit


def test_newton_quadratic_model_finds_origin():
    m = trivial_quadratic()
    pts = gs.find_critical_points(m, [np.array([2.0 + 3.0j]),
                                      np.array([-1.0 - 1.0j])])
    assert len(pts) == 1
    assert abs(pts[0].z[0]) < 1e-10
    assert pts[0].hess_kernel_dim == 0


def test_newton_lambda_zero_axes():
    # W = xyb: Crit(L) is the union of the three coordinate axes
    m = gm.preset("fundamental", lam=0.0)
    seeds = [np.array([1.3 * np.exp(0.2j), 0.0, 0.0]),
             np.array([0.0, 1.1 - 0.2j, 0.0]),
             np.array([0.0, 0.0, 0.9j]),
             np.array([1.3, 0.05, -0.02 + 0.01j])]   # drains into Crit
    pts = gs.find_critical_points(m, seeds)
    assert len(pts) >= 3
    for p in pts:
        assert p.grad_norm < 1e-10
    axis_pts = [p.z for p in pts if np.max(np.abs(p.z)) > 0.5]
    assert len(axis_pts) == 3
    for z in axis_pts:
        mags = np.sort(np.abs(z))
        assert mags[0] == 0.0 and mags[1] == 0.0      # exactly on an axis


def test_deduplication_identifies_complex_gauge_orbit():
    m = gm.preset("fundamental", lam=1.0)
    seeds = [np.array([1.0 + 0.01j, 1.0, 0.001]),
             np.array([2.0, 0.5 + 0.01j, -0.002]),
             np.array([1j, -1j, 0.0]),                # phase-rotated copy
             np.array([0.01, 0.02, 0.95])]            # b-axis, lam=1: not crit
    pts = gs.find_critical_points(m, seeds)
    assert len(pts) == 1


def test_same_complex_orbit_examples():
    m = gm.preset("fundamental", lam=1.0)
    q = np.array([1.0, 1.0, 0.0], dtype=complex)
    g = np.array([0.3 - 2.9j])
    assert gs.same_complex_orbit(m, q, gm.complex_gauge_act(m, g, q))
    assert not gs.same_complex_orbit(m, q, np.array([1.0, 1.0, 0.5]))
    assert not gs.same_complex_orbit(m, q, np.array([1.0, 0.0, 0.0]))


# ---------------------------------------------------------------------------
# morse_bott_check
# ---------------------------------------------------------------------------

def test_morse_bott_fundamental_free_orbit():
    m = gm.preset("fundamental", lam=1.0)
    ok, kdim, odim = gs.morse_bott_check(m, np.array([1, 1, 0], complex))
    assert (ok, kdim, odim) == (True, 2, 2)


def test_morse_bott_fails_at_degenerate_origin():
    m = gm.preset("fundamental", lam=0.0)
    ok, kdim, odim = gs.morse_bott_check(m, np.zeros(3, complex))
    assert not ok
    assert kdim == 6 and odim == 0


def test_morse_bott_trivial_group_nondegenerate():
    assert gs.morse_bott_check(trivial_quadratic(), np.array([0j])) \
        == (True, 0, 0)


def test_morse_bott_guards_noncritical_input():
    m = gm.preset("fundamental", lam=1.0)
    with pytest.raises(NotCritical):
        gs.morse_bott_check(m, np.array([1.0, 1.0, 0.5], complex))


# ---------------------------------------------------------------------------
# assemble_extended_hessian
# ---------------------------------------------------------------------------

def test_sigma_squares_to_minus_identity_exactly():
    m = gm.preset("fundamental", lam=1.0)
    eh = gs.assemble_extended_hessian(m, np.array([1, 1, 0], complex))
    npt.assert_array_equal(eh.sigma @ eh.sigma, -np.eye(8))
    assert eh.symmetry_defect == 0.0
    assert eh.anticommute_defect < 1e-12


def test_anticommutation_at_random_points():
    rng = np.random.default_rng(2)
    for name, kw in (("vortex", {}), ("fundamental", {"lam": 1.0})):
        m = gm.preset(name, **kw)
        z = rng.standard_normal(m.n) + 1j * rng.standard_normal(m.n)
        eh = gs.assemble_extended_hessian(m, z)
        assert eh.anticommute_defect < 1e-12


def test_quadratic_model_extended_hessian_spectrum():
    eh = gs.assemble_extended_hessian(trivial_quadratic(), np.array([0j]))
    npt.assert_allclose(np.sort(eh.eigenvalues()), [-2.0, 2.0])
    npt.assert_array_equal(eh.matrix, [[2.0, 0.0], [0.0, -2.0]])


def test_extended_hessian_matches_finite_differences():
    m = gm.preset("fundamental", lam=1.0)
    rng = np.random.default_rng(4)
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    eh = gs.assemble_extended_hessian(m, z)
    n, k = m.n, m.k
    h = 1e-6

    def stacked(x):
        p = gm.from_real(x)
        return np.concatenate([gm.moment_map(m, p),
                               gm.to_real(gm.grad_L(m, p))])

    x0 = gm.to_real(z)
    J = gm.J_real(n)
    fd_mu = np.zeros((k, 2 * n))
    fd_gl = np.zeros((2 * n, 2 * n))
    for j in range(2 * n):
        e = np.zeros(2 * n)
        e[j] = h
        diff = (stacked(x0 + e) - stacked(x0 - e)) / (2 * h)
        fd_mu[:, j] = diff[:k]
        fd_gl[:, j] = diff[k:]
    fd = np.zeros_like(eh.matrix)
    fd[:k, 2 * k:] = fd_mu
    fd[k:2 * k, 2 * k:] = -fd_mu @ J            # <J grad mu, v> = -dmu(Jv)
    fd[2 * k:, :k] = fd_mu.T
    fd[2 * k:, k:2 * k] = (-fd_mu @ J).T
    fd[2 * k:, 2 * k:] = fd_gl
    scale = np.linalg.norm(eh.matrix)
    assert np.linalg.norm(fd - eh.matrix) / scale < 1e-6


# ---------------------------------------------------------------------------
# spectral_gap
# ---------------------------------------------------------------------------

def test_vortex_zeta1_on_unit_circle():
    m = gm.preset("vortex")
    rep = gs.spectral_gap(m, np.array([np.exp(0.7j)]))
    npt.assert_allclose(rep.zeta1, 1.0, atol=1e-12)
    assert rep.symmetry_defect < 1e-9


def test_fundamental_spectral_constants():
    m = gm.preset("fundamental", lam=1.0)
    rep = gs.spectral_gap(m, np.array([1, 1, 0], complex))
    npt.assert_allclose(rep.zeta1, np.sqrt(2.0), atol=1e-12)
    assert rep.zeta2 > 0.5
    assert rep.lambda1 > 1e-6              # stable: extended Hessian invertible
    assert rep.zeta == min(rep.zeta1, rep.zeta2)
    assert rep.symmetry_defect < 1e-9


def test_quadratic_model_gap_constants():
    m = trivial_quadratic()
    rep = gs.spectral_gap(m, np.array([0j]))
    assert rep.zeta1 is None
    npt.assert_allclose(rep.lambda1, 2.0, atol=1e-12)
    npt.assert_allclose(rep.zeta2, 2.0, atol=1e-12)
    npt.assert_allclose(rep.zeta, 2.0, atol=1e-12)


def test_unstable_origin_is_flagged():
    m = gm.preset("fundamental", lam=0.0)
    origin = np.zeros(3, complex)
    eigs = gs.assemble_extended_hessian(m, origin).eigenvalues()
    assert np.min(np.abs(eigs)) < 1e-12    # extended Hessian singular
    with pytest.raises(NotFreeOrbit):
        gs.spectral_gap(m, origin)


# ---------------------------------------------------------------------------
# solve_delta_slice
# ---------------------------------------------------------------------------

def test_delta_slice_identity_when_on_level():
    m = gm.preset("fundamental", lam=1.0)
    q = np.array([1, 1, 0], dtype=complex)
    out = gs.solve_delta_slice(m, q, delta=[0.0])
    npt.assert_allclose(out, q, atol=1e-12)
    npt.assert_array_equal(gs.delta_slice_log(m, q, delta=[0.0]), [0.0])


def test_delta_slice_asinh_oracle():
    # mu(e^alpha q) = (e^{2a} - e^{-2a})/2 = sinh(2a) = t
    m = gm.preset("fundamental", lam=1.0)
    q = np.array([1, 1, 0], dtype=complex)
    t = 1.5
    alpha = gs.delta_slice_log(m, q, delta=[t])
    npt.assert_allclose(alpha, [0.5 * np.arcsinh(t)], atol=1e-12)
    out = gs.solve_delta_slice(m, q, delta=[t])
    npt.assert_allclose(gm.moment_map(m, out), [t], atol=1e-10)
    assert abs(gm.eval_W(m, out) - gm.eval_W(m, q)) < 1e-10


def test_delta_slice_vortex_log_oracle():
    # e^{2 alpha} / 2 = 2  =>  alpha = ln 2
    m = gm.preset("vortex")
    alpha = gs.delta_slice_log(m, np.array([1.0 + 0j]), delta=[2.0])
    npt.assert_allclose(alpha, [np.log(2.0)], atol=1e-12)


def test_delta_slice_bisection_oracle_random_levels():
    from scipy.optimize import brentq
    m = gm.preset("fundamental", lam=1.0)
    q = np.array([1, 1, 0], dtype=complex)
    for t in (-2.0, -0.3, 0.7, 3.5):
        alpha = gs.delta_slice_log(m, q, delta=[t])[0]
        ref = brentq(lambda a: np.sinh(2 * a) - t, -10, 10, xtol=1e-14)
        npt.assert_allclose(alpha, ref, atol=1e-10)


def test_delta_slice_unreachable_level():
    # vortex mu = e^{2a}/2 > 0 can never hit a negative level
    m = gm.preset("vortex")
    with pytest.raises(Unattainable):
        gs.delta_slice_log(m, np.array([1.0 + 0j]), delta=[-1.0])
