r"""Pointwise model calculus: frozen values, FD oracles, structural identities."""

import json

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings, strategies as st

from glglab import models as gm
from glglab.errors import ConfigError


RNG = np.random.default_rng(20260823)


def random_points(n, count, rng=None, scale=1.0):
    rng = RNG if rng is None else rng
    return scale * (rng.standard_normal((count, n))
                    + 1j * rng.standard_normal((count, n)))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def test_validate_fundamental_model_ok():
    m = gm.preset("fundamental", lam=1.0)
    assert gm.validate_model(m) == []


def test_validate_flags_weight_violating_monomial():
    W = gm.Superpotential.from_monomials(1, [((1,), 1.0)])
    m = gm.LGModel(1, [[1]], W, [0.0])
    problems = gm.validate_model(m)
    assert len(problems) == 1
    assert "nonzero weight" in problems[0]


def test_validate_trivial_group_any_W_ok():
    W = gm.Superpotential.from_monomials(1, [((2,), 1.0), ((5,), -3.0 + 1j)])
    m = gm.LGModel(1, np.zeros((0, 1), dtype=int), W, [])
    assert gm.validate_model(m) == []


def test_superpotential_rejects_duplicates_and_negatives():
    with pytest.raises(ConfigError):
        gm.Superpotential.from_monomials(2, [((1, 0), 1.0), ((1, 0), 2.0)])
    with pytest.raises(ConfigError):
        gm.Superpotential(np.array([[-1, 0]]), np.array([1.0 + 0j]))


# ---------------------------------------------------------------------------
# Evaluation and gradients
# ---------------------------------------------------------------------------

def test_eval_W_frozen_values():
    m = gm.preset("fundamental", lam=1.0)
    assert gm.eval_W(m, np.array([1, 1, 0], dtype=complex)) == 0
    z2 = gm.LGModel(1, np.zeros((0, 1), int),
                    gm.Superpotential.from_monomials(1, [((2,), 1.0)]), [])
    assert gm.eval_W(z2, np.array([0j])) == 0
    mxy = gm.preset("xy")
    npt.assert_allclose(gm.eval_W(mxy, np.array([2.0, 3.0j])), 6.0j)


def test_grad_L_matches_closed_form_on_fundamental():
    lam = 0.7 - 0.2j
    m = gm.preset("fundamental", lam=lam)
    z = np.array([2 + 1j, 0.5 - 0.3j, 1.2 + 0.7j])
    x, y, b = z
    expect = np.conj(np.array([y * b, x * b, x * y - lam]))
    npt.assert_allclose(gm.grad_L(m, z), expect, rtol=0, atol=1e-15)


def test_grad_L_vanishes_at_fundamental_critical_point():
    m = gm.preset("fundamental", lam=1.0)
    npt.assert_array_equal(gm.grad_L(m, np.array([1, 1, 0], dtype=complex)),
                           np.zeros(3))


def test_grad_L_quadratic_frozen_value():
    z2 = gm.LGModel(1, np.zeros((0, 1), int),
                    gm.Superpotential.from_monomials(1, [((2,), 1.0)]), [])
    npt.assert_allclose(gm.grad_L(z2, np.array([1 + 1j])),
                        np.array([2 * (1 - 1j)]))


def test_grad_L_vanishes_exactly_on_critical_variety():
    # points (t, lam/t, 0) with dyadic t: xy - lam cancels exactly
    lam = 1.0
    m = gm.preset("fundamental", lam=lam)
    for t in (1.0, 2.0, 0.5, 4.0, 0.25, -2.0):
        z = np.array([t, lam / t, 0.0], dtype=complex)
        npt.assert_array_equal(gm.grad_L(m, z), np.zeros(3))


def test_grad_L_finite_difference_oracle():
    rng = np.random.default_rng(7)
    for name in ("xy", "fundamental"):
        m = gm.preset(name) if name == "xy" else gm.preset(name, lam=1.0)
        for z in random_points(m.n, 5, rng):
            g = gm.grad_L(m, z)
            h = 1e-5
            fd = np.empty(m.n, dtype=complex)
            for j in range(m.n):
                ej = np.zeros(m.n)
                ej[j] = 1.0
                dre = (gm.eval_W(m, z + h * ej).real
                       - gm.eval_W(m, z - h * ej).real) / (2 * h)
                dim = (gm.eval_W(m, z + 1j * h * ej).real
                       - gm.eval_W(m, z - 1j * h * ej).real) / (2 * h)
                fd[j] = dre + 1j * dim
            scale = max(1.0, np.linalg.norm(g))
            assert np.linalg.norm(g - fd) / scale < 1e-6


def test_grad_H_is_J_grad_L_bitwise():
    for name, kw in (("vortex", {}), ("xy", {}), ("fundamental", {"lam": 1.0}),
                     ("fundamental", {"lam": 0.0})):
        m = gm.preset(name, **kw)
        pts = random_points(m.n, 50)
        npt.assert_array_equal(gm.grad_H(m, pts), 1j * gm.grad_L(m, pts))


# ---------------------------------------------------------------------------
# Hessians
# ---------------------------------------------------------------------------

def test_hess_L_matches_displayed_matrix_on_fundamental():
    m = gm.preset("fundamental", lam=0.3 + 0.1j)
    rng = np.random.default_rng(3)
    z = random_points(3, 1, rng)[0]
    v = random_points(3, 1, rng)[0]
    x, y, b = z
    mat = np.array([[0, b, y], [b, 0, x], [y, x, 0]])
    expect = np.conj(mat) @ np.conj(v)
    npt.assert_allclose(gm.hess_L_apply(m, z, v), expect, atol=1e-14)


def test_hess_L_quadratic_and_degenerate_cases():
    z2 = gm.LGModel(1, np.zeros((0, 1), int),
                    gm.Superpotential.from_monomials(1, [((2,), 1.0)]), [])
    npt.assert_allclose(gm.hess_L_apply(z2, np.array([0.3 + 1j]),
                                        np.array([1.0 + 0j])), [2.0])
    m0 = gm.preset("fundamental", lam=0.0)
    npt.assert_array_equal(
        gm.hess_L_apply(m0, np.zeros(3, complex), np.ones(3, complex)),
        np.zeros(3))


def test_hess_L_finite_difference_oracle():
    rng = np.random.default_rng(11)
    m = gm.preset("fundamental", lam=1.0)
    z = random_points(3, 1, rng)[0]
    for v in random_points(3, 4, rng):
        h = 1e-5
        fd = (gm.grad_L(m, z + h * v) - gm.grad_L(m, z - h * v)) / (2 * h)
        got = gm.hess_L_apply(m, z, v)
        assert np.linalg.norm(got - fd) / max(1.0, np.linalg.norm(got)) < 1e-6


def test_third_derivative_matches_fd_of_hessian():
    m = gm.preset("fundamental", lam=1.0)
    rng = np.random.default_rng(13)
    z, u, v = random_points(3, 3, rng)
    h = 1e-5
    fd = (gm.hess_H_apply(m, z + h * u, v)
          - gm.hess_H_apply(m, z - h * u, v)) / (2 * h)
    got = gm.grad_hess_H_apply(m, z, u, v)
    assert np.linalg.norm(got - fd) / max(1.0, np.linalg.norm(got)) < 1e-6


# ---------------------------------------------------------------------------
# Moment map and torus action
# ---------------------------------------------------------------------------

def test_moment_map_frozen_values():
    mv = gm.preset("vortex")
    npt.assert_allclose(gm.moment_map(mv, np.array([2.0 + 0j])) - mv.mu_offset,
                        [2.0])
    m = gm.preset("fundamental")
    npt.assert_allclose(gm.moment_map(m, np.array([1, 1, 0], complex)), [0.0])
    npt.assert_allclose(gm.moment_map(m, np.zeros(3, complex)), [0.0])


def test_infinitesimal_action_frozen_values():
    mv = gm.preset("vortex")
    npt.assert_allclose(gm.infinitesimal_action(mv, np.array([1.0 + 0j]),
                                                [1.0]), [1j])
    m = gm.preset("fundamental")
    npt.assert_allclose(gm.infinitesimal_action(m, np.ones(3, complex), [1.0]),
                        [1j, -1j, 0])
    npt.assert_array_equal(gm.infinitesimal_action(m, np.ones(3, complex),
                                                   [0.0]), np.zeros(3))


def test_grad_mu_pair_and_hess_mu_pair():
    mv = gm.preset("vortex")
    z = np.array([0.3 - 0.8j])
    npt.assert_array_equal(gm.grad_mu_pair(mv, z, [1.0]), z)
    v = np.array([1.1 + 0.2j])
    npt.assert_array_equal(gm.hess_mu_pair(mv, z, v, [1.0]), v)
    npt.assert_array_equal(gm.grad_mu_pair(mv, z, [0.0]), np.zeros(1))
    # sign convention: <grad mu, xi> = -J xi~
    m = gm.preset("fundamental")
    z3 = random_points(3, 1)[0]
    xi = [0.37]
    npt.assert_allclose(gm.grad_mu_pair(m, z3, xi),
                        -1j * gm.infinitesimal_action(m, z3, xi), atol=1e-16)


def test_d_operator_frozen_values():
    mv = gm.preset("vortex")
    hh, pm, pjm = gm.d_operator(mv, np.array([1.0 + 0j]), np.array([1.0 + 0j]))
    npt.assert_allclose(hh, [0.0])
    npt.assert_allclose(pm, [1.0])
    npt.assert_allclose(pjm, [0.0])
    hh, pm, pjm = gm.d_operator(mv, np.array([1.0 + 0j]), np.array([0j]))
    assert np.all(hh == 0) and np.all(pm == 0) and np.all(pjm == 0)


# ---------------------------------------------------------------------------
# Identity suite
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name,kw", [
    ("vortex", {}),
    ("xy", {}),
    ("fundamental", {"lam": 1.0}),
    ("fundamental", {"lam": 0.0}),
])
def test_identity_suite_below_tolerance(name, kw):
    m = gm.preset(name, **kw)
    pts = random_points(m.n, 100)
    lie = np.linspace(-1.5, 1.5, 4).reshape(-1, m.k) if m.k else None
    rep = gm.identity_suite(m, pts, lie)
    assert rep.max_residual < 1e-10, rep.as_dict()


def test_identity_suite_exact_zero_at_origin():
    m = gm.preset("fundamental", lam=1.0)
    rep = gm.identity_suite(m, np.zeros((3, 3), dtype=complex))
    assert rep.max_residual == 0.0


def test_identity_suite_detects_invariance_violation():
    W = gm.Superpotential.from_monomials(1, [((1,), 1.0)])
    bad = gm.LGModel(1, [[1]], W, [0.0])
    rep = gm.identity_suite(bad, np.array([[1.3 + 0.4j]]))
    assert rep.mu_grad_H_isotropy > 1e-3


# ---------------------------------------------------------------------------
# Gauge action
# ---------------------------------------------------------------------------

def test_gauge_act_periodicity_and_invariances():
    m = gm.preset("fundamental", lam=1.0)
    rng = np.random.default_rng(5)
    z = random_points(3, 20, rng)
    npt.assert_allclose(gm.gauge_act(m, [2 * np.pi], z), z, atol=1e-14)

    theta = rng.uniform(-3, 3, size=(20, 1))
    zu = gm.gauge_act(m, theta, z)
    npt.assert_allclose(np.abs(zu), np.abs(z), rtol=1e-14)
    npt.assert_allclose(gm.moment_map(m, zu), gm.moment_map(m, z),
                        rtol=0, atol=1e-14)

    g = rng.standard_normal((20, 1)) + 1j * rng.standard_normal((20, 1))
    zg = gm.complex_gauge_act(m, g, z)
    assert np.max(np.abs(gm.eval_W(m, zg) - gm.eval_W(m, z))) < 1e-12


def test_gauge_act_round_trip():
    m = gm.preset("xy")
    z = random_points(2, 10)
    g = np.array([0.4 - 1.1j])
    back = gm.complex_gauge_act(m, -g, gm.complex_gauge_act(m, g, z))
    npt.assert_allclose(back, z, rtol=1e-15, atol=1e-15)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def test_model_json_round_trip(tmp_path):
    m = gm.preset("fundamental", lam=0.5 - 0.25j, delta=0.75)
    d = gm.model_to_dict(m)
    m2 = gm.model_from_dict(json.loads(json.dumps(d)))
    z = random_points(3, 10)
    npt.assert_array_equal(gm.eval_W(m, z), gm.eval_W(m2, z))
    npt.assert_array_equal(m.weights, m2.weights)
    npt.assert_array_equal(m.delta, m2.delta)
    assert gm.model_hash(m) == gm.model_hash(m2)

    path = tmp_path / "model.json"
    gm.save_model(m, path)
    m3 = gm.load_model(str(path))
    assert gm.model_hash(m3) == gm.model_hash(m)


def test_load_model_preset_and_errors(tmp_path):
    assert gm.load_model("vortex").n == 1
    with pytest.raises(ConfigError):
        gm.load_model(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        gm.load_model(str(bad))


# ---------------------------------------------------------------------------
# Property tests over random valid models
# ---------------------------------------------------------------------------

def _family(label, coeff, lam):
    if label == "vortex":
        return gm.LGModel(1, [[1]], gm.Superpotential.zero(1), [0.5])
    if label == "xy":
        W = gm.Superpotential.from_monomials(2, [((1, 1), coeff)])
        return gm.LGModel(2, [[1, -1]], W, [0.0])
    if label == "fundamental":
        monos = [((1, 1, 1), coeff)]
        if lam != 0:
            monos.append(((0, 0, 1), -coeff * lam))
        return gm.LGModel(3, [[1, -1, 0]],
                          gm.Superpotential.from_monomials(3, monos), [0.0])
    W = gm.Superpotential.from_monomials(
        1, [((3,), coeff), ((1,), lam)])       # trivial group: any W valid
    return gm.LGModel(1, np.zeros((0, 1), int), W, [])


complexes = st.builds(complex,
                      st.floats(-2, 2, allow_nan=False),
                      st.floats(-2, 2, allow_nan=False))


@given(label=st.sampled_from(["vortex", "xy", "fundamental", "poly"]),
       coeff=complexes.filter(lambda c: abs(c) > 1e-3),
       lam=complexes,
       seed=st.integers(0, 2 ** 31))
@settings(max_examples=40, deadline=None)
def test_identities_hold_for_random_models(label, coeff, lam, seed):
    m = _family(label, coeff, lam)
    rng = np.random.default_rng(seed)
    pts = 2.0 * (rng.standard_normal((10, m.n))
                 + 1j * rng.standard_normal((10, m.n)))
    lie = rng.standard_normal((3, m.k)) if m.k else None
    rep = gm.identity_suite(m, pts, lie)
    assert rep.max_residual < 1e-10


@given(seed=st.integers(0, 2 ** 31))
@settings(max_examples=25, deadline=None)
def test_gauge_invariance_of_W_random(seed):
    rng = np.random.default_rng(seed)
    m = gm.preset("fundamental", lam=complex(rng.standard_normal(),
                                             rng.standard_normal()))
    z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    g = rng.standard_normal(1) + 1j * rng.standard_normal(1)
    assert abs(gm.eval_W(m, gm.complex_gauge_act(m, g, z))
               - gm.eval_W(m, z)) < 1e-12
