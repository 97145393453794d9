r"""Curved-domain reductions at desk scale: the scalar placement
equation on a flat torus, constant torus solutions, critical-orbit
counting, and 1-form data on the punctured sphere.

The centerpiece is the Kazdan-Warner-type equation

    Delta alpha + 1/2 (e^{2 alpha} - 1) w_+^2
                + 1/2 (1 - e^{-2 alpha}) w_-^2 = g

(Delta the positive Laplacian) for nonnegative weight fields w_+, w_-,
neither identically zero.  Its linearization Delta + (e^{2 alpha} w_+^2
+ e^{-2 alpha} w_-^2) is symmetric positive definite, so damped Newton
converges from any start and the solution is unique; the solver verifies
both numerically.  `critical_orbit_slice` rewrites the moment-map
placement equation for a critical orbit representative into this form.

The combinatorial/algebraic pieces: `torus_constant_solution` returns
the spinor magnitudes of the covariantly constant torus solution in
closed form, `count_critical_orbits` evaluates the binomial orbit count
(with an explicit subset enumerator), `punctured_sphere_zeros` finds the
zeros of the meromorphic form  sum_j a_j dz / (z - p_j)  and checks
their simplicity, and `goodness_check` searches for an integer relation
between the periods of the harmonic form.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from .errors import (
    ConfigError,
    DegenerateForm,
    DegenerateResidues,
    NonConvergence,
    OutOfRange,
    ShapeMismatch,
    StepLimitExceeded,
)
from .reports import ExperimentReport


# ---------------------------------------------------------------------------
# Flat torus grid and weight fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusGrid:
    r"""Uniform periodic grid on a flat torus of the given periods.

    Nodes sit at (i h, j h) for 0 <= i < n1, 0 <= j < n2 with no
    duplicated seam row; cells must be square.
    """

    periods: tuple
    n1: int
    n2: int

    def __post_init__(self):
        L1, L2 = self.periods
        if not (L1 > 0 and L2 > 0):
            raise ShapeMismatch("periods must be positive")
        if self.n1 < 4 or self.n2 < 4:
            raise ShapeMismatch("need at least 4 nodes per direction")
        h1, h2 = L1 / self.n1, L2 / self.n2
        if abs(h1 - h2) > 1e-12 * max(h1, h2):
            raise ShapeMismatch("cells must be square: h1=%r h2=%r"
                                % (h1, h2))

    @property
    def h(self) -> float:
        return self.periods[0] / self.n1

    @property
    def area(self) -> float:
        return self.periods[0] * self.periods[1]

    def mesh(self):
        x1 = np.arange(self.n1) * self.h
        x2 = np.arange(self.n2) * self.h
        return np.meshgrid(x1, x2, indexing="ij")

    def as_dict(self):
        return {"periods": [float(p) for p in self.periods],
                "n1": self.n1, "n2": self.n2}


@dataclass
class WeightFields:
    r"""Node fields w_+ >= 0 and w_- >= 0, neither identically zero."""

    w_plus: np.ndarray
    w_minus: np.ndarray

    def __post_init__(self):
        self.w_plus = np.asarray(self.w_plus, dtype=float)
        self.w_minus = np.asarray(self.w_minus, dtype=float)
        if self.w_plus.ndim != 2 or self.w_plus.shape != self.w_minus.shape:
            raise ShapeMismatch("weight fields must be equal-shape 2-d "
                                "arrays")
        for name, w in (("w_plus", self.w_plus), ("w_minus", self.w_minus)):
            if np.any(w < 0):
                raise ConfigError("%s must be nonnegative" % name)
            if not np.any(w > 0):
                raise ConfigError("%s must not vanish identically" % name)

    @classmethod
    def constant(cls, grid, w_plus=1.0, w_minus=1.0):
        shape = (grid.n1, grid.n2)
        return cls(w_plus=np.full(shape, float(w_plus)),
                   w_minus=np.full(shape, float(w_minus)))


@dataclass(frozen=True)
class HSurfaceTorus:
    r"""Torus H-surface data: periods of the harmonic form, the nu
    integral and the delta level (all coefficients of i)."""

    lambda_periods: tuple
    nu_integral: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        mu1, mu2 = (float(p) for p in self.lambda_periods)
        if not (np.isfinite(mu1) and np.isfinite(mu2)):
            raise ConfigError("periods must be finite")
        if mu1 == 0.0 and mu2 == 0.0:
            raise DegenerateForm("harmonic form must be nonzero")


# ---------------------------------------------------------------------------
# Kazdan-Warner solver
# ---------------------------------------------------------------------------

def lap_torus(grid, f):
    r"""Positive five-point Laplacian with periodic wrap, -lap f."""
    return -(np.roll(f, 1, 0) + np.roll(f, -1, 0)
             + np.roll(f, 1, 1) + np.roll(f, -1, 1) - 4.0 * f) / grid.h ** 2


def _torus_laplacian_matrix(grid):
    def ring(n):
        e = np.ones(n)
        mat = sparse.diags([e[1:], -2.0 * e, e[1:]], [-1, 0, 1]).tolil()
        mat[0, n - 1] += 1.0
        mat[n - 1, 0] += 1.0
        return mat.tocsr()
    lap = sparse.kron(ring(grid.n1), sparse.eye(grid.n2)) \
        + sparse.kron(sparse.eye(grid.n1), ring(grid.n2))
    return (-lap / grid.h ** 2).tocsr()


def kw_residual(grid, w, alpha, g=None):
    r"""eta(alpha) - g with eta the Kazdan-Warner map (Delta positive)."""
    val = lap_torus(grid, alpha) \
        + 0.5 * (np.exp(2.0 * alpha) - 1.0) * w.w_plus ** 2 \
        + 0.5 * (1.0 - np.exp(-2.0 * alpha)) * w.w_minus ** 2
    return val if g is None else val - g


def kazdan_warner_solve(grid, w, g=None, alpha0=None, tol=1e-10,
                        max_iter=50, method="newton"):
    r"""Solve  eta(alpha) = g  on the torus; returns (alpha, report).

    Damped Newton on the periodic five-point discretization; the
    linearized operator Delta + (e^{2a} w_+^2 + e^{-2a} w_-^2) is
    symmetric positive definite (the zeroth-order part is strictly
    positive wherever either weight is, and the equation has no
    translation degeneracy), so the direction always exists and descent
    is guaranteed.  ``method="descent"`` instead follows the gradient of
    |eta(alpha) - g|^2, the variational fallback; it is slow and only
    meant as a cross-check.  Raises `NonConvergence` with the best
    iterate if the max-norm residual does not reach ``tol``.
    """
    if method not in ("newton", "descent"):
        raise ConfigError("unknown method %r" % (method,))
    shape = (grid.n1, grid.n2)
    if w.w_plus.shape != shape:
        raise ShapeMismatch("weights have shape %s, grid wants %s"
                            % (w.w_plus.shape, shape))
    if g is not None:
        g = np.asarray(g, dtype=float)
        if g.shape != shape:
            raise ShapeMismatch("g has shape %s, grid wants %s"
                                % (g.shape, shape))
    alpha = np.zeros(shape) if alpha0 is None \
        else np.array(alpha0, dtype=float)
    if alpha.shape != shape:
        raise ShapeMismatch("alpha0 has shape %s" % (alpha.shape,))
    L = _torus_laplacian_matrix(grid)
    rep = ExperimentReport(
        name="kazdan-warner",
        inputs={"grid": grid.as_dict(), "tol": tol, "method": method})
    r = kw_residual(grid, w, alpha, g)
    res = float(np.max(np.abs(r)))
    history = [res]
    it = 0
    while res >= tol:
        if it >= max_iter:
            rep.flags["converged"] = False
            raise StepLimitExceeded("residual %.3e after %d iterations"
                                    % (res, it), best=alpha, residual=res)
        zero_order = np.exp(2.0 * alpha) * w.w_plus ** 2 \
            + np.exp(-2.0 * alpha) * w.w_minus ** 2
        if method == "newton":
            A = L + sparse.diags(zero_order.ravel())
            d = spsolve(A.tocsc(), -r.ravel()).reshape(shape)
        else:
            # gradient of 1/2 |eta - g|^2; the linearization is
            # self-adjoint so no transpose is needed
            Ar = lap_torus(grid, r) + zero_order * r
            d = -Ar
        f0 = float(np.sum(r ** 2))
        t = 1.0
        while True:
            trial = alpha + t * d
            r_new = kw_residual(grid, w, trial, g)
            f_new = float(np.sum(r_new ** 2))
            if f_new <= (1.0 - 1e-4 * t) * f0 or f_new < tol ** 2:
                break
            t *= 0.5
            if t < 1e-14:
                rep.flags["converged"] = False
                raise NonConvergence("line search failed at residual "
                                     "%.3e" % res, best=alpha, residual=res)
        alpha, r = trial, r_new
        res = float(np.max(np.abs(r)))
        history.append(res)
        it += 1
        rep.note("iter %d: residual %.3e (step %.2g)", it, res, t)
    rep.scalars.update({"residual": res, "iterations": it,
                        "sup_alpha": float(np.max(np.abs(alpha)))})
    rep.flags["converged"] = True
    if len(history) >= 3:
        r1 = history[-1] / history[-2]
        r2 = history[-2] / history[-3]
        rep.scalars.update({"contraction_final": r1,
                            "contraction_prev": r2})
        rep.flags["quadratic_contraction"] = r1 <= 0.1 and r2 <= 0.1
    else:
        rep.note("fewer than two Newton steps; contraction not rated")
    return alpha, rep


def critical_orbit_slice(grid, hsurf, w, delta=None, curvature=None,
                         **kw_args):
    r"""Gauge log placing an orbit representative on the delta-slice.

    The placement equation

        Delta alpha + 1/2 (e^{2 alpha} w_+^2 - e^{-2 alpha} w_-^2)
                    + c_curv = d

    (all fields coefficients of i; c_curv the curvature term of the
    background connection, d the slice level) rearranges to the
    Kazdan-Warner form with right side

        g = d - c_curv - 1/2 (w_+^2 - w_-^2).

    ``delta`` defaults to the constant hsurf.delta field and
    ``curvature`` to zero (flat background).  Returns (alpha, report).
    """
    shape = (grid.n1, grid.n2)
    d_field = np.full(shape, float(hsurf.delta)) if delta is None \
        else np.asarray(delta, dtype=float)
    c_field = np.zeros(shape) if curvature is None \
        else np.asarray(curvature, dtype=float)
    if d_field.shape != shape or c_field.shape != shape:
        raise ShapeMismatch("delta / curvature fields must match the grid")
    g = d_field - c_field - 0.5 * (w.w_plus ** 2 - w.w_minus ** 2)
    return kazdan_warner_solve(grid, w, g=g, **kw_args)


def constant_mode_alpha(w_value, c):
    r"""Root of  1/2 (e^{2a} - e^{-2a}) w^2 = c  for constant equal
    weights w: a = asinh(c / w^2) / 2, the constant-mode oracle."""
    return 0.5 * float(np.arcsinh(c / w_value ** 2))


# ---------------------------------------------------------------------------
# Constant solutions on the torus
# ---------------------------------------------------------------------------

def torus_constant_solution(a, delta):
    r"""Spinor magnitude squares (|Psi_+|^2, |Psi_-|^2) of the constant
    torus solution.

    The two algebraic conditions are |Psi_+| |Psi_-| = c with
    c = sqrt(2) |a| (unit-area normalization of the constant form, |a|
    its single complex coefficient) and |Psi_+|^2 - |Psi_-|^2 = 2 delta.
    Writing p = |Psi_+|^2: p (p - 2 delta) = c^2, whose unique
    nonnegative root is p = delta + sqrt(delta^2 + c^2); the second root
    is <= 0 and rejected.  Phases carry the residual circle action and
    are not returned.
    """
    a = complex(a)
    if a == 0:
        raise DegenerateForm("the (1,0)-coefficient must be nonzero")
    c = np.sqrt(2.0) * abs(a)
    t = 2.0 * float(delta)
    p = 0.5 * (t + np.sqrt(t * t + 4.0 * c * c))
    return float(p), float(p - t)


# ---------------------------------------------------------------------------
# Critical orbit counting
# ---------------------------------------------------------------------------

def _zero_set_size(g, d, n_punctures):
    if g < 0 or n_punctures < 0:
        raise OutOfRange("genus and puncture count must be nonnegative")
    if n_punctures == 0 and g < 1:
        raise OutOfRange("closed surfaces need genus >= 1")
    size = 2 * g - 2 + n_punctures
    if not 0 <= d <= size:
        raise OutOfRange("need 0 <= d <= %d, got d = %d" % (size, d))
    return size


def count_critical_orbits(g, d, n_punctures=0) -> int:
    r"""Number of critical orbits: binomial(2g - 2 + n, d), one orbit
    per d-element subset of the zero set of the (1,0)-form."""
    return math.comb(_zero_set_size(g, d, n_punctures), d)


def enumerate_critical_orbits(g, d, n_punctures=0):
    r"""The subsets themselves, as index tuples into the abstract zero
    set; the count operation must agree with this list's length."""
    size = _zero_set_size(g, d, n_punctures)
    return list(itertools.combinations(range(size), d))


# ---------------------------------------------------------------------------
# Zeros of the 1-form on the punctured sphere
# ---------------------------------------------------------------------------

def punctured_sphere_zeros(punctures, residues, simple_tol=1e-6):
    r"""Zeros of  eta(z) = sum_j a_j / (z - p_j)  with a pole at infinity.

    Clearing denominators gives the degree n-2 polynomial
    N(z) = sum_j a_j prod_{l != j} (z - p_l) whose leading coefficient
    is sum_j a_j, the negated residue at infinity; all roots come from
    the companion matrix.  Returns (zeros, report) where the report
    rates root count, puncture collisions, pairwise separation and the
    size of eta' at each root.  An exactly double root splits under
    companion-matrix rooting by about the square root of machine
    epsilon, 1e-8 or so, which is why the simplicity threshold defaults
    to 1e-6: double zeros land two decades below it, simple zeros of
    non-adversarial data several decades above.
    """
    p = np.asarray(punctures, dtype=complex).ravel()
    a = np.asarray(residues, dtype=complex).ravel()
    if p.size != a.size:
        raise ShapeMismatch("one residue per puncture required")
    if p.size < 2:
        raise OutOfRange("need at least two finite punctures (n >= 3)")
    sep = np.abs(p[:, None] - p[None, :])
    np.fill_diagonal(sep, np.inf)
    p_scale = max(1.0, float(np.max(np.abs(p))))
    if np.min(sep) <= 1e-12 * p_scale:
        raise ConfigError("punctures must be distinct")
    a_scale = float(np.max(np.abs(a)))
    lead = complex(np.sum(a))
    if abs(lead) < 1e-12 * max(a_scale, 1e-300):
        raise DegenerateResidues("residues sum to zero: no pole at "
                                 "infinity, degree drops")
    coeffs = np.zeros(p.size, dtype=complex)
    for j in range(p.size):
        coeffs += a[j] * np.poly(np.delete(p, j))
    zeros = np.roots(coeffs)

    rep = ExperimentReport(
        name="sphere-zeros",
        inputs={"n": int(p.size + 1),
                "punctures": [[z.real, z.imag] for z in p],
                "residues": [[z.real, z.imag] for z in a]})
    rep.scalars["n_zeros"] = int(zeros.size)
    rep.flags["count_matches_degree"] = zeros.size == p.size - 1
    dist_to_p = np.min(np.abs(zeros[:, None] - p[None, :]), axis=1) \
        if zeros.size else np.array([])
    rep.flags["no_puncture_collisions"] = bool(
        np.all(dist_to_p > simple_tol * p_scale))
    if zeros.size > 1:
        zsep = np.abs(zeros[:, None] - zeros[None, :])
        np.fill_diagonal(zsep, np.inf)
        min_sep = float(np.min(zsep))
    else:
        min_sep = np.inf
    rep.scalars["min_root_separation"] = min_sep
    # |eta'| at each root against the natural scale of its terms
    eta_prime = np.abs(np.sum(-a[None, :]
                              / (zeros[:, None] - p[None, :]) ** 2, axis=1)) \
        if zeros.size else np.array([])
    prime_scale = a_scale / np.minimum(dist_to_p, p_scale) ** 2 \
        if zeros.size else np.array([])
    rel_prime = float(np.min(eta_prime / prime_scale)) if zeros.size \
        else np.inf
    rep.scalars["min_relative_eta_prime"] = rel_prime
    rep.flags["all_simple"] = bool(
        min_sep > simple_tol * (1.0 + float(np.max(np.abs(zeros)))
                                if zeros.size else 1.0)
        and rel_prime > simple_tol)
    return zeros, rep


def contour_residues(punctures, residues, samples=128):
    r"""Trapezoid contour integrals (2 pi i)^{-1} oint eta dz around each
    puncture; spectral accuracy on the periodic integrand makes 128
    samples ample for 1e-8 agreement with the stated residues."""
    p = np.asarray(punctures, dtype=complex).ravel()
    a = np.asarray(residues, dtype=complex).ravel()
    sep = np.abs(p[:, None] - p[None, :])
    np.fill_diagonal(sep, np.inf)
    radii = 0.45 * np.min(sep, axis=1)
    theta = 2.0 * np.pi * np.arange(samples) / samples
    ring = np.exp(1j * theta)
    out = np.empty(p.size, dtype=complex)
    for j in range(p.size):
        z = p[j] + radii[j] * ring
        vals = np.sum(a[None, :] / (z[:, None] - p[None, :]), axis=1)
        out[j] = np.mean(vals * (z - p[j]))
    return out


# ---------------------------------------------------------------------------
# Goodness of the harmonic form
# ---------------------------------------------------------------------------

def cup_pairing(hsurf, c):
    r"""4 pi^2 (c_1 mu_2 - c_2 mu_1): the cup-product pairing of the
    integer class c with the form's periods (mu_1, mu_2), equal to the
    jump of H between the critical values it connects."""
    mu1, mu2 = hsurf.lambda_periods
    return 4.0 * np.pi ** 2 * (c[0] * mu2 - c[1] * mu1)


def goodness_check(hsurf, max_denominator=10000, tol=1e-9):
    r"""Search for an integer relation c_1 mu_1 + c_2 mu_2 = 0.

    Returns (True, None) when no relation with denominators up to the
    cap exists within tolerance - a bounded search, not an irrationality
    proof - and (False, (c_1, c_2)) with the relation witness otherwise.
    A witness means the form is proportional to an integral class, so
    the rotated class (-c_2, c_1) has vanishing cup pairing with it and
    distinct critical values can share imaginary parts.
    """
    mu1, mu2 = hsurf.lambda_periods
    scale = max(abs(mu1), abs(mu2))
    if abs(mu2) <= tol * scale:
        witness = (0, 1)
    elif abs(mu1) <= tol * scale:
        witness = (1, 0)
    else:
        frac = Fraction(-mu1 / mu2).limit_denominator(max_denominator)
        witness = (frac.denominator, frac.numerator)
    if abs(witness[0] * mu1 + witness[1] * mu2) <= tol * scale:
        return False, witness
    return True, None
