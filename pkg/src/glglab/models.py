r"""Pointwise calculus of gauged Landau-Ginzburg models on flat C^n.

A model couples three ingredients on M = C^n with the standard Kahler
structure (J = componentwise multiplication by i, metric g = Re<.,.>):

* a torus G = U(1)^k acting diagonally through an integer weight matrix
  ``w`` (generator a scales z_j by u^{w_aj}),
* a G_C-invariant polynomial superpotential W = L + iH,
* a moment-map level ``delta``.

Conventions, fixed once and used everywhere:

* The Lie algebra of U(1)^k is identified with R^k via xi = i*c; the
  bi-invariant metric is Euclidean in c, so <i a, i b> = a.b.
* The moment map is stored through its real coefficient vector,
  mu_a(z) = 1/2 sum_j w_aj |z_j|^2 + offset_a  (meaning the value i*mu_a).
* Sign convention: <grad mu, xi> = -J xi~ where xi~ is the action vector
  field, (xi~)_j = i (sum_a xi_a w_aj) z_j.
* Gradients of the real and imaginary parts of W are antilinear data:
  (grad L)_j = conj(dW/dz_j) and grad H = J grad L (Cauchy-Riemann).
  H-quantities are nevertheless evaluated through the rotated polynomial
  -iW (whose real part is H), so the relations grad L + J grad H = 0 and
  Hess L + J Hess H = 0 are cross-checks of two code paths, not
  tautologies.

All pointwise operations broadcast over leading axes: ``z`` may be a
single point of shape (n,) or any stack (..., n); Lie vectors likewise
(..., k).  Models are immutable after construction and safe to share
between workers.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeMismatch, ConfigError


# ---------------------------------------------------------------------------
# Superpotential: sparse polynomial with exact differentiation
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Superpotential:
    r"""Sparse polynomial sum_m c_m z^{e_m} on C^n.

    ``exponents`` has shape (m, n) with nonnegative integer entries and no
    duplicate rows; ``coefficients`` has shape (m,).  Monomials keep their
    stored order so evaluation sums are reproducible bit for bit.
    """

    exponents: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.exponents, dtype=np.int64)
        if e.ndim != 2:
            raise ShapeMismatch("exponents must be a (monomials, n) array")
        c = np.asarray(self.coefficients, dtype=np.complex128).ravel()
        if c.shape[0] != e.shape[0]:
            raise ShapeMismatch("one coefficient per exponent row required")
        if np.any(e < 0):
            raise ConfigError("negative exponents are not polynomials")
        if e.shape[0] > 1 and len({tuple(row) for row in e}) != e.shape[0]:
            raise ConfigError("duplicate exponent vectors")
        if not np.all(np.isfinite(c.view(np.float64))):
            raise ConfigError("non-finite coefficient")
        e.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "exponents", e)
        object.__setattr__(self, "coefficients", c)

    @property
    def n(self) -> int:
        return self.exponents.shape[1]

    @classmethod
    def zero(cls, n: int) -> "Superpotential":
        return cls(np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=complex))

    @classmethod
    def from_monomials(cls, n, monomials) -> "Superpotential":
        r"""Build from an iterable of (exponent tuple, coefficient) pairs."""
        monomials = list(monomials)
        if not monomials:
            return cls.zero(n)
        exps = np.array([m[0] for m in monomials], dtype=np.int64)
        if exps.shape[1] != n:
            raise ShapeMismatch("exponent length != n")
        coeffs = np.array([m[1] for m in monomials], dtype=complex)
        return cls(exps, coeffs)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        r"""W(z), broadcast over leading axes of ``z``."""
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.n:
            raise ShapeMismatch("point dimension != n")
        if self.exponents.shape[0] == 0:
            return np.zeros(z.shape[:-1], dtype=complex)
        # (..., 1, n) ** (m, n) -> product over the coordinate axis
        powers = z[..., None, :] ** self.exponents
        return np.prod(powers, axis=-1) @ self.coefficients

    def partial(self, j: int) -> "Superpotential":
        r"""Exact partial derivative dW/dz_j as a new sparse polynomial."""
        e = self.exponents
        keep = e[:, j] > 0
        new_e = e[keep].copy()
        new_c = self.coefficients[keep] * new_e[:, j]
        new_e[:, j] -= 1
        return Superpotential(new_e, new_c)

    def scaled(self, factor: complex) -> "Superpotential":
        return Superpotential(self.exponents, self.coefficients * factor)


class _PolyCalculus:
    r"""Gradient / Hessian / third-derivative tables of one polynomial.

    Tables are plain tuples of `Superpotential` objects built once at model
    construction; evaluation loops over them (n <= a few, so the cost is in
    the vectorized monomial products, not the loop).
    """

    def __init__(self, W: Superpotential):
        n = W.n
        self.W = W
        self.grad = tuple(W.partial(j) for j in range(n))
        self.hess = tuple(tuple(self.grad[i].partial(j) for j in range(n))
                          for i in range(n))
        self.third = tuple(tuple(tuple(self.hess[i][j].partial(l)
                                       for l in range(n))
                                 for j in range(n))
                           for i in range(n))

    def gradient(self, z):
        r"""Holomorphic gradient (dW/dz_1, ..., dW/dz_n) at z, shape (..., n)."""
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape, dtype=complex)
        for j, p in enumerate(self.grad):
            out[..., j] = p.evaluate(z)
        return out

    def hessian(self, z):
        r"""Symmetric matrix of second partials, shape (..., n, n)."""
        z = np.asarray(z, dtype=complex)
        n = self.W.n
        out = np.empty(z.shape[:-1] + (n, n), dtype=complex)
        for i in range(n):
            for j in range(i, n):
                val = self.hess[i][j].evaluate(z)
                out[..., i, j] = val
                if i != j:
                    out[..., j, i] = val
        return out

    def third_tensor(self, z):
        r"""Totally symmetric third-partial tensor, shape (..., n, n, n)."""
        z = np.asarray(z, dtype=complex)
        n = self.W.n
        out = np.empty(z.shape[:-1] + (n, n, n), dtype=complex)
        for i in range(n):
            for j in range(i, n):
                for l in range(j, n):
                    val = self.third[i][j][l].evaluate(z)
                    for perm in ((i, j, l), (i, l, j), (j, i, l),
                                 (j, l, i), (l, i, j), (l, j, i)):
                        out[..., perm[0], perm[1], perm[2]] = val
        return out


# ---------------------------------------------------------------------------
# The model
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LGModel:
    r"""Gauged Landau-Ginzburg model (C^n, U(1)^k weights, W, delta).

    ``weights`` is the (k, n) integer weight matrix; ``delta`` and
    ``mu_offset`` are real coefficient vectors of length k.  Gauge
    invariance of W (zero weight of every monomial) is *diagnosed* by
    `validate_model`, not enforced here, so deliberately broken models can
    be built for negative tests.
    """

    n: int
    weights: np.ndarray
    W: Superpotential
    delta: np.ndarray
    mu_offset: np.ndarray = None

    def __post_init__(self):
        w = np.atleast_2d(np.asarray(self.weights, dtype=np.int64))
        if w.size == 0:
            w = w.reshape(0, self.n)
        if w.shape[1] != self.n:
            raise ShapeMismatch("weight matrix must have n columns")
        if self.W.n != self.n:
            raise ShapeMismatch("superpotential dimension != n")
        k = w.shape[0]
        d = np.zeros(k) if self.delta is None else \
            np.asarray(self.delta, dtype=float).ravel()
        off = np.zeros(k) if self.mu_offset is None else \
            np.asarray(self.mu_offset, dtype=float).ravel()
        if d.shape[0] != k or off.shape[0] != k:
            raise ShapeMismatch("delta / mu_offset must have k entries")
        for arr in (w, d, off):
            arr.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "mu_offset", off)
        # Two calculus tables: W itself for L-quantities, -iW for
        # H-quantities (Re(-iW) = H).
        object.__setattr__(self, "_calc_L", _PolyCalculus(self.W))
        object.__setattr__(self, "_calc_H", _PolyCalculus(self.W.scaled(-1j)))

    @property
    def k(self) -> int:
        return self.weights.shape[0]


def validate_model(m: LGModel):
    r"""Diagnostic: list of violated model invariants (empty iff valid).

    The substantive check is G_C-invariance of W: every monomial must have
    zero weight under every torus generator, sum_j w_aj e_mj = 0.
    """
    problems = []
    if m.n < 1:
        problems.append("ambient dimension n must be >= 1")
    if m.k:
        wt = m.W.exponents @ m.weights.T          # (monomials, k)
        bad = np.nonzero(np.any(wt != 0, axis=1))[0]
        for idx in bad:
            problems.append(
                "monomial %s has nonzero weight %s"
                % (tuple(m.W.exponents[idx]), tuple(wt[idx])))
    return problems


# ---------------------------------------------------------------------------
# Superpotential calculus: W, grad, Hessians, third derivatives
# ---------------------------------------------------------------------------

def eval_W(m: LGModel, z):
    r"""W(z) = L + iH; broadcast over leading axes."""
    return m.W.evaluate(z)


def grad_W_holo(m: LGModel, z):
    r"""Holomorphic gradient (dW/dz_j)_j, shape (..., n)."""
    return m._calc_L.gradient(z)


def grad_L(m: LGModel, z):
    r"""grad of L = Re W:  (grad L)_j = conj(dW/dz_j)."""
    return np.conj(m._calc_L.gradient(z))


def grad_H(m: LGModel, z):
    r"""grad of H = Im W, evaluated through the rotated polynomial -iW.

    Agrees with J grad_L bitwise (multiplication by units is exact), which
    the test suite asserts; the identity suite treats the two paths as
    independent when checking grad L + J grad H = 0.
    """
    return np.conj(m._calc_H.gradient(z))


def hess_L_apply(m: LGModel, z, v):
    r"""Hessian of L as an antilinear map: v -> conj(W''(z) v)."""
    v = np.asarray(v, dtype=complex)
    W2 = m._calc_L.hessian(z)
    return np.conj(np.einsum("...ij,...j->...i", W2, v))


def hess_H_apply(m: LGModel, z, v):
    r"""Hessian of H applied to v (rotated-polynomial path; equals J Hess L)."""
    v = np.asarray(v, dtype=complex)
    W2 = m._calc_H.hessian(z)
    return np.conj(np.einsum("...ij,...j->...i", W2, v))


def grad_hess_H_apply(m: LGModel, z, u, v):
    r"""(nabla_u Hess H)(v): derivative of the H-Hessian along u, applied to v.

    For a polynomial superpotential this is conj(T(z)[u, v]) with T the
    third-partial tensor of -iW; totally symmetric in (u, v).
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    T3 = m._calc_H.third_tensor(z)
    return np.conj(np.einsum("...ijl,...j,...l->...i", T3, v, u))


# ---------------------------------------------------------------------------
# Moment map, torus action, pairings
# ---------------------------------------------------------------------------

def moment_map(m: LGModel, z):
    r"""mu_a(z) = 1/2 sum_j w_aj |z_j|^2 + offset_a, shape (..., k)."""
    z = np.asarray(z, dtype=complex)
    absq = z.real ** 2 + z.imag ** 2
    return 0.5 * np.einsum("aj,...j->...a", m.weights, absq) + m.mu_offset


def infinitesimal_action(m: LGModel, z, xi):
    r"""Action vector field (xi~)_j = i (sum_a xi_a w_aj) z_j."""
    z = np.asarray(z, dtype=complex)
    xi = np.asarray(xi, dtype=float)
    lam = np.einsum("...a,aj->...j", xi, m.weights)
    return 1j * lam * z


def grad_mu_pair(m: LGModel, z, xi):
    r"""<grad mu, xi> = -J xi~, componentwise (sum_a xi_a w_aj) z_j."""
    z = np.asarray(z, dtype=complex)
    xi = np.asarray(xi, dtype=float)
    lam = np.einsum("...a,aj->...j", xi, m.weights)
    return lam * z


def hess_mu_pair(m: LGModel, z, v, xi):
    r"""Derivative of <grad mu, xi> along v: (sum_a xi_a w_aj) v_j.

    The flat-metric Hessian of mu does not depend on the base point; ``z``
    is accepted for signature uniformity only.
    """
    v = np.asarray(v, dtype=complex)
    xi = np.asarray(xi, dtype=float)
    lam = np.einsum("...a,aj->...j", xi, m.weights)
    return lam * v


def pair_mu(m: LGModel, z, v):
    r"""Metric pairing <grad mu_a, v> = Re sum_j w_aj conj(z_j) v_j, (..., k)."""
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    s = np.einsum("aj,...j->...a", m.weights, np.conj(z) * v)
    return s.real


def pair_Jmu(m: LGModel, z, v):
    r"""Pairing with the rotated gradients, <J grad mu_a, v> (..., k)."""
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    s = np.einsum("aj,...j->...a", m.weights, np.conj(z) * v)
    return s.imag


def d_operator(m: LGModel, z, v):
    r"""Stacked first-order symbol (Hess H(v), <grad mu, v>, <grad mu, Jv>).

    Its smallest singular value on tangent vectors is the spectral constant
    zeta_2 controlling exponential decay.
    """
    v = np.asarray(v, dtype=complex)
    return (hess_H_apply(m, z, v), pair_mu(m, z, v), pair_mu(m, z, 1j * v))


# ---------------------------------------------------------------------------
# Gauge action
# ---------------------------------------------------------------------------

def gauge_act(m: LGModel, u, z):
    r"""Real gauge: z_j -> exp(i sum_a u_a w_aj) z_j for angles u (..., k)."""
    z = np.asarray(z, dtype=complex)
    u = np.asarray(u, dtype=float)
    phase = np.einsum("...a,aj->...j", u, m.weights)
    return np.exp(1j * phase) * z


def complex_gauge_act(m: LGModel, g, z):
    r"""Complexified gauge: z_j -> exp(sum_a g_a w_aj) z_j, g complex logs."""
    z = np.asarray(z, dtype=complex)
    g = np.asarray(g, dtype=complex)
    return np.exp(np.einsum("...a,aj->...j", g, m.weights)) * z


# ---------------------------------------------------------------------------
# Real 2n-dimensional forms (for spectral work)
# ---------------------------------------------------------------------------

def to_real(v):
    r"""C^n -> R^2n, stacking (Re v, Im v) along the last axis."""
    v = np.asarray(v, dtype=complex)
    return np.concatenate([v.real, v.imag], axis=-1)


def from_real(x):
    r"""Inverse of `to_real`."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1] // 2
    return x[..., :n] + 1j * x[..., n:]


def J_real(n: int):
    r"""Multiplication by i on R^2n: (x, y) -> (-y, x)."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


def antilinear_real_matrix(A):
    r"""Real 2n x 2n form of the antilinear map v -> conj(A v).

    For A = B + iC the block matrix is [[B, -C], [-C, -B]]; symmetric
    whenever A is.
    """
    A = np.asarray(A, dtype=complex)
    B, C = A.real, A.imag
    return np.block([[B, -C], [-C, -B]])


def hess_L_matrix_real(m: LGModel, z):
    r"""Hessian of L at z as a real symmetric 2n x 2n matrix."""
    return antilinear_real_matrix(m._calc_L.hessian(z))


def hess_H_matrix_real(m: LGModel, z):
    r"""Hessian of H at z as a real symmetric 2n x 2n matrix."""
    return antilinear_real_matrix(m._calc_H.hessian(z))


def mu_pairing_matrix(m: LGModel, z):
    r"""Matrix of v -> <grad mu, v> on R^2n, shape (k, 2n).

    Row a is [w_aj x_j | w_aj y_j]; its transpose sends xi to the real form
    of <grad mu, xi> = -J xi~.
    """
    z = np.asarray(z, dtype=complex)
    return np.concatenate([m.weights * z.real, m.weights * z.imag], axis=1)


def Jmu_pairing_matrix(m: LGModel, z):
    r"""Matrix of v -> <J grad mu, v> on R^2n, shape (k, 2n)."""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([-m.weights * z.imag, m.weights * z.real], axis=1)


# ---------------------------------------------------------------------------
# Identity suite
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    r"""Max residuals of the six structural identities over a sample set.

    1. grad L + J grad H            (Cauchy-Riemann, gradient level)
    2. Hess L + J Hess H            (Cauchy-Riemann, Hessian level)
    3. J Hess H + Hess H J          (antilinearity)
    4. J Hess mu - Hess mu J        (complex-linearity of the mu-Hessian)
    5. <grad mu, grad H>, <J grad mu, grad H>   (needs gauge invariance of W)
    6. <grad mu, xi~>               (isotropy of action orbits in mu-levels)
    """

    cauchy_riemann_grad: float
    cauchy_riemann_hess: float
    hess_H_antilinear: float
    hess_mu_complex_linear: float
    mu_grad_H_isotropy: float
    mu_orbit_isotropy: float

    def as_dict(self):
        return {
            "cauchy_riemann_grad": self.cauchy_riemann_grad,
            "cauchy_riemann_hess": self.cauchy_riemann_hess,
            "hess_H_antilinear": self.hess_H_antilinear,
            "hess_mu_complex_linear": self.hess_mu_complex_linear,
            "mu_grad_H_isotropy": self.mu_grad_H_isotropy,
            "mu_orbit_isotropy": self.mu_orbit_isotropy,
        }

    @property
    def max_residual(self) -> float:
        return max(self.as_dict().values())


def identity_suite(m: LGModel, sample_points, sample_lie=None) -> IdentityReport:
    r"""Evaluate the six identities on sample points (and Lie directions).

    Hessian-level identities are measured as Frobenius norms of the real
    2n x 2n matrix residuals, so no test vectors are needed.
    """
    pts = np.atleast_2d(np.asarray(sample_points, dtype=complex))
    if sample_lie is None:
        sample_lie = np.eye(m.k) if m.k else np.zeros((0, 0))
    lie = np.atleast_2d(np.asarray(sample_lie, dtype=float))

    J = J_real(m.n)
    r1 = r2 = r3 = r4 = r5 = r6 = 0.0
    for z in pts:
        gL = grad_L(m, z)
        gH = grad_H(m, z)
        r1 = max(r1, float(np.linalg.norm(gL + 1j * gH)))

        HL = hess_L_matrix_real(m, z)
        HH = hess_H_matrix_real(m, z)
        r2 = max(r2, float(np.linalg.norm(HL + J @ HH)))
        r3 = max(r3, float(np.linalg.norm(J @ HH + HH @ J)))

        r5 = max(r5, float(np.max(np.abs(pair_mu(m, z, gH)), initial=0.0)),
                 float(np.max(np.abs(pair_Jmu(m, z, gH)), initial=0.0)))

        for xi in lie:
            if m.k == 0:
                continue
            # Hess mu(., xi) is the diagonal complex-linear map
            # v_j -> (xi.w)_j v_j; real form commutes with J.
            lam = xi @ m.weights
            D = np.diag(np.concatenate([lam, lam]).astype(float))
            r4 = max(r4, float(np.linalg.norm(J @ D - D @ J)))
            xt = infinitesimal_action(m, z, xi)
            r6 = max(r6, float(np.max(np.abs(pair_mu(m, z, xt)), initial=0.0)))

    return IdentityReport(r1, r2, r3, r4, r5, r6)


# ---------------------------------------------------------------------------
# Presets, JSON interchange, hashing
# ---------------------------------------------------------------------------

def preset(name: str, **params) -> LGModel:
    r"""Built-in models.

    vortex
        C with weight 1, W = 0, level delta = 1/2.  Not a stable
        superpotential (every point of C is critical); hosts the radial
        vortex solutions.
    xy
        C^2 with weights (1, -1) and W = xy; level 0 by default.
    fundamental
        C^3 with weights (1, -1, 0) and W = (xy - lambda) b; keyword
        ``lam`` (default 1.0, may be complex) and ``delta`` (default 0.0).
        Stable iff lambda != 0.
    """
    if name == "vortex":
        delta = float(params.pop("delta", 0.5))
        _reject_extras(name, params)
        return LGModel(1, [[1]], Superpotential.zero(1), [delta])
    if name == "xy":
        delta = float(params.pop("delta", 0.0))
        _reject_extras(name, params)
        W = Superpotential.from_monomials(2, [((1, 1), 1.0)])
        return LGModel(2, [[1, -1]], W, [delta])
    if name == "fundamental":
        lam = complex(params.pop("lam", 1.0))
        delta = float(params.pop("delta", 0.0))
        _reject_extras(name, params)
        monos = [((1, 1, 1), 1.0)]
        if lam != 0:
            monos.append(((0, 0, 1), -lam))
        W = Superpotential.from_monomials(3, monos)
        return LGModel(3, [[1, -1, 0]], W, [delta])
    raise ConfigError("unknown preset %r" % name)


def _reject_extras(name, params):
    if params:
        raise ConfigError("preset %r: unknown parameters %s"
                          % (name, sorted(params)))


def model_to_dict(m: LGModel) -> dict:
    return {
        "n": int(m.n),
        "weights": [[int(x) for x in row] for row in m.weights],
        "W": [{"exp": [int(x) for x in e], "re": float(c.real),
               "im": float(c.imag)}
              for e, c in zip(m.W.exponents, m.W.coefficients)],
        "delta": [float(x) for x in m.delta],
        "mu_offset": [float(x) for x in m.mu_offset],
    }


def model_from_dict(d: dict) -> LGModel:
    try:
        n = int(d["n"])
        weights = d["weights"]
        monos = [(tuple(int(x) for x in t["exp"]),
                  float(t.get("re", 0.0)) + 1j * float(t.get("im", 0.0)))
                 for t in d.get("W", [])]
        W = Superpotential.from_monomials(n, monos)
        delta = d.get("delta")
        offset = d.get("mu_offset")
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("malformed model definition: %s" % exc) from exc
    return LGModel(n, weights, W, delta, offset)


def load_model(source) -> LGModel:
    r"""Resolve a model from a preset name, a JSON file path, or a dict."""
    if isinstance(source, LGModel):
        return source
    if isinstance(source, dict):
        return model_from_dict(source)
    text = str(source)
    if text in ("vortex", "xy", "fundamental"):
        return preset(text)
    try:
        with open(text, "r", encoding="utf-8") as fh:
            return model_from_dict(json.load(fh))
    except OSError as exc:
        raise ConfigError("cannot read model %r: %s" % (text, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("model file %r is not valid JSON: %s"
                          % (text, exc)) from exc


def save_model(m: LGModel, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(m), fh, sort_keys=True, indent=2)
        fh.write("\n")


def model_hash(m: LGModel) -> str:
    r"""sha256 of the canonical JSON form; embedded in every report."""
    blob = json.dumps(model_to_dict(m), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
