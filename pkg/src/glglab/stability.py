r"""Critical loci, Morse-Bott verification and extended-Hessian spectra.

The critical set Crit(L) = {grad L = 0} of a gauged model is invariant
under the complexified torus, so critical points come in G_C-orbits.
Whether an orbit is stable is read off two linear objects at a
representative q:

  * the extended Hessian, a real symmetric matrix on g + g + R^{2n},

        D^ = [ 0      0       M_mu    ]
             [ 0      0       M_Jmu   ]
             [ M_mu^T M_Jmu^T Hess L  ]

    where row a of M_mu is <grad mu_a, .> and row a of M_Jmu is
    <J grad mu_a, .>.  Together with

        sigma = [ 0  I  0 ]
                [-I  0  0 ]
                [ 0  0  J ]

    it satisfies sigma^2 = -Id and sigma D^ + D^ sigma = 0, which forces
    the spectrum of D^ to be symmetric about zero.  Invertibility of D^
    at q is the stability criterion.

  * the spectral constants zeta1 (smallest singular value of the map
    F -> sum_a F_a grad mu_a(q) from g into T_qM) and zeta2 (smallest
    singular value of the first-order operator
    v -> (Hess H v, <grad mu, v>, <grad mu, Jv>)).  Their minimum zeta
    is the rate that controls exponential decay of finite-energy
    solutions.

The delta-slice solver moves a representative q along the imaginary
directions of its orbit, q -> exp(alpha . w) q with alpha real, until
the moment map hits a prescribed level; monotonicity of
alpha -> mu(exp(alpha) q) along the orbit makes the k-dimensional
Newton iteration globally well behaved whenever the level is
attainable.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, subspace_angles, orth

from . import models as gm
from .errors import (
    ContractError,
    NonConvergence,
    NotCritical,
    NotFreeOrbit,
    Unattainable,
)

logger = logging.getLogger(__name__)

_NEWTON_MAX_ITER = 200
_NEWTON_TOL = 1e-12
_CRITICAL_TOL = 1e-8
_KERNEL_RTOL = 1e-8
_ANGLE_TOL = 1e-6


# ---------------------------------------------------------------------------
# Result containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPoint:
    r"""A converged zero of grad L with orbit/kernel diagnostics attached."""

    z: np.ndarray                 # (n,) complex
    grad_norm: float
    hess_kernel_dim: int
    orbit_tangent_dim: int
    is_free_orbit: bool

    def as_dict(self):
        return {
            "z_re": [float(t) for t in self.z.real],
            "z_im": [float(t) for t in self.z.imag],
            "grad_norm": float(self.grad_norm),
            "hess_kernel_dim": int(self.hess_kernel_dim),
            "orbit_tangent_dim": int(self.orbit_tangent_dim),
            "is_free_orbit": bool(self.is_free_orbit),
        }


@dataclass(frozen=True)
class ExtendedHessian:
    r"""Real form of D^ together with sigma, checked against the algebra.

    Construction verifies sigma^2 = -Id exactly (entries are 0 and +-1)
    and that the matrix is symmetric and anticommutes with sigma to
    1e-12; these are structural facts about the block assembly, so a
    violation means corrupted input.
    """

    matrix: np.ndarray            # (2k+2n, 2k+2n) symmetric
    sigma: np.ndarray
    n: int
    k: int
    symmetry_defect: float = field(init=False)
    anticommute_defect: float = field(init=False)

    def __post_init__(self):
        D, S = self.matrix, self.sigma
        if D.shape != S.shape or D.shape[0] != 2 * self.k + 2 * self.n:
            raise ContractError("extended Hessian block sizes inconsistent")
        if not np.array_equal(S @ S, -np.eye(S.shape[0])):
            raise ContractError("sigma^2 != -Id")
        sym = float(np.max(np.abs(D - D.T))) if D.size else 0.0
        anti = float(np.max(np.abs(S @ D + D @ S))) if D.size else 0.0
        scale = max(1.0, float(np.max(np.abs(D)))) if D.size else 1.0
        if sym > 1e-12 * scale:
            raise ContractError("extended Hessian not symmetric")
        if anti > 1e-12 * scale:
            raise ContractError("sigma D + D sigma != 0")
        object.__setattr__(self, "symmetry_defect", sym)
        object.__setattr__(self, "anticommute_defect", anti)

    def eigenvalues(self):
        return eigh(self.matrix, eigvals_only=True)


@dataclass(frozen=True)
class SpectralReport:
    r"""Spectral constants at a critical point.

    lambda1 is the smallest |eigenvalue| of D^; zeta1/zeta2 are the
    singular-value constants described in the module docstring and
    zeta = min(zeta1, zeta2).  For a trivial group zeta1 is None and
    zeta = zeta2.  symmetry_defect records how well the spectrum pairs
    (lam, -lam); it is forced below 1e-9 by the sigma-anticommutation.
    """

    eigenvalues: np.ndarray
    lambda1: float
    zeta1: float | None
    zeta2: float
    zeta: float
    symmetry_defect: float

    def as_dict(self):
        return {
            "eigenvalues": [float(t) for t in self.eigenvalues],
            "lambda1": float(self.lambda1),
            "zeta1": None if self.zeta1 is None else float(self.zeta1),
            "zeta2": float(self.zeta2),
            "zeta": float(self.zeta),
            "symmetry_defect": float(self.symmetry_defect),
        }


# ---------------------------------------------------------------------------
# Newton search for Crit(L)
# ---------------------------------------------------------------------------

def _newton_grad_L(m, z0, tol=_NEWTON_TOL, max_iter=_NEWTON_MAX_ITER):
    r"""Damped Newton for grad L = 0 on R^2n from a single seed.

    Steps are minimum-norm least-squares solutions of the symmetric
    system Hess L . d = -grad L, so orbit directions in the kernel (the
    Morse-Bott degeneracy) are simply not moved along.  Armijo
    backtracking on \|grad L\|^2 keeps far-away seeds under control.
    """
    x = gm.to_real(np.asarray(z0, dtype=complex))
    g = gm.to_real(gm.grad_L(m, gm.from_real(x)))
    fval = float(g @ g)
    for _ in range(max_iter):
        res = np.sqrt(fval)
        if res < tol:
            return gm.from_real(x), res
        H = gm.hess_L_matrix_real(m, gm.from_real(x))
        # Truncated min-norm step: singular values below the kernel
        # threshold carry no step, so Morse-Bott valleys are not slid
        # along and the iterate stays near the seed's orbit.
        d, *_ = np.linalg.lstsq(H, -g, rcond=_KERNEL_RTOL)
        slope = float(g @ (H @ d))          # = -|P g|^2 <= 0
        if slope >= -1e-12 * fval:
            break                            # gradient orthogonal to range
        t = 1.0
        while t > 1e-12:
            g_new = gm.to_real(gm.grad_L(m, gm.from_real(x + t * d)))
            f_new = float(g_new @ g_new)
            if f_new <= fval + 1e-4 * t * 2.0 * slope:
                break
            t *= 0.5
        else:
            break
        x = x + t * d
        g, fval = g_new, f_new
    res = float(np.linalg.norm(g))
    if res < tol:
        return gm.from_real(x), res
    raise NonConvergence("Newton stalled on grad L = 0",
                         best=gm.from_real(x), residual=res)


def _orbit_span_real(m, q):
    r"""Columns spanning the real orbit tangent {xi~_a, J xi~_a} at q."""
    cols = []
    for a in range(m.k):
        xi = np.zeros(m.k)
        xi[a] = 1.0
        v = gm.infinitesimal_action(m, q, xi)
        cols.append(gm.to_real(v))
        cols.append(gm.to_real(1j * v))
    if not cols:
        return np.zeros((2 * m.n, 0))
    return np.stack(cols, axis=1)


def _rank(mat, rtol=_KERNEL_RTOL):
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def same_complex_orbit(m, z1, z2, tol=1e-8):
    r"""Decide whether z1 and z2 lie on one G_C-orbit (numerically).

    Component supports must agree; on the support, the complex logs
    lambda_j = log(z2_j / z1_j) must solve sum_a g_a w_aj = lambda_j.
    The real parts form an ordinary least-squares system; the imaginary
    parts live mod 2pi, which for k = 1 is settled by a small branch
    sweep.  For k >= 2 only the principal branch is tried, so the test
    can err on the side of "different orbit" (a duplicate in a listing,
    never a lost point).
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    scale = max(float(np.max(np.abs(z1), initial=0.0)),
                float(np.max(np.abs(z2), initial=0.0)), 1.0)
    s1 = np.abs(z1) > tol * scale
    s2 = np.abs(z2) > tol * scale
    if not np.array_equal(s1, s2):
        return False
    if not s1.any():
        return True
    if m.k == 0:
        return bool(np.linalg.norm(z1 - z2) < tol * scale)
    ws = m.weights[:, s1].astype(float)      # (k, s)
    lam = np.log(z2[s1] / z1[s1])            # principal branch
    re, *_ = np.linalg.lstsq(ws.T, lam.real, rcond=None)
    if np.linalg.norm(ws.T @ re - lam.real) > tol:
        return False
    phases = lam.imag
    if m.k == 1:
        w = ws[0]
        nonzero = np.nonzero(w)[0]
        if nonzero.size == 0:
            return bool(np.max(np.abs(phases)) < tol)
        j0 = nonzero[0]
        for branch in range(-3, 4):
            theta = (phases[j0] + 2 * np.pi * branch) / w[j0]
            defect = (w * theta - phases + np.pi) % (2 * np.pi) - np.pi
            if np.max(np.abs(defect)) < tol:
                return True
        return False
    im, *_ = np.linalg.lstsq(ws.T, phases, rcond=None)
    defect = (ws.T @ im - phases + np.pi) % (2 * np.pi) - np.pi
    return bool(np.max(np.abs(defect)) < tol)


def find_critical_points(m, seeds, tol=1e-10, max_iter=_NEWTON_MAX_ITER):
    r"""Damped-Newton search for Crit(L) from a list of seeds.

    Converged points are deduplicated modulo the complexified gauge
    orbit (Crit(L) is G_C-invariant, so one representative per orbit is
    the meaningful count).  Seeds that fail to converge are logged and
    skipped.  Output order follows the first seed that reached each
    orbit.

    When grad L is homogeneous (all monomials of W of one degree) the
    Newton step from any seed is a pure rescaling towards the origin,
    which is then the critical point actually reached; seeds should sit
    on, or be polished towards, the nontrivial strata one cares about.
    """
    found = []
    for idx, seed in enumerate(seeds):
        try:
            z, res = _newton_grad_L(m, seed, tol=min(tol, _NEWTON_TOL),
                                    max_iter=max_iter)
        except NonConvergence as exc:
            if exc.residual is not None and exc.residual < tol:
                z, res = exc.best, exc.residual   # good enough for listing
            else:
                logger.warning("seed %d: %s (residual %s)", idx, exc,
                               exc.residual)
                continue
        if any(same_complex_orbit(m, c.z, z) for c in found):
            continue
        ok, kdim, odim = morse_bott_check(m, z)
        free = bool(m.k == 0 or odim == 2 * m.k)
        found.append(CriticalPoint(z=z, grad_norm=res, hess_kernel_dim=kdim,
                                   orbit_tangent_dim=odim,
                                   is_free_orbit=free))
    return found


# ---------------------------------------------------------------------------
# Morse-Bott check
# ---------------------------------------------------------------------------

def morse_bott_check(m, q, tol=_CRITICAL_TOL):
    r"""(kernel == orbit tangent?, kernel dim, orbit dim) at a zero of grad L.

    The kernel of the real Hessian of L is compared with the span of
    {xi~_a, J xi~_a}: transverse nondegeneracy (the finite-dimensional
    Morse-Bott condition along the orbit) holds iff the two subspaces
    agree, tested by dimension count plus principal angles below 1e-6.
    Singular values below 1e-8 times the largest count as kernel.
    """
    q = np.asarray(q, dtype=complex)
    H = gm.hess_L_matrix_real(m, q)
    scale = max(1.0, float(np.linalg.norm(H, 2)) if H.size else 0.0)
    gnorm = float(np.linalg.norm(gm.grad_L(m, q)))
    if gnorm > tol * scale:
        raise NotCritical("grad L residual %.3e exceeds %.1e" %
                          (gnorm, tol * scale))
    sv = np.linalg.svd(H, compute_uv=False)
    smax = sv[0] if sv.size else 0.0
    if smax == 0.0:
        kdim = 2 * m.n
        kernel_basis = np.eye(2 * m.n)
    else:
        small = sv < _KERNEL_RTOL * smax
        kdim = int(np.sum(small))
        _, _, vt = np.linalg.svd(H)
        kernel_basis = vt[2 * m.n - kdim:].T if kdim else None
    orbit = _orbit_span_real(m, q)
    odim = _rank(orbit)
    if kdim != odim:
        return False, kdim, odim
    if kdim == 0:
        return True, 0, 0
    angles = subspace_angles(kernel_basis, orth(orbit))
    return bool(np.max(angles) < _ANGLE_TOL), kdim, odim


# ---------------------------------------------------------------------------
# Extended Hessian and spectral constants
# ---------------------------------------------------------------------------

def assemble_extended_hessian(m, q):
    r"""Real block matrix of D^ at q together with its sigma."""
    q = np.asarray(q, dtype=complex)
    n, k = m.n, m.k
    Mmu = gm.mu_pairing_matrix(m, q)
    MJmu = gm.Jmu_pairing_matrix(m, q)
    HL = gm.hess_L_matrix_real(m, q)
    size = 2 * k + 2 * n
    D = np.zeros((size, size))
    D[:k, 2 * k:] = Mmu
    D[k:2 * k, 2 * k:] = MJmu
    D[2 * k:, :k] = Mmu.T
    D[2 * k:, k:2 * k] = MJmu.T
    D[2 * k:, 2 * k:] = HL
    S = np.zeros((size, size))
    S[:k, k:2 * k] = np.eye(k)
    S[k:2 * k, :k] = -np.eye(k)
    S[2 * k:, 2 * k:] = gm.J_real(n)
    return ExtendedHessian(matrix=D, sigma=S, n=n, k=k)


def d_matrix_real(m, q):
    r"""Stacked real matrix of v -> (Hess H v, <grad mu, v>, <grad mu, Jv>).

    Shape (2n + 2k, 2n); its smallest singular value is zeta2.  The
    third block uses <grad mu_a, Jv> = -<J grad mu_a, v>.
    """
    q = np.asarray(q, dtype=complex)
    return np.concatenate([gm.hess_H_matrix_real(m, q),
                           gm.mu_pairing_matrix(m, q),
                           -gm.Jmu_pairing_matrix(m, q)], axis=0)


def spectral_gap(m, q, tol=_CRITICAL_TOL, free_tol=1e-10):
    r"""SpectralReport (lambda1, zeta1, zeta2, zeta) at a critical point.

    Raises NotCritical away from Crit(L) and NotFreeOrbit when the
    moment-map pairing degenerates (zeta1 ~ 0, e.g. at a torus fixed
    point), since the constants only control decay along free orbits.
    """
    q = np.asarray(q, dtype=complex)
    eh = assemble_extended_hessian(m, q)
    scale = max(1.0, float(np.linalg.norm(eh.matrix, 2)))
    gnorm = float(np.linalg.norm(gm.grad_L(m, q)))
    if gnorm > tol * scale:
        raise NotCritical("grad L residual %.3e exceeds %.1e" %
                          (gnorm, tol * scale))
    eigs = eh.eigenvalues()
    lambda1 = float(np.min(np.abs(eigs)))
    symmetry = float(np.max(np.abs(np.sort(eigs) + np.sort(-eigs)[::-1])))
    if m.k:
        sv1 = np.linalg.svd(gm.mu_pairing_matrix(m, q), compute_uv=False)
        zeta1 = float(sv1[-1])
        if zeta1 < free_tol * max(1.0, sv1[0]):
            raise NotFreeOrbit("moment-map pairing degenerate, zeta1 = %.3e"
                               % zeta1)
    else:
        zeta1 = None
    sv2 = np.linalg.svd(d_matrix_real(m, q), compute_uv=False)
    zeta2 = float(sv2[-1])
    zeta = zeta2 if zeta1 is None else min(zeta1, zeta2)
    return SpectralReport(eigenvalues=np.sort(eigs), lambda1=lambda1,
                          zeta1=zeta1, zeta2=zeta2, zeta=zeta,
                          symmetry_defect=symmetry)


# ---------------------------------------------------------------------------
# Delta-slice solver
# ---------------------------------------------------------------------------

def delta_slice_log(m, q, delta=None, tol=_NEWTON_TOL, max_iter=100):
    r"""Real alpha in R^k with mu(exp(alpha . w) q) = delta.

    Newton iteration on G(alpha) = mu(exp(alpha) q) - delta.  The
    Jacobian is the Gram matrix G_ab = sum_j w_aj w_bj |q_j|^2
    exp(2 (alpha . w)_j), positive definite precisely when the orbit is
    free, and the map is monotone along the orbit, so the iteration
    either converges or runs off to infinity when delta is not an
    attainable level (orbit closure hitting fixed loci); the latter is
    reported as Unattainable.
    """
    q = np.asarray(q, dtype=complex)
    delta = m.delta if delta is None else np.asarray(delta, dtype=float)
    alpha = np.zeros(m.k)
    sq = np.abs(q) ** 2

    def residual(a):
        scaled = sq * np.exp(2.0 * a @ m.weights)
        return 0.5 * m.weights @ scaled + m.mu_offset - delta, scaled

    for _ in range(max_iter):
        G, scaled_sq = residual(alpha)
        fval = float(G @ G)
        if np.sqrt(fval) < tol:
            return alpha
        gram = (m.weights * scaled_sq) @ m.weights.T
        try:
            d = np.linalg.solve(gram, -G)
        except np.linalg.LinAlgError:
            raise Unattainable("slice Jacobian singular at alpha=%s"
                               % alpha) from None
        t = 1.0
        while t > 1e-12:
            Gt, _ = residual(alpha + t * d)
            if float(Gt @ Gt) <= (1.0 - 1e-4 * t) * fval:
                break
            t *= 0.5
        else:
            raise Unattainable("slice Newton stalled, residual %.3e"
                               % np.sqrt(fval))
        alpha = alpha + t * d
        if np.max(np.abs(alpha)) > 50.0:
            raise Unattainable("slice parameter diverged, delta outside "
                               "the reachable moment levels")
    raise Unattainable("slice Newton hit the iteration cap, residual %.3e"
                       % np.sqrt(fval))


def solve_delta_slice(m, q, delta=None, tol=_NEWTON_TOL, max_iter=100):
    r"""Representative exp(alpha . w) q of the orbit on the delta level set.

    The W value is unchanged (W is G_C-invariant) and the returned point
    satisfies \|mu - delta\| < 1e-10.
    """
    alpha = delta_slice_log(m, q, delta=delta, tol=tol, max_iter=max_iter)
    return gm.complex_gauge_act(m, alpha.astype(complex), q)
