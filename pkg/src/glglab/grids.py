r"""Finite-difference calculus for gauge-field configurations on rectangles.

A configuration on a truncated domain is a triple (P, a_t, a_s): the map
P into C^n sampled on nodes, and the real Lie-algebra coefficients of
the connection 1-form a = a_t dt + a_s ds.  Arrays carry the layout
(ns, nt, components) with s along axis 0 and t along axis 1; stored
row-major, so among node indices t varies fastest.

Derived quantities follow the continuum formulas sampled on nodes:

    T = d_t P + a~(a_t),   S = d_s P + a~(a_s),
    F = d_s a_t - d_t a_s          (the function -*F_A, dt^ds positive),

with second-order central differences inside and one-sided second-order
stencils on the boundary, so every identity checked here holds up to
O(h^2) and is exact on data where the exact derivative is linear.

Two energy forms are integrated by the trapezoid rule: the residual form

    |T|^2 + |JS + grad H|^2 + |F|^2 + |delta - mu|^2

and the solution form |T|^2 + |S|^2 + |grad H|^2 + |F|^2 + |delta-mu|^2,
whose integrand is also exposed as the pointwise density used by the
decay estimates (on a solution the two integrals agree up to boundary
terms).
"""

import json
import os
from dataclasses import dataclass

import numpy as np

from . import models as gm
from .errors import RegionOutOfBounds, ShapeMismatch
from .reports import atomic_write_bytes as _atomic_bytes

_GRID_KINDS = ("plane", "half_plane", "strip")


# ---------------------------------------------------------------------------
# Grid and configuration containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid2D:
    r"""Uniform square-cell grid on [t0,t1] x [s0,s1] with (nt, ns) nodes."""

    kind: str
    t_range: tuple
    s_range: tuple
    nt: int
    ns: int

    def __post_init__(self):
        if self.kind not in _GRID_KINDS:
            raise ShapeMismatch("unknown grid kind %r" % (self.kind,))
        if self.nt < 3 or self.ns < 3:
            raise ShapeMismatch("grids need at least 3 nodes per direction")
        ht = (self.t_range[1] - self.t_range[0]) / (self.nt - 1)
        hs = (self.s_range[1] - self.s_range[0]) / (self.ns - 1)
        if not (ht > 0 and hs > 0):
            raise ShapeMismatch("degenerate grid ranges")
        if abs(ht - hs) > 1e-12 * max(ht, hs):
            raise ShapeMismatch("cells must be square: ht=%r hs=%r"
                                % (ht, hs))

    @property
    def h(self) -> float:
        return (self.t_range[1] - self.t_range[0]) / (self.nt - 1)

    @property
    def t(self):
        return np.linspace(self.t_range[0], self.t_range[1], self.nt)

    @property
    def s(self):
        return np.linspace(self.s_range[0], self.s_range[1], self.ns)

    def mesh(self):
        r"""(tt, ss) arrays of shape (ns, nt)."""
        return np.meshgrid(self.t, self.s)

    def as_dict(self):
        return {
            "kind": self.kind,
            "t_range": [float(self.t_range[0]), float(self.t_range[1])],
            "s_range": [float(self.s_range[0]), float(self.s_range[1])],
            "nt": int(self.nt),
            "ns": int(self.ns),
        }


def grid_from_dict(d) -> Grid2D:
    return Grid2D(kind=d["kind"], t_range=tuple(d["t_range"]),
                  s_range=tuple(d["s_range"]), nt=int(d["nt"]),
                  ns=int(d["ns"]))


@dataclass
class FieldConfig:
    r"""Sampled configuration (P, a_t, a_s) on a grid."""

    P: np.ndarray        # (ns, nt, n) complex
    a_t: np.ndarray      # (ns, nt, k) real
    a_s: np.ndarray      # (ns, nt, k) real

    @classmethod
    def zeros(cls, m, grid):
        return cls(P=np.zeros((grid.ns, grid.nt, m.n), dtype=complex),
                   a_t=np.zeros((grid.ns, grid.nt, m.k)),
                   a_s=np.zeros((grid.ns, grid.nt, m.k)))

    @classmethod
    def constant(cls, m, grid, q):
        cfg = cls.zeros(m, grid)
        cfg.P[...] = np.asarray(q, dtype=complex)
        return cfg

    def copy(self):
        return FieldConfig(P=self.P.copy(), a_t=self.a_t.copy(),
                           a_s=self.a_s.copy())


def subsample(grid, cfg, step=2):
    r"""Every step-th node of (grid, cfg): same domain, spacing step * h.

    The node values are shared samples of the same underlying fields, so
    refinement studies can evaluate one configuration at two spacings
    without re-solving.  Requires (nt - 1) and (ns - 1) divisible by step.
    """
    if (grid.nt - 1) % step or (grid.ns - 1) % step:
        raise ShapeMismatch("node counts %s do not subsample by %d"
                            % ((grid.nt, grid.ns), step))
    coarse = Grid2D(grid.kind, grid.t_range, grid.s_range,
                    (grid.nt - 1) // step + 1, (grid.ns - 1) // step + 1)
    return coarse, FieldConfig(P=cfg.P[::step, ::step].copy(),
                               a_t=cfg.a_t[::step, ::step].copy(),
                               a_s=cfg.a_s[::step, ::step].copy())


def check_shapes(m, grid, cfg):
    want_P = (grid.ns, grid.nt, m.n)
    want_a = (grid.ns, grid.nt, m.k)
    if cfg.P.shape != want_P:
        raise ShapeMismatch("P has shape %s, want %s" % (cfg.P.shape, want_P))
    if cfg.a_t.shape != want_a or cfg.a_s.shape != want_a:
        raise ShapeMismatch("connection has shape %s/%s, want %s"
                            % (cfg.a_t.shape, cfg.a_s.shape, want_a))
    if not (np.all(np.isfinite(cfg.P.view(float)))
            and np.all(np.isfinite(cfg.a_t))
            and np.all(np.isfinite(cfg.a_s))):
        raise ShapeMismatch("non-finite entries in configuration")


@dataclass
class DerivedFields:
    r"""Covariant derivatives, curvature function and moment map per node.

    All stencils are second order; ``boundary_mask`` marks the nodes
    where they are one-sided.
    """

    T: np.ndarray
    S: np.ndarray
    F: np.ndarray
    mu_field: np.ndarray
    boundary_mask: np.ndarray


@dataclass(frozen=True)
class EnergyBreakdown:
    r"""Trapezoid integrals of the energy integrands over a rectangle.

    total = e_T + e_JSH + e_F + e_mu is the residual-form energy whose
    vanishing characterizes solutions; total_second replaces the middle
    term by |S|^2 + |grad H|^2 (the form whose density enters the decay
    estimates).
    """

    e_T: float
    e_JSH: float
    e_F: float
    e_mu: float
    total: float
    e_S: float
    e_gradH: float
    total_second: float

    def as_dict(self):
        return {k: float(getattr(self, k)) for k in
                ("e_T", "e_JSH", "e_F", "e_mu", "total",
                 "e_S", "e_gradH", "total_second")}


# ---------------------------------------------------------------------------
# Finite differences
# ---------------------------------------------------------------------------

def d_t(grid, f):
    r"""Second-order t-derivative (axis 1), one-sided at the ends."""
    return np.gradient(f, grid.h, axis=1, edge_order=2)


def d_s(grid, f):
    r"""Second-order s-derivative (axis 0), one-sided at the ends."""
    return np.gradient(f, grid.h, axis=0, edge_order=2)


def boundary_mask(grid):
    mask = np.zeros((grid.ns, grid.nt), dtype=bool)
    mask[0, :] = mask[-1, :] = True
    mask[:, 0] = mask[:, -1] = True
    return mask


# ---------------------------------------------------------------------------
# Derived fields and residuals
# ---------------------------------------------------------------------------

def covariant_derivatives(m, grid, cfg) -> DerivedFields:
    r"""T = d_t P + a~(a_t), S = d_s P + a~(a_s), F = d_s a_t - d_t a_s."""
    check_shapes(m, grid, cfg)
    T = d_t(grid, cfg.P) + gm.infinitesimal_action(m, cfg.P, cfg.a_t)
    S = d_s(grid, cfg.P) + gm.infinitesimal_action(m, cfg.P, cfg.a_s)
    F = d_s(grid, cfg.a_t) - d_t(grid, cfg.a_s)
    mu = gm.moment_map(m, cfg.P)
    return DerivedFields(T=T, S=S, F=F, mu_field=mu,
                         boundary_mask=boundary_mask(grid))


@dataclass
class WittenResidual:
    r"""Node fields (F + mu - delta, T + JS + grad H) with their norms."""

    first: np.ndarray     # (ns, nt, k) real
    second: np.ndarray    # (ns, nt, n) complex
    max_norm: float
    l2_norm: float


def residual(m, grid, cfg) -> WittenResidual:
    r"""Pointwise defect of the two gauged Witten equations."""
    der = covariant_derivatives(m, grid, cfg)
    first = der.F + der.mu_field - m.delta
    second = der.T + 1j * der.S + gm.grad_H(m, cfg.P)
    sq = np.sum(first ** 2, axis=-1) + np.sum(np.abs(second) ** 2, axis=-1)
    max_norm = float(np.sqrt(np.max(sq))) if sq.size else 0.0
    l2 = float(np.sqrt(_integrate(grid, sq)))
    return WittenResidual(first=first, second=second,
                          max_norm=max_norm, l2_norm=l2)


# ---------------------------------------------------------------------------
# Energies
# ---------------------------------------------------------------------------

def _integrate(grid, density, region=None):
    r"""Trapezoid integral of a (ns, nt) density, optionally over a
    sub-rectangle region = (t0, t1, s0, s1) snapped to nodes."""
    if region is None:
        return float(np.trapezoid(np.trapezoid(density, dx=grid.h, axis=1),
                                  dx=grid.h, axis=0))
    it0, it1, is0, is1 = region_slices(grid, region)
    part = density[is0:is1 + 1, it0:it1 + 1]
    return float(np.trapezoid(np.trapezoid(part, dx=grid.h, axis=1),
                              dx=grid.h, axis=0))


def region_slices(grid, region):
    r"""Node-index bounds for a sub-rectangle (t0, t1, s0, s1)."""
    t0, t1, s0, s1 = region
    eps = 1e-9 * grid.h
    if (t0 < grid.t_range[0] - eps or t1 > grid.t_range[1] + eps
            or s0 < grid.s_range[0] - eps or s1 > grid.s_range[1] + eps
            or t1 <= t0 or s1 <= s0):
        raise RegionOutOfBounds("region %s outside grid %s x %s"
                                % (region, grid.t_range, grid.s_range))
    it0 = int(round((t0 - grid.t_range[0]) / grid.h))
    it1 = int(round((t1 - grid.t_range[0]) / grid.h))
    is0 = int(round((s0 - grid.s_range[0]) / grid.h))
    is1 = int(round((s1 - grid.s_range[0]) / grid.h))
    return it0, it1, is0, is1


def energy_density(m, grid, cfg, der=None):
    r"""Solution-form density |T|^2+|S|^2+|grad H|^2+|F|^2+|delta-mu|^2."""
    if der is None:
        der = covariant_derivatives(m, grid, cfg)
    gH = gm.grad_H(m, cfg.P)
    return (np.sum(np.abs(der.T) ** 2, axis=-1)
            + np.sum(np.abs(der.S) ** 2, axis=-1)
            + np.sum(np.abs(gH) ** 2, axis=-1)
            + np.sum(der.F ** 2, axis=-1)
            + np.sum((m.delta - der.mu_field) ** 2, axis=-1))


def energies(m, grid, cfg, region=None) -> EnergyBreakdown:
    r"""Both energy forms integrated over the grid or a sub-rectangle."""
    der = covariant_derivatives(m, grid, cfg)
    gH = gm.grad_H(m, cfg.P)
    d_T = np.sum(np.abs(der.T) ** 2, axis=-1)
    d_JSH = np.sum(np.abs(1j * der.S + gH) ** 2, axis=-1)
    d_F = np.sum(der.F ** 2, axis=-1)
    d_mu = np.sum((m.delta - der.mu_field) ** 2, axis=-1)
    d_S = np.sum(np.abs(der.S) ** 2, axis=-1)
    d_gH = np.sum(np.abs(gH) ** 2, axis=-1)
    e = [_integrate(grid, d, region)
         for d in (d_T, d_JSH, d_F, d_mu, d_S, d_gH)]
    return EnergyBreakdown(e_T=e[0], e_JSH=e[1], e_F=e[2], e_mu=e[3],
                           total=e[0] + e[1] + e[2] + e[3],
                           e_S=e[4], e_gradH=e[5],
                           total_second=e[0] + e[4] + e[5] + e[2] + e[3])


def window_energies(m, grid, cfg, R, width=4.0, half_width=2.0):
    r"""Local solution-form energies over the translates [n-2, n+2] x
    [R, R+width] that fit inside the grid; returns (centers, values)."""
    der = covariant_derivatives(m, grid, cfg)
    dens = energy_density(m, grid, cfg, der)
    if R < grid.s_range[0] - 1e-9 or R + width > grid.s_range[1] + 1e-9:
        raise RegionOutOfBounds("window band [%s, %s] outside s-range"
                                % (R, R + width))
    n_lo = int(np.ceil(grid.t_range[0] + half_width - 1e-9))
    n_hi = int(np.floor(grid.t_range[1] - half_width + 1e-9))
    centers, values = [], []
    for c in range(n_lo, n_hi + 1):
        region = (c - half_width, c + half_width, R, R + width)
        values.append(_integrate(grid, dens, region))
        centers.append(c)
    return np.array(centers), np.array(values)


# ---------------------------------------------------------------------------
# Gauge transformations
# ---------------------------------------------------------------------------

def apply_gauge(m, grid, cfg, u) -> FieldConfig:
    r"""Gauge transform by angles u: P -> u.P, a -> a - du (FD for du)."""
    u = np.asarray(u, dtype=float)
    if u.shape != (grid.ns, grid.nt, m.k):
        raise ShapeMismatch("gauge angles have shape %s" % (u.shape,))
    return FieldConfig(P=gm.gauge_act(m, u, cfg.P),
                       a_t=cfg.a_t - d_t(grid, u),
                       a_s=cfg.a_s - d_s(grid, u))


def covariant_vector_derivative(m, grid, cfg, v, direction):
    r"""Covariant derivative of a vector field v along P.

    Flat target: nabla^A_dir v = d_dir v + J <Hess mu(v), a_dir>, the
    correction being multiplication of v_j by i (a_dir . w)_j.
    """
    if v.shape != cfg.P.shape:
        raise ShapeMismatch("vector field shape %s != P shape %s"
                            % (v.shape, cfg.P.shape))
    if direction == "t":
        dv, a = d_t(grid, v), cfg.a_t
    elif direction == "s":
        dv, a = d_s(grid, v), cfg.a_s
    else:
        raise ShapeMismatch("direction must be 't' or 's'")
    return dv + 1j * gm.hess_mu_pair(m, cfg.P, v, a)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_FIELD_SPECS = (("P", "<c16"), ("a_t", "<f8"), ("a_s", "<f8"))


def save_fields(dirpath, m, grid, cfg):
    r"""Snapshot a configuration: one .bin per field + header.json.

    Layout is row-major (s, t, component); little-endian complex128 for
    P and float64 for the connection.  The header records the grid, the
    model hash and per-field dtype/shape, and the writes are atomic so a
    crash never leaves a torn snapshot.
    """
    check_shapes(m, grid, cfg)
    os.makedirs(dirpath, exist_ok=True)
    header = {
        "format": "glglab-fields",
        "version": 1,
        "model_hash": gm.model_hash(m),
        "grid": grid.as_dict(),
        "layout": "row-major (s, t, component); t fastest among nodes",
        "fields": [],
    }
    for name, dtype in _FIELD_SPECS:
        arr = np.ascontiguousarray(getattr(cfg, name)).astype(dtype)
        fname = name + ".bin"
        _atomic_bytes(os.path.join(dirpath, fname), arr.tobytes())
        header["fields"].append({"name": name, "dtype": dtype,
                                 "shape": list(arr.shape), "file": fname})
    payload = json.dumps(header, sort_keys=True,
                         separators=(",", ":")).encode()
    _atomic_bytes(os.path.join(dirpath, "header.json"), payload)


def load_fields(dirpath, m=None):
    r"""Inverse of save_fields; returns (grid, cfg).  When a model is
    given its hash is checked against the snapshot."""
    with open(os.path.join(dirpath, "header.json"), "rb") as fh:
        header = json.load(fh)
    if m is not None and header["model_hash"] != gm.model_hash(m):
        raise ShapeMismatch("snapshot belongs to a different model")
    grid = grid_from_dict(header["grid"])
    data = {}
    for spec in header["fields"]:
        raw = np.fromfile(os.path.join(dirpath, spec["file"]),
                          dtype=spec["dtype"])
        data[spec["name"]] = raw.reshape(spec["shape"])
    return grid, FieldConfig(P=data["P"], a_t=data["a_t"], a_s=data["a_s"])


def export_density_csv(path, grid, density):
    r"""Write per-node density as CSV rows t,s,value (repr floats)."""
    lines = ["t,s,value"]
    t, s = grid.t, grid.s
    for i in range(grid.ns):
        for j in range(grid.nt):
            lines.append("%r,%r,%r" % (float(t[j]), float(s[i]),
                                       float(density[i, j])))
    _atomic_bytes(path, ("\n".join(lines) + "\n").encode())
