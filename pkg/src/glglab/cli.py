r"""The ``glg`` command: reproducible experiment runs from the shell.

Each subcommand drives one experiment, writes its report as canonical
JSON plus a flat key/value CSV into the output directory, and prints a
single [PASS]/[FAIL] line.  Exit codes: 0 when the experiment passed,
2 when it ran but failed its flags (or diverged), 1 for usage and
configuration errors.  Identical invocations produce byte-identical
report files; there are no timestamps and all randomness is seeded.

``glg suite quick`` runs the whole roster on halved grids, ``glg suite
full`` at production scale, writing a consolidated scorecard.  Set
GLG_THREADS to cap the BLAS/OpenMP thread pools of a run.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import experiments as ge
from . import grids as gg
from . import models as gm
from . import reports
from . import stability as gst
from . import surface as gsf
from . import vortex as gv
from .errors import ConfigError, ContractError, GlgError
from .reports import ExperimentReport


_DEFAULT_POINTS = {"fundamental": "1,1,0", "vortex": "1", "xy": "0,0"}

# flowline starts sit off the critical set (on the moment-map slice, so
# the t-invariant embedding still solves both equations exactly)
_DEFAULT_STARTS = {"fundamental": "1.2,1.2,0.3", "vortex": "1",
                   "xy": "0.8,-0.5"}


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    r"""argparse that reports usage problems via exceptions, not exit(2)."""

    def error(self, message):
        raise _UsageError("%s: %s" % (self.prog, message))


def _pair(text):
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            "expected two comma-separated numbers, got %r" % text)
    return float(parts[0]), float(parts[1])


def _complex_list(text):
    try:
        return [complex(p.strip().replace(" ", ""))
                for p in str(text).split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated complex numbers, got %r" % text)


def _one_complex(text):
    vals = _complex_list(text)
    if len(vals) != 1:
        raise argparse.ArgumentTypeError("expected one complex number")
    return vals[0]


def _resolve_point(text, model_source, m, what="--q", table=None):
    r"""Parse a point in C^n, falling back to the preset's table entry."""
    if text is None:
        table = _DEFAULT_POINTS if table is None else table
        text = table.get(model_source) \
            if isinstance(model_source, str) else None
        if text is None:
            raise ConfigError("%s is required for this model" % what)
    try:
        vals = np.array([complex(p.strip()) for p in str(text).split(",")
                         if p.strip()], dtype=complex)
    except ValueError as exc:
        raise ConfigError("cannot parse %s=%r: %s" % (what, text, exc))
    if vals.size != m.n:
        raise ConfigError("%s has %d components, model wants n=%d"
                          % (what, vals.size, m.n))
    return vals


def _require_refinable(nodes):
    if (nodes - 1) % 2:
        raise ConfigError("refinement study needs an even interval count; "
                          "use an odd node count, not %d" % nodes)


def _stamp(rep, m=None, grid=None, seed=None):
    r"""Every written report carries model hash, grid spec and seed."""
    rep.inputs.setdefault("model_hash",
                          None if m is None else gm.model_hash(m))
    rep.inputs.setdefault("grid", None if grid is None else grid.as_dict())
    rep.inputs.setdefault("seed", seed)


def _write_report(args, rep, prefix=""):
    base = prefix + rep.name
    rep.write(os.path.join(args.out, base + ".json"))
    rows = [(k, float(v)) for k, v in sorted(rep.scalars.items())
            if v is not None]
    rows += [(k, int(bool(v))) for k, v in sorted(rep.flags.items())]
    rows.append(("passed", int(rep.passed)))
    reports.write_csv(os.path.join(args.out, base + ".csv"),
                      ["key", "value"], rows)
    return 0 if rep.passed else 2


def _smooth_torus_field(grid, seed, modes=3):
    r"""Seeded low-frequency periodic field, sup-normalized to 1."""
    rng = np.random.default_rng(seed)
    x, y = grid.mesh()
    L1, L2 = grid.periods
    f = np.zeros((grid.n1, grid.n2))
    for _ in range(modes):
        kx, ky = rng.integers(1, 4, size=2)
        p1, p2 = rng.uniform(0.0, 2.0 * np.pi, size=2)
        f += rng.normal() * np.cos(2.0 * np.pi * kx * x / L1 + p1) \
            * np.cos(2.0 * np.pi * ky * y / L2 + p2)
    return f / max(float(np.max(np.abs(f))), 1e-30)


def _strip_grid(s_start, length, nodes):
    half = 0.5 * length
    return gg.Grid2D("strip", (-half, half), (s_start, s_start + length),
                     nodes, nodes)


def _flowline_on(m, grid, start, dt):
    path, _ = ge.gradient_flowline(m, start, s_max=grid.s_range[1] + 0.5,
                                   dt=dt)
    return ge.flowline_config(m, grid, path)


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns the report to write)
# ---------------------------------------------------------------------------

def _cmd_check_identities(args):
    m = gm.load_model(args.model)
    rng = np.random.default_rng(args.seed)
    pts = (rng.normal(size=(args.points, m.n))
           + 1j * rng.normal(size=(args.points, m.n))) \
        * (args.radius / np.sqrt(2.0))
    idrep = gm.identity_suite(m, pts)
    rep = ExperimentReport(
        name="check-identities",
        inputs={"points": int(args.points), "radius": float(args.radius)})
    rep.scalars.update(idrep.as_dict())
    rep.scalars["max_residual"] = idrep.max_residual
    rep.flags["max_residual_below_1e-10"] = idrep.max_residual < 1e-10
    _stamp(rep, m=m, seed=args.seed)
    return rep


def _cmd_stability(args):
    m = gm.load_model(args.model)
    q = _resolve_point(args.point, args.model, m, "--point")
    ok, kdim, odim = gst.morse_bott_check(m, q)
    eh = gst.assemble_extended_hessian(m, q)
    sp = gst.spectral_gap(m, q)
    rep = ExperimentReport(
        name="stability",
        inputs={"point": [[float(c.real), float(c.imag)] for c in q]})
    rep.scalars.update({
        "lambda1": sp.lambda1,
        "zeta2": sp.zeta2,
        "zeta": sp.zeta,
        "spectrum_symmetry_defect": sp.symmetry_defect,
        "sigma_anticommute_defect": eh.anticommute_defect,
        "hessian_symmetry_defect": eh.symmetry_defect,
        "kernel_dim": float(kdim),
        "orbit_dim": float(odim),
    })
    if sp.zeta1 is not None:
        rep.scalars["zeta1"] = sp.zeta1
    rep.flags["morse_bott"] = ok
    rep.flags["spectrum_symmetric_1e-9"] = sp.symmetry_defect < 1e-9
    rep.flags["gap_positive"] = sp.lambda1 > 1e-10
    rep.note("extended Hessian eigenvalues: %s",
             np.array2string(sp.eigenvalues, precision=6))
    _stamp(rep, m=m)
    return rep


def _cmd_solve_witten(args):
    m = gm.load_model(args.model)
    start = _resolve_point(args.start, args.model, m, "--start",
                           table=_DEFAULT_STARTS)
    grid = _strip_grid(args.s_start, args.length, args.nodes)
    boundary = _flowline_on(m, grid, start, args.dt)
    init = boundary.copy()
    init.P *= 1.0 + args.perturb
    opts = ge.SolveOptions(gauge_fix=args.gauge, tol=args.tol,
                           max_iter=args.max_iter)
    cfg, rep = ge.solve_witten(m, grid, boundary, init=init, opts=opts)
    res = gg.residual(m, grid, cfg)
    rep.scalars["residual_max"] = res.max_norm
    rep.scalars["energy"] = gg.energies(m, grid, cfg).total
    if args.save_fields:
        target = os.path.join(args.out, "witten-fields")
        gg.save_fields(target, m, grid, cfg)
        rep.note("fields saved under witten-fields/")
    _stamp(rep, m=m, grid=grid)
    return rep


def _cmd_triviality(args):
    m = gm.load_model(args.model)
    q = _resolve_point(args.q, args.model, m)
    rep = ge.triviality_experiment(m, q, radius=args.radius,
                                   nodes=args.nodes, n_inits=args.inits,
                                   amplitude=args.amplitude, seed=args.seed,
                                   tol=args.tol)
    _stamp(rep, m=m, seed=args.seed)
    return rep


def _cmd_decay(args):
    m = gm.load_model(args.model)
    q = _resolve_point(args.q, args.model, m)
    rep = ge.decay_experiment(m, q, s_len=args.s_len, nodes=args.nodes,
                              amplitude=args.amplitude)
    _stamp(rep, m=m)
    return rep


def _refinement_input(args):
    if args.source == "vortex":
        m = gm.preset("vortex")
        profile = gv.solve_radial_vortex(args.charge)
        half = args.half_width
        grid = gg.Grid2D("plane", (-half, half), (-half, half),
                         args.nodes, args.nodes)
        return m, grid, gv.embed_vortex(profile, grid)
    m = gm.load_model(args.model)
    start = _resolve_point(args.start, args.model, m, "--start",
                           table=_DEFAULT_STARTS)
    grid = _strip_grid(args.s_start, args.length, args.nodes)
    return m, grid, _flowline_on(m, grid, start, args.dt)


def _cmd_bochner(args):
    _require_refinable(args.nodes)
    m, grid, cfg = _refinement_input(args)
    rep = ge.bochner_verify(m, grid, cfg, solution_tol=args.solution_tol)
    rep.inputs["source"] = args.source
    _stamp(rep, m=m, grid=grid)
    return rep


def _cmd_holomorphy(args):
    _require_refinable(args.nodes)
    m, grid, cfg = _refinement_input(args)
    rep = ge.holomorphy_check(m, grid, cfg, solution_tol=args.solution_tol)
    rep.inputs["source"] = args.source
    _stamp(rep, m=m, grid=grid)
    return rep


def _cmd_action_check(args):
    m = gm.load_model(args.model)
    q = _resolve_point(args.q, args.model, m)
    path = ge.windowed_test_path(m, q, s_len=args.s_len,
                                 nodes=args.path_nodes,
                                 amplitude=args.amplitude, seed=args.seed)
    rep = ge.action_gradient_check(m, path, seed=args.seed)
    rep.inputs["path_nodes"] = int(args.path_nodes)
    rep.inputs["amplitude"] = float(args.amplitude)
    _stamp(rep, m=m, seed=args.seed)
    return rep


def _cmd_flowline(args):
    m = gm.load_model(args.model)
    start = _resolve_point(args.start, args.model, m, "--start",
                           table=_DEFAULT_STARTS)
    path, rep = ge.gradient_flowline(m, start, s_max=args.s_max, dt=args.dt)
    Wv = gm.eval_W(m, path.p)
    gn = np.linalg.norm(gm.grad_L(m, path.p), axis=-1)
    reports.write_csv(os.path.join(args.out, "flowline-path.csv"),
                      ["s", "L", "H", "grad_norm"],
                      zip(path.s.tolist(), Wv.real.tolist(),
                          Wv.imag.tolist(), gn.tolist()))
    _stamp(rep, m=m)
    return rep


def _cmd_vortex(args):
    profile = gv.solve_radial_vortex(args.charge, r_max=args.r_max,
                                     nodes=args.nodes)
    fit = gv.vortex_decay_fit(profile, window=tuple(args.window))
    energy = gv.vortex_energy(profile)
    quantum = 2.0 * np.pi * args.charge
    rel = abs(energy - quantum) / quantum
    min_deficit = float(np.min(profile.half_deficit))
    rep = ExperimentReport(
        name="vortex",
        inputs={"charge": int(args.charge), "r_max": float(args.r_max),
                "nodes": int(args.nodes), "window": list(args.window)})
    rep.scalars.update(fit.scalars)
    rep.flags.update(fit.flags)
    rep.log.extend(fit.log)
    rep.scalars.update({"energy": energy, "energy_quantum": quantum,
                        "energy_rel_error": rel,
                        "min_half_deficit": min_deficit})
    rep.flags["energy_within_1pct"] = rel < 0.01
    rep.flags["half_deficit_nonnegative"] = min_deficit >= -1e-12
    reports.write_csv(os.path.join(args.out, "vortex-profile.csv"),
                      ["r", "u", "half_deficit"],
                      zip(profile.r.tolist(), profile.u.tolist(),
                          profile.half_deficit.tolist()))
    _stamp(rep, m=gm.preset("vortex"))
    return rep


def _cmd_kw_solve(args):
    L1, L2 = args.periods
    n2 = args.nodes * L2 / L1
    if abs(n2 - round(n2)) > 1e-9:
        raise ConfigError("periods %s and %d nodes give non-square cells"
                          % (args.periods, args.nodes))
    grid = gsf.TorusGrid(periods=(L1, L2), n1=args.nodes, n2=int(round(n2)))
    w = gsf.WeightFields.constant(grid, args.w_plus, args.w_minus)
    data = args.data_shift \
        + args.data_amplitude * _smooth_torus_field(grid, args.seed)
    alpha, rep = gsf.kazdan_warner_solve(grid, w, g=data, tol=args.tol)
    rep.inputs.update({"w_plus": float(args.w_plus),
                       "w_minus": float(args.w_minus),
                       "data_shift": float(args.data_shift),
                       "data_amplitude": float(args.data_amplitude)})
    _stamp(rep, seed=args.seed)
    return rep


def _cmd_torus_crit(args):
    a = args.a
    p, q = gsf.torus_constant_solution(a, args.delta)
    scale = max(1.0, abs(a) ** 2, abs(args.delta))
    e_prod = abs(p * q - 2.0 * abs(a) ** 2)
    e_diff = abs((p - q) - 2.0 * args.delta)
    rep = ExperimentReport(
        name="torus-crit",
        inputs={"a": [a.real, a.imag], "delta": float(args.delta)})
    rep.scalars.update({"density_plus": p, "density_minus": q,
                        "pairing_defect": e_prod,
                        "level_defect": e_diff})
    rep.flags["pairing_equation_1e-12"] = e_prod < 1e-12 * scale
    rep.flags["level_equation_1e-12"] = e_diff < 1e-12 * scale
    rep.flags["densities_nonnegative"] = p >= 0.0 and q >= 0.0
    _stamp(rep)
    return rep


def _cmd_count_orbits(args):
    count = gsf.count_critical_orbits(args.genus, args.degree,
                                      args.punctures)
    rep = ExperimentReport(
        name="count-orbits",
        inputs={"genus": int(args.genus), "degree": int(args.degree),
                "punctures": int(args.punctures)})
    rep.scalars["count"] = float(count)
    if count <= 200000:
        subsets = gsf.enumerate_critical_orbits(args.genus, args.degree,
                                                args.punctures)
        rep.flags["count_matches_enumerator"] = len(subsets) == count
    else:
        rep.note("enumerator skipped above 200000 orbits")
    print("critical orbits: %d" % count)
    _stamp(rep)
    return rep


def _cmd_sphere_zeros(args):
    p = args.punctures
    a = args.residues
    zeros, rep = gsf.punctured_sphere_zeros(p, a,
                                            simple_tol=args.simple_tol)
    recovered = gsf.contour_residues(p, a)
    defect = float(np.max(np.abs(recovered - np.asarray(a))))
    rep.scalars["contour_residue_defect"] = defect
    rep.flags["contour_residues_match"] = \
        defect < 1e-8 * max(1.0, float(np.max(np.abs(a))))
    order = np.argsort(zeros.real + 1e-9 * zeros.imag)
    reports.write_csv(os.path.join(args.out, "sphere-zeros-roots.csv"),
                      ["re", "im"],
                      [(float(z.real), float(z.imag))
                       for z in zeros[order]])
    for z in zeros[order]:
        print("zero: %.12g %+.12gj" % (z.real, z.imag))
    _stamp(rep)
    return rep


def _cmd_goodness(args):
    hs = gsf.HSurfaceTorus(lambda_periods=tuple(args.periods))
    good, witness = gsf.goodness_check(
        hs, max_denominator=args.max_denominator)
    rep = ExperimentReport(
        name="goodness",
        inputs={"periods": list(args.periods),
                "max_denominator": int(args.max_denominator)})
    rep.scalars["good"] = 1.0 if good else 0.0
    if witness is not None:
        rep.scalars["witness_c1"] = float(witness[0])
        rep.scalars["witness_c2"] = float(witness[1])
        rotated = (-witness[1], witness[0])
        rep.scalars["vanishing_cup_pairing"] = gsf.cup_pairing(hs, rotated)
        print("integer relation found: c = (%d, %d)" % witness)
    else:
        print("good: no integer relation up to denominator %d"
              % args.max_denominator)
    rep.flags["search_completed"] = True
    _stamp(rep)
    return rep


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------

_SUITE_QUICK = [
    ["check-identities", "--model", "fundamental"],
    ["check-identities", "--model", "xy", "--seed", "1"],
    ["stability", "--model", "fundamental"],
    ["vortex"],
    ["flowline"],
    ["action-check"],
    ["solve-witten", "--nodes", "17"],
    ["triviality", "--nodes", "65", "--inits", "3"],
    ["decay", "--nodes", "65", "--s-len", "8"],
    ["bochner", "--nodes", "65"],
    ["holomorphy", "--nodes", "33"],
    ["kw-solve", "--nodes", "32"],
    ["torus-crit"],
    ["count-orbits"],
    ["sphere-zeros"],
    ["goodness"],
]

_SUITE_FULL = [
    ["check-identities", "--model", "fundamental"],
    ["check-identities", "--model", "xy", "--seed", "1"],
    ["stability", "--model", "fundamental"],
    ["vortex"],
    ["flowline"],
    ["action-check"],
    ["solve-witten", "--nodes", "33"],
    ["triviality", "--nodes", "129", "--inits", "10"],
    ["decay", "--nodes", "129", "--s-len", "12"],
    ["bochner", "--nodes", "129"],
    ["holomorphy", "--nodes", "65"],
    ["kw-solve", "--nodes", "64"],
    ["torus-crit"],
    ["count-orbits"],
    ["sphere-zeros"],
    ["goodness"],
]


def _cmd_suite(args):
    roster = _SUITE_FULL if args.depth == "full" else _SUITE_QUICK
    parser = build_parser()
    lines = []
    all_ok = True
    members = []
    for i, member_argv in enumerate(roster):
        sub = parser.parse_args(member_argv + ["--out", args.out])
        try:
            rep = sub.func(sub)
        except GlgError as exc:
            line = "[FAIL] %s: %s" % (member_argv[0], exc)
            all_ok = False
            lines.append(line)
            members.append({"argv": member_argv, "passed": False,
                            "summary": line})
            print(line)
            continue
        code = _write_report(sub, rep, prefix="%02d-" % (i + 1))
        line = rep.summary_line()
        if code != 0:
            all_ok = False
        lines.append(line)
        members.append({"argv": member_argv, "passed": code == 0,
                        "summary": line})
        print(line)
    verdict = "[%s] suite %s (%d members)" % (
        "PASS" if all_ok else "FAIL", args.depth, len(roster))
    lines.append(verdict)
    print(verdict)
    reports.atomic_write_bytes(os.path.join(args.out, "scorecard.txt"),
                               ("\n".join(lines) + "\n").encode())
    blob = reports.canonical_json({"depth": args.depth, "passed": all_ok,
                                   "members": members})
    reports.atomic_write_bytes(os.path.join(args.out, "suite.json"),
                               (blob + "\n").encode())
    return 0 if all_ok else 2


# ---------------------------------------------------------------------------
# Programmatic entry
# ---------------------------------------------------------------------------

EXPERIMENTS = frozenset((
    "check-identities", "stability", "solve-witten", "triviality", "decay",
    "bochner", "holomorphy", "action-check", "flowline", "vortex",
    "kw-solve", "torus-crit", "count-orbits", "sphere-zeros", "goodness",
))


@dataclass
class RunConfig:
    r"""One scripted experiment run: name, parameters, output directory.

    ``params`` maps long option names (underscores allowed) to values;
    ``seed`` is passed through to seeded experiments.  The experiment
    name must be registered, which is checked on construction.
    """

    experiment: str
    params: dict = field(default_factory=dict)
    model: str | None = None
    out: str = "glg_out"
    seed: int | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError("unknown experiment %r; registered: %s"
                              % (self.experiment, ", ".join(
                                  sorted(EXPERIMENTS))))

    def to_argv(self):
        argv = [self.experiment]
        if self.model is not None:
            argv += ["--model", str(self.model)]
        if self.seed is not None:
            argv += ["--seed", str(self.seed)]
        for key in sorted(self.params):
            argv += ["--" + str(key).replace("_", "-"),
                     str(self.params[key])]
        argv += ["--out", self.out]
        return argv


def run(config: RunConfig) -> int:
    r"""Execute a RunConfig; returns the process exit code (0/1/2)."""
    return main(config.to_argv())


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="glg",
        description="numerical laboratory for gauged Landau-Ginzburg "
                    "models",
        epilog="Set GLG_THREADS to cap BLAS/OpenMP thread pools. Reports "
               "are byte-identical across repeated identical runs.")
    parser.add_argument("--version", action="version",
                        version="glg %s" % __version__)
    subs = parser.add_subparsers(dest="command", required=True,
                                 metavar="COMMAND")

    def sub(name, helptext, func):
        p = subs.add_parser(name, help=helptext, description=helptext)
        p.add_argument("--out", default="glg_out",
                       help="output directory (default glg_out)")
        p.set_defaults(func=func)
        return p

    p = sub("check-identities",
            "structural identities of a model on random points",
            _cmd_check_identities)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--radius", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)

    p = sub("stability",
            "extended Hessian spectrum and constants at a critical point",
            _cmd_stability)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--point", default=None,
                   help="comma-separated complex point (default: preset "
                        "slice point)")

    p = sub("solve-witten",
            "solve the gauged Witten equations on a strip with flowline "
            "boundary data", _cmd_solve_witten)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--start", default=None,
                   help="flowline start point (default: preset slice "
                        "point region)")
    p.add_argument("--s-start", type=float, default=0.5)
    p.add_argument("--length", type=float, default=2.0)
    p.add_argument("--nodes", type=int, default=33)
    p.add_argument("--gauge", default="coulomb",
                   choices=["coulomb", "temporal", "none"])
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=30)
    p.add_argument("--perturb", type=float, default=0.02,
                   help="relative interior perturbation of the initial "
                        "guess")
    p.add_argument("--dt", type=float, default=0.002)
    p.add_argument("--save-fields", action="store_true")

    p = sub("triviality",
            "seeded relaxations on the disc all reach the zero gauge log",
            _cmd_triviality)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--q", default=None)
    p.add_argument("--radius", type=float, default=10.0)
    p.add_argument("--nodes", type=int, default=129)
    p.add_argument("--inits", type=int, default=10)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub("decay",
            "exponential decay rate of a boundary bump on the half plane",
            _cmd_decay)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--q", default=None)
    p.add_argument("--s-len", type=float, default=12.0)
    p.add_argument("--nodes", type=int, default=129)
    p.add_argument("--amplitude", type=float, default=0.05)

    def refinement_args(p, default_source, default_nodes):
        p.add_argument("--source", default=default_source,
                       choices=["vortex", "flowline"])
        p.add_argument("--nodes", type=int, default=default_nodes)
        p.add_argument("--solution-tol", type=float, default=1e-2)
        p.add_argument("--charge", type=int, default=1)
        p.add_argument("--half-width", type=float, default=4.0)
        p.add_argument("--model", default="fundamental")
        p.add_argument("--start", default=None)
        p.add_argument("--s-start", type=float, default=0.5)
        p.add_argument("--length", type=float, default=2.0)
        p.add_argument("--dt", type=float, default=0.002)

    p = sub("bochner",
            "second-order splitting identities under grid refinement",
            _cmd_bochner)
    refinement_args(p, "vortex", 129)

    p = sub("holomorphy",
            "holomorphy of W along solutions under grid refinement",
            _cmd_holomorphy)
    refinement_args(p, "flowline", 65)

    p = sub("action-check",
            "action gradient against finite differences and gauge moves",
            _cmd_action_check)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--q", default=None)
    p.add_argument("--s-len", type=float, default=6.0)
    p.add_argument("--path-nodes", type=int, default=401)
    p.add_argument("--amplitude", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)

    p = sub("flowline",
            "downward gradient flow with conservation-law bookkeeping",
            _cmd_flowline)
    p.add_argument("--model", default="fundamental")
    p.add_argument("--start", default=None)
    p.add_argument("--s-max", type=float, default=5.0)
    p.add_argument("--dt", type=float, default=0.002)

    p = sub("vortex",
            "radial vortex profile, energy quantization and decay rate",
            _cmd_vortex)
    p.add_argument("--charge", type=int, default=1)
    p.add_argument("--r-max", type=float, default=12.0)
    p.add_argument("--nodes", type=int, default=2000)
    p.add_argument("--window", type=_pair, default=(6.0, 10.0),
                   help="decay fit window, e.g. 6,10")

    p = sub("kw-solve",
            "Kazdan-Warner equation on the torus with seeded data",
            _cmd_kw_solve)
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--periods", type=_pair, default=(1.0, 1.0))
    p.add_argument("--w-plus", type=float, default=1.0)
    p.add_argument("--w-minus", type=float, default=1.0)
    p.add_argument("--data-shift", type=float, default=1.0)
    p.add_argument("--data-amplitude", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)

    p = sub("torus-crit",
            "constant torus solution densities from (a, delta)",
            _cmd_torus_crit)
    p.add_argument("--a", type=_one_complex, default=0.5 + 0.5j,
                   help="(1,0)-coefficient, e.g. 0.5+0.5j")
    p.add_argument("--delta", type=float, default=0.3)

    p = sub("count-orbits",
            "binomial count of critical orbits with subset enumerator",
            _cmd_count_orbits)
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--punctures", type=int, default=0)

    p = sub("sphere-zeros",
            "zeros of the residue form on the punctured sphere",
            _cmd_sphere_zeros)
    p.add_argument("--punctures", type=_complex_list, default=[0.0, 1.0])
    p.add_argument("--residues", type=_complex_list, default=[1.0, 1.0])
    p.add_argument("--simple-tol", type=float, default=1e-6)

    p = sub("goodness",
            "integer-relation search between the form's periods",
            _cmd_goodness)
    p.add_argument("--periods", type=_pair, default=(2.0, 4.0))
    p.add_argument("--max-denominator", type=int, default=10000)

    p = sub("suite", "run the whole roster and write a scorecard",
            _cmd_suite)
    p.add_argument("depth", nargs="?", default="quick",
                   choices=["quick", "full"])

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    try:
        result = args.func(args)
    except (ConfigError, ContractError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 1
    except GlgError as exc:
        print("[FAIL] %s: %s" % (args.command, exc), file=sys.stderr)
        return 2
    if isinstance(result, int):
        return result
    code = _write_report(args, result)
    print(result.summary_line())
    return code


if __name__ == "__main__":
    sys.exit(main())
