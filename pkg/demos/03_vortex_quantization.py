#!/usr/bin/env python3
r"""Radial vortices: quantized energy and curvature decay.

The zero-superpotential, weight-one model at level delta = 1/2 hosts
the classical vortex equations on the plane.  A degree-n solution has
P = e^{u/2 + i n theta} with a radial profile u(r) solving

    u'' + u'/r = e^u - 1,   u ~ 2n log r at 0,   u -> 0 at infinity,

and its analytic energy is exactly 2 pi n - a topological count, not a
fit.  The curvature function (1 - |P|^2)/2 stays nonnegative and dies
like e^{-r}.  We solve the profile ODE for n = 1, 2, 3 by damped
Newton on a log-radial mesh and verify all three statements, then
cross-check the energy by embedding the n = 1 profile on a 2-D grid
and integrating the four energy densities by quadrature.
"""

import numpy as np

from glglab import grids as gg
from glglab import models as gm
from glglab import vortex as gv


def sparkline(values, width=56):
    # crude console profile: rescale to 0..8 and map to block glyphs
    blocks = " .:-=+*#%"
    v = np.asarray(values, dtype=float)
    pick = np.linspace(0, v.size - 1, width).astype(int)
    v = v[pick]
    lo, hi = float(v.min()), float(v.max())
    span = hi - lo if hi > lo else 1.0
    return "".join(blocks[int(round(8 * (x - lo) / span))] for x in v)


def main():
    print("=" * 72)
    print("Vortex profiles: E = 2 pi n and exponential curvature decay")
    print("=" * 72)

    print("\n%3s %14s %14s %12s %10s %12s" %
          ("n", "E (radial)", "2 pi n", "rel error", "fit rate",
           "min deficit"))
    profiles = {}
    for n in (1, 2, 3):
        prof = gv.solve_radial_vortex(n)
        profiles[n] = prof
        energy = gv.vortex_energy(prof)
        target = 2.0 * np.pi * n
        fit = gv.vortex_decay_fit(prof, window=(6.0, 10.0))
        print("%3d %14.8f %14.8f %12.2e %10.4f %12.2e"
              % (n, energy, target, abs(energy - target) / target,
                 fit.scalars["rate"], float(np.min(prof.half_deficit))))

    print("\nCurvature function (1 - |P|^2)/2 of the n = 1 vortex,")
    print("sampled along the log-radial mesh (r_min to r_max):")
    prof = profiles[1]
    print("  " + sparkline(prof.half_deficit))
    print("  peak %.4f at r = %.2f, down to %.1e at r = %.1f"
          % (float(np.max(prof.half_deficit)),
             float(prof.r[int(np.argmax(prof.half_deficit))]),
             float(prof.half_deficit[-2]), float(prof.r[-2])))

    print("\n2-D cross-check of the n = 1 energy (plane truncation,")
    print("trapezoid quadrature of the density breakdown):")
    grid = gg.Grid2D("plane", (-8.0, 8.0), (-8.0, 8.0), 257, 257)
    cfg = gv.embed_vortex(prof, grid)
    bd = gg.energies(gm.preset("vortex"), grid, cfg)
    for key, val in bd.as_dict().items():
        print("  %-14s %.6f" % (key, val))
    print("  grid total vs 2 pi: rel error %.2e"
          % (abs(bd.total - 2.0 * np.pi) / (2.0 * np.pi)))
    print("(the grid value carries truncation-tail and stencil error;")
    print(" the radial quadrature above is the accurate one)")


if __name__ == "__main__":
    main()
