#!/usr/bin/env python3
r"""Spectral anatomy of a critical point: the extended Hessian.

At a critical point q of L the operator that controls both stability
and decay is the symmetric block matrix

        D^ = [ 0      0      <grad mu, .>   ]
             [ 0      0      <J grad mu, .> ]
             [ ...    ...    Hess L         ]

acting on (Lie algebra) x (Lie algebra) x (tangent space).  It
anticommutes with a complex structure sigma, which forces the spectrum
to be symmetric about zero; its smallest |eigenvalue| is the gap
lambda_1, and two singular-value constants zeta_1, zeta_2 extracted
from the same blocks set the exponential decay rate zeta = min of the
two.  The script prints the ladder for the stable model and then
walks lam down to the degenerate wall at lam = 0.
"""

import numpy as np

from glglab import models as gm
from glglab import stability


def critical_rep(lam):
    # one point of the critical orbit {xy = lam, b = 0} on the mu = 0 slice
    r = np.sqrt(lam)
    return np.array([r, r, 0.0], dtype=complex)


def main():
    print("=" * 72)
    print("Extended Hessian spectrum of the fundamental model")
    print("=" * 72)

    m = gm.preset("fundamental", lam=1.0)
    q = critical_rep(1.0)
    ok, kdim, odim = stability.morse_bott_check(m, q)
    print("\nMorse-Bott at q = (1, 1, 0):")
    print("  Hess L kernel dim = %d, orbit tangent dim = %d, match: %s"
          % (kdim, odim, ok))

    eh = stability.assemble_extended_hessian(m, q)
    print("\nStructure checks (built into the assembly):")
    print("  sigma^2 = -Id exactly:  %s"
          % np.array_equal(eh.sigma @ eh.sigma, -np.eye(eh.sigma.shape[0])))
    print("  symmetry defect      = %.2e" % eh.symmetry_defect)
    print("  anticommute defect   = %.2e" % eh.anticommute_defect)

    spec = stability.spectral_gap(m, q)
    print("\nEigenvalue ladder (size %d):" % spec.eigenvalues.size)
    for lam_i in spec.eigenvalues:
        bar = "#" * max(1, int(round(8 * abs(lam_i))))
        print("  %+9.5f  %s" % (lam_i, bar))
    print("paired about zero to %.1e" % spec.symmetry_defect)
    print("\nConstants: lambda_1 = %.6f, zeta_1 = %.6f, zeta_2 = %.6f"
          % (spec.lambda1, spec.zeta1, spec.zeta2))
    print("decay rate zeta = min(zeta_1, zeta_2) = %.6f" % spec.zeta)

    print("\nClosing the gap: lam -> 0")
    print("%8s %12s %12s %12s" % ("lam", "lambda_1", "zeta_1", "zeta_2"))
    for lam in (1.0, 0.5, 0.1, 0.01):
        ml = gm.preset("fundamental", lam=lam)
        sp = stability.spectral_gap(ml, critical_rep(lam))
        print("%8g %12.6f %12.6f %12.6f"
              % (lam, sp.lambda1, sp.zeta1, sp.zeta2))

    print("\nAt lam = 0 the critical orbit degenerates to the origin,")
    print("which is a torus fixed point: the orbit is no longer free and")
    print("D^ is exactly singular there.")
    m0 = gm.preset("fundamental", lam=0.0)
    eigs0 = stability.assemble_extended_hessian(
        m0, np.zeros(3, complex)).eigenvalues()
    print("  min |eig| at the lam = 0 origin: %.1e"
          % float(np.min(np.abs(eigs0))))
    try:
        stability.spectral_gap(m0, np.zeros(3, complex))
    except stability.NotFreeOrbit as exc:
        print("  spectral_gap refuses, as it should: %s" % exc)


if __name__ == "__main__":
    main()
