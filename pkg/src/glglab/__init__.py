r"""glglab: a numerical laboratory for gauged Landau-Ginzburg models.

Flat Kaehler target C^n, torus gauge group U(1)^k acting with integer
weights, and a G_C-invariant polynomial superpotential W = L + iH.  The
package provides the pointwise calculus (gradients, Hessians, moment
map), critical-point and spectral analysis of the extended Hessian,
finite-difference fields on cylinder patches with energy bookkeeping,
solvers for the gauged Witten equations and the radial vortex profile,
the Kazdan-Warner reduction on closed surfaces, and a small CLI driving
reproducible experiment reports.
"""

__version__ = "0.1.0"

import os as _os

# GLG_THREADS caps the numerical thread pools.  BLAS and OpenMP runtimes
# read their environment at library load, so this must happen before the
# first numpy import below; explicit per-library settings win.
if _os.environ.get("GLG_THREADS"):
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["GLG_THREADS"])
del _os

from .errors import (                                        # noqa: F401
    GlgError,
    ConfigError,
    NonConvergence,
)
from .models import (                                        # noqa: F401
    LGModel,
    Superpotential,
    preset,
    load_model,
    save_model,
    model_hash,
    identity_suite,
    validate_model,
)
