r"""Exception types shared across the laboratory.

Solver failures are separated from contract violations: a Newton search
that runs out of iterations raises `NonConvergence` (and usually carries
its best iterate), while calling an operation outside its domain raises
one of the `ContractError` subclasses.
"""


class GlgError(Exception):
    r"""Base class of all errors raised by this package."""


# ---------------------------------------------------------------------------
# Solver failures
# ---------------------------------------------------------------------------

class NonConvergence(GlgError):
    r"""An iterative solver failed to reach its tolerance.

    @param message
        Human-readable description.
    @param best
        Optional best iterate found before giving up.
    @param residual
        Residual norm at the best iterate, if known.
    """

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class StepLimitExceeded(NonConvergence):
    r"""Iteration limit hit before the residual tolerance."""


class StepTooLarge(GlgError):
    r"""Requested time step too coarse for the local stiffness."""


class Unattainable(GlgError):
    r"""Target level not reachable (Newton diverged or Jacobian degenerated)."""


class FitUnstable(GlgError):
    r"""A least-squares fit did not meet its quality gate (e.g. low R^2)."""


# ---------------------------------------------------------------------------
# Contract violations
# ---------------------------------------------------------------------------

class ContractError(GlgError):
    r"""An operation was invoked outside its stated domain."""


class ShapeMismatch(ContractError):
    r"""Array shapes inconsistent with the grid or model."""


class RegionOutOfBounds(ContractError):
    r"""Requested sub-rectangle not contained in the grid."""


class GridExceedsProfile(ContractError):
    r"""Grid radius larger than the radial profile it samples."""


class NotCritical(ContractError):
    r"""Point fails the critical-point precondition |grad L| < tol."""


class NotFreeOrbit(ContractError):
    r"""Infinitesimal torus action degenerates at the given point."""


class InputNotSolution(ContractError):
    r"""Configuration residual too large for an on-shell identity check."""


class EndpointNotDecayed(ContractError):
    r"""Half-line path fails to settle on the momentum slice at its far end."""


class HypothesisViolated(ContractError):
    r"""Maximum-principle hypothesis (Delta + zeta^2) u <= 0 fails."""

    def __init__(self, message, worst_node=None, worst_value=None):
        super().__init__(message)
        self.worst_node = worst_node
        self.worst_value = worst_value


class DegenerateForm(ContractError):
    r"""Vanishing 1-form coefficient where a nonzero one is required."""


class DegenerateResidues(ContractError):
    r"""Residue configuration with vanishing total (no pole at infinity)."""


class OutOfRange(ContractError):
    r"""Combinatorial parameters outside their admissible range."""


class ConfigError(GlgError):
    r"""Malformed run configuration (CLI exit code 1)."""
