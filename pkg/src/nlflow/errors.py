"""Exception types raised across the package."""


class NlflowError(Exception):
    """Base class for all package errors."""


class ConfigurationError(NlflowError, ValueError):
    """Invalid grid, kernel, scenario, or run configuration."""


class ParameterError(NlflowError, ValueError):
    """Invalid numeric parameter passed to a formula."""


class UsageError(NlflowError, ValueError):
    """Objects combined in an incompatible way (e.g. mismatched dx)."""


class AnalysisError(NlflowError):
    """A diagnostic could not be computed from the given data."""


class SimulationDiverged(NlflowError):
    """The numerical state became non-finite."""

    def __init__(self, t: float, step: int, node: int):
        self.t = t
        self.step = step
        self.node = node
        super().__init__(f"non-finite value at node {node} (t={t!r}, step {step})")

    def __reduce__(self):
        return type(self), (self.t, self.step, self.node)
