"""Initial data: the four traffic presets, Riemann steps, and sums of simple terms."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import ConfigurationError
from .grid import Boundary, Field, GridSpec


@dataclass(frozen=True)
class Constant:
    c: float

    def __call__(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.c)

    def derivative(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class Gaussian:
    """``a * exp(-(x - c)**2)``"""

    a: float
    c: float

    def __call__(self, x):
        s = np.asarray(x, dtype=float) - self.c
        return self.a * np.exp(-s * s)

    def derivative(self, x):
        s = np.asarray(x, dtype=float) - self.c
        return -2 * self.a * s * np.exp(-s * s)


@dataclass(frozen=True)
class QuarticBump:
    """``a * exp(-k (x - c)**4)``"""

    a: float
    c: float
    k: float

    def __call__(self, x):
        s = np.asarray(x, dtype=float) - self.c
        return self.a * np.exp(-self.k * s**4)

    def derivative(self, x):
        s = np.asarray(x, dtype=float) - self.c
        return -4 * self.a * self.k * s**3 * np.exp(-self.k * s**4)


@dataclass(frozen=True)
class Box:
    """``h`` on the closed interval ``[x_lo, x_hi]``, zero elsewhere."""

    h: float
    x_lo: float
    x_hi: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.x_lo) & (x <= self.x_hi), self.h, 0.0)

    derivative = None


Term = Union[Constant, Gaussian, QuarticBump, Box]


class ScenarioKind(str, enum.Enum):
    TWO_PLATEAUS = "two_plateaus"
    RED_LIGHT = "red_light"
    THREE_PLATEAUS = "three_plateaus"
    STEEP_PLATEAU = "steep_plateau"
    RIEMANN = "riemann"
    PROFILE = "profile"


PRESET_TERMS: dict[ScenarioKind, tuple[Term, ...]] = {
    ScenarioKind.TWO_PLATEAUS: (Constant(0.1), Gaussian(0.35, -5.0), Gaussian(0.55, -3.0)),
    ScenarioKind.RED_LIGHT: (Box(0.9, -7.0, -2.0),),
    ScenarioKind.THREE_PLATEAUS: (Gaussian(0.35, -5.0), Gaussian(0.65, -2.0), Gaussian(0.45, 0.0)),
    ScenarioKind.STEEP_PLATEAU: (QuarticBump(0.80, -2.0, 8.0),),
}

# (x_min, x_max, gamma_a, gamma_b) used when a preset is run without overrides
PRESET_DEFAULTS: dict[ScenarioKind, tuple[float, float, float, float]] = {
    ScenarioKind.TWO_PLATEAUS: (-15.0, 10.0, 1.0, 0.5),
    ScenarioKind.RED_LIGHT: (-15.0, 10.0, 1.0, 0.5),
    ScenarioKind.THREE_PLATEAUS: (-15.0, 10.0, 1.0, 0.5),
    ScenarioKind.STEEP_PLATEAU: (-15.0, 12.0, 3.0, 1.5),
}


@dataclass(frozen=True)
class ScenarioSpec:
    kind: ScenarioKind
    terms: tuple[Term, ...] = field(default_factory=tuple)
    u_left: float = 0.0
    u_right: float = 0.0
    x0: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ScenarioKind(self.kind))
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def preset(cls, kind: ScenarioKind | str) -> ScenarioSpec:
        kind = ScenarioKind(kind)
        if kind not in PRESET_TERMS:
            raise ConfigurationError(f"{kind.value} is not a preset")
        return cls(kind)

    @classmethod
    def riemann(cls, u_left: float, u_right: float, x0: float) -> ScenarioSpec:
        return cls(ScenarioKind.RIEMANN, u_left=u_left, u_right=u_right, x0=x0)

    @classmethod
    def profile(cls, terms) -> ScenarioSpec:
        return cls(ScenarioKind.PROFILE, tuple(terms))

    def resolved_terms(self) -> tuple[Term, ...]:
        return PRESET_TERMS.get(self.kind, self.terms)

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind is ScenarioKind.RIEMANN:
            # the jump node itself takes the right state
            return np.where(x < self.x0, self.u_left, self.u_right).astype(float)
        out = np.zeros_like(x)
        for term in self.resolved_terms():
            out = out + term(x)
        return out

    @property
    def is_smooth(self) -> bool:
        return closed_form_derivative(self) is not None


def _check_bounds(spec: ScenarioSpec, grid: GridSpec) -> None:
    xs = np.linspace(grid.x_min, grid.x_max, 10 * (grid.n - 1) + 1)
    vals = spec.evaluate(xs)
    bad = np.flatnonzero((vals < 0) | (vals > 1) | ~np.isfinite(vals))
    if bad.size:
        shown = ", ".join(f"{xs[i]:.6g}" for i in bad[:5])
        more = f" (+{bad.size - 5} more)" if bad.size > 5 else ""
        raise ConfigurationError(f"initial profile leaves [0, 1] at x = {shown}{more}")


def build_initial(spec: ScenarioSpec, grid: GridSpec) -> Field:
    """Sample the initial profile at every node.

    On a periodic grid the last node is the first node again, so it copies
    the value sampled at ``x_min``.
    """
    _check_bounds(spec, grid)
    values = spec.evaluate(grid.x)
    if grid.boundary is Boundary.PERIODIC:
        values[-1] = values[0]
    return Field(grid, values)


def closed_form_derivative(spec: ScenarioSpec) -> Callable[[np.ndarray], np.ndarray] | None:
    """Analytic ``u0'`` for smooth term sums, else None (boxes and Riemann steps)."""
    if spec.kind is ScenarioKind.RIEMANN:
        return None
    terms = spec.resolved_terms()
    if any(t.derivative is None for t in terms):
        return None

    def du0(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for t in terms:
            out = out + t.derivative(x)
        return out

    return du0
