"""Interaction potentials and their trapezoidal discretization.

A kernel ``K`` acts on a density through ``ubar(x) = int K(x - y) u(y) dy``.
On a node-centred grid the integral becomes a weighted sum over a contiguous
stencil ``ubar_i = sum_j w_j u_{i+j}``. The interaction strength is fixed
to one, so the traffic kernels integrate to exactly one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, UsageError
from .grid import Field

_COMMENSURATE_TOL = 1e-9
# Whitham stencil is cut where the discarded tail mass drops below this
_WHITHAM_CUTOFF = 1e-12


class KernelShape(str, enum.Enum):
    AHEAD_CONSTANT = "ahead_constant"
    AHEAD_LINEAR = "ahead_linear"
    BEHIND_CONSTANT = "behind_constant"
    BEHIND_LINEAR = "behind_linear"
    WHITHAM_EXPONENTIAL = "whitham_exponential"
    SUSPENSION_BUMP = "suspension_bump"

    @property
    def is_ahead(self) -> bool:
        return self in (KernelShape.AHEAD_CONSTANT, KernelShape.AHEAD_LINEAR)

    @property
    def is_behind(self) -> bool:
        return self in (KernelShape.BEHIND_CONSTANT, KernelShape.BEHIND_LINEAR)

    @property
    def is_linear(self) -> bool:
        return self in (KernelShape.AHEAD_LINEAR, KernelShape.BEHIND_LINEAR)


@dataclass(frozen=True)
class KernelSpec:
    """Kernel shape plus its length scale.

    ``reach`` is the look-ahead or look-behind distance for the traffic
    shapes, the scale ``a`` of the suspension kernel (support ``|r| < 2a``),
    and is ignored by the Whitham kernel.
    """

    shape: KernelShape
    reach: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "shape", KernelShape(self.shape))
        if not (self.reach > 0 and math.isfinite(self.reach)):
            raise ConfigurationError(f"kernel reach must be positive and finite, got {self.reach!r}")


@dataclass(frozen=True, eq=False)
class DiscreteKernel:
    """Quadrature weights on node offsets ``j_lo..j_hi`` for a given ``dx``."""

    weights: np.ndarray
    j_lo: int
    dx: float
    shape: KernelShape

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float)
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def j_hi(self) -> int:
        return self.j_lo + len(self.weights) - 1

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(self.j_lo, self.j_hi + 1)


def _node_count(length: float, dx: float, what: str) -> int:
    ratio = length / dx
    m = round(ratio)
    if m < 1 or abs(ratio - m) > _COMMENSURATE_TOL:
        raise ConfigurationError(f"{what} {length!r} is not an integer multiple of dx={dx!r}")
    return m


def _trapezoid(values: np.ndarray, dx: float) -> np.ndarray:
    w = values * dx
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def discretize(spec: KernelSpec, dx: float) -> DiscreteKernel:
    """Trapezoidal-rule weights for ``spec`` on a grid of spacing ``dx``.

    Raises ConfigurationError when the kernel support does not end on nodes.
    """
    shape, g = spec.shape, spec.reach
    if shape.is_ahead or shape.is_behind:
        m = _node_count(g, dx, "kernel reach")
        dist = np.arange(m + 1) * dx  # |x - y| at each node of the support
        if shape.is_linear:
            integrand = (2.0 / g) * (1.0 - dist / g)
        else:
            integrand = np.full(m + 1, 1.0 / g)
        w = _trapezoid(integrand, dx)
        if shape.is_ahead:
            return DiscreteKernel(w, 0, dx, shape)
        return DiscreteKernel(w[::-1].copy(), -m, dx, shape)

    if shape is KernelShape.WHITHAM_EXPONENTIAL:
        # tail mass beyond R is exp(-pi R / 2)
        radius = -2.0 / math.pi * math.log(_WHITHAM_CUTOFF)
        m = math.ceil(radius / dx)
        r = np.arange(-m, m + 1) * dx
        w = _trapezoid(math.pi / 4 * np.exp(-math.pi * np.abs(r) / 2), dx)
        w *= -math.expm1(-math.pi * m * dx / 2) / math.fsum(w)
        return DiscreteKernel(w, -m, dx, shape)

    if shape is KernelShape.SUSPENSION_BUMP:
        a = g
        m = _node_count(2 * a, dx, "suspension support 2a")
        s = np.arange(-m, m + 1) * dx / a
        vals = np.zeros_like(s)
        inside = np.abs(s) < 2
        vals[inside] = 2.0 / (3.0 * (s[inside] ** 2 / 4 - 1)) / a
        return DiscreteKernel(_trapezoid(vals, dx), -m, dx, shape)

    raise ConfigurationError(f"unknown kernel shape {shape!r}")


def convolve_values(values: np.ndarray, field_grid, kernel: DiscreteKernel) -> np.ndarray:
    """Array form of :func:`convolve`; ``values`` must live on ``field_grid``."""
    n = field_grid.n
    left = max(-kernel.j_lo, 0)
    right = max(kernel.j_hi, 0)
    idx = field_grid.ghost_indices(np.arange(-left, n + right))
    padded = values[idx]
    start = kernel.j_lo + left
    w = kernel.weights
    out = w[0] * padded[start:start + n]
    for k in range(1, len(w)):
        out += w[k] * padded[start + k:start + k + n]
    return out


def convolve(field: Field, kernel: DiscreteKernel) -> Field:
    """Nonlocal average ``sum_j w_j u_{i+j}`` at every node, with ghost access at the edges."""
    if abs(field.grid.dx - kernel.dx) > 1e-12 * field.grid.dx:
        raise UsageError(f"kernel discretized for dx={kernel.dx!r}, field has dx={field.grid.dx!r}")
    return Field(field.grid, convolve_values(field.values, field.grid, kernel))
