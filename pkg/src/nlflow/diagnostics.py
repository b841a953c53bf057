"""Scalar diagnostics of a single field."""

from __future__ import annotations

import enum
from typing import Callable

import numpy as np

from .errors import AnalysisError
from .grid import Boundary, Field


class Side(str, enum.Enum):
    LEADING = "leading"
    TRAILING = "trailing"


def total_mass(field: Field) -> float:
    """Trapezoidal ``int u dx``; on a periodic grid, the sum over one period."""
    u, dx = field.values, field.grid.dx
    if field.grid.boundary is Boundary.PERIODIC:
        return float(np.sum(u[:-1]) * dx)
    return float((np.sum(u[1:-1]) + 0.5 * (u[0] + u[-1])) * dx)


def max_gradient(field: Field) -> float:
    return float(np.max(np.abs(np.diff(field.values))) / field.grid.dx)


def l1_error(field: Field, reference: Callable[[np.ndarray], np.ndarray]) -> float:
    """Trapezoidal L1 distance between the nodes and ``reference`` sampled at them."""
    err = np.abs(field.values - np.asarray(reference(field.x), dtype=float))
    return float((np.sum(err[1:-1]) + 0.5 * (err[0] + err[-1])) * field.grid.dx)


def front_position(field: Field, level: float, side: Side | str = Side.LEADING) -> float:
    """Outermost point where ``u`` crosses ``level``, linearly interpolated.

    A crossing is a pair of neighbouring nodes with one value above ``level``
    and the other at or below it.
    """
    side = Side(side)
    u, x = field.values, field.x
    above = u > level
    cross = np.flatnonzero(above[:-1] != above[1:])
    if cross.size == 0:
        raise AnalysisError(f"field never crosses level {level!r}")
    i = int(cross[-1] if side is Side.LEADING else cross[0])
    return float(x[i] + (level - u[i]) / (u[i + 1] - u[i]) * (x[i + 1] - x[i]))
