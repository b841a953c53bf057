"""Uniform node-centred 1-D grids, density fields, and ghost-node access."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

_COMMENSURATE_TOL = 1e-9


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    CONSTANT_EXTENSION = "constant_extension"


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with nodes ``x_i = x_min + i*dx`` for ``i = 0..n-1``.

    On a periodic grid the first and last nodes are the same physical point,
    so the period is ``n - 1`` nodes.
    """

    x_min: float
    x_max: float
    dx: float
    n: int
    boundary: Boundary = Boundary.CONSTANT_EXTENSION

    def __post_init__(self) -> None:
        if not self.dx > 0:
            raise ConfigurationError(f"dx must be positive, got {self.dx!r}")
        if self.n < 3:
            raise ConfigurationError(f"grid needs at least 3 nodes, got {self.n}")
        span = (self.n - 1) * self.dx
        if abs(span - (self.x_max - self.x_min)) > 4 * np.spacing(max(abs(self.x_max), abs(self.x_min), span)):
            raise ConfigurationError(
                f"x_max - x_min = {self.x_max - self.x_min!r} does not equal (n-1)*dx = {span!r}"
            )

    @property
    def x(self) -> np.ndarray:
        return self.x_min + np.arange(self.n) * self.dx

    @property
    def period(self) -> int:
        return self.n - 1

    def ghost_indices(self, idx: np.ndarray) -> np.ndarray:
        """Map arbitrary signed node indices to in-range ones per the boundary policy."""
        idx = np.asarray(idx)
        if self.boundary is Boundary.PERIODIC:
            return np.mod(idx, self.n - 1)
        return np.clip(idx, 0, self.n - 1)


def make_grid(x_min: float, x_max: float, dx: float,
              boundary: Boundary | str = Boundary.CONSTANT_EXTENSION) -> GridSpec:
    if not x_min < x_max:
        raise ConfigurationError(f"x_min={x_min!r} must be below x_max={x_max!r}")
    if not dx > 0:
        raise ConfigurationError(f"dx must be positive, got {dx!r}")
    cells = (x_max - x_min) / dx
    m = round(cells)
    if m < 1 or abs(cells - m) > _COMMENSURATE_TOL:
        raise ConfigurationError(
            f"domain not commensurate: length {x_max - x_min!r} is not a multiple of dx={dx!r}"
        )
    return GridSpec(float(x_min), float(x_max), float(dx), m + 1, Boundary(boundary))


@dataclass(frozen=True, eq=False)
class Field:
    """Density samples ``u_i = u(x_i)`` on a grid. Values are read-only."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=float)
        if vals.shape != (self.grid.n,):
            raise ConfigurationError(f"field has {vals.shape} values, grid has {self.grid.n} nodes")
        bad = np.flatnonzero(~np.isfinite(vals))
        if bad.size:
            raise ConfigurationError(f"non-finite value at node {int(bad[0])}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def padded(self, left: int, right: int) -> np.ndarray:
        """Values extended by ``left``/``right`` ghost nodes."""
        idx = np.arange(-left, self.grid.n + right)
        return self.values[self.grid.ghost_indices(idx)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore[assignment]


def sample_at(field: Field, i: int) -> float:
    """Value at signed node index ``i``, using ghost access outside ``[0, n-1]``."""
    return float(field.values[int(field.grid.ghost_indices(np.asarray(i)))])
