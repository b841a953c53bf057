"""Lax-Friedrichs time stepping for ``u_t + F(u, ubar, utilde)_x = 0``.

The nonlocal terms are recomputed from the current state at the start of
every step and held fixed during it. Time steps adapt to the largest
frozen-coefficient wave speed and are shortened to land exactly on
snapshot times.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import max_gradient, total_mass
from .errors import ConfigurationError, SimulationDiverged
from .flux import FluxModel, eval_flux, local_wave_speed
from .grid import Field, GridSpec
from .kernel import DiscreteKernel, convolve_values, discretize
from .scenario import ScenarioSpec, build_initial

log = logging.getLogger(__name__)

_MIN_WAVE_SPEED = 1e-10


@dataclass(frozen=True)
class SimConfig:
    grid: GridSpec
    model: FluxModel
    scenario: ScenarioSpec
    cfl: float = 0.5
    t_end: float = 1.0
    snapshot_times: tuple[float, ...] = ()
    diag_every: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "snapshot_times", tuple(float(t) for t in self.snapshot_times))
        if not 0 < self.cfl <= 1:
            raise ConfigurationError(f"cfl must lie in (0, 1], got {self.cfl!r}")
        if not self.t_end >= 0:
            raise ConfigurationError(f"t_end must be non-negative, got {self.t_end!r}")
        ts = self.snapshot_times
        if list(ts) != sorted(ts):
            raise ConfigurationError("snapshot times must be sorted")
        if ts and (ts[0] < 0 or ts[-1] > self.t_end):
            raise ConfigurationError(f"snapshot times must lie in [0, t_end={self.t_end!r}]")
        if self.diag_every < 1:
            raise ConfigurationError(f"diag_every must be at least 1, got {self.diag_every!r}")


@dataclass(frozen=True)
class Snapshot:
    t: float
    field: Field
    mass: float
    u_min: float
    u_max: float
    max_grad: float

    @classmethod
    def of(cls, t: float, fld: Field) -> Snapshot:
        return cls(t, fld, total_mass(fld), float(fld.values.min()), float(fld.values.max()),
                   max_gradient(fld))


@dataclass(frozen=True)
class DiagnosticRow:
    step: int
    t: float
    dt: float
    mass: float
    u_min: float
    u_max: float
    max_grad: float


@dataclass
class SimResult:
    snapshots: list[Snapshot]
    steps_taken: int
    dt_min: float
    dt_max: float
    diagnostics: list[DiagnosticRow] = field(default_factory=list)

    @property
    def final(self) -> Snapshot:
        return self.snapshots[-1]

    def at(self, t: float) -> Snapshot:
        for s in self.snapshots:
            if s.t == t:
                return s
        raise KeyError(f"no snapshot at t={t!r}")


def _kernels(model: FluxModel, dx: float) -> tuple[DiscreteKernel | None, DiscreteKernel | None]:
    ka = discretize(model.kernel_a, dx) if model.kernel_a is not None else None
    kb = discretize(model.kernel_b, dx) if model.kernel_b is not None else None
    return ka, kb


def _nonlocal(u: np.ndarray, grid: GridSpec, ka, kb) -> tuple[np.ndarray, np.ndarray]:
    zero = np.zeros_like(u)
    u_bar = convolve_values(u, grid, ka) if ka is not None else zero
    u_tilde = convolve_values(u, grid, kb) if kb is not None else zero
    return u_bar, u_tilde


def _max_speed(model: FluxModel, u, u_bar, u_tilde) -> float:
    return max(float(np.max(local_wave_speed(model, u, u_bar, u_tilde))), _MIN_WAVE_SPEED)


def _lf_update(u: np.ndarray, flux: np.ndarray, grid: GridSpec, dt: float) -> np.ndarray:
    n = grid.n
    left = grid.ghost_indices(np.arange(-1, n - 1))
    right = grid.ghost_indices(np.arange(1, n + 1))
    return 0.5 * (u[left] + u[right]) - dt / (2 * grid.dx) * (flux[right] - flux[left])


def lf_step(fld: Field, model: FluxModel, dt: float) -> Field:
    """One Lax-Friedrichs step. The caller is responsible for the CFL bound on ``dt``."""
    if not dt > 0:
        raise ConfigurationError(f"dt must be positive, got {dt!r}")
    grid, u = fld.grid, fld.values
    ka, kb = _kernels(model, grid.dx)
    u_bar, u_tilde = _nonlocal(u, grid, ka, kb)
    return Field(grid, _lf_update(u, eval_flux(model, u, u_bar, u_tilde), grid, dt))


def choose_dt(fld: Field, model: FluxModel, cfl: float, t_now: float, t_next_event: float) -> float:
    """``min(cfl*dx/alpha, t_next_event - t_now)`` with ``alpha`` the largest wave speed."""
    if not t_next_event > t_now:
        raise ConfigurationError(f"next event {t_next_event!r} is not after t={t_now!r}")
    ka, kb = _kernels(model, fld.grid.dx)
    u_bar, u_tilde = _nonlocal(fld.values, fld.grid, ka, kb)
    alpha = _max_speed(model, fld.values, u_bar, u_tilde)
    return min(cfl * fld.grid.dx / alpha, t_next_event - t_now)


def run(config: SimConfig) -> SimResult:
    """Advance the configured scenario from t=0 to ``t_end``.

    Snapshots are taken at t=0, at every requested snapshot time and at
    ``t_end``. Raises SimulationDiverged on the first non-finite value.
    """
    grid, model = config.grid, config.model
    u0 = build_initial(config.scenario, grid)
    if model.variant.is_traffic and (u0.values.min() < 0 or u0.values.max() > 1):
        raise ConfigurationError("traffic models need initial densities in [0, 1]")
    ka, kb = _kernels(model, grid.dx)

    targets = sorted({t for t in config.snapshot_times if t > 0} | ({config.t_end} - {0.0}))
    u = u0.values.copy()
    t, step = 0.0, 0
    dt_min, dt_max = np.inf, 0.0
    first = Snapshot.of(0.0, u0)
    snapshots = [first]
    diagnostics = [DiagnosticRow(0, 0.0, 0.0, first.mass, first.u_min, first.u_max, first.max_grad)]

    for target in targets:
        while t < target:
            u_bar, u_tilde = _nonlocal(u, grid, ka, kb)
            alpha = _max_speed(model, u, u_bar, u_tilde)
            dt_cfl = config.cfl * grid.dx / alpha
            gap = target - t
            dt = min(dt_cfl, gap)
            u = _lf_update(u, eval_flux(model, u, u_bar, u_tilde), grid, dt)
            step += 1
            t = target if dt == gap else min(t + dt, target)
            dt_min, dt_max = min(dt_min, dt), max(dt_max, dt)
            bad = np.flatnonzero(~np.isfinite(u))
            if bad.size:
                raise SimulationDiverged(t, step, int(bad[0]))
            if step % config.diag_every == 0:
                f = Field(grid, u)
                diagnostics.append(DiagnosticRow(step, t, dt, total_mass(f), float(u.min()),
                                                 float(u.max()), max_gradient(f)))
        snapshots.append(Snapshot.of(target, Field(grid, u)))
        log.debug("snapshot t=%g after %d steps", target, step)

    if step == 0:
        dt_min = dt_max = 0.0
    return SimResult(snapshots, step, float(dt_min), float(dt_max), diagnostics)
