"""Exact LWR solutions, refinement studies and other oracles for the solver."""

from __future__ import annotations

import dataclasses
import enum
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .diagnostics import Side, front_position, l1_error, max_gradient, total_mass
from .errors import AnalysisError, NlflowError
from .flux import FluxModel, Variant
from .grid import Field, make_grid
from .scenario import Box, ScenarioKind, ScenarioSpec
from .solver import SimConfig, run

__all__ = [
    "ConvergenceRow", "RefinementStudy", "RiemannState", "ShockClass", "Side",
    "exact_lwr_solution", "front_position", "l1_error", "lwr_riemann_exact", "max_gradient",
    "riccati_blowup_time", "shock_refinement_study", "total_mass",
]

log = logging.getLogger(__name__)

SHOCK_GROWTH = 1.8
SMOOTH_GROWTH = 1.2


@dataclass(frozen=True)
class RiemannState:
    u_left: float
    u_right: float
    x0: float = 0.0

    def __post_init__(self) -> None:
        for name in ("u_left", "u_right"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise AnalysisError(f"{name}={v!r} outside [0, 1]")


def lwr_riemann_exact(state: RiemannState, x, t: float):
    """Entropy solution of ``u_t + (u(1-u))_x = 0`` for a single jump at ``x0``.

    Accepts scalar or array ``x``. At ``t = 0`` the jump point takes the right state.
    """
    x = np.asarray(x, dtype=float)
    ul, ur = state.u_left, state.u_right
    if t <= 0:
        return np.where(x < state.x0, ul, ur)[()]
    xi = (x - state.x0) / t
    if ul <= ur:
        s = 1.0 - ul - ur
        return np.where(xi < s, ul, ur)[()]
    # fan between characteristic speeds 1 - 2 ul < 1 - 2 ur
    fan = np.clip(0.5 * (1.0 - xi), ur, ul)
    return fan[()]


def riccati_blowup_time(d0: float) -> float:
    """Blow-up time of ``d' = d**2``, ``d(0) = d0``; infinite unless ``d0 > 0``."""
    return 1.0 / d0 if d0 > 0 else math.inf


def exact_lwr_solution(scenario: ScenarioSpec, model: FluxModel,
                       ) -> Callable[[np.ndarray, float], np.ndarray] | None:
    """Exact ``u(x, t)`` for LWR runs started from a step or a single box, else None.

    A box is two independent Riemann problems; the returned callable raises
    AnalysisError once the left shock would reach the right fan's tail.
    """
    if model.variant is not Variant.LWR:
        return None
    if scenario.kind is ScenarioKind.RIEMANN:
        state = RiemannState(scenario.u_left, scenario.u_right, scenario.x0)
        return lambda x, t: lwr_riemann_exact(state, x, t)
    terms = scenario.resolved_terms()
    if len(terms) != 1 or not isinstance(terms[0], Box):
        return None
    box = terms[0]
    if box.h <= 0:
        return lambda x, t: np.zeros_like(np.asarray(x, dtype=float))
    left = RiemannState(0.0, box.h, box.x_lo)
    right = RiemannState(box.h, 0.0, box.x_hi)
    t_meet = (box.x_hi - box.x_lo) / box.h

    def solution(x, t):
        if t >= t_meet:
            raise AnalysisError(f"waves of the box interact after t={t_meet!r}")
        x = np.asarray(x, dtype=float)
        split = 0.5 * (box.x_lo + (1 - box.h) * t + box.x_hi + (1 - 2 * box.h) * t)
        ul = lwr_riemann_exact(left, x, t)
        ur = lwr_riemann_exact(right, x, t)
        if t == 0:
            # closed box: the node at x_hi keeps h
            ur = np.where(x <= box.x_hi, box.h, 0.0)
        return np.where(x < split, ul, ur)[()]

    return solution


class ShockClass(str, enum.Enum):
    SHOCK_SUSPECTED = "shock_suspected"
    SMOOTH = "smooth"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ConvergenceRow:
    dx: float
    l1_error: float | None
    max_grad: float
    error: str | None = None

    def __post_init__(self) -> None:
        if not self.dx > 0:
            raise AnalysisError(f"dx must be positive, got {self.dx!r}")


@dataclass(frozen=True)
class RefinementStudy:
    rows: list[ConvergenceRow]
    growth_per_halving: float
    pairwise_growth: list[float]
    classification: ShockClass


def _per_halving(g0: float, g1: float, dx0: float, dx1: float) -> float:
    if g0 == 0 and g1 == 0:
        return 1.0
    if g0 == 0:
        return math.inf
    return (g1 / g0) ** (1.0 / math.log2(dx0 / dx1))


def classify_growth(growth: float) -> ShockClass:
    if growth >= SHOCK_GROWTH:
        return ShockClass.SHOCK_SUSPECTED
    if growth <= SMOOTH_GROWTH:
        return ShockClass.SMOOTH
    return ShockClass.INDETERMINATE


def worker_count(jobs: int) -> int:
    """Parallel workers for batch runs; ``NLF_THREADS=0`` forces sequential execution."""
    raw = os.environ.get("NLF_THREADS")
    cap = (os.cpu_count() or 1) if raw is None else int(raw)
    return max(0, min(cap, jobs))


def _final_field(config: SimConfig) -> Field | NlflowError:
    try:
        return run(config).final.field
    except NlflowError as exc:
        return exc


def run_many(configs: Sequence[SimConfig]) -> list[Field | NlflowError]:
    """Final fields of several runs, in input order; failed runs yield their exception."""
    workers = worker_count(len(configs))
    if workers <= 1:
        return [_final_field(c) for c in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_final_field, configs))


def with_dx(config: SimConfig, dx: float, t_end: float | None = None) -> SimConfig:
    g = config.grid
    grid = make_grid(g.x_min, g.x_max, dx, g.boundary)
    t_end = config.t_end if t_end is None else t_end
    return dataclasses.replace(config, grid=grid, t_end=t_end,
                               snapshot_times=tuple(t for t in config.snapshot_times if t <= t_end))


def shock_refinement_study(config: SimConfig, dx_list: Sequence[float], t_probe: float,
                           oracle: Callable[[np.ndarray, float], np.ndarray] | None = None,
                           ) -> RefinementStudy:
    """Rerun ``config`` at each ``dx`` and watch how the steepest gradient scales.

    A shock makes ``max_grad`` grow like ``1/dx``, a smooth solution keeps it
    bounded. The growth factor per halving of ``dx`` is the geometric mean
    over the whole list, from the coarsest to the finest successful row.
    When ``oracle`` is None the exact LWR solution is used if one exists.
    """
    dx_list = [float(d) for d in dx_list]
    if any(a <= b for a, b in zip(dx_list, dx_list[1:])):
        raise AnalysisError("dx_list must be strictly decreasing")
    if oracle is None:
        oracle = exact_lwr_solution(config.scenario, config.model)

    configs, rows, pending = [], [None] * len(dx_list), []
    for k, dx in enumerate(dx_list):
        try:
            configs.append(with_dx(config, dx, t_probe))
            pending.append(k)
        except NlflowError as exc:
            rows[k] = ConvergenceRow(dx, None, math.nan, f"{type(exc).__name__}: {exc}")
    for k, out in zip(pending, run_many(configs)):
        dx = dx_list[k]
        if isinstance(out, NlflowError):
            msg = f"{type(out).__name__}: {out}"
            log.warning("refinement row dx=%g failed: %s", dx, msg)
            rows[k] = ConvergenceRow(dx, None, math.nan, msg)
            continue
        err = None
        if oracle is not None:
            err = l1_error(out, lambda x: oracle(x, t_probe))
        rows[k] = ConvergenceRow(dx, err, max_gradient(out))

    good = [r for r in rows if r.error is None]
    pairwise = [_per_halving(a.max_grad, b.max_grad, a.dx, b.dx) for a, b in zip(good, good[1:])]
    if len(good) < 2:
        return RefinementStudy(rows, math.nan, pairwise, ShockClass.INDETERMINATE)
    growth = _per_halving(good[0].max_grad, good[-1].max_grad, good[0].dx, good[-1].dx)
    return RefinementStudy(rows, growth, pairwise, classify_growth(growth))
