"""Sufficient conditions for finite-time gradient blow-up in the look-ahead(-behind) models.

Each threshold is a slope: if the largest initial slope ``sup u0'`` exceeds
it, ``u_x`` becomes unbounded in finite time. Falling short proves nothing,
hence the verdict is either ``BLOWUP_GUARANTEED`` or ``INCONCLUSIVE``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ConfigurationError, ParameterError
from .flux import Variant
from .grid import GridSpec
from .kernel import KernelShape
from .scenario import ScenarioSpec, build_initial, closed_form_derivative


class ThresholdKind(str, enum.Enum):
    CONST_AB = "const_ab"
    LIN_AB = "lin_ab"
    CONST_A = "const_a"


class Verdict(str, enum.Enum):
    BLOWUP_GUARANTEED = "BlowupGuaranteed"
    INCONCLUSIVE = "Inconclusive"


def _check_pair(gamma_a: float, gamma_b: float) -> None:
    if not (math.isfinite(gamma_a) and math.isfinite(gamma_b) and gamma_a >= gamma_b > 0):
        raise ParameterError(f"need gamma_a >= gamma_b > 0, got gamma_a={gamma_a!r}, gamma_b={gamma_b!r}")


def _check_slope(inf_d0: float) -> None:
    if not math.isfinite(inf_d0):
        raise ParameterError(f"inf_d0 must be finite, got {inf_d0!r}")


def _balance(scaled_inf: float) -> float:
    # 1/2 + (sqrt 2 / 4) sqrt(3 - min(-1, scaled_inf))
    return 0.5 + math.sqrt(2.0) / 4.0 * math.sqrt(3.0 - min(-1.0, scaled_inf))


def threshold_const_ab(gamma_a: float, gamma_b: float, inf_d0: float) -> float:
    """Blow-up threshold for look-ahead-behind with constant kernels."""
    _check_pair(gamma_a, gamma_b)
    _check_slope(inf_d0)
    s = (gamma_a + gamma_b) / (gamma_a * gamma_b)
    return s * _balance(inf_d0 / s)


def threshold_lin_ab(gamma_a: float, gamma_b: float) -> float:
    """Blow-up threshold for look-ahead-behind with linear kernels; independent of ``inf u0'``."""
    _check_pair(gamma_a, gamma_b)
    s = (gamma_a + gamma_b) / (gamma_a * gamma_b)
    return s * (1.0 + math.sqrt(1.5 + (gamma_a / (2.0 * (gamma_a + gamma_b))) ** 2))


def threshold_const_a(gamma_a: float, inf_d0: float) -> float:
    """Blow-up threshold for the look-ahead-only model with a constant kernel."""
    if not (math.isfinite(gamma_a) and gamma_a > 0):
        raise ParameterError(f"need gamma_a > 0, got {gamma_a!r}")
    _check_slope(inf_d0)
    return _balance(gamma_a * inf_d0) / gamma_a


class SlopeExtremes(NamedTuple):
    sup_d0: float
    inf_d0: float
    method: str  # "closed_form" or "finite_difference"


def _polish(f, xs: np.ndarray, vals: np.ndarray, k: int, sign: float) -> float:
    lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, len(xs) - 1)]
    res = minimize_scalar(lambda x: -sign * float(f(x)), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return max(sign * float(vals[k]), -float(res.fun)) * sign


def derivative_extremes(scenario: ScenarioSpec, grid: GridSpec, refine: int = 10,
                        closed_form: bool = True) -> SlopeExtremes:
    """Largest and smallest initial slope over the grid's domain.

    With a registered analytic derivative (and ``closed_form`` left on) the
    derivative is scanned on a ``refine``-times finer grid and each extreme
    is polished by a bounded scalar search. Otherwise central differences of
    the sampled profile on the refined grid are used.
    """
    if refine < 4:
        raise ParameterError(f"refine must be at least 4, got {refine!r}")
    xs = np.linspace(grid.x_min, grid.x_max, refine * (grid.n - 1) + 1)
    du0 = closed_form_derivative(scenario) if closed_form else None
    if du0 is not None:
        vals = du0(xs)
        sup = _polish(du0, xs, vals, int(np.argmax(vals)), 1.0)
        inf = _polish(du0, xs, vals, int(np.argmin(vals)), -1.0)
        return SlopeExtremes(sup, inf, "closed_form")
    u = scenario.evaluate(xs)
    h = xs[1] - xs[0]
    d = (u[2:] - u[:-2]) / (2 * h)
    return SlopeExtremes(float(d.max()), float(d.min()), "finite_difference")


@dataclass(frozen=True)
class ThresholdReport:
    model_kind: ThresholdKind
    gamma_a: float
    gamma_b: float | None
    sup_d0: float
    inf_d0: float
    rhs: float
    verdict: Verdict
    hypotheses_met: bool
    method: str

    def as_lines(self) -> list[str]:
        gb = "" if self.gamma_b is None else repr(self.gamma_b)
        return [
            f"kind={self.model_kind.value}",
            f"gamma_a={self.gamma_a!r}",
            f"gamma_b={gb}",
            f"sup_d0={self.sup_d0!r}",
            f"inf_d0={self.inf_d0!r}",
            f"rhs={self.rhs!r}",
            f"verdict={self.verdict.value}",
            f"hypotheses_met={str(self.hypotheses_met).lower()}",
            f"derivative_method={self.method}",
        ]


def _expected_shapes(kind: ThresholdKind) -> tuple[Variant, KernelShape, KernelShape | None]:
    if kind is ThresholdKind.CONST_AB:
        return Variant.LOOK_AB, KernelShape.AHEAD_CONSTANT, KernelShape.BEHIND_CONSTANT
    if kind is ThresholdKind.LIN_AB:
        return Variant.LOOK_AB, KernelShape.AHEAD_LINEAR, KernelShape.BEHIND_LINEAR
    return Variant.LOOK_A, KernelShape.AHEAD_CONSTANT, None


def assess(config, kind: ThresholdKind | str, refine: int = 10) -> ThresholdReport:
    """Apply the matching blow-up criterion to a run configuration's initial data.

    Discontinuous initial data violates the smoothness hypothesis; the report
    is still produced but flagged with ``hypotheses_met=False`` and a warning.
    """
    kind = ThresholdKind(kind)
    model = config.model
    variant, shape_a, shape_b = _expected_shapes(kind)
    got_b = model.kernel_b.shape if model.kernel_b is not None else None
    if (model.variant is not variant or model.kernel_a is None
            or model.kernel_a.shape is not shape_a or got_b is not shape_b):
        raise ConfigurationError(f"{kind.value} criterion does not apply to model {model.label}")

    scenario = config.scenario
    build_initial(scenario, config.grid)  # raises if u0 leaves [0, 1]

    ext = derivative_extremes(scenario, config.grid, refine)
    gamma_a = model.kernel_a.reach
    gamma_b = model.kernel_b.reach if model.kernel_b is not None else None
    if kind is ThresholdKind.CONST_AB:
        rhs = threshold_const_ab(gamma_a, gamma_b, ext.inf_d0)
    elif kind is ThresholdKind.LIN_AB:
        rhs = threshold_lin_ab(gamma_a, gamma_b)
    else:
        rhs = threshold_const_a(gamma_a, ext.inf_d0)

    smooth = scenario.is_smooth
    if not smooth:
        warnings.warn(f"{scenario.kind.value} initial data is discontinuous; "
                      "blow-up criterion hypotheses not met", stacklevel=2)
    verdict = Verdict.BLOWUP_GUARANTEED if ext.sup_d0 > rhs else Verdict.INCONCLUSIVE
    return ThresholdReport(kind, gamma_a, gamma_b, ext.sup_d0, ext.inf_d0, rhs, verdict, smooth,
                           ext.method)
