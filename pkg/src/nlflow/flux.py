"""Flux functions ``F(u, ubar, utilde)`` and their frozen-coefficient wave speeds."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .kernel import KernelShape, KernelSpec


class Variant(str, enum.Enum):
    LWR = "lwr"
    LOOK_A = "look_a"
    LOOK_AB = "look_ab"
    WHITHAM = "whitham"
    SUSPENSION = "suspension"

    @property
    def is_traffic(self) -> bool:
        return self in (Variant.LWR, Variant.LOOK_A, Variant.LOOK_AB)


@dataclass(frozen=True)
class FluxModel:
    """One member of the flux family.

    Prefer the named constructors (``FluxModel.lwr()``, ``FluxModel.look_ab(...)``)
    which fill in the kernels each variant needs.
    """

    variant: Variant
    kernel_a: KernelSpec | None = None
    kernel_b: KernelSpec | None = None
    c0: float = 1.0
    h0: float = 1.0
    a: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        v, ka, kb = self.variant, self.kernel_a, self.kernel_b
        if v is Variant.LWR:
            if ka is not None or kb is not None:
                raise ConfigurationError("LWR takes no kernels")
        elif v is Variant.LOOK_A:
            if ka is None or not ka.shape.is_ahead or kb is not None:
                raise ConfigurationError("look_a needs exactly one ahead kernel")
        elif v is Variant.LOOK_AB:
            if ka is None or kb is None or not ka.shape.is_ahead or not kb.shape.is_behind:
                raise ConfigurationError("look_ab needs an ahead kernel and a behind kernel")
            if not ka.reach >= kb.reach:
                raise ConfigurationError(
                    f"look_ab requires gamma_a >= gamma_b, got {ka.reach!r} < {kb.reach!r}"
                )
        elif v is Variant.WHITHAM:
            if not (self.h0 > 0):
                raise ConfigurationError(f"h0 must be positive, got {self.h0!r}")
            if ka is None or ka.shape is not KernelShape.WHITHAM_EXPONENTIAL or kb is not None:
                raise ConfigurationError("whitham uses the exponential kernel only")
        elif v is Variant.SUSPENSION:
            if ka is None or ka.shape is not KernelShape.SUSPENSION_BUMP or kb is not None:
                raise ConfigurationError("suspension uses the suspension kernel only")
            if ka.reach != self.a:
                raise ConfigurationError("suspension kernel reach must equal a")

    @classmethod
    def lwr(cls) -> FluxModel:
        return cls(Variant.LWR)

    @classmethod
    def look_a(cls, gamma_a: float, linear: bool = False) -> FluxModel:
        shape = KernelShape.AHEAD_LINEAR if linear else KernelShape.AHEAD_CONSTANT
        return cls(Variant.LOOK_A, KernelSpec(shape, gamma_a))

    @classmethod
    def look_ab(cls, gamma_a: float, gamma_b: float, linear: bool = False) -> FluxModel:
        if linear:
            ka = KernelSpec(KernelShape.AHEAD_LINEAR, gamma_a)
            kb = KernelSpec(KernelShape.BEHIND_LINEAR, gamma_b)
        else:
            ka = KernelSpec(KernelShape.AHEAD_CONSTANT, gamma_a)
            kb = KernelSpec(KernelShape.BEHIND_CONSTANT, gamma_b)
        return cls(Variant.LOOK_AB, ka, kb)

    @classmethod
    def whitham(cls, c0: float, h0: float) -> FluxModel:
        return cls(Variant.WHITHAM, KernelSpec(KernelShape.WHITHAM_EXPONENTIAL), c0=c0, h0=h0)

    @classmethod
    def suspension(cls, a: float) -> FluxModel:
        return cls(Variant.SUSPENSION, KernelSpec(KernelShape.SUSPENSION_BUMP, a), a=a)

    @property
    def label(self) -> str:
        if self.variant is Variant.LOOK_AB or self.variant is Variant.LOOK_A:
            kind = "linear" if self.kernel_a.shape.is_linear else "constant"
            return f"{self.variant.value}_{kind}"
        return self.variant.value


def eval_flux(model: FluxModel, u, u_bar=0.0, u_tilde=0.0):
    """Flux value; works elementwise on scalars or arrays."""
    v = model.variant
    if v is Variant.LWR:
        return u * (1 - u)
    if v is Variant.LOOK_A:
        return u * (1 - u) * np.exp(-u_bar)
    if v is Variant.LOOK_AB:
        return u * (1 - u) * np.exp(-u_bar + u_tilde)
    if v is Variant.WHITHAM:
        return 3 * model.c0 / (4 * model.h0) * u * u + u_bar
    return u + u_bar * u


def local_wave_speed(model: FluxModel, u, u_bar=0.0, u_tilde=0.0):
    """``|dF/du|`` with the nonlocal terms held fixed."""
    v = model.variant
    if v is Variant.LWR:
        return np.abs(1 - 2 * u)
    if v is Variant.LOOK_A:
        return np.abs(1 - 2 * u) * np.exp(-u_bar)
    if v is Variant.LOOK_AB:
        return np.abs(1 - 2 * u) * np.exp(-u_bar + u_tilde)
    if v is Variant.WHITHAM:
        return 3 * model.c0 / (2 * model.h0) * np.abs(u)
    return np.abs(1 + u_bar)
