"""JSON run documents: ``{grid, model, scenario, run}`` <-> :class:`SimConfig`.

Presets may omit the grid domain and the kernel reaches; the preset's
defaults are filled in and written back out on serialization.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import ConfigurationError, NlflowError
from .flux import FluxModel, Variant
from .grid import Boundary, make_grid
from .kernel import KernelShape, KernelSpec
from .scenario import (PRESET_DEFAULTS, Box, Constant, Gaussian, QuarticBump, ScenarioKind,
                       ScenarioSpec)
from .solver import SimConfig


class ConfigError(ConfigurationError):
    """A config document is malformed; the message names the offending field."""


_TERM_TYPES = {
    "constant": (Constant, ("c",)),
    "gaussian": (Gaussian, ("a", "c")),
    "quartic_bump": (QuarticBump, ("a", "c", "k")),
    "box": (Box, ("h", "x_lo", "x_hi")),
}
_TERM_NAMES = {cls: name for name, (cls, _) in _TERM_TYPES.items()}

_MISSING = object()


def _section(doc: dict, key: str) -> dict:
    sec = doc.get(key, _MISSING)
    if sec is _MISSING:
        raise ConfigError(f"missing section '{key}'")
    if not isinstance(sec, dict):
        raise ConfigError(f"section '{key}' must be an object")
    return sec


def _num(sec: dict, key: str, path: str, default: Any = _MISSING) -> float:
    v = sec.get(key, default)
    if v is _MISSING:
        raise ConfigError(f"missing field '{path}.{key}'")
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"field '{path}.{key}' must be a finite number, got {v!r}")
    return float(v)


def _choice(sec: dict, key: str, path: str, options, default: Any = _MISSING) -> str:
    v = sec.get(key, default)
    if v is _MISSING:
        raise ConfigError(f"missing field '{path}.{key}'")
    if v not in options:
        raise ConfigError(f"field '{path}.{key}' must be one of {sorted(options)}, got {v!r}")
    return v


def _parse_scenario(sec: dict) -> ScenarioSpec:
    kind = _choice(sec, "kind", "scenario", {k.value for k in ScenarioKind})
    kind = ScenarioKind(kind)
    if kind is ScenarioKind.RIEMANN:
        return ScenarioSpec.riemann(_num(sec, "u_left", "scenario"), _num(sec, "u_right", "scenario"),
                                    _num(sec, "x0", "scenario"))
    if kind is ScenarioKind.PROFILE:
        terms = sec.get("terms")
        if not isinstance(terms, list) or not terms:
            raise ConfigError("field 'scenario.terms' must be a non-empty list")
        parsed = []
        for i, term in enumerate(terms):
            path = f"scenario.terms[{i}]"
            if not isinstance(term, dict):
                raise ConfigError(f"'{path}' must be an object")
            name = _choice(term, "type", path, set(_TERM_TYPES))
            cls, fields = _TERM_TYPES[name]
            parsed.append(cls(*(_num(term, f, path) for f in fields)))
        return ScenarioSpec.profile(parsed)
    return ScenarioSpec.preset(kind)


def _parse_model(sec: dict, defaults) -> FluxModel:
    variant = Variant(_choice(sec, "variant", "model", {v.value for v in Variant}))
    ga_default = defaults[2] if defaults else _MISSING
    gb_default = defaults[3] if defaults else _MISSING
    shapes = {"constant", "linear"}
    if variant is Variant.LWR:
        return FluxModel.lwr()
    if variant is Variant.LOOK_A:
        ga = _num(sec, "gamma_a", "model", ga_default)
        linear = _choice(sec, "kernel_a_shape", "model", shapes, "constant") == "linear"
        return FluxModel.look_a(ga, linear)
    if variant is Variant.LOOK_AB:
        ga = _num(sec, "gamma_a", "model", ga_default)
        gb = _num(sec, "gamma_b", "model", gb_default)
        sa = _choice(sec, "kernel_a_shape", "model", shapes, "constant")
        sb = _choice(sec, "kernel_b_shape", "model", shapes, sa)
        ka = KernelSpec(KernelShape.AHEAD_LINEAR if sa == "linear" else KernelShape.AHEAD_CONSTANT, ga)
        kb = KernelSpec(KernelShape.BEHIND_LINEAR if sb == "linear" else KernelShape.BEHIND_CONSTANT, gb)
        return FluxModel(Variant.LOOK_AB, ka, kb)
    if variant is Variant.WHITHAM:
        return FluxModel.whitham(_num(sec, "c0", "model"), _num(sec, "h0", "model"))
    return FluxModel.suspension(_num(sec, "a", "model"))


def parse_config(doc: Any) -> SimConfig:
    """Build a SimConfig from a decoded JSON document. Raises ConfigError."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    scenario = _parse_scenario(_section(doc, "scenario"))
    defaults = PRESET_DEFAULTS.get(scenario.kind)
    g = _section(doc, "grid")
    x_min = _num(g, "x_min", "grid", defaults[0] if defaults else _MISSING)
    x_max = _num(g, "x_max", "grid", defaults[1] if defaults else _MISSING)
    boundary = _choice(g, "boundary", "grid", {b.value for b in Boundary},
                       Boundary.CONSTANT_EXTENSION.value)
    r = _section(doc, "run")
    snaps = r.get("snapshots", [])
    if not isinstance(snaps, list):
        raise ConfigError("field 'run.snapshots' must be a list")
    diag_every = r.get("diag_every", 1)
    if isinstance(diag_every, bool) or not isinstance(diag_every, int):
        raise ConfigError(f"field 'run.diag_every' must be an integer, got {diag_every!r}")
    try:
        grid = make_grid(x_min, x_max, _num(g, "dx", "grid"), boundary)
        model = _parse_model(_section(doc, "model"), defaults)
        return SimConfig(
            grid=grid,
            model=model,
            scenario=scenario,
            cfl=_num(r, "cfl", "run", 0.5),
            t_end=_num(r, "t_end", "run"),
            snapshot_times=tuple(_num({"v": s}, "v", f"run.snapshots[{i}]") for i, s in enumerate(snaps)),
            diag_every=diag_every,
        )
    except ConfigError:
        raise
    except NlflowError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> SimConfig:
    """Read and parse a JSON config file; JSON syntax errors report line and column."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_config(doc)


def _model_to_dict(model: FluxModel) -> dict:
    out: dict[str, Any] = {"variant": model.variant.value}
    v = model.variant
    if v is Variant.LOOK_A or v is Variant.LOOK_AB:
        out["gamma_a"] = model.kernel_a.reach
        out["kernel_a_shape"] = "linear" if model.kernel_a.shape.is_linear else "constant"
    if v is Variant.LOOK_AB:
        out["gamma_b"] = model.kernel_b.reach
        out["kernel_b_shape"] = "linear" if model.kernel_b.shape.is_linear else "constant"
    if v is Variant.WHITHAM:
        out["c0"], out["h0"] = model.c0, model.h0
    if v is Variant.SUSPENSION:
        out["a"] = model.a
    return out


def _scenario_to_dict(s: ScenarioSpec) -> dict:
    out: dict[str, Any] = {"kind": s.kind.value}
    if s.kind is ScenarioKind.RIEMANN:
        out.update(u_left=s.u_left, u_right=s.u_right, x0=s.x0)
    elif s.kind is ScenarioKind.PROFILE:
        terms = []
        for t in s.terms:
            name = _TERM_NAMES[type(t)]
            d = {"type": name}
            d.update({f: getattr(t, f) for f in _TERM_TYPES[name][1]})
            terms.append(d)
        out["terms"] = terms
    return out


def config_to_dict(config: SimConfig) -> dict:
    g = config.grid
    return {
        "grid": {"x_min": g.x_min, "x_max": g.x_max, "dx": g.dx, "boundary": g.boundary.value},
        "model": _model_to_dict(config.model),
        "scenario": _scenario_to_dict(config.scenario),
        "run": {
            "cfl": config.cfl,
            "t_end": config.t_end,
            "snapshots": list(config.snapshot_times),
            "diag_every": config.diag_every,
        },
    }
