"""JSON run configuration: schema, defaults, and construction of library objects."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .density import OutputGrid
from .errors import ConfigError
from .kernels import Kernel, kernel_from_dict
from .levy import LevyModel, model_from_dict
from .mesh import UniformMesh
from .pricing import PricingConfig, payoff_from_dict

_POS = {"type": "number", "exclusiveMinimum": 0}
_VEC = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_POSVEC = {"type": "array", "items": _POS, "minItems": 1}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["mesh", "kernel", "model", "output_grid"],
    "properties": {
        "mesh": {
            "type": "object",
            "additionalProperties": False,
            "required": ["spacings"],
            "properties": {"spacings": _POSVEC},
        },
        "kernel": {
            "type": "object",
            "additionalProperties": False,
            "required": ["type", "b"],
            "properties": {
                "type": {"enum": ["gaussian", "cosine_gaussian"]},
                "b": _POSVEC,
                "shift": {"type": "number"},
            },
        },
        "model": {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "t"],
            "properties": {
                "family": {"enum": ["gaussian", "variance_gamma", "nig", "merton", "cauchy"]},
                "t": _POS,
                "params": {"type": "object"},
            },
        },
        "truncation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "phi_tol": _POS,
                "symbol_tol": _POS,
                "imag_tol": _POS,
                "symbol_floor": {"type": "number", "minimum": 0},
                "coverage_tol": _POS,
            },
        },
        "output_grid": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["lower", "upper"],
                    "properties": {
                        "lower": _VEC,
                        "upper": _VEC,
                        "fft_size": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                        "method": {"enum": ["fast", "slow"]},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["offset", "step", "count"],
                    "properties": {
                        "offset": _VEC,
                        "step": _POSVEC,
                        "count": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                        "method": {"enum": ["fast", "slow"]},
                    },
                },
            ]
        },
        "pricing": {
            "type": "object",
            "additionalProperties": False,
            "required": ["r", "T", "payoff"],
            "properties": {
                "r": {"type": "number", "minimum": 0},
                "T": _POS,
                "payoff": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["type", "strike"],
                    "properties": {
                        "type": {"enum": ["spread", "call", "put"]},
                        "strike": {"type": "number", "minimum": 0},
                        "spots": _POSVEC,
                        "spot": _POS,
                    },
                },
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "csv": {"type": "string"},
                "diagnostics": {"type": "string"},
                "result": {"type": "string"},
            },
        },
    },
}

DEFAULT_TRUNCATION = {
    "phi_tol": 1e-12,
    "symbol_tol": 1e-14,
    "imag_tol": 1e-10,
    "symbol_floor": 0.0,
    "coverage_tol": 1e-8,
}
DEFAULT_OUTPUT = {"csv": "density.csv", "diagnostics": "diagnostics.json", "result": "price.json"}


@dataclass
class RunConfig:
    raw: dict
    mesh: UniformMesh
    kernel: Kernel
    model: LevyModel
    grid: OutputGrid
    method: str
    truncation: dict
    output: dict
    pricing: PricingConfig | None

    def resolved(self) -> dict:
        """Config with defaults filled in and the output grid in explicit form."""
        out = copy.deepcopy(self.raw)
        out["truncation"] = dict(self.truncation)
        out["output"] = dict(self.output)
        out["output_grid"] = {**self.grid.to_dict(), "method": self.method}
        return out


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    return parse_config(raw)


def parse_config(raw: dict) -> RunConfig:
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc

    mesh = UniformMesh(raw["mesh"]["spacings"])
    n = mesh.dimension
    kernel = kernel_from_dict(raw["kernel"])
    if kernel.dimension != n:
        raise ConfigError(f"kernel has dimension {kernel.dimension}, mesh has {n}")

    pricing = None
    rate = None
    if "pricing" in raw:
        block = raw["pricing"]
        rate = float(block["r"])
        pricing = PricingConfig(rate, float(block["T"]), payoff_from_dict(block["payoff"]))
        if abs(float(raw["model"]["t"]) - pricing.T) > 1e-12:
            raise ConfigError("model horizon t must equal pricing maturity T")
        if pricing.payoff.dimension != n:
            raise ConfigError(f"payoff has dimension {pricing.payoff.dimension}, mesh has {n}")
    model = model_from_dict(raw["model"], rate)
    if model.dimension != n:
        raise ConfigError(f"model has dimension {model.dimension}, mesh has {n}")

    g = raw["output_grid"]
    method = g.get("method", "fast")
    if "lower" in g:
        grid = OutputGrid.commensurate(mesh, g["lower"], g["upper"], g.get("fft_size", [1024] * n))
    else:
        grid = OutputGrid(g["offset"], g["step"], g["count"])
    if grid.dimension != n:
        raise ConfigError(f"output grid has dimension {grid.dimension}, mesh has {n}")

    truncation = {**DEFAULT_TRUNCATION, **raw.get("truncation", {})}
    output = {**DEFAULT_OUTPUT, **raw.get("output", {})}
    return RunConfig(raw, mesh, kernel, model, grid, method, truncation, output, pricing)
