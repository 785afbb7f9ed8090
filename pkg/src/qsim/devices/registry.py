"""Device catalog: names, parameter schemas, port declarations, factories.

The catalog is the single source of truth shared by the experiment-file
loader, the CLI validator, and the HTTP device listing, so a graph that
validates in one place validates everywhere.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from ..des.engine import Device
from ..fock.operators import FockCutoff
from .detectors import PhotonDetector
from .optics import (
    DEFAULT_REFRACTIVE_INDEX,
    Displacer,
    IdealFiber,
    NonPolarizingBeamSplitter,
    PhaseShifter,
)
from .sources import CoherentSource, SinglePhotonSource


@dataclass(frozen=True)
class BuildContext:
    cutoff: FockCutoff
    seed: int | None = None


@dataclass(frozen=True)
class ParamSpec:
    name: str
    type: str
    default: Any = None
    required: bool = False
    description: str = ""
    choices: tuple[str, ...] | None = None


def _coerce_number(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"parameter {name!r} must be a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise ValueError(f"parameter {name!r} must be finite, got {value!r}")
    return float(value)


def _coerce_complex(name: str, value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"parameter {name!r} as a pair must be [re, im], got {value!r}")
        return complex(_coerce_number(name, value[0]), _coerce_number(name, value[1]))
    return complex(_coerce_number(name, value))


def _coerce_string(name: str, value) -> str:
    if not isinstance(value, str):
        raise ValueError(f"parameter {name!r} must be a string, got {value!r}")
    return value


_COERCERS = {"number": _coerce_number, "complex": _coerce_complex, "string": _coerce_string}


@dataclass(frozen=True)
class DeviceType:
    name: str
    summary: str
    ports: tuple[dict, ...]
    params: tuple[ParamSpec, ...]
    factory: Callable[[str, dict, BuildContext], Device]

    def coerce_params(self, raw: dict) -> dict:
        known = {p.name: p for p in self.params}
        unknown = sorted(set(raw) - set(known))
        if unknown:
            raise ValueError(f"unknown parameter(s) {unknown} for device type {self.name!r}")
        out: dict[str, Any] = {}
        for spec in self.params:
            if spec.name in raw and raw[spec.name] is not None:
                value = _COERCERS[spec.type](spec.name, raw[spec.name])
                if spec.choices is not None and value not in spec.choices:
                    raise ValueError(
                        f"parameter {spec.name!r} must be one of {list(spec.choices)}, got {value!r}"
                    )
                out[spec.name] = value
            elif spec.required:
                raise ValueError(f"missing required parameter {spec.name!r} for device type {self.name!r}")
            else:
                out[spec.name] = spec.default
        return out

    def build(self, device_id: str, raw_params: dict, ctx: BuildContext) -> Device:
        return self.factory(device_id, self.coerce_params(raw_params), ctx)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "summary": self.summary,
            "ports": list(self.ports),
            "parameters": [
                {
                    "name": p.name,
                    "type": p.type,
                    "default": p.default,
                    "required": p.required,
                    "description": p.description,
                    **({"choices": list(p.choices)} if p.choices is not None else {}),
                }
                for p in self.params
            ],
        }


def _port(name: str, direction: str, kind: str = "PhotonicQuantumSignal") -> dict:
    return {"name": name, "direction": direction, "accepts": kind}


_ENVELOPE_PARAMS = (
    ParamSpec("time", "number", 0.0, False, "emission event time, seconds"),
    ParamSpec("sigma", "number", 1.0, False, "envelope width, seconds"),
    ParamSpec("omega", "number", 0.0, False, "carrier angular frequency, rad/s"),
    ParamSpec(
        "envelope_center", "number", None, False,
        "envelope center time, seconds (defaults to the emission time)",
    ),
)


def _make_single_photon(device_id, p, ctx):
    return SinglePhotonSource(
        device_id, ctx.cutoff,
        time=p["time"], sigma=p["sigma"], omega=p["omega"], envelope_center=p["envelope_center"],
    )


def _make_coherent(device_id, p, ctx):
    return CoherentSource(
        device_id, ctx.cutoff, alpha=p["alpha"],
        time=p["time"], sigma=p["sigma"], omega=p["omega"], envelope_center=p["envelope_center"],
    )


def _make_phase_shifter(device_id, p, ctx):
    return PhaseShifter(device_id, ctx.cutoff, phi=p["phi"])


def _make_displacer(device_id, p, ctx):
    return Displacer(device_id, ctx.cutoff, alpha=p["alpha"])


def _make_fiber(device_id, p, ctx):
    return IdealFiber(device_id, ctx.cutoff, length=p["length"], refractive_index=p["refractive_index"])


def _make_beam_splitter(device_id, p, ctx):
    return NonPolarizingBeamSplitter(
        device_id, ctx.cutoff, theta=p["theta"], phi=p["phi"], overlap_method=p["overlap_method"]
    )


def _make_detector(device_id, p, ctx):
    rng = None
    if p["mode"] == "sample":
        if ctx.seed is None:
            raise ValueError(f"detector {device_id!r} in sample mode requires sim.seed")
        rng = np.random.default_rng([ctx.seed, zlib.crc32(device_id.encode())])
    return PhotonDetector(device_id, mode=p["mode"], rng=rng)


DEVICE_CATALOG: dict[str, DeviceType] = {
    t.name: t
    for t in (
        DeviceType(
            name="single_photon_source",
            summary="Emits exactly one photon in a Gaussian wave packet.",
            ports=(_port("out", "output"),),
            params=_ENVELOPE_PARAMS,
            factory=_make_single_photon,
        ),
        DeviceType(
            name="coherent_source",
            summary="Emits one coherent pulse |alpha>.",
            ports=(_port("out", "output"),),
            params=_ENVELOPE_PARAMS
            + (ParamSpec("alpha", "complex", 0.0, False, "pulse amplitude (number or [re, im])"),),
            factory=_make_coherent,
        ),
        DeviceType(
            name="phase_shifter",
            summary="Applies exp(i phi n) to the passing mode.",
            ports=(_port("in", "input"), _port("out", "output")),
            params=(ParamSpec("phi", "number", 0.0, False, "phase angle, radians"),),
            factory=_make_phase_shifter,
        ),
        DeviceType(
            name="displacer",
            summary="Applies the displacement D(alpha) to the passing mode.",
            ports=(_port("in", "input"), _port("out", "output")),
            params=(ParamSpec("alpha", "complex", 0.0, False, "displacement (number or [re, im])"),),
            factory=_make_displacer,
        ),
        DeviceType(
            name="ideal_fiber",
            summary="Lossless fiber: exact delay l*n/c plus carrier phase rotation.",
            ports=(_port("in", "input"), _port("out", "output")),
            params=(
                ParamSpec("length", "number", None, True, "fiber length, meters"),
                ParamSpec(
                    "refractive_index", "number", DEFAULT_REFRACTIVE_INDEX, False,
                    "core refractive index",
                ),
            ),
            factory=_make_fiber,
        ),
        DeviceType(
            name="beam_splitter",
            summary="Overlap-aware non-polarizing beam splitter (50:50 by default).",
            ports=(
                _port("in_a", "input"),
                _port("in_b", "input"),
                _port("out_a", "output"),
                _port("out_b", "output"),
            ),
            params=(
                ParamSpec("theta", "number", math.pi / 4, False, "mixing angle; cos(theta) is transmittivity"),
                ParamSpec("phi", "number", 0.0, False, "reflection phase, radians"),
                ParamSpec(
                    "overlap_method", "string", "quadrature", False,
                    "envelope overlap route: quadrature or closed_form",
                    choices=("quadrature", "closed_form"),
                ),
            ),
            factory=_make_beam_splitter,
        ),
        DeviceType(
            name="photon_detector",
            summary="Ideal photon-number detector (distribution or sampled counts).",
            ports=(_port("in", "input"), _port("out", "output", "GenericSignal")),
            params=(
                ParamSpec(
                    "mode", "string", "distribution", False,
                    "distribution (default) or sample",
                    choices=("distribution", "sample"),
                ),
            ),
            factory=_make_detector,
        ),
    )
}


def device_catalog_json() -> list[dict]:
    return [DEVICE_CATALOG[name].describe() for name in sorted(DEVICE_CATALOG)]
