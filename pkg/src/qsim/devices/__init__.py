"""Ideal device library and catalog."""

from .detectors import PhotonDetector
from .jdr import (
    DecodeResult,
    PovmPair,
    TranscriptRow,
    bit_string,
    bits_of,
    encode_message,
    invert_receiver_step,
    jdr_receiver_step,
    joint_state,
    pulse_vacuum_probability,
    sequential_decode,
)
from .optics import (
    DEFAULT_REFRACTIVE_INDEX,
    SPEED_OF_LIGHT_M_PER_S,
    Displacer,
    IdealFiber,
    NonPolarizingBeamSplitter,
    PhaseShifter,
    fiber_delay,
)
from .registry import DEVICE_CATALOG, BuildContext, DeviceType, ParamSpec, device_catalog_json
from .sources import CoherentSource, SinglePhotonSource

__all__ = [
    "BuildContext",
    "CoherentSource",
    "DEFAULT_REFRACTIVE_INDEX",
    "DEVICE_CATALOG",
    "DecodeResult",
    "DeviceType",
    "Displacer",
    "IdealFiber",
    "NonPolarizingBeamSplitter",
    "ParamSpec",
    "PhaseShifter",
    "PhotonDetector",
    "PovmPair",
    "SPEED_OF_LIGHT_M_PER_S",
    "SinglePhotonSource",
    "TranscriptRow",
    "bit_string",
    "bits_of",
    "device_catalog_json",
    "encode_message",
    "fiber_delay",
    "invert_receiver_step",
    "jdr_receiver_step",
    "joint_state",
    "pulse_vacuum_probability",
    "sequential_decode",
]
