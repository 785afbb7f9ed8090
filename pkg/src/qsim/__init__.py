"""Discrete-event simulator for photonic quantum experiments.

Layers, bottom up: ``fock`` (truncated-Fock numerics), ``temporal`` (Gaussian
envelope algebra and partial-overlap interference), ``des`` (deterministic
event engine and signal types), ``devices`` (ideal component library),
``experiments`` (graph files, reference experiments, HTTP service), ``cli``.
"""

__version__ = "0.1.0"

from .errors import (
    CausalityViolationError,
    ConnectionError_,
    CutoffExceededError,
    GraphValidationError,
    InvalidCutoffError,
    NumericFailureError,
    PortTypeMismatchError,
    QsimError,
    ShapeMismatchError,
    SimultaneityConflictError,
    SingularOverlapError,
)

__all__ = [
    "__version__",
    "CausalityViolationError",
    "ConnectionError_",
    "CutoffExceededError",
    "GraphValidationError",
    "InvalidCutoffError",
    "NumericFailureError",
    "PortTypeMismatchError",
    "QsimError",
    "ShapeMismatchError",
    "SimultaneityConflictError",
    "SingularOverlapError",
]
