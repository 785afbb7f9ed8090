"""Exception types shared across the simulator."""


class QsimError(Exception):
    """Base class for all simulator errors."""


class InvalidCutoffError(QsimError):
    """Fock cutoff dimension below the minimum of 2."""


class CutoffExceededError(QsimError):
    """Requested photon number or count does not fit inside the cutoff."""


class ShapeMismatchError(QsimError):
    """States or operators with incompatible mode counts or cutoffs."""


class SingularOverlapError(QsimError):
    """Closed-form overlap hit a branch-cut degeneracy (|beta| ~ 0)."""


class NumericFailureError(QsimError):
    """A numerical routine (quadrature, exponential) failed to converge."""


class PortTypeMismatchError(QsimError):
    """Connection between ports whose signal kinds are not subtype-compatible."""

    def __init__(self, out_kind: str, in_kind: str, message: str | None = None):
        self.out_kind = out_kind
        self.in_kind = in_kind
        super().__init__(
            message
            or f"output kind '{out_kind}' is not a subtype of accepted kind '{in_kind}'"
        )


class ConnectionError_(QsimError):
    """Structurally invalid connection (missing port, double-connected input)."""


class CausalityViolationError(QsimError):
    """A device emitted a signal timestamped before the current event."""


class SimultaneityConflictError(QsimError):
    """Two signals hit the same input port at the same timestamp."""


class GraphValidationError(QsimError):
    """Experiment file failed validation; carries a JSON-pointer location."""

    def __init__(self, message: str, pointer: str = "", all_errors: list | None = None):
        self.pointer = pointer
        self.all_errors = all_errors if all_errors is not None else [
            {"error": message, "pointer": pointer}
        ]
        super().__init__(f"{message} (at {pointer})" if pointer else message)
