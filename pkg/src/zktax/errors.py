"""Exception hierarchy shared across the package."""


class ZkTaxError(Exception):
    """Base class for all errors raised by this package."""


class TemplateError(ZkTaxError):
    """Malformed or inconsistent form template descriptor."""


class DocumentError(ZkTaxError):
    """Document does not validate against its template."""


class BufferError_(ZkTaxError):
    """Canonical buffer overflow or malformed buffer contents."""


class MaskError(ZkTaxError):
    """Redaction mask violates its invariants."""


class SignatureMismatch(ZkTaxError):
    """Tax data and signature did not match."""


class UnsatisfiedWitness(ZkTaxError):
    """Witness assignment fails the constraint system."""

    def __init__(self, constraint_index, message=None):
        self.constraint_index = constraint_index
        super().__init__(message or f"constraint {constraint_index} unsatisfied")


class ArtifactError(ZkTaxError):
    """Malformed proof/signals/key artifact."""


class CircuitMismatch(ZkTaxError):
    """Key or artifact bound to a different circuit digest."""
