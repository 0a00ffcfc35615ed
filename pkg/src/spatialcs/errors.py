"""Exception types shared across the package."""


class SpatialCSError(Exception):
    """Base class for every error raised by spatialcs."""


class UnknownElementError(SpatialCSError, KeyError):
    """An element reference does not belong to the lattice."""


class UnknownAgentError(SpatialCSError, KeyError):
    """An agent identifier does not belong to the constraint system."""


class CarrierMismatchError(SpatialCSError, ValueError):
    """Two functions were combined but live over different lattices."""


class FrameRequiredError(SpatialCSError, ValueError):
    """The operation needs a distributive lattice (Heyting implication)."""


class NotSurjectiveError(SpatialCSError, ValueError):
    """A right inverse was requested for a non-surjective map."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map is not surjective; element {witness!r} has no preimage")


class NotMeetPreservingError(SpatialCSError, ValueError):
    """The inf-preimage construction needs a meet-preserving map."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map does not preserve meets; witness {witness!r}")


class ExtrusionLawError(SpatialCSError, ValueError):
    """A candidate extrusion table fails the right-inverse law."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"table is not a right inverse; fails at {witness!r}")


class EnumerationCapError(SpatialCSError, RuntimeError):
    """A brute-force enumeration would exceed the configured cap."""


class SchemaError(SpatialCSError, ValueError):
    """A model file does not match the expected JSON schema."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
