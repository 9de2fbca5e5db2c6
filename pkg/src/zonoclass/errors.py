"""Exception types shared across the package."""


class ZonoclassError(Exception):
    pass


class EmptyInputError(ZonoclassError, ValueError):
    pass


class DimensionMismatchError(ZonoclassError, ValueError):
    pass


class CapExceededError(ZonoclassError):
    """An enumeration would exceed its configured size limit."""

    def __init__(self, what, cap):
        super().__init__(f"{what} exceeds the cap of {cap}; raise the cap to force it")
        self.what = what
        self.cap = cap


class DegenerateError(ZonoclassError, ValueError):
    pass


class PreconditionError(ZonoclassError, ValueError):
    pass


class UnmatchedDiagramError(ZonoclassError):
    """Coxeter diagram did not match any irreducible finite type."""


class ConsistencyError(ZonoclassError):
    """Two characterizations that must coincide disagreed (numerical fault)."""


class DocumentError(ZonoclassError, ValueError):
    """Malformed vector-set document."""
