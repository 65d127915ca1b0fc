"""Exception types shared across the package."""


class FormatError(ValueError):
    """Malformed edge-list or auxiliary input file."""


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


class InternalError(RuntimeError):
    """A construction that is guaranteed to succeed did not.

    Raised only when an invariant that should hold by construction is
    violated; seeing one indicates a bug.
    """
