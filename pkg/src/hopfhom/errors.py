"""Exception hierarchy shared by every module."""


class HopfError(Exception):
    """Base class for all errors raised by hopfhom."""


class DimensionMismatch(HopfError, ValueError):
    pass


class FieldMismatch(HopfError, ValueError):
    pass


class SingularMatrix(HopfError, ValueError):
    pass


class NotAHopfAlgebra(HopfError):
    """Raised when an operation needs a verified (bicommutative) Hopf algebra."""


class NotAHopfMorphism(HopfError):
    """A linear map failed one of the Hopf morphism conditions."""


class AssertionFailure(HopfError):
    """A runtime certificate (closure, well-definedness, factorisation) failed.

    On verified bicommutative input this should never happen; if it does it is
    a finding, not something to hide.
    """


class BudgetExceeded(HopfError):
    pass


class UnsupportedField(HopfError):
    pass


class CapExceeded(HopfError):
    """A tensor power would exceed the configured dimension cap."""


class NoAction(HopfError):
    """No ring homomorphism F_p -> End(A) exists."""


class InputError(HopfError, ValueError):
    """Malformed user input (JSON schema, CW data, names)."""


class NotContained(HopfError):
    """A morphism's image is not inside the kernel it should factor through."""


class DoesNotVanish(HopfError):
    """A morphism does not vanish on the ideal it should descend along."""
