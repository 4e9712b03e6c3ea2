"""Exception hierarchy shared by all freespec modules."""


class FreespecError(Exception):
    """Base class for every error raised by freespec."""


class InvalidMeasureError(FreespecError, ValueError):
    """A measure does not have unit total mass or has malformed tables."""


class DomainError(FreespecError, ValueError):
    """An argument lies outside the domain of a transform."""


class SingularityError(FreespecError, ValueError):
    """An integrand has a pole on the support of the measure."""


class DiracInputError(FreespecError, ValueError):
    """The radial inversion was given a Dirac law, which has no annulus."""


class PreconditionError(FreespecError, ValueError):
    """Inputs violate a stated hypothesis (for example a nonzero trace)."""


class ResourceError(FreespecError, RuntimeError):
    """A word or expansion exceeds the supported length."""
