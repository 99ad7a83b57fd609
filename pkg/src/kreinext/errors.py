"""Exception types shared across the toolkit."""


class KreinError(Exception):
    """Base class for all toolkit errors."""


class PositivityError(KreinError):
    """A matrix required to be positive definite is not."""


class SingularTransformError(KreinError):
    """A Moebius/Cayley-type transform hit a pole or a singular pivot."""


class StabilityError(KreinError):
    """An operation requiring stable extension parameters got unstable ones."""


class DomainError(KreinError):
    """An evaluation point lies outside the admissible domain."""
