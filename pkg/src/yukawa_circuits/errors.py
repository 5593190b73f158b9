"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class CapacityError(RuntimeError):
    """A request exceeds a declared resource cap (dense dimension, TSP size)."""
