"""Exception types shared across the package.

Everything raised on purpose derives from QExpanderError so callers can
catch one base class at CLI boundaries.
"""


class QExpanderError(Exception):
    """Base class for all package errors."""


class ParameterError(QExpanderError, ValueError):
    """Invalid or inconsistent parameters (degrees, sizes, probabilities)."""


class SamplingError(QExpanderError, RuntimeError):
    """A randomized sampler exhausted its retry budget."""


class CapacityError(QExpanderError, RuntimeError):
    """An exact enumeration would exceed the configured size cap."""


class BudgetError(QExpanderError, RuntimeError):
    """A brute-force computation would exceed the configured work budget."""


class UnsupportedModelError(QExpanderError, ValueError):
    """An operation was asked for a model family it does not cover."""


class PreconditionError(QExpanderError, ValueError):
    """A documented precondition of an operation does not hold."""


class InvariantViolation(QExpanderError, AssertionError):
    """A structural invariant that should hold by construction failed."""
