"""Exception hierarchy shared by every module of the package."""


class IneqError(Exception):
    """Base class for all errors raised by :mod:`ineq`."""


class DomainError(IneqError, ValueError):
    """An argument lies outside the supported domain of a function."""


class DivisionByZeroInterval(IneqError, ZeroDivisionError):
    """The divisor interval contains zero."""


class DegenerateSplit(IneqError, ValueError):
    """An interval has no representable point strictly inside it."""


class IntervalOverflow(IneqError, OverflowError):
    """An endpoint overflowed to infinity (or became NaN)."""


class Unsupported(IneqError, ValueError):
    """A request outside the implemented range (e.g. Bernoulli index too large)."""


class BindingError(IneqError, KeyError):
    """An expression references a variable that is not bound."""


class NotDegenerate(IneqError, ValueError):
    """gap_order was asked about an endpoint where the gap does not vanish."""


class UnknownId(IneqError, KeyError):
    """No catalog entry carries the requested id."""
