"""Exception types shared across the package."""


class GMTError(Exception):
    """Base class for all errors raised by gmtlogic."""


class DomainError(GMTError, ValueError):
    """An argument lies outside an operation's domain (e.g. mixed history spaces)."""


class CapacityError(GMTError):
    """The request would enumerate more objects than the configured cap allows."""


class InvalidMeasureError(GMTError, ValueError):
    """A measure failed validation at construction time."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(c.name for c in report.failures())
        super().__init__(f"invalid measure: {failed}")
