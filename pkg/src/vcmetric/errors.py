"""Exception hierarchy shared by every module of the toolkit."""

from __future__ import annotations


class VcMetricError(Exception):
    """Base class for all toolkit errors."""


class ParseError(VcMetricError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class PartitionViolation(VcMetricError):
    """A formula breaks the 3-partition discipline."""


class BudgetExceeded(VcMetricError):
    pass


class Disconnected(VcMetricError):
    pass


class NotSquare(VcMetricError):
    """Variables per part is not a perfect square; pad the formula first."""


class NotAResolvingSet(VcMetricError):
    pass


class NotAGeodeticSet(VcMetricError):
    pass
