"""Exception hierarchy shared by every kummerkit module."""


class KummerKitError(Exception):
    """Base class for all errors raised by kummerkit."""


class InvalidInput(KummerKitError, ValueError):
    """Input violates a documented precondition."""


class ConsistencyError(KummerKitError):
    """An internal invariant failed; ``check`` names the failing check."""

    def __init__(self, check, message=""):
        self.check = check
        super().__init__(f"{check}: {message}" if message else check)


class DegenerateConfiguration(KummerKitError):
    """Geometric input is too special for the requested construction."""


class InfeasibleGraph(KummerKitError):
    """No integral self-intersections satisfy the fiber relation."""


class DegenerateGraph(KummerKitError):
    """Intersection matrix kernel is not one-dimensional."""


class NoSolution(KummerKitError):
    """A linear system that must be consistent is not."""
