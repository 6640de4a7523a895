"""Exception hierarchy shared by every module of the package."""


class DPPlanarError(Exception):
    """Base class for all errors raised by dpplanar."""


class FormatError(DPPlanarError, ValueError):
    """A ``.pg``, ``.sig``, precoloring or plan file could not be parsed."""


# plane graphs
class InconsistentRotation(DPPlanarError, ValueError):
    pass


class LoopOrMultiEdge(DPPlanarError, ValueError):
    pass


class NonPlanarEmbedding(DPPlanarError, ValueError):
    """The rotation system does not describe a sphere embedding."""


class DisconnectedWhenRequired(DPPlanarError, ValueError):
    pass


class UnknownVertex(DPPlanarError, KeyError):
    pass


# cycles and structure
class NotACycle(DPPlanarError, ValueError):
    pass


class CycleTooLong(DPPlanarError, ValueError):
    pass


class BoundaryNotGood(DPPlanarError, ValueError):
    pass


class BoundaryNotCycle(BoundaryNotGood):
    """A boundary that is not even a cycle cannot be a good cycle."""


# labelling
class WrongArity(DPPlanarError, ValueError):
    pass


class BasepointNotOnCycle(DPPlanarError, ValueError):
    pass


class Disconnected(DPPlanarError, ValueError):
    pass


# coloring
class BadK(DPPlanarError, ValueError):
    pass


class PrecoloringConflict(DPPlanarError, ValueError):
    pass


class BadPrecoloring(DPPlanarError, ValueError):
    pass


class NotInClassG(DPPlanarError, ValueError):
    """The graph has a cycle of forbidden length (4, 7 or 9)."""

    def __init__(self, message, forbidden_cycles=()):
        super().__init__(message)
        self.forbidden_cycles = list(forbidden_cycles)


# surgery
class WouldMergeEdges(DPPlanarError, ValueError):
    pass


class WouldCreateLoop(DPPlanarError, ValueError):
    pass


class NotInternal(DPPlanarError, ValueError):
    pass


class BadSlot(DPPlanarError, ValueError):
    pass


# discharging
class OutOfDomain(DPPlanarError, ValueError):
    pass


class LedgerMissing(DPPlanarError, ValueError):
    pass


class PreconditionFailed(DPPlanarError, ValueError):
    pass


# generator
class AttemptsExhausted(DPPlanarError, RuntimeError):
    pass


class BadPlan(DPPlanarError, ValueError):
    """A surgery plan names a vertex it also deletes, or no vertex at all."""
