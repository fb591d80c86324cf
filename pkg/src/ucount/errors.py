"""Exception hierarchy.

Every error raised on purpose by the toolkit derives from :class:`UcountError`.
The CLI maps :class:`InputError` subclasses to exit code 2,
:class:`VerificationError` subclasses to exit code 1 and
:class:`ResourceBoundExceeded` subclasses to exit code 3.
"""


class UcountError(Exception):
    pass


class InputError(UcountError):
    """The input violates a precondition of the requested operation."""


class VerificationError(UcountError):
    """A check that was asked for did not pass."""


class ResourceBoundExceeded(UcountError):
    """An exponential procedure would exceed its configured bound."""


# graph-core
class MultiEdgePresent(InputError):
    pass


class LoopPresent(InputError):
    pass


class UnorientedEdge(InputError):
    pass


class UnknownEdgeId(InputError):
    pass


class NotPlanarEmbedding(InputError):
    pass


class IncompleteRotation(InputError):
    pass


class NotSkewSymmetric(InputError):
    pass


# oracle
class MissingBasePairing(InputError):
    pass


class MismatchedSupport(InputError):
    pass


# pfaffian
class DimensionTooLargeForOracle(ResourceBoundExceeded):
    pass


# fkt
class NotConnected(InputError):
    pass


class NotSimple(InputError):
    pass


class DegreeTooHigh(InputError):
    pass


class ZeroWeightEdge(InputError):
    pass


class OrientationNotVerifiedPfaffian(VerificationError):
    pass


# semipfaffian
class NotCubic(InputError):
    pass


class CycleNotInGraph(InputError):
    pass


class OddCycle(InputError):
    pass


class TensionPresent(VerificationError):
    pass


class NoSemiPfaffianOrientation(VerificationError):
    pass


class SearchSpaceTooLarge(ResourceBoundExceeded):
    pass


# cnf-reduce
class RoutingNotPlanar(InputError):
    pass


class TooManyVariables(ResourceBoundExceeded):
    pass


class CnfParseError(InputError):
    pass


class NoPadding(InputError):
    """Degree-2 vertices could not be paired up across faces for padding."""
