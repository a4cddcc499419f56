"""Exception types shared by all posetlab modules."""


class PosetlabError(Exception):
    """Base class for all posetlab errors."""


class CycleDetected(PosetlabError):
    """The given relation pairs contain a directed cycle."""


class UnknownElement(PosetlabError):
    """An element id is not part of the structure it was used with."""


class SizeCapExceeded(PosetlabError):
    """An enumeration or search passed its configured size cap."""


class CarrierMismatch(PosetlabError):
    """Two measures or walks live on different carrier posets."""


class NoMinimum(PosetlabError):
    """The poset has no minimum element, so walks are undefined."""


class NotAbove(PosetlabError):
    """The candidate measure is not strictly above the base Dirac."""


class NotAChain(PosetlabError):
    """The given sequence is not a strictly increasing chain."""


class NotASubtree(PosetlabError):
    """The node set is not an ancestor-closed subtree containing the root."""


class NotADiscreteWalk(PosetlabError):
    """The given sequence fails the discrete-walk conditions."""


class UnboundedRequired(PosetlabError):
    """The fiber computation needs color universes flagged unbounded."""


class InvalidWeights(PosetlabError):
    """Support weights must be positive rationals summing to one."""


class ParameterViolation(PosetlabError):
    """Experiment parameters violate a documented precondition."""
