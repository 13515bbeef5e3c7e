"""Exception hierarchy.

``InputError`` covers everything that is the caller's fault (bad data, a
violated precondition).  ``IdentityViolation`` is raised when one of the
Riemann-Hurwitz identities fails to hold, which can only mean a bug.
"""


class QGraphError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QGraphError):
    """Invalid input or an unmet precondition."""


class ValidationError(InputError):
    """A graph, morphism or group failed structural validation."""


class NonInvolutoryReversal(ValidationError):
    pass


class IncidenceNotTotal(ValidationError):
    pass


class IsolatedVertex(ValidationError):
    pass


class IdentifierClash(ValidationError):
    pass


class EmptyVertexSet(ValidationError):
    pass


class UnknownVertex(InputError, KeyError):
    pass


class UnknownEdge(InputError, KeyError):
    pass


class DisconnectedGraph(InputError):
    pass


class HasSemiEdges(InputError):
    pass


class HasInvertibleEdges(InputError):
    def __init__(self, msg, edge=None):
        super().__init__(msg)
        self.edge = edge


class InvalidGenerator(ValidationError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class OrderExceeded(InputError):
    pass


class SearchBudgetExceeded(InputError):
    pass


class CarrierMismatch(InputError):
    pass


class NotTwoValent(InputError):
    pass


class WouldCollapseLoop(InputError):
    pass


class NotHarmonic(InputError):
    pass


class ParameterOutOfRange(InputError, ValueError):
    pass


class DisconnectedCover(InputError):
    def __init__(self, msg, components=None):
        super().__init__(msg)
        self.components = components


class ParseError(InputError):
    pass


class IdentityViolation(QGraphError):
    """A Riemann-Hurwitz identity (or one of its proof steps) did not hold.

    Carries the offending report(s) and, when available, the serialized
    (graph, group) instance so the failure can be replayed.
    """

    def __init__(self, msg, report=None, instance=None):
        super().__init__(msg)
        self.report = report
        self.instance = instance
