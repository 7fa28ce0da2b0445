"""Exception hierarchy shared by the library and the CLI."""


class HypergraphError(Exception):
    """Base class for all errors raised by chemhyper."""


class InputError(HypergraphError):
    """The hypergraph (or a request on it) is malformed."""


class OutOfRangeVertex(InputError):
    pass


class EmptyHyperedge(InputError):
    pass


class ZeroDegreeVertex(InputError):
    """Some vertex has degree 0 once catalysts are stripped."""


class NonChemicalForm(InputError):
    pass


class EmptySubset(InputError):
    pass


class DisconnectedInput(InputError):
    pass


class BadParameter(InputError):
    pass


class ConnectivityRetryExhausted(HypergraphError):
    pass


class ZeroFunction(InputError):
    pass


class NoInducedEdges(InputError):
    pass


class TooLarge(InputError):
    pass


class NumericalError(HypergraphError):
    pass


class NotSymmetric(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass
