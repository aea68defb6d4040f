"""Exception types shared across the package."""


class ContractVCError(Exception):
    """Base class for all package-specific errors."""


class LoopEdge(ContractVCError):
    """An edge with identical endpoints was supplied."""


class DuplicateEdge(ContractVCError):
    """The same undirected edge was supplied twice."""


class VertexOutOfRange(ContractVCError):
    """A vertex id is outside ``[0, n)`` of the host graph."""


class UnknownEdge(ContractVCError):
    """An operation referenced an edge the graph does not contain."""


class TooLarge(ContractVCError):
    """A brute-force routine was asked to run beyond its size cap."""


class NotMinimumCover(ContractVCError):
    """A set claimed to be a minimum vertex cover is not one."""


class InvalidTransversal(ContractVCError):
    """The supplied vertex set does not leave a bipartite graph behind."""


class NotThreeByQ(ContractVCError):
    """A multicolored-independent-set instance is not in (3 x q) form."""


class WitnessVerificationFailed(ContractVCError):
    """Internal bug sentinel: a derived witness failed re-verification."""


class ParseError(ContractVCError):
    """A text-format graph or edge list could not be parsed."""
