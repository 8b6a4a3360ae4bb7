"""Exception hierarchy shared by every module.

Each exception carries the CLI exit code that the front end maps it to.
"""


class MixedMooreError(Exception):
    exit_code = 1


class InvalidParams(MixedMooreError, ValueError):
    exit_code = 2


class ModelTooLarge(InvalidParams):
    pass


class Infeasible(MixedMooreError):
    exit_code = 3


class VerificationFailed(MixedMooreError):
    exit_code = 4


class ParseError(MixedMooreError, ValueError):
    exit_code = 5


class InvalidGraph(ParseError):
    """A graph violates the loop-free / one-link-per-pair rules."""


class SelfLoop(InvalidGraph):
    pass


class ConflictingPair(InvalidGraph):
    pass


class AsymmetricEdge(InvalidGraph):
    pass


class UnreachablePair(MixedMooreError):
    exit_code = 4

    def __init__(self, u, v):
        super().__init__(f"vertex {v} is unreachable from vertex {u}")
        self.u = u
        self.v = v


class OrderMismatch(MixedMooreError):
    exit_code = 4


class DegreeParity(InvalidParams):
    pass


class StubFailure(MixedMooreError):
    exit_code = 3


class UnknownVariable(ParseError):
    pass


class NonBinaryValue(ParseError):
    pass


class FixingViolated(ParseError):
    pass
