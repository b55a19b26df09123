"""Exception hierarchy.

ValidationError means the input data is malformed; ContractError means a
well-formed request violated an operation's contract (exit codes 1 and 2 in
the CLI, respectively).
"""


class MonoredError(Exception):
    pass


class ValidationError(MonoredError):
    pass


class ContractError(MonoredError):
    pass


class InvalidStratumError(ContractError):
    pass


class NonPermissibleError(ContractError):
    pass


class NotMaximalOrderError(ContractError):
    pass


class NotMonomialError(ContractError):
    pass


class MarkOverflowError(ContractError):
    pass


class InvalidElementError(ContractError):
    pass


class InvalidSampleError(ContractError):
    pass


class InternalLogicError(ContractError):
    """An invariant the reduction theory guarantees was found violated."""
