"""
Exception hierarchy shared by every module.

Contract violations are ValueErrors, so callers that only care about
"bad input" can keep catching ValueError. Each class carries the exit
code main.py uses for it.
"""

from __future__ import annotations


class FreeProbError(ValueError):
    exit_code = 1


class RouteMismatchError(FreeProbError):
    """Two independent evaluations of the same identity disagreed."""
    exit_code = 1


class SizeLimitError(FreeProbError):
    exit_code = 2


class InputContractError(FreeProbError):
    exit_code = 3


class DimensionError(InputContractError):
    pass


class DegreeMismatchError(InputContractError):
    pass


class PartitionOrderError(InputContractError):
    pass


class NotNonCrossingError(InputContractError):
    pass


class TruncationError(InputContractError):
    pass


class SeriesOrderError(InputContractError):
    pass


class NonInvertibleError(InputContractError):
    pass


class SingularityError(InputContractError):
    pass


class CompositionError(InputContractError):
    pass


class LadderError(InputContractError):
    pass


class ParseError(FreeProbError):
    exit_code = 4
