"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CuntzError(ValueError):
    """Base class for all errors raised by polycuntz."""


class EmptyWordError(CuntzError):
    pass


class LevelTooSmallError(CuntzError):
    pass


class NotAPartitionError(CuntzError):
    """One side of a candidate unitary is not a complete prefix code."""

    def __init__(self, side: str, witness: tuple[int, ...], reason: str = ""):
        self.side = side
        self.witness = witness
        self.reason = reason
        word = "".join(map(str, witness)) or "e"
        msg = f"{side} code is not a partition of unity (witness {word})"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class CoefficientError(CuntzError):
    """A coefficient other than 1 showed up where only words are allowed."""


class NotInRestrictedClassError(CuntzError):
    def __init__(self, pair: tuple[tuple[int, ...], tuple[int, ...]]):
        self.pair = pair
        a, b = ("".join(map(str, w)) or "e" for w in pair)
        super().__init__(f"pair {a}:{b} has length difference outside {{-1, 0, 1}}")


class NotDiagonalAutomorphismError(CuntzError):
    pass


class BudgetExceededError(CuntzError):
    pass


class ParseError(CuntzError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class InfeasibleSizeError(CuntzError):
    pass
