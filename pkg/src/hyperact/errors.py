"""Exception types shared across the package."""

from dataclasses import dataclass


class HyperactError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(HyperactError, ValueError):
    pass


class ParseError(HyperactError, ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """One violated algebra axiom together with the basis indices that witness it."""

    kind: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        s = self.kind
        if self.witness:
            s += "(" + ",".join(str(i) for i in self.witness) + ")"
        return f"{s}: {self.detail}" if self.detail else s


class AlgebraValidationError(HyperactError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class MalformedTable(HyperactError, ValueError):
    pass


class AlgebraMismatch(HyperactError, ValueError):
    pass


class NotInMaximalIdeal(HyperactError, ValueError):
    pass


class NotUnipotent(HyperactError, ValueError):
    pass


class ZeroElement(HyperactError, ValueError):
    pass


class NotAnIdeal(HyperactError, ValueError):
    pass


class HPairValidationError(HyperactError, ValueError):
    pass


class WrongCodimension(HPairValidationError):
    pass


class DoesNotGenerate(HPairValidationError):
    pass


class SubspaceNotInMaximalIdeal(HPairValidationError, NotInMaximalIdeal):
    pass


class WrongMode(HyperactError, ValueError):
    pass


class NotInSubspace(HyperactError, ValueError):
    pass


class DegreeOneHyperplane(HyperactError, ValueError):
    pass


class DegeneratePairUnsupported(HyperactError, ValueError):
    pass


class UnknownVariable(HyperactError, KeyError):
    pass


class NotHomogeneous(HyperactError, ValueError):
    pass


class ZeroPolynomial(HyperactError, ValueError):
    pass


class UnknownModel(HyperactError, KeyError):
    pass
