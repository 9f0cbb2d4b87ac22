"""Exceptions raised by the engine."""


class PolyrepError(Exception):
    """Base class of every engine error."""


class DivisionByZero(PolyrepError, ZeroDivisionError):
    """Division of a scalar by the zero scalar."""


class InconsistentRadical(PolyrepError):
    """A binding or denominator violates a square relation.

    Parameters
    ----------
    radical : str
        Name of the radical whose relation is violated.
    detail : str
        Human readable description.
    """

    def __init__(self, radical: str, detail: str) -> None:
        super().__init__(f"radical {radical}: {detail}")
        self.radical = radical
        self.detail = detail


class MixedPresentation(PolyrepError):
    """Elements of two different algebras were combined."""


class FuelExhausted(PolyrepError):
    """Rewriting exceeded its step budget.

    Parameters
    ----------
    fuel : int
        Budget that was exhausted.
    """

    def __init__(self, fuel: int) -> None:
        super().__init__(f"rewriting exceeded {fuel} steps")
        self.fuel = fuel


class UnknownIdent(PolyrepError):
    """An identifier is neither a parameter nor a generator."""

    def __init__(self, name: str, context: str = "") -> None:
        where = f" in {context}" if context else ""
        super().__init__(f"unknown identifier {name!r}{where}")
        self.name = name
        self.context = context


class ParseError(PolyrepError):
    """Malformed expression or presentation text.

    Parameters
    ----------
    message : str
        Description of the failure.
    line, column : int
        1-based position of the failure.
    expected : frozenset of str
        Token names the grammar would have accepted.
    """

    def __init__(
        self,
        message: str,
        line: int = 1,
        column: int = 1,
        expected: frozenset[str] = frozenset(),
    ) -> None:
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.expected = expected


class PresentationError(PolyrepError):
    """A presentation failed load-time validation."""


class JacobiViolation(PresentationError):
    """A generator triple has nonzero Jacobi residual."""

    def __init__(self, triple: tuple[str, str, str], residual: str) -> None:
        super().__init__(f"Jacobi identity fails on {triple}: residual {residual}")
        self.triple = triple
        self.residual = residual


class WeightGuardViolation(PresentationError):
    """A commutation rule does not decrease the rewriting measure."""

    def __init__(self, pair: tuple[str, str], word: tuple[str, ...]) -> None:
        super().__init__(
            f"rule for {pair[1]}*{pair[0]} produces non-decreasing word {word}"
        )
        self.pair = pair
        self.word = word


class CasimirNotCentral(PresentationError):
    """The declared Casimir does not commute with a generator."""

    def __init__(self, generator: str, residual: str) -> None:
        super().__init__(f"[casimir, {generator}] = {residual}")
        self.generator = generator
        self.residual = residual


class IncompleteCommTable(PresentationError):
    """A pair of generators has no commutation rule."""

    def __init__(self, pair: tuple[str, str]) -> None:
        super().__init__(f"no commutation rule for [{pair[0]},{pair[1]}]")
        self.pair = pair


class BaseRuleDenominatorZero(PolyrepError):
    """A lowest-state rule divides by a scalar that vanishes."""


class NonClosing(PolyrepError):
    """Module recursion did not reduce to basis states."""


class NotInSpan(PolyrepError):
    """A state is not a combination of the given basis.

    Parameters
    ----------
    residual : object
        Component of the state left after elimination.
    """

    def __init__(self, residual: object) -> None:
        super().__init__("state is not in the span of the basis")
        self.residual = residual


class Unreachable(PolyrepError):
    """A sequence entry cannot be reached from the seeds."""


class IndexOutOfRange(PolyrepError, IndexError):
    """A coefficient index lies outside its defined range."""


class UnknownClaim(PolyrepError, KeyError):
    """A claim id is not in the registry."""


class OutsideEigenspace(PolyrepError):
    """A realized state is not an eigenstate of the Hamiltonian."""
