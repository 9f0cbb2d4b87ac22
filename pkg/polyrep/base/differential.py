"""Differential operators on separated states ``A XY + B X'Y``.

A state of a separable eigenproblem is written over the two factors of the
separated solution ``Psi = X(x) Y(y)``. ``X`` only enters through its
second-order equation ``X'' = q X`` and ``Y`` through ``Y' = rho Y``, so every
derivative of ``Psi`` times a function of ``x, y`` folds back into a pair
``(A, B)`` of exact scalars in a field that contains the coordinates.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from math import comb
from typing import Callable, Literal, Mapping, Sequence

from polyrep.base.free_algebra import AlgElement
from polyrep.base.module import StateCombo
from polyrep.base.scalar import Number, Param, Scalar, ScalarField
from polyrep.errors import NotInSpan, OutsideEigenspace
from polyrep.utils.linalg import solve

logger = logging.getLogger(__name__)

Order = tuple[int, int]
Convention = Literal["momentum", "display"]


def coordinate_field(field: ScalarField, x: str = "x", y: str = "y") -> ScalarField:
    """Extend a presentation field by the coordinates and the unit ``I``."""
    extra = [Param(name, "coordinate") for name in (x, y) if name not in field]
    if "I" not in field:
        extra.append(Param("I", "radical", -1))
    return field.extend(extra) if extra else field


class DiffOp:
    """Finite sum ``sum coeff(x, y) d_x^a d_y^b`` with exact coefficients.

    Products compose operators (Leibniz rule); a scalar on the left multiplies
    the coefficients, which is composition with a multiplication operator.

    Parameters
    ----------
    field : ScalarField
        Field holding the coordinates.
    terms : dict
        Map from ``(a, b)`` to the coefficient of ``d_x^a d_y^b``.
    x, y : str
        Coordinate names.
    """

    __slots__ = ("field", "terms", "x", "y")

    def __init__(
        self,
        field: ScalarField,
        terms: Mapping[Order, Scalar | Number] | None = None,
        x: str = "x",
        y: str = "y",
    ) -> None:
        self.field = field
        self.x = x
        self.y = y
        self.terms: dict[Order, Scalar] = {}
        for order, coeff in (terms or {}).items():
            coeff = field.coerce(coeff)
            if coeff:
                self.terms[order] = coeff

    # construction

    @classmethod
    def multiplication(cls, field: ScalarField, value: Scalar | Number, x="x", y="y"):
        return cls(field, {(0, 0): value}, x, y)

    @classmethod
    def partial(cls, field: ScalarField, a: int, b: int, x="x", y="y") -> "DiffOp":
        """The monomial ``d_x^a d_y^b``."""
        return cls(field, {(a, b): 1}, x, y)

    def _like(self, terms) -> "DiffOp":
        return DiffOp(self.field, terms, self.x, self.y)

    # arithmetic

    def __add__(self, other: "DiffOp | Scalar | Number") -> "DiffOp":
        if not isinstance(other, DiffOp):
            other = DiffOp.multiplication(self.field, self.field.coerce(other), self.x, self.y)
        terms = dict(self.terms)
        for order, coeff in other.terms.items():
            terms[order] = terms[order] + coeff if order in terms else coeff
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return self._like({order: -c for order, c in self.terms.items()})

    def __sub__(self, other) -> "DiffOp":
        return self + (-other if isinstance(other, DiffOp) else -self.field.coerce(other))

    def __rsub__(self, other) -> "DiffOp":
        return (-self) + other

    def __mul__(self, other: "DiffOp | Scalar | Number") -> "DiffOp":
        if not isinstance(other, DiffOp):
            return self.compose(DiffOp.multiplication(self.field, other, self.x, self.y))
        return self.compose(other)

    def __rmul__(self, other: Scalar | Number) -> "DiffOp":
        value = self.field.coerce(other)
        return self._like({order: value * c for order, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "DiffOp":
        result = DiffOp.multiplication(self.field, 1, self.x, self.y)
        for _ in range(exponent):
            result = result.compose(self)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"DiffOp({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, reverse=True):
            factors = [f"d{self.x}" + (f"^{a}" if a > 1 else "")] if a else []
            factors += [f"d{self.y}" + (f"^{b}" if b > 1 else "")] if b else []
            parts.append("*".join([f"({self.terms[(a, b)]})"] + factors))
        return " + ".join(parts)

    @property
    def order(self) -> int:
        return max((a + b for a, b in self.terms), default=0)

    def _derivative(self, coeff: Scalar, i: int, j: int) -> Scalar:
        for _ in range(i):
            coeff = coeff.diff(self.x)
        for _ in range(j):
            coeff = coeff.diff(self.y)
        return coeff

    def compose(self, other: "DiffOp") -> "DiffOp":
        """``self o other``, moving derivatives right by the Leibniz rule."""
        terms: dict[Order, Scalar] = {}
        for (a, b), f in self.terms.items():
            for (c, d), g in other.terms.items():
                for i in range(a + 1):
                    for j in range(b + 1):
                        dg = self._derivative(g, i, j)
                        if not dg:
                            continue
                        order = (a - i + c, b - j + d)
                        value = comb(a, i) * comb(b, j) * f * dg
                        terms[order] = terms[order] + value if order in terms else value
        return self._like(terms)

    def apply(self, state: "PairState", reduction: "OdeReduction") -> "PairState":
        """Apply the operator to a state, folding derivatives of the factors."""
        derivatives: dict[Order, PairState] = {(0, 0): state}

        def partial(a: int, b: int) -> PairState:
            cached = derivatives.get((a, b))
            if cached is None:
                if b:
                    cached = reduction.dy(partial(a, b - 1))
                else:
                    cached = reduction.dx(partial(a - 1, b))
                derivatives[(a, b)] = cached
            return cached

        total = PairState.zero(state.field)
        for (a, b), coeff in sorted(self.terms.items()):
            total = total + partial(a, b) * coeff
        return total


def commutator(left: DiffOp, right: DiffOp) -> DiffOp:
    return left.compose(right) - right.compose(left)


def anticommutator(left: DiffOp, right: DiffOp) -> DiffOp:
    return left.compose(right) + right.compose(left)


class PairState:
    """State ``A XY + B X'Y`` with ``A, B`` exact scalars in the coordinates."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: ScalarField, a: Scalar | Number, b: Scalar | Number) -> None:
        self.field = field
        self.a = field.coerce(a)
        self.b = field.coerce(b)

    @classmethod
    def zero(cls, field: ScalarField) -> "PairState":
        return cls(field, 0, 0)

    @classmethod
    def lowest(cls, field: ScalarField) -> "PairState":
        """The separated solution itself, ``(1, 0)``."""
        return cls(field, 1, 0)

    def __add__(self, other: "PairState") -> "PairState":
        return PairState(self.field, self.a + other.a, self.b + other.b)

    def __neg__(self) -> "PairState":
        return PairState(self.field, -self.a, -self.b)

    def __sub__(self, other: "PairState") -> "PairState":
        return self + (-other)

    def __mul__(self, value: Scalar | Number) -> "PairState":
        value = self.field.coerce(value)
        return PairState(self.field, self.a * value, self.b * value)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self
        if not isinstance(other, PairState):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"PairState({self})"

    def __str__(self) -> str:
        return f"({self.a})*XY + ({self.b})*dX*Y"

    def to_dict(self) -> dict[str, str]:
        return {"A": str(self.a), "B": str(self.b)}


@dataclass(frozen=True)
class OdeReduction:
    """Rules ``X'' = q X`` and ``Y' = rho Y`` of a separated solution.

    Parameters
    ----------
    q : Scalar
        Rational function of ``x``.
    rho : Scalar
        Constant multiplying ``Y`` under ``d_y``.
    x, y : str
        Coordinate names.
    """

    q: Scalar
    rho: Scalar
    x: str = "x"
    y: str = "y"

    def dx(self, state: PairState) -> PairState:
        # d_x (A X + B X') = (A_x + B q) X + (A + B_x) X'
        return PairState(
            state.field,
            state.a.diff(self.x) + state.b * self.q,
            state.a + state.b.diff(self.x),
        )

    def dy(self, state: PairState) -> PairState:
        return PairState(
            state.field,
            state.a.diff(self.y) + self.rho * state.a,
            state.b.diff(self.y) + self.rho * state.b,
        )

    @classmethod
    def from_hamiltonian(
        cls, hamiltonian: DiffOp, energy: Scalar, rho: Scalar
    ) -> "OdeReduction":
        """Solve ``H XY = E XY`` for ``q``.

        ``H`` must read ``u(x) (d_x^2 + d_y^2) + w(x)``.

        Raises
        ------
        ValueError
            If ``H`` is not of that form.
        """
        terms = hamiltonian.terms
        u = terms.get((2, 0))
        if u is None or terms.get((0, 2)) != u or set(terms) - {(2, 0), (0, 2), (0, 0)}:
            raise ValueError(f"Invalid separable Hamiltonian {hamiltonian}")
        w = terms.get((0, 0), hamiltonian.field.zero)
        for coeff in (u, w):
            if hamiltonian.y in coeff.free_params():
                raise ValueError(f"Invalid separable Hamiltonian {hamiltonian}")
        q = (energy - w) / u - rho * rho
        return cls(q, rho, hamiltonian.x, hamiltonian.y)


@dataclass
class Realization:
    """Integrals of a system as differential operators, with its reduction.

    Parameters
    ----------
    name : str
        Presentation name the integrals realize.
    field : ScalarField
        Coordinate field, an extension of the presentation field.
    hamiltonian : DiffOp
        The central element as an operator.
    operators : dict
        Generator name to operator.
    reduction : OdeReduction
        Separation rules at the energy ``energy``.
    energy : str
        Energy parameter.
    central : str
        Name of the central parameter of the presentation.
    convention : str
        Label of the sign convention.
    """

    name: str
    field: ScalarField
    hamiltonian: DiffOp
    operators: dict[str, DiffOp]
    reduction: OdeReduction
    energy: str = "E"
    central: str = "H"
    convention: str = "display"
    _powers: dict[str, list[PairState]] = dataclass_field(
        default_factory=dict, init=False, repr=False, compare=False
    )
    _lock: threading.RLock = dataclass_field(
        default_factory=threading.RLock, init=False, repr=False, compare=False
    )

    def lowest(self) -> PairState:
        return PairState.lowest(self.field)

    def operator(self, name: str) -> DiffOp:
        if name == self.central:
            return self.hamiltonian
        try:
            return self.operators[name]
        except KeyError:
            raise KeyError(f"{name!r} is not realized for {self.name}") from None

    def apply(self, op: DiffOp | str, state: PairState) -> PairState:
        if isinstance(op, str):
            op = self.operator(op)
        return op.apply(state, self.reduction)

    def apply_word(self, word: Sequence[str], state: PairState | None = None) -> PairState:
        """Apply the letters of a word right to left."""
        state = self.lowest() if state is None else state
        for letter in reversed(word):
            state = self.apply(letter, state)
        return state

    def power_states(self, letter: str, top: int) -> list[PairState]:
        """``letter^j Psi`` for ``j = 0..top``, memoized per letter."""
        with self._lock:
            powers = self._powers.setdefault(letter, [self.lowest()])
            while len(powers) <= top:
                powers.append(self.apply(letter, powers[-1]))
            return powers[: top + 1]

    def schrodinger_residual(self, state: PairState) -> PairState:
        """``H s - E s``; zero certifies ``s`` as an eigenstate."""
        energy = self.field.param(self.energy)
        return self.apply(self.hamiltonian, state) - state * energy

    def apply_element(self, element: AlgElement, state: PairState) -> PairState:
        """Apply an algebra element on an eigenstate.

        The central parameter is replaced by the energy. This holds when the
        realized integrals preserve the eigenspace; the starting state is
        checked.

        Raises
        ------
        OutsideEigenspace
            If ``state`` is not an eigenstate.
        """
        if self.schrodinger_residual(state):
            raise OutsideEigenspace(f"{state} is not an eigenstate of {self.name}")
        bindings = {self.central: self.field.param(self.energy)}
        total = PairState.zero(self.field)
        for word, coeff in element.terms.items():
            value = self.field.coerce(coeff).substitute(bindings)
            total = total + self.apply_word(word, state) * value
        return total

    def commutator_defect(
        self, left: str, right: str, bracket: AlgElement, state: PairState | None = None
    ) -> PairState:
        """``[left, right] s`` by operators minus the bracket element on ``s``."""
        state = self.lowest() if state is None else state
        direct = self.apply(commutator(self.operator(left), self.operator(right)), state)
        return direct - self.apply_element(bracket, state)


def express_in_basis(
    state: PairState, basis: Sequence[PairState], labels: Sequence[tuple[int, ...]] | None = None
) -> StateCombo:
    """Coefficients of ``state`` over ``basis``, constant in the coordinates.

    Denominators in the coordinates are cleared and monomials in ``x, y`` of
    both components are matched; the linear system is solved exactly.

    Parameters
    ----------
    state : PairState
        State to expand.
    basis : sequence of PairState
        Independent states.
    labels : sequence of tuple of int, optional
        Index of each basis element in the result, default ``(j,)``.

    Raises
    ------
    NotInSpan
        If no combination matches.
    """
    field = state.field
    labels = list(labels) if labels is not None else [(j,) for j in range(len(basis))]
    coordinates = [p.name for p in field.params.values() if p.kind == "coordinate"]
    components: list[Callable[[PairState], Scalar]] = [lambda s: s.a, lambda s: s.b]
    rows: dict[tuple[int, tuple[int, ...]], list[Scalar]] = {}
    rhs: dict[tuple[int, tuple[int, ...]], Scalar] = {}
    for which, component in enumerate(components):
        values = [component(s) for s in basis] + [component(state)]
        common = field.ring.one
        for value in values:
            common = common.lcm(value.den)
        clearing = field.make(common, field.ring.one)
        for position, value in enumerate(values):
            for monomial, coeff in (value * clearing).coefficients(coordinates).items():
                key = (which, monomial)
                if position == len(basis):
                    rhs[key] = coeff
                    rows.setdefault(key, [field.zero] * len(basis))
                else:
                    rows.setdefault(key, [field.zero] * len(basis))[position] = coeff
    keys = sorted(rows)
    try:
        solution = solve(
            [rows[k] for k in keys], [rhs.get(k, field.zero) for k in keys], field
        )
    except NotInSpan:
        logger.debug("state %s is outside a basis of %d states", state, len(basis))
        raise NotInSpan(state) from None
    return StateCombo(field, dict(zip(labels, solution)))


def momentum_sign(convention: Convention, field: ScalarField) -> Scalar:
    """Factor of ``d_y`` in the linear integral: ``-I`` or ``1``."""
    match convention:
        case "momentum":
            return -field.param("I")
        case "display":
            return field.one
        case _:
            raise ValueError(f"Invalid convention {convention}")
