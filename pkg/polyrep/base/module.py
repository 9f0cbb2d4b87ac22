"""Infinite-dimensional modules over a lowest state."""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from itertools import product
from typing import Iterable, Mapping, Sequence

from polyrep.base.free_algebra import AlgElement, Word
from polyrep.base.presentation import Presentation
from polyrep.base.scalar import Number, Scalar
from polyrep.errors import (
    BaseRuleDenominatorZero,
    DivisionByZero,
    MixedPresentation,
    NonClosing,
)
from polyrep.utils.config import EngineConfig

logger = logging.getLogger(__name__)

StateIndex = tuple[int, ...]


class StateCombo:
    """Finite scalar combination of basis states."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: Mapping[StateIndex, Scalar] | None = None) -> None:
        self.field = field
        self.terms = {idx: c for idx, c in (terms or {}).items() if c}

    def __add__(self, other: "StateCombo") -> "StateCombo":
        terms = dict(self.terms)
        for idx, coeff in other.terms.items():
            terms[idx] = terms[idx] + coeff if idx in terms else coeff
        return StateCombo(self.field, terms)

    def __neg__(self) -> "StateCombo":
        return StateCombo(self.field, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "StateCombo") -> "StateCombo":
        return self + (-other)

    def __mul__(self, scalar: Scalar | Number) -> "StateCombo":
        scalar = self.field.coerce(scalar)
        return StateCombo(self.field, {i: c * scalar for i, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, StateCombo):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"StateCombo({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms):
            label = "psi(" + ",".join(str(e) for e in idx) + ")"
            parts.append(f"({self.terms[idx]})*{label}")
        return " + ".join(parts)

    def coefficient(self, idx: StateIndex) -> Scalar:
        return self.terms.get(tuple(idx), self.field.zero)

    def support(self) -> list[StateIndex]:
        return sorted(self.terms)

    def substitute(self, bindings) -> "StateCombo":
        return StateCombo(
            self.field, {i: c.substitute(bindings) for i, c in self.terms.items()}
        )

    def to_dict(self) -> dict[str, str]:
        return {",".join(map(str, idx)): str(self.terms[idx]) for idx in sorted(self.terms)}


@dataclass
class ActionBand:
    """Sparse matrix of an operator on a finite set of basis states.

    Column ``j`` is the image of ``columns[j]``.
    """

    operator: str
    columns: list[StateIndex]
    entries: dict[tuple[StateIndex, StateIndex], Scalar] = dataclass_field(
        default_factory=dict
    )

    @property
    def rows(self) -> list[StateIndex]:
        return sorted({row for row, _ in self.entries} | set(self.columns))

    def column(self, col: StateIndex) -> dict[StateIndex, Scalar]:
        return {row: value for (row, c), value in self.entries.items() if c == col}


@dataclass
class CasimirDiscrepancy:
    """The Casimir is not a common scalar on the probed states."""

    images: dict[StateIndex, StateCombo]

    def __str__(self) -> str:
        shown = "; ".join(f"{idx}: {img}" for idx, img in sorted(self.images.items()))
        return f"not a scalar on the module: {shown}"


class RepresentationModule:
    """Module generated by the raising template from a lowest state.

    States are words ``g1^e1 g2^e2 ... Psi`` over the template letters. A
    generator acts by normal-ordering ``op * word`` in the module order and
    applying the base rule of the rightmost non-raising letter, repeatedly.

    Parameters
    ----------
    presentation : Presentation
        Presentation with a module spec.
    bindings : dict, optional
        Extra parameter values, e.g. ``{"r": 0}``.
    config : EngineConfig, optional
        Rewriting configuration; defaults to the presentation's.
    """

    def __init__(
        self,
        presentation: Presentation,
        bindings: Mapping[str, Scalar | Number] | None = None,
        config: EngineConfig | None = None,
    ) -> None:
        spec = presentation.module_spec
        if spec is None:
            raise ValueError(f"presentation {presentation.name} has no module spec")
        self.presentation = presentation
        self.spec = spec
        self.field = presentation.field
        extra = {name: self.field.coerce(value) for name, value in (bindings or {}).items()}
        # H -> E first, then the caller's values, so binding E also fixes H
        energy = self.field.param(spec.energy).substitute(extra)
        self.bindings: dict[str, Scalar] = {presentation.central: energy, **extra}
        self.algebra = presentation.algebra.specialize(self.bindings)
        if config is not None:
            self.algebra.config = config
        self.template = spec.template
        self.order = spec.order
        try:
            self.base_rules = {
                name: self.lift(rule) for name, rule in spec.base_rules.items()
            }
        except DivisionByZero as exc:
            raise BaseRuleDenominatorZero(
                f"a base rule of {presentation.name} divides by zero under {bindings}"
            ) from exc
        self._memo: dict[Word, StateCombo] = {}
        self._pending: set[Word] = set()
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"RepresentationModule({self.presentation.name})"

    # states

    def lift(self, element: AlgElement | Scalar | Number) -> AlgElement:
        """Bring an element of the presentation into the specialized algebra."""
        if isinstance(element, AlgElement):
            return element.substitute(self.bindings, self.algebra)
        return self.algebra.scalar(self.scalar(element))

    def scalar(self, value: Scalar | Number) -> Scalar:
        return self.field.coerce(value).substitute(self.bindings)

    def state(self, *exponents: int) -> StateCombo:
        """Basis state with the given template exponents."""
        if len(exponents) != len(self.template):
            raise ValueError(
                f"expected {len(self.template)} exponents for {self.template}, "
                f"got {exponents}"
            )
        if any(e < 0 for e in exponents):
            raise ValueError(f"negative exponent in {exponents}")
        return StateCombo(self.field, {tuple(exponents): self.field.one})

    def basis(self, bounds: Sequence[int] | int) -> list[StateIndex]:
        """All indices with every exponent at most its bound."""
        if isinstance(bounds, int):
            bounds = [bounds] * len(self.template)
        return [tuple(idx) for idx in product(*(range(b + 1) for b in bounds))]

    def word_of(self, idx: StateIndex) -> Word:
        return tuple(
            letter for letter, exp in zip(self.template, idx) for _ in range(exp)
        )

    def _index_of(self, word: Word) -> StateIndex | None:
        idx = []
        position = 0
        for letter in self.template:
            count = 0
            while position < len(word) and word[position] == letter:
                position += 1
                count += 1
            idx.append(count)
        return tuple(idx) if position == len(word) else None

    # action

    def apply_word(self, word: Word) -> StateCombo:
        """Image of ``word * Psi`` in the basis."""
        with self._lock:
            cached = self._memo.get(word)
            if cached is not None:
                return cached
            if word in self._pending:
                raise NonClosing(f"reduction of {word} loops in {self.presentation.name}")
            self._pending.add(word)
            try:
                result = self._reduce(word)
            finally:
                self._pending.discard(word)
            self._memo[word] = result
            return result

    def _reduce(self, word: Word) -> StateCombo:
        normal = self.algebra.normal_order(self.algebra.word(word), self.order)
        total = StateCombo(self.field)
        for sorted_word, coeff in normal.terms.items():
            idx = self._index_of(sorted_word)
            if idx is not None:
                total = total + StateCombo(self.field, {idx: coeff})
                continue
            letter = sorted_word[-1]
            rule = self.base_rules.get(letter)
            if rule is None:
                raise NonClosing(
                    f"{letter} is neither raising nor has a base rule in "
                    f"{self.presentation.name}"
                )
            prefix = sorted_word[:-1]
            for rule_word, rule_coeff in rule.terms.items():
                total = total + self.apply_word(prefix + rule_word) * (coeff * rule_coeff)
        return total

    def act(
        self, op: AlgElement | str, state: StateCombo | StateIndex
    ) -> StateCombo:
        """Apply an element of the presentation to a state.

        Parameters
        ----------
        op : AlgElement or str
            Operator, either an element or expression text.
        state : StateCombo or tuple of int
            State, either a combination or a basis index.

        Returns
        -------
        StateCombo
            Exact image.
        """
        op = self._operator(op)
        if not isinstance(state, StateCombo):
            state = self.state(*state)
        total = StateCombo(self.field)
        for idx, coeff in state.terms.items():
            base = self.word_of(idx)
            for word, op_coeff in op.terms.items():
                total = total + self.apply_word(word + base) * (op_coeff * coeff)
        return total

    def _operator(self, op: AlgElement | str) -> AlgElement:
        if isinstance(op, str):
            from polyrep.parser.expression import Namespace, lower

            op = lower(
                op,
                Namespace(self.field, self.presentation.algebra, self.presentation.derived),
            )
        if op.algebra is self.algebra:
            return op
        if not op.algebra.compatible(self.algebra):
            raise MixedPresentation(f"{op} is not an element of {self.presentation.name}")
        return self.lift(op)

    def action_band(self, op: AlgElement | str, indices: Iterable[StateIndex]) -> ActionBand:
        """Sparse matrix of ``op`` on the given basis columns."""
        columns = [tuple(idx) for idx in indices]
        band = ActionBand(str(op), columns)
        for col in columns:
            for row, value in self.act(op, col).terms.items():
                band.entries[(row, col)] = value
        return band

    # checks

    def casimir_eigenvalue(
        self, indices: Iterable[StateIndex], casimir: AlgElement | None = None
    ) -> Scalar | CasimirDiscrepancy:
        """Common scalar by which the Casimir acts, or the discrepancy."""
        casimir = casimir if casimir is not None else self.presentation.casimir
        images = {tuple(idx): self.act(casimir, idx) for idx in indices}
        value = None
        for idx, image in images.items():
            if set(image.terms) - {idx}:
                return CasimirDiscrepancy(images)
            ratio = image.coefficient(idx)
            if value is None:
                value = ratio
            elif ratio != value:
                return CasimirDiscrepancy(images)
        return value if value is not None else self.field.zero

    def span_reduction(
        self, letters: Sequence[str], max_exponent: int
    ) -> dict[tuple[int, ...], StateCombo]:
        """Reduce every ``l1^n1 l2^n2 ... Psi`` with exponents up to a bound.

        Only meaningful for one-index templates, where the result states the
        closure of products of generators on the cyclic span.

        Raises
        ------
        NonClosing
            If a product does not reduce to basis states.
        """
        if len(self.template) != 1:
            raise ValueError("span reduction needs a one-index template")
        results = {}
        for exps in product(range(max_exponent + 1), repeat=len(letters)):
            word = tuple(
                letter for letter, e in zip(letters, exps) for _ in range(e)
            )
            results[exps] = self.apply_word(word)
        return results

    def representation_defects(
        self, indices: Iterable[StateIndex]
    ) -> list[tuple[tuple[str, str], StateIndex, StateCombo]]:
        """Failures of ``g h s - h g s = [g, h] s`` on the given states."""
        generators = self.presentation.generators
        elements = {name: self.lift(self.presentation.gen(name)) for name in generators}
        defects = []
        for idx in indices:
            for i, g in enumerate(generators):
                for h in generators[i + 1 :]:
                    gh = self.act(elements[g], self.act(elements[h], idx))
                    hg = self.act(elements[h], self.act(elements[g], idx))
                    bracket = self.act(self.presentation.bracket(g, h), idx)
                    difference = gh - hg - bracket
                    if difference:
                        defects.append(((g, h), tuple(idx), difference))
        logger.debug("%d representation defects on %s", len(defects), self)
        return defects

    def check_closure(self, max_exponent: int = 3) -> None:
        """Act with every generator on states up to a bound; raise if it fails."""
        for idx in self.basis(max_exponent):
            for name in self.presentation.generators:
                self.act(self.presentation.gen(name), idx)
