"""Presentations of polynomial algebras and their lowest-state module data."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from itertools import combinations
from typing import Mapping

from polyrep.base.free_algebra import AlgElement, FreeAlgebra, Generator
from polyrep.base.scalar import Scalar, ScalarField
from polyrep.errors import (
    CasimirNotCentral,
    IncompleteCommTable,
    JacobiViolation,
    PresentationError,
    WeightGuardViolation,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuleSpec:
    """How the module over a lowest state is generated.

    Parameters
    ----------
    template : tuple of str
        Raising generators in the order they appear in a basis word, left to
        right. A state is indexed by one exponent per template letter.
    order : tuple of str
        Generator order used to normal-order inside the module: the template
        letters first, then the generators that act through base rules.
    base_rules : dict
        Action of non-raising generators on the lowest state, as elements in
        the raising generators.
    energy : str
        Parameter substituted for the central element inside the module.
    """

    template: tuple[str, ...]
    order: tuple[str, ...]
    base_rules: Mapping[str, AlgElement]
    energy: str = "E"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleSpec):
            return NotImplemented
        return (
            self.template == other.template
            and self.order == other.order
            and dict(self.base_rules) == dict(other.base_rules)
            and self.energy == other.energy
        )

    @property
    def raising(self) -> frozenset[str]:
        return frozenset(self.template)


@dataclass
class Presentation:
    """A validated algebra presentation.

    Parameters
    ----------
    name : str
        Short name, e.g. ``"DI"``.
    algebra : FreeAlgebra
        Generators, weights and bracket table.
    casimir : AlgElement
        Central element used by the engine.
    central : str, default="H"
        Name of the central parameter.
    derived : dict, optional
        Derived parameters, stored expanded.
    casimir_eigenvalue : Scalar, optional
        Value of the Casimir on the lowest state.
    functional_relations : dict, optional
        Named operator identities of the realization.
    module_spec : ModuleSpec, optional
        Lowest-state data of the built-in module.
    references : dict, optional
        Named displayed forms kept for comparison.
    description : str, optional
        Free text.
    """

    name: str
    algebra: FreeAlgebra
    casimir: AlgElement
    central: str = "H"
    derived: dict[str, Scalar] = dataclass_field(default_factory=dict)
    casimir_eigenvalue: Scalar | None = None
    functional_relations: dict[str, AlgElement] = dataclass_field(default_factory=dict)
    module_spec: ModuleSpec | None = None
    references: dict[str, AlgElement] = dataclass_field(default_factory=dict)
    description: str = ""

    @property
    def field(self) -> ScalarField:
        return self.algebra.field

    @property
    def generators(self) -> tuple[str, ...]:
        return self.algebra.order

    def gen(self, name: str) -> AlgElement:
        return self.algebra.gen(name)

    def bracket(self, left: str, right: str) -> AlgElement:
        return self.algebra.bracket(left, right)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        pairs = list(combinations(self.generators, 2))
        return (
            self.name == other.name
            and self.field == other.field
            and self.algebra.generators == other.algebra.generators
            and self.generators == other.generators
            and all(
                other.algebra.has_bracket(*pair)
                and self.bracket(*pair).terms == other.bracket(*pair).terms
                for pair in pairs
            )
            and self.casimir.terms == other.casimir.terms
            and self.casimir_eigenvalue == other.casimir_eigenvalue
            and _terms(self.functional_relations) == _terms(other.functional_relations)
            and self.module_spec == other.module_spec
            and _terms(self.references) == _terms(other.references)
            and self.derived == other.derived
        )

    # validation

    def missing_brackets(self) -> list[tuple[str, str]]:
        return [
            pair
            for pair in combinations(self.generators, 2)
            if not self.algebra.has_bracket(*pair)
        ]

    def weight_guard_failures(self) -> list[tuple[tuple[str, str], tuple[str, ...]]]:
        """Rule words that do not decrease the rewriting measure.

        The rule for an out-of-order pair ``v u`` must produce words that are
        lighter, or of equal weight and shorter, or of equal weight and length
        with no inversion.
        """
        failures = []
        for low, high in combinations(self.generators, 2):
            if not self.algebra.has_bracket(high, low):
                continue
            weight = self.algebra.weight((high, low))
            for word in self.algebra.bracket(high, low).terms:
                w = self.algebra.weight(word)
                if w < weight:
                    continue
                if w == weight and (
                    len(word) < 2
                    or (
                        len(word) == 2
                        and FreeAlgebra.inversions(word, self.generators) < 1
                    )
                ):
                    continue
                failures.append(((low, high), word))
        return failures

    def jacobi_residuals(self) -> dict[tuple[str, str, str], AlgElement]:
        """Normal-ordered Jacobi sums for every generator triple."""
        algebra = self.algebra
        residuals = {}
        for a, b, c in combinations(self.generators, 3):
            ga, gb, gc = algebra.gen(a), algebra.gen(b), algebra.gen(c)
            total = (
                algebra.commutator(algebra.commutator(ga, gb), gc)
                + algebra.commutator(algebra.commutator(gb, gc), ga)
                + algebra.commutator(algebra.commutator(gc, ga), gb)
            )
            residuals[(a, b, c)] = algebra.normal_order(total)
        return residuals

    def casimir_centrality(self) -> dict[str, AlgElement]:
        """Map each generator ``g`` to the normal form of ``[casimir, g]``."""
        return {
            name: self.algebra.commutator(self.casimir, self.algebra.gen(name))
            for name in self.generators
        }

    def validate(self) -> "Presentation":
        """Run every load-time check, raising the first failure."""
        missing = self.missing_brackets()
        if missing:
            raise IncompleteCommTable(missing[0])
        failures = self.weight_guard_failures()
        if failures:
            raise WeightGuardViolation(*failures[0])
        for triple, residual in self.jacobi_residuals().items():
            if residual:
                raise JacobiViolation(triple, str(residual))
        for name, residual in self.casimir_centrality().items():
            if residual:
                raise CasimirNotCentral(name, str(residual))
        for label, relation in self.functional_relations.items():
            if not self.algebra.normal_order(relation):
                raise PresentationError(
                    f"functional relation {label!r} vanishes in the free algebra"
                )
        if self.module_spec is not None:
            self._validate_module_spec(self.module_spec)
        logger.info("presentation %s validated", self.name)
        return self

    def _validate_module_spec(self, spec: ModuleSpec) -> None:
        if sorted(spec.order) != sorted(self.generators):
            raise PresentationError(
                f"module order {spec.order} is not a permutation of {self.generators}"
            )
        if spec.order[: len(spec.template)] != spec.template:
            raise PresentationError("module order must start with the template")
        if spec.energy not in self.field:
            raise PresentationError(f"unknown energy parameter {spec.energy!r}")
        for name in spec.order[len(spec.template) :]:
            if name not in spec.base_rules:
                raise PresentationError(f"generator {name} has no base rule")
        for name, rule in spec.base_rules.items():
            if name in spec.raising:
                raise PresentationError(f"raising generator {name} has a base rule")
            letters = {letter for word in rule.terms for letter in word}
            if not letters <= spec.raising:
                raise PresentationError(
                    f"base rule of {name} uses non-raising generators {letters - spec.raising}"
                )


def build_algebra(
    field: ScalarField, weights: Mapping[str, int], config=None
) -> FreeAlgebra:
    """Create the free algebra of a presentation, generators in listed order."""
    return FreeAlgebra(
        field, [Generator(name, weight) for name, weight in weights.items()], config
    )


def _terms(elements: Mapping[str, AlgElement]) -> dict[str, dict]:
    return {key: value.terms for key, value in elements.items()}
