"""Claims about the built-in modules and how they are judged.

A claim pairs an engine evaluation with a reference evaluation (a displayed
closed form, a stored value or the differential realization) at a module
index. Judging a claim at an index yields a :class:`Verdict`.
"""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from math import prod
from typing import Callable, Iterable, Literal

from polyrep.base.differential import (
    PairState,
    Realization,
    commutator,
    express_in_basis,
)
from polyrep.base.module import RepresentationModule, StateCombo, StateIndex
from polyrep.base.presentation import Presentation
from polyrep.base.scalar import Number, Scalar
from polyrep.errors import IndexOutOfRange, NotInSpan, OutsideEigenspace

logger = logging.getLogger(__name__)

Status = Literal["MATCH", "MISMATCH", "NOT_APPLICABLE"]
ClaimKind = Literal["state", "scalar", "realized"]
Evaluator = Callable[[RepresentationModule, StateIndex], object]


@dataclass(frozen=True)
class Claim:
    """A checkable statement about one built-in presentation.

    Parameters
    ----------
    id : str
        Registry key, ``<system>.<name>``.
    system : str
        Presentation name the claim is about.
    statement : str
        The displayed statement, in expression syntax.
    engine, reference : callable
        ``(module, index) -> value``; values are subtracted to judge.
    indices : tuple
        Default module indices probed.
    bindings : tuple of (str, number)
        Extra parameter values the module is built with.
    kind : ClaimKind
        ``"state"``, ``"scalar"`` or ``"realized"``.
    """

    id: str
    system: str
    statement: str
    engine: Evaluator
    reference: Evaluator
    indices: tuple[StateIndex, ...]
    bindings: tuple[tuple[str, Number], ...] = ()
    kind: ClaimKind = "state"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a claim at one index."""

    claim_id: str
    system: str
    index: StateIndex
    status: Status
    engine: str = ""
    reference: str = ""
    difference: str = ""


def judge(claim: Claim, module: RepresentationModule, idx: StateIndex) -> Verdict:
    """Evaluate both sides of a claim at one index and compare them exactly."""
    idx = tuple(idx)
    try:
        engine = claim.engine(module, idx)
    except IndexOutOfRange as exc:
        return Verdict(claim.id, claim.system, idx, "NOT_APPLICABLE", difference=str(exc))
    try:
        reference = claim.reference(module, idx)
    except IndexOutOfRange as exc:
        return Verdict(claim.id, claim.system, idx, "NOT_APPLICABLE", difference=str(exc))
    except (NotInSpan, OutsideEigenspace) as exc:
        logger.warning("%s at %s: %s", claim.id, idx, type(exc).__name__)
        return Verdict(
            claim.id,
            claim.system,
            idx,
            "MISMATCH",
            str(engine),
            f"none ({type(exc).__name__})",
            str(exc),
        )
    difference = engine - reference
    if difference:
        logger.warning("%s at %s: MISMATCH", claim.id, idx)
        return Verdict(
            claim.id,
            claim.system,
            idx,
            "MISMATCH",
            str(engine),
            str(reference),
            str(difference),
        )
    return Verdict(claim.id, claim.system, idx, "MATCH", str(engine), str(reference))


# helpers shared by the per-system claim tables


def value(module: RepresentationModule, name: str) -> Scalar:
    """A parameter or derived parameter, with the module bindings applied."""
    derived = module.presentation.derived
    raw = derived[name] if name in derived else module.field.param(name)
    return module.scalar(raw)


def reference_scalar(module: RepresentationModule, label: str) -> Scalar:
    """A scalar ``[reference]`` entry, with the module bindings applied."""
    return module.scalar(module.presentation.references[label].coefficient(()))


def combo(
    module: RepresentationModule,
    entries: Iterable[tuple[StateIndex, Scalar | Number]],
) -> StateCombo:
    """Sum of ``coeff * psi(idx)``, skipping indices with a negative entry."""
    total = StateCombo(module.field)
    for idx, coeff in entries:
        if any(e < 0 for e in idx):
            continue
        total = total + StateCombo(module.field, {tuple(idx): module.scalar(coeff)})
    return total


def falling(m: int, ks: Iterable[int]) -> int:
    """``prod (m - k)`` over ``ks``."""
    return prod(m - k for k in ks)


def action(op: str) -> Evaluator:
    def evaluate(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        return module.act(op, idx)

    return evaluate


def coefficient(op: str, shift: StateIndex) -> Evaluator:
    """Coefficient of ``psi(idx + shift)`` in ``op psi(idx)``."""

    def evaluate(module: RepresentationModule, idx: StateIndex) -> Scalar:
        target = tuple(i + s for i, s in zip(idx, shift))
        return module.act(op, idx).coefficient(target)

    return evaluate


def constant(given: Scalar | Number | str) -> Evaluator:
    """Evaluator returning a fixed scalar, or a named parameter."""

    def evaluate(module: RepresentationModule, idx: StateIndex) -> Scalar:
        if isinstance(given, str):
            return value(module, given)
        return module.scalar(given)

    return evaluate


def probe(arity: int, top: int, start: int = 0) -> tuple[StateIndex, ...]:
    """All indices with entries in ``start..top``, in lexicographic order."""
    if arity == 1:
        return tuple((m,) for m in range(start, top + 1))
    rest = probe(arity - 1, top, start)
    return tuple((m,) + tail for m in range(start, top + 1) for tail in rest)


# claims every system carries


def casimir_scalar_claim(system: str, indices: tuple[StateIndex, ...]) -> Claim:
    """The Casimir acts by its value on the lowest state everywhere."""

    def reference(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        lowest = (0,) * len(idx)
        on_lowest = module.act(module.presentation.casimir, lowest).coefficient(lowest)
        return combo(module, [(idx, on_lowest)])

    def engine(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        return module.act(module.presentation.casimir, idx)

    return Claim(
        f"{system}.casimir_scalar",
        system,
        "casimir * psi(idx) = (casimir on psi(0)) * psi(idx)",
        engine,
        reference,
        indices,
    )


def casimir_eigenvalue_claim(
    system: str, indices: tuple[StateIndex, ...], label: str | None = None
) -> Claim:
    """The Casimir acts by a stored value: the eigenvalue, or a reference entry."""

    def reference(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        if label is None:
            eigenvalue = module.scalar(module.presentation.casimir_eigenvalue)
        else:
            eigenvalue = reference_scalar(module, label)
        return combo(module, [(idx, eigenvalue)])

    def engine(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        return module.act(module.presentation.casimir, idx)

    name = "casimir_eigenvalue" if label is None else label
    source = "eigenvalue" if label is None else label
    return Claim(
        f"{system}.{name}",
        system,
        f"casimir * psi(idx) = {source} * psi(idx)",
        engine,
        reference,
        indices,
    )


def functional_relation_claim(system: str, label: str, arity: int = 1) -> Claim:
    """A functional relation annihilates the lowest state."""

    def engine(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        return module.act(module.presentation.functional_relations[label], idx)

    def reference(module: RepresentationModule, idx: StateIndex) -> StateCombo:
        return StateCombo(module.field)

    return Claim(
        f"{system}.relation_{label}",
        system,
        f"functional relation {label} * psi(0) = 0",
        engine,
        reference,
        ((0,) * arity,),
    )


def derived_display_claim(system: str, derived: str, label: str) -> Claim:
    """A derived parameter of the module equals its displayed form."""
    return Claim(
        f"{system}.{label}",
        system,
        f"{derived} = {label}",
        constant(derived),
        lambda module, idx: reference_scalar(module, label),
        ((0,),),
        kind="scalar",
    )


# claims against a differential realization

_realizations: dict[tuple[int, str], tuple[Presentation, Realization]] = {}
_realizations_lock = threading.Lock()


def realization_for(
    presentation: Presentation,
    convention: str,
    builder: Callable[[Presentation, str], Realization],
) -> Realization:
    """Build a realization once per presentation object and convention."""
    key = (id(presentation), convention)
    with _realizations_lock:
        cached = _realizations.get(key)
        if cached is not None and cached[0] is presentation:
            return cached[1]
        realization = builder(presentation, convention)
        _realizations[key] = (presentation, realization)
        return realization


def realized_claims(
    system: str,
    convention: str,
    builder: Callable[[Presentation, str], Realization],
    letter: str,
    generators: tuple[str, ...],
    top: int,
) -> list[Claim]:
    """Oracle agreement, eigenspace and bracket fidelity claims of a system.

    Parameters
    ----------
    system : str
        Presentation name.
    convention : str
        Realization convention passed to ``builder``.
    builder : callable
        ``(presentation, convention) -> Realization``.
    letter : str
        The raising generator of the one-index module.
    generators : tuple of str
        Generators in presentation order.
    top : int
        Largest exponent probed by default.
    """

    def realization(module: RepresentationModule) -> Realization:
        return realization_for(module.presentation, convention, builder)

    def state(module: RepresentationModule, idx: StateIndex) -> PairState:
        return realization(module).power_states(letter, idx[0])[idx[0]]

    claims = []
    indices = probe(1, top)
    for name in generators:

        def engine(module, idx, name=name) -> StateCombo:
            field = realization(module).field
            image = module.act(name, idx)
            return StateCombo(field, {i: field.coerce(c) for i, c in image.terms.items()})

        def reference(module, idx, name=name) -> StateCombo:
            realized = realization(module)
            image = realized.apply(name, state(module, idx))
            return express_in_basis(image, realized.power_states(letter, idx[0] + 2))

        claims.append(
            Claim(
                f"{system}.oracle_{name}",
                system,
                f"{name} * {letter}^m Psi by operators = engine action",
                engine,
                reference,
                indices,
                kind="realized",
            )
        )

        def residual(module, idx, name=name) -> PairState:
            realized = realization(module)
            return realized.schrodinger_residual(realized.apply(name, state(module, idx)))

        claims.append(
            Claim(
                f"{system}.eigenspace_{name}",
                system,
                f"H {name} {letter}^m Psi = E {name} {letter}^m Psi",
                residual,
                lambda module, idx: PairState.zero(realization(module).field),
                indices,
                kind="realized",
            )
        )
    for i, left in enumerate(generators):
        for right in generators[i + 1 :]:

            def direct(module, idx, left=left, right=right) -> PairState:
                realized = realization(module)
                op = commutator(realized.operator(left), realized.operator(right))
                return realized.apply(op, state(module, idx))

            def table(module, idx, left=left, right=right) -> PairState:
                bracket = module.presentation.bracket(left, right)
                return realization(module).apply_element(bracket, state(module, idx))

            claims.append(
                Claim(
                    f"{system}.bracket_{left}_{right}",
                    system,
                    f"[{left},{right}] by operators = table entry",
                    direct,
                    table,
                    indices[:3],
                    kind="realized",
                )
            )
    return claims
