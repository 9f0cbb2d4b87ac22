"""D_IV: module on ``k(n, m) = X2^n F^m Psi``.

The displayed ``k_{n+1,m+1}`` is the state with index ``(n, m)``.
"""
from __future__ import annotations

from fractions import Fraction

from polyrep.base.module import RepresentationModule, StateCombo, StateIndex
from polyrep.systems.claims import (
    Claim,
    action,
    casimir_scalar_claim,
    combo,
    functional_relation_claim,
    probe,
    value,
)

SYSTEM = "DIV"

GRID = probe(2, 2)


def x2_shift(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    n, m = idx
    return combo(module, [((n + 1, m), 1)])


def x1_eigen(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    n, m = idx
    return combo(module, [(idx, value(module, "ss") - (n + m))])


def f_action(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    """Raising in ``F`` plus the displayed ``X2``-lowering term."""
    n, m = idx
    E, alpha, c4, ss = (value(module, name) for name in ("E", "alpha", "c4", "ss"))
    linear = 2 * E - Fraction(1, 2) + 2 * alpha * c4
    drift = sum(n - j + m for j in range(1, n + 1))
    cubic = sum(((n - j + m - ss) ** 3 for j in range(1, n + 1)), module.field.zero)
    return combo(module, [((n, m + 1), 1), ((n - 1, m), linear * (ss - drift) - 4 * cubic)])


def casimir_display(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    return module.act(module.presentation.references["casimir_display"], idx)


CLAIMS = [
    Claim(
        f"{SYSTEM}.X2_shift",
        SYSTEM,
        "X2 k_{n+1,m+1} = k_{n+2,m+1}",
        action("X2"),
        x2_shift,
        GRID,
    ),
    Claim(
        f"{SYSTEM}.X1_eigen",
        SYSTEM,
        "X1 k_{n+1,m+1} = (sqrt(s) - (n + m)) k_{n+1,m+1}",
        action("X1"),
        x1_eigen,
        GRID,
    ),
    Claim(
        f"{SYSTEM}.F_action",
        SYSTEM,
        "F k_{n+1,m+1} = k_{n+1,m+2} + {...} k_{n,m+1}",
        action("F"),
        f_action,
        GRID,
    ),
    Claim(
        f"{SYSTEM}.casimir_display",
        SYSTEM,
        "casimir * k = casimir_display * k",
        lambda module, idx: module.act(module.presentation.casimir, idx),
        casimir_display,
        GRID,
    ),
    casimir_scalar_claim(SYSTEM, GRID),
    functional_relation_claim(SYSTEM, "display", arity=2),
]
