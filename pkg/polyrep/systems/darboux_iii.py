"""D_III: module on ``h(m, n) = F^m X2^n Psi``.

The displayed ``h_{n+1,m+1}`` is the state with index ``(m, n)``.
"""
from __future__ import annotations

from polyrep.base.module import RepresentationModule, StateCombo, StateIndex
from polyrep.systems.claims import (
    Claim,
    action,
    casimir_eigenvalue_claim,
    casimir_scalar_claim,
    coefficient,
    combo,
    constant,
    functional_relation_claim,
    probe,
    value,
)

SYSTEM = "DIII"

GRID = probe(2, 2)


def f_shift(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    m, n = idx
    return combo(module, [((m + 1, n), value(module, "kappa") * value(module, "E"))])


CLAIMS = [
    Claim(
        f"{SYSTEM}.F_shift",
        SYSTEM,
        "F h_{n+1,m+1} = kappa*E h_{n+1,m+2}",
        action("F"),
        f_shift,
        GRID,
    ),
    Claim(
        f"{SYSTEM}.X2_leading",
        SYSTEM,
        "coefficient of h_{n+2,m+1} in X2 h_{n+1,m+1} = 1",
        coefficient("X2", (0, 1)),
        constant(1),
        GRID,
        kind="scalar",
    ),
    Claim(
        f"{SYSTEM}.X1_diagonal",
        SYSTEM,
        "coefficient of h_{n+1,m+1} in X1 h_{n+1,m+1} = sqrt(kappa)",
        coefficient("X1", (0, 0)),
        constant("sk"),
        GRID,
        kind="scalar",
    ),
    casimir_scalar_claim(SYSTEM, GRID),
    casimir_eigenvalue_claim(SYSTEM, GRID),
    casimir_eigenvalue_claim(SYSTEM, GRID, label="casimir_value_display"),
    functional_relation_claim(SYSTEM, "display", arity=2),
]
