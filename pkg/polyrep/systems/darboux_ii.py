"""D_II: displayed module actions on ``psi(m) = F^m Psi``."""
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
    derived_display_claim,
    functional_relation_claim,
    probe,
    reference_scalar,
)
from polyrep.systems.sequences import BracketSequences, dii_lowering_coefficient

SYSTEM = "DII"

SEQUENCES = BracketSequences()


def f_shift(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    (m,) = idx
    return combo(module, [((m + 1,), 1)])


def x1_off_diagonal(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    image = module.act("X1", idx)
    return image - combo(module, [(idx, image.coefficient(idx))])


def x1_lowering(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    """``-sum_{l < m} Xi(l, m) psi(l)`` from the bracket sequences."""
    (m,) = idx
    energy = module.spec.energy
    return combo(
        module,
        [
            ((ell,), -dii_lowering_coefficient(ell, m, module.field, SEQUENCES, energy))
            for ell in range(m)
        ],
    )


CLAIMS = [
    Claim(f"{SYSTEM}.F_shift", SYSTEM, "F psi_m = psi_{m+1}", action("F"), f_shift, probe(1, 6)),
    Claim(
        f"{SYSTEM}.X1_diagonal",
        SYSTEM,
        "coefficient of psi_m in X1 psi_m = t",
        coefficient("X1", (0,)),
        lambda module, idx: reference_scalar(module, "x1_diagonal_display"),
        probe(1, 4),
        kind="scalar",
    ),
    Claim(
        f"{SYSTEM}.X1_lowering",
        SYSTEM,
        "X1 psi_m - (diagonal) = -sum_{l<m} Xi_l psi_l",
        x1_off_diagonal,
        x1_lowering,
        probe(1, 4, start=1),
    ),
    Claim(
        f"{SYSTEM}.X2_leading",
        SYSTEM,
        "coefficient of psi_{m+2} in X2 psi_m = 2",
        coefficient("X2", (2,)),
        constant(2),
        probe(1, 4),
        kind="scalar",
    ),
    derived_display_claim(SYSTEM, "delta", "delta_display"),
    casimir_scalar_claim(SYSTEM, probe(1, 5)),
    casimir_eigenvalue_claim(SYSTEM, probe(1, 5)),
    functional_relation_claim(SYSTEM, "display"),
]
