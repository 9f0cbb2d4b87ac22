"""Quintic algebra: module on ``K^m Psi`` and the differential realization."""
from __future__ import annotations

from fractions import Fraction

from polyrep.base.differential import (
    Convention,
    DiffOp,
    OdeReduction,
    Realization,
    coordinate_field,
    momentum_sign,
)
from polyrep.base.module import RepresentationModule, StateCombo, StateIndex
from polyrep.base.presentation import Presentation
from polyrep.base.scalar import Scalar, ScalarField
from polyrep.systems.claims import (
    Claim,
    action,
    casimir_eigenvalue_claim,
    casimir_scalar_claim,
    combo,
    derived_display_claim,
    functional_relation_claim,
    probe,
    realized_claims,
    value,
)
from polyrep.systems.sequences import quintic_lowering_coefficient

SYSTEM = "QUINTIC"
REALIZED = "QUINTIC_REALIZED"


def killing_fields(field: ScalarField, sign: Scalar) -> tuple[DiffOp, DiffOp, DiffOp]:
    """Translation, dilation and inversion fields of the half-plane metric.

    In the shifted coordinate ``X = x + c2/c1`` they read ``p_y``,
    ``X p_X + y p_y`` and ``2 X y p_X + (y^2 - X^2) p_y``, with momenta
    ``p = sign * d``, and commute with ``c0^2 X^2 (p_x^2 + p_y^2)``.
    """
    c1, c2 = field.param("c1"), field.param("c2")
    shifted, y = field.param("x") + c2 / c1, field.param("y")
    px, py = sign * DiffOp.partial(field, 1, 0), sign * DiffOp.partial(field, 0, 1)
    dilation = shifted * px + y * py
    inversion = 2 * shifted * y * px + (y * y - shifted * shifted) * py
    return py, dilation, inversion


def realization(presentation: Presentation, convention: Convention = "display") -> Realization:
    """Integrals ``Y1, Y2, K`` as polynomials in the Killing fields.

    With ``R = c1 Y1^2 + c0 H`` the integrals are::

        K  = R D - c1 Y1^2
        Y2 = R M / 2 - c1 Y1 D + (c1/2 + c1 H / (2 c0^2)) Y1

    for the dilation ``D`` and the inversion ``M``; ``H`` stays an operator.
    In the display convention they satisfy the bracket table of
    QUINTIC_REALIZED exactly.

    Parameters
    ----------
    presentation : Presentation
        QUINTIC or QUINTIC_REALIZED; supplies ``c0, c1, c2``.
    convention : {"display", "momentum"}, default="display"
        Momenta ``p = sign * d``.
    """
    field = coordinate_field(presentation.field)
    c0, c1, c2 = (field.param(name) for name in ("c0", "c1", "c2"))
    x = field.param("x")
    sign = momentum_sign(convention, field)
    y1, dilation, inversion = killing_fields(field, sign)
    px = sign * DiffOp.partial(field, 1, 0)
    half = field.const(Fraction(1, 2))

    hamiltonian = c0**2 * (c2 + c1 * x) ** 2 / c1**2 * (px * px + y1 * y1)
    lift = c1 * (y1 * y1) + c0 * hamiltonian
    k = lift * dilation - c1 * (y1 * y1)
    y2 = (
        half * (lift * inversion)
        - c1 * (y1 * dilation)
        + c1 / 2 * y1
        + c1 / (2 * c0**2) * (hamiltonian * y1)
    )
    energy = presentation.module_spec.energy if presentation.module_spec else "E"
    rho = field.param("slam") / sign
    return Realization(
        name=presentation.name,
        field=field,
        hamiltonian=hamiltonian,
        operators={"Y1": y1, "Y2": y2, "K": k},
        reduction=OdeReduction.from_hamiltonian(hamiltonian, field.param(energy), rho),
        energy=energy,
        central=presentation.central,
        convention=convention,
    )


def k_shift(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    (m,) = idx
    return combo(module, [((m + 1,), 1)])


def y1_action(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    """``sqrt(lam) K^m Psi`` minus the lowering sum."""
    (m,) = idx
    energy = module.spec.energy
    lowering = [
        ((ell,), -quintic_lowering_coefficient(ell, m, module.field, energy))
        for ell in range(m)
    ]
    return combo(module, [(idx, value(module, "slam")), *lowering])


def casimir_display(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    return module.act(module.presentation.references["casimir_display"], idx)


CLAIMS = [
    Claim(f"{SYSTEM}.K_shift", SYSTEM, "K psi_m = psi_{m+1}", action("K"), k_shift, probe(1, 5)),
    Claim(
        f"{SYSTEM}.Y1_action",
        SYSTEM,
        "Y1 psi_m = sqrt(lam) psi_m - sum_{l<m} Upsilon_l psi_l",
        action("Y1"),
        y1_action,
        probe(1, 4),
    ),
    Claim(
        f"{SYSTEM}.casimir_display",
        SYSTEM,
        "casimir * psi_m = casimir_display * psi_m",
        lambda module, idx: module.act(module.presentation.casimir, idx),
        casimir_display,
        probe(1, 3),
    ),
    derived_display_claim(SYSTEM, "rho1", "rho1_display"),
    derived_display_claim(SYSTEM, "rho2", "rho2_display"),
    derived_display_claim(SYSTEM, "rho3", "rho3_display"),
    casimir_scalar_claim(SYSTEM, probe(1, 4)),
    functional_relation_claim(SYSTEM, "display"),
    casimir_scalar_claim(REALIZED, probe(1, 6)),
    casimir_eigenvalue_claim(REALIZED, probe(1, 6)),
    functional_relation_claim(REALIZED, "realized"),
    *realized_claims(REALIZED, "display", realization, "K", ("Y1", "Y2", "K"), 6),
]
