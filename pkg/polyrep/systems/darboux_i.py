"""D_I: displayed module actions and the differential realization.

States are indexed by the exponent of ``F``: ``psi(m) = F^m Psi``. A displayed
``psi_{j}`` is the state ``psi(j - 1)``.
"""
from __future__ import annotations

from fractions import Fraction

from polyrep.base.differential import (
    Convention,
    DiffOp,
    OdeReduction,
    Realization,
    commutator,
    coordinate_field,
    momentum_sign,
)
from polyrep.base.module import RepresentationModule, StateCombo, StateIndex
from polyrep.base.presentation import Presentation
from polyrep.systems.claims import (
    Claim,
    action,
    casimir_eigenvalue_claim,
    casimir_scalar_claim,
    combo,
    falling,
    functional_relation_claim,
    probe,
    realized_claims,
    value,
)

SYSTEM = "DI"
REALIZED = "DI_REALIZED"


def realization(presentation: Presentation, convention: Convention = "momentum") -> Realization:
    """Integrals of D_I as differential operators in ``x, y``.

    Parameters
    ----------
    presentation : Presentation
        DI or DI_REALIZED; supplies the parameters.
    convention : {"momentum", "display"}, default="momentum"
        ``"momentum"`` reads momenta as ``-I d``, which reproduces the bracket
        table; ``"display"`` takes the printed operators literally.

    Returns
    -------
    Realization
        ``X1, X2, F`` with ``F = [X1, X2]`` expanded.
    """
    field = coordinate_field(presentation.field)
    alpha, beta, c1 = field.param("alpha"), field.param("beta"), field.param("c1")
    x, y = field.param("x"), field.param("y")
    sign = momentum_sign(convention, field)
    phi = (alpha * x + beta).inverse()
    laplace = DiffOp.partial(field, 2, 0) + DiffOp.partial(field, 0, 2)
    dx, dy = DiffOp.partial(field, 1, 0), DiffOp.partial(field, 0, 1)
    dxy, dyy = DiffOp.partial(field, 1, 1), DiffOp.partial(field, 0, 2)
    rotation = y * dxy - x * dyy + field.const(Fraction(1, 2)) * dx
    if convention == "momentum":
        hamiltonian = -phi * (laplace - c1)
        x2 = -rotation - alpha * y * y / 4 * hamiltonian
    else:
        hamiltonian = phi * (laplace + c1)
        x2 = rotation - alpha * y * y / 4 * hamiltonian
    x1 = sign * dy
    energy = presentation.module_spec.energy if presentation.module_spec else "E"
    rho = field.param("sr") / sign
    return Realization(
        name=presentation.name,
        field=field,
        hamiltonian=hamiltonian,
        operators={"X1": x1, "X2": x2, "F": commutator(x1, x2)},
        reduction=OdeReduction.from_hamiltonian(hamiltonian, field.param(energy), rho),
        energy=energy,
        central=presentation.central,
        convention=convention,
    )


# displayed actions on psi(m) = F^m Psi


def f_shift(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    (m,) = idx
    return combo(module, [((m + 1,), value(module, "E"))])


def x1_lowering(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    (m,) = idx
    half = value(module, "alpha") * value(module, "E") / 2
    return combo(module, [((m,), value(module, "sr")), ((m - 1,), (m - 1) * half)])


def x2_band(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    """The six-term action of ``X2`` displayed for ``m > 3``."""
    (m,) = idx
    E, alpha, r, sr, d = (value(module, n) for n in ("E", "alpha", "r", "sr", "d"))
    ae = alpha * E
    return combo(
        module,
        [
            ((m + 2,), ae.inverse()),
            ((m - 4,), falling(m, range(1, 5)) * (ae / 2) ** 3),
            ((m - 3,), sr * falling(m, range(1, 3)) / 2),
            ((m - 2,), (6 * r + d) * falling(m, range(1, 3)) * ae / 4),
            ((m - 1,), 2 * (m - 1) * (2 * sr + d) * r),
            ((m,), (r * r + r * d) / ae),
        ],
    )


def x2_band_at_zero_separation(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    (m,) = idx
    E, alpha, d = (value(module, n) for n in ("E", "alpha", "d"))
    ae = alpha * E
    return combo(
        module,
        [
            ((m + 2,), ae.inverse()),
            ((m - 4,), falling(m, range(1, 5)) * (ae / 2) ** 3),
            ((m - 2,), d * falling(m, range(1, 3)) * ae / 4),
        ],
    )


def x1_at_zero_separation(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    (m,) = idx
    half = value(module, "alpha") * value(module, "E") / 2
    return combo(module, [((m - 1,), (m - 1) * half)])


def x2_on_second_state(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    """Displayed ``X2 F^2 Psi``, with ``F^2 (c - F^2 / E) Psi`` expanded."""
    E, alpha, r, sr, d = (value(module, n) for n in ("E", "alpha", "r", "sr", "d"))
    return combo(
        module,
        [
            ((0,), alpha * E * (d / 2 - 3 * r)),
            ((1,), 4 * r * sr + 2 * d * sr),
            ((2,), r * r + d * r),
            ((4,), -E.inverse()),
        ],
    )


def k1_value(module: RepresentationModule, idx: StateIndex) -> StateCombo:
    r, d = value(module, "r"), value(module, "d")
    return combo(module, [(idx, -2 * (r * r + d * r))])


BAND = probe(1, 10, start=4)

CLAIMS = [
    Claim(f"{SYSTEM}.F_shift", SYSTEM, "F psi_{m+1} = E psi_{m+2}", action("F"), f_shift, probe(1, 6)),
    Claim(
        f"{SYSTEM}.X1_lowering",
        SYSTEM,
        "X1 psi_{m+1} = (m-1) alpha*E/2 psi_m + sr psi_{m+1}",
        action("X1"),
        x1_lowering,
        probe(1, 6),
    ),
    Claim(
        f"{SYSTEM}.X2_band",
        SYSTEM,
        "X2 psi_{m+1} = 1/(alpha*E) psi_{m+3} + ... + (r^2 + r*d)/(alpha*E) psi_{m+1}, m > 3",
        action("X2"),
        x2_band,
        BAND,
    ),
    Claim(
        f"{SYSTEM}.K1_eigenvalue",
        SYSTEM,
        "K1 psi_{m+1} = -2*(r^2 + d*r) psi_{m+1}",
        action("F^2 - alpha*H*X2 - d*X1^2 - X1^4"),
        k1_value,
        probe(1, 6),
    ),
    Claim(
        f"{SYSTEM}.X2_on_second_state",
        SYSTEM,
        "X2 F^2 Psi = alpha*E*(d/2 - 3*r) Psi + (4*r*sr + 2*d*sr) F Psi + F^2 ((r^2 + d*r) - F^2/E) Psi",
        action("X2"),
        x2_on_second_state,
        ((2,),),
    ),
    Claim(
        f"{SYSTEM}.X1_zero_separation",
        SYSTEM,
        "r = 0: X1 psi_{m+1} = alpha*E*(m-1)/2 psi_m",
        action("X1"),
        x1_at_zero_separation,
        BAND,
        bindings=(("r", 0),),
    ),
    Claim(
        f"{SYSTEM}.X2_zero_separation",
        SYSTEM,
        "r = 0: X2 psi_{m+1} = 1/(alpha*E) psi_{m+3} + ... + d ... psi_{m-1}",
        action("X2"),
        x2_band_at_zero_separation,
        BAND,
        bindings=(("r", 0),),
    ),
    casimir_scalar_claim(SYSTEM, probe(1, 6)),
    casimir_eigenvalue_claim(SYSTEM, probe(1, 6)),
    functional_relation_claim(SYSTEM, "display"),
    *realized_claims(SYSTEM, "display", realization, "F", ("X1", "X2", "F"), 2),
    casimir_scalar_claim(REALIZED, probe(1, 6)),
    casimir_eigenvalue_claim(REALIZED, probe(1, 6)),
    functional_relation_claim(REALIZED, "realized"),
    *realized_claims(REALIZED, "momentum", realization, "F", ("X1", "X2", "F"), 6),
]
