"""Test differential operators and the separated-state calculus."""
from fractions import Fraction

import pytest

from polyrep.base.differential import (
    DiffOp,
    OdeReduction,
    PairState,
    anticommutator,
    commutator,
    coordinate_field,
    express_in_basis,
    momentum_sign,
)
from polyrep.base.scalar import Param, make_field
from polyrep.errors import NotInSpan, OutsideEigenspace
from polyrep.systems.catalog import builtin, realization, realize
from polyrep.systems.quintic import killing_fields


class TestDiffOp:
    """Test composition of differential operators."""

    def setup_method(self):
        """Set up a coordinate field."""
        self.field = coordinate_field(make_field((Param("k"),)))
        self.x = self.field.param("x")
        self.y = self.field.param("y")
        self.dx = DiffOp.partial(self.field, 1, 0)
        self.dy = DiffOp.partial(self.field, 0, 1)
        self.one = DiffOp.multiplication(self.field, 1)

    def test_coordinate_field(self):
        """Test that coordinates and the imaginary unit are adjoined."""
        assert {"x", "y", "I"} <= set(self.field.names)
        assert self.field.params["I"].base == -1
        assert coordinate_field(self.field) is self.field

    def test_canonical_commutator(self):
        """Test ``[d_x, x] = 1`` and ``[d_x, d_y] = 0``."""
        x = DiffOp.multiplication(self.field, self.x)
        assert commutator(self.dx, x) == self.one
        assert not commutator(self.dx, self.dy)

    def test_leibniz(self):
        """Test moving a derivative past a coefficient."""
        product = self.dx * (self.x * self.x)
        assert product == self.x * self.x * self.dx + 2 * self.x * self.one

    def test_scalar_on_left_scales(self):
        """Test that a scalar on the left multiplies the coefficients."""
        scaled = self.x * self.dx
        assert scaled.terms == {(1, 0): self.x}
        assert (3 * self.dy).terms == {(0, 1): self.field.const(3)}

    def test_sums_with_scalars(self):
        """Test adding and subtracting multiplication operators."""
        op = self.dx + 2
        assert op.terms == {(1, 0): self.field.one, (0, 0): self.field.const(2)}
        assert (op - 2) == self.dx
        assert (2 - self.dx) == -(self.dx - 2)

    def test_power_and_order(self):
        """Test powers of operators."""
        laplace = self.dx**2 + self.dy**2
        assert laplace.order == 2
        assert (self.dx**0) == self.one
        assert DiffOp(self.field).order == 0

    def test_anticommutator(self):
        """Test ``{d_x, x} = 2 x d_x + 1``."""
        x = DiffOp.multiplication(self.field, self.x)
        assert anticommutator(self.dx, x) == 2 * self.x * self.dx + self.one

    def test_text(self):
        """Test the text of an operator."""
        assert str(self.x * self.dx**2) == "(x)*dx^2"
        assert str(DiffOp(self.field)) == "0"


class TestOdeReduction:
    """Test folding derivatives of the separated factors."""

    def setup_method(self):
        """Set up a reduction with ``X'' = k x X`` and ``Y' = 2 Y``."""
        self.field = coordinate_field(make_field((Param("k"),)))
        self.x = self.field.param("x")
        self.y = self.field.param("y")
        self.reduction = OdeReduction(self.field.param("k") * self.x, self.field.const(2))

    def test_dx(self):
        """Test the first and second x-derivative of the lowest state."""
        lowest = PairState.lowest(self.field)
        first = self.reduction.dx(lowest)
        assert first == PairState(self.field, 0, 1)
        assert self.reduction.dx(first) == PairState(self.field, self.field.param("k") * self.x, 0)

    def test_dy(self):
        """Test the y-derivative of a state with a y-dependent coefficient."""
        state = PairState(self.field, self.y, 0)
        assert self.reduction.dy(state) == PairState(self.field, 1 + 2 * self.y, 0)

    def test_apply(self):
        """Test applying a mixed operator."""
        op = DiffOp.partial(self.field, 1, 1)
        image = op.apply(PairState.lowest(self.field), self.reduction)
        assert image == PairState(self.field, 0, 2)

    def test_from_hamiltonian(self):
        """Test solving ``u (d_x^2 + d_y^2) + w`` for ``q``."""
        dx2 = DiffOp.partial(self.field, 2, 0)
        dy2 = DiffOp.partial(self.field, 0, 2)
        e = self.field.param("k")
        hamiltonian = self.x * (dx2 + dy2) + 1
        reduction = OdeReduction.from_hamiltonian(hamiltonian, e, self.field.const(3))
        assert reduction.q == (e - 1) / self.x - 9

    def test_invalid_hamiltonian(self):
        """Test that non-separable operators are refused."""
        dx2 = DiffOp.partial(self.field, 2, 0)
        dy2 = DiffOp.partial(self.field, 0, 2)
        with pytest.raises(ValueError):
            OdeReduction.from_hamiltonian(dx2, self.field.one, self.field.one)
        with pytest.raises(ValueError):
            OdeReduction.from_hamiltonian(self.y * (dx2 + dy2), self.field.one, self.field.one)

    def test_momentum_sign(self):
        """Test the factor of ``d_y`` per convention."""
        assert momentum_sign("momentum", self.field) == -self.field.param("I")
        assert momentum_sign("display", self.field) == 1
        with pytest.raises(ValueError):
            momentum_sign("other", self.field)


class TestDIRealization:
    """Test the differential realization of the cubic algebra with a linear integral."""

    def setup_method(self):
        """Set up both conventions."""
        self.momentum = realization("DI_REALIZED")
        self.display = realization(builtin("DI"), "display")
        field = self.momentum.field
        self.field = field
        self.alpha = field.param("alpha")
        self.beta = field.param("beta")
        self.c1 = field.param("c1")
        self.e = field.param("E")
        self.r = field.param("r")
        self.sr = field.param("sr")
        self.i = field.param("I")
        self.x = field.param("x")
        self.y = field.param("y")

    def test_separation_function(self):
        """Test ``X'' = q X`` in both conventions."""
        expected = self.r + self.c1 - self.e * (self.alpha * self.x + self.beta)
        assert self.momentum.reduction.q == expected
        assert self.display.reduction.q == -expected

    def test_raising_on_lowest(self):
        """Test F on the separated solution."""
        lowest = self.momentum.lowest()
        assert self.momentum.apply("F", lowest) == PairState(
            self.field, self.i * self.alpha * self.e * self.y / 2, -self.sr
        )
        assert self.display.apply("F", lowest) == PairState(
            self.field, -self.alpha * self.e * self.y / 2, self.sr
        )

    def test_quadratic_integral_on_lowest(self):
        """Test X2 on the separated solution in the momentum convention."""
        image = self.momentum.apply("X2", self.momentum.lowest())
        expected = PairState(
            self.field,
            -self.r * self.x - self.alpha * self.e * self.y**2 / 4,
            -self.i * self.sr * self.y - Fraction(1, 2),
        )
        assert image == expected
        assert self.momentum.schrodinger_residual(image) == 0

    def test_linear_integral_on_lowest(self):
        """Test that X1 acts by sr on the separated solution."""
        lowest = self.momentum.lowest()
        assert self.momentum.apply("X1", lowest) == lowest * self.sr
        assert self.momentum.apply("H", lowest) == lowest * self.e

    def test_residual_detects_non_eigenstates(self):
        """Test that a state outside the eigenspace has a nonzero residual."""
        state = PairState(self.field, self.y, 0)
        assert self.momentum.schrodinger_residual(state)
        with pytest.raises(OutsideEigenspace):
            self.momentum.apply_element(builtin("DI_REALIZED").gen("X1"), state)

    def test_bracket_table_in_momentum_convention(self):
        """Test that the momentum convention reproduces ``[X1, F] = alpha/2 H``."""
        presentation = builtin("DI_REALIZED")
        defect = self.momentum.commutator_defect("X1", "F", presentation.bracket("X1", "F"))
        assert defect == 0
        defect = self.momentum.commutator_defect("X1", "X2", presentation.bracket("X1", "X2"))
        assert defect == 0

    def test_bracket_sign_in_display_convention(self):
        """Test that the literal operators flip the sign of ``[X1, F]``."""
        presentation = builtin("DI")
        defect = self.display.commutator_defect("X1", "F", presentation.bracket("X1", "F"))
        assert defect == PairState(self.field, -self.alpha * self.e, 0)

    def test_express_in_basis(self):
        """Test expanding ``X1 F Psi`` over ``F^j Psi``."""
        basis = self.momentum.power_states("F", 2)
        state = self.momentum.apply("X1", basis[1])
        coefficients = express_in_basis(state, basis)
        assert coefficients.coefficient((1,)) == self.sr
        assert coefficients.coefficient((0,)) == self.alpha * self.e / 2
        assert coefficients.coefficient((2,)) == 0

    def test_not_in_span(self):
        """Test that a state outside the span is reported."""
        with pytest.raises(NotInSpan):
            express_in_basis(PairState(self.field, self.y, 0), [self.momentum.lowest()])

    def test_power_states_memoized(self):
        """Test that powers are computed once and sliced."""
        first = self.momentum.power_states("F", 3)
        assert len(first) == 4
        assert self.momentum.power_states("F", 1) == first[:2]

    def test_realize(self):
        """Test looking up single operators."""
        assert realize("DI", "X1", "display") == DiffOp.partial(self.display.field, 0, 1)
        assert realize("DI", "H") == self.momentum.hamiltonian
        with pytest.raises(KeyError):
            realize("DI", "Y1")
        with pytest.raises(ValueError):
            realization("DIII")


class TestQuinticRealization:
    """Test the differential realization of the quintic algebra."""

    def setup_method(self):
        """Set up the realization and its scalars."""
        self.real = realization("QUINTIC_REALIZED")
        field = self.real.field
        self.field = field
        self.c0, self.c1, self.c2 = (field.param(name) for name in ("c0", "c1", "c2"))
        self.e = field.param("E")
        self.lam = field.param("lam")
        self.slam = field.param("slam")
        self.x = field.param("x")
        self.y = field.param("y")

    def test_linear_integral_on_lowest(self):
        """Test that Y1 acts by slam on the separated solution."""
        lowest = self.real.lowest()
        assert self.real.apply("Y1", lowest) == lowest * self.slam

    def test_lowest_is_eigenstate(self):
        """Test that the separated solution solves the eigenproblem."""
        assert self.real.schrodinger_residual(self.real.lowest()) == 0
        assert self.real.schrodinger_residual(self.real.apply("Y1", self.real.lowest())) == 0

    @pytest.mark.parametrize("name", ["Y1", "Y2", "K"])
    def test_integrals_commute_with_hamiltonian(self, name):
        """Test ``[H, g] = 0`` as differential operators."""
        assert not commutator(self.real.hamiltonian, self.real.operator(name))

    def test_killing_fields(self):
        """Test that the dilation and inversion fields commute with H."""
        sign = momentum_sign("display", self.field)
        for vector in killing_fields(self.field, sign):
            assert not commutator(self.real.hamiltonian, vector)

    def test_raising_on_lowest(self):
        """Test ``K Psi = (c0 E + c1 lam)(slam y XY + X X'Y) + c1 lam XY``."""
        spread = self.c0 * self.e + self.c1 * self.lam
        expected = PairState(
            self.field,
            spread * self.slam * self.y + self.c1 * self.lam,
            spread * (self.x + self.c2 / self.c1),
        )
        assert self.real.apply("K", self.real.lowest()) == expected

    @pytest.mark.parametrize("top", [3, 6])
    def test_powers_stay_in_eigenspace(self, top):
        """Test that ``K^j Psi`` solves the eigenproblem."""
        for state in self.real.power_states("K", top):
            assert self.real.schrodinger_residual(state) == 0

    @pytest.mark.parametrize(("left", "right"), [("Y1", "Y2"), ("Y1", "K"), ("Y2", "K")])
    def test_bracket_table(self, left, right):
        """Test the QUINTIC_REALIZED bracket table on the lowest state."""
        bracket = builtin("QUINTIC_REALIZED").bracket(left, right)
        assert self.real.commutator_defect(left, right, bracket) == 0

