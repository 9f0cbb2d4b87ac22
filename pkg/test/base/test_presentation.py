"""Test load-time validation of presentations."""
import pytest

from polyrep.errors import (
    CasimirNotCentral,
    IncompleteCommTable,
    JacobiViolation,
    PresentationError,
    WeightGuardViolation,
)
from polyrep.parser.alg_file import load_presentation

HEADER = """
[presentation]
name = HEIS

[parameters]
free = k
central = H
energy = E

[generators]
names = Q P Z

[weights]
Q = 1
P = 1
Z = 2
"""

RELATIONS = """
[relations]
[P,Q] = Z
[P,Z] = 0
[Q,Z] = 0
"""

CASIMIR = """
[casimir]
element = Z
"""


def text(relations=RELATIONS, casimir=CASIMIR, extra=""):
    return HEADER + relations + casimir + extra


class TestValidate:
    """Test the checks run when a presentation is loaded."""

    def test_valid(self):
        """Test that a consistent presentation loads."""
        presentation = load_presentation(text())
        assert presentation.name == "HEIS"
        assert presentation.generators == ("Q", "P", "Z")
        assert presentation.central == "H"
        assert presentation.missing_brackets() == []
        assert presentation.weight_guard_failures() == []
        assert not any(presentation.jacobi_residuals().values())
        assert not any(presentation.casimir_centrality().values())

    def test_missing_bracket(self):
        """Test that a missing rule raises IncompleteCommTable."""
        relations = "[relations]\n[P,Q] = Z\n[P,Z] = 0\n"
        with pytest.raises(IncompleteCommTable) as info:
            load_presentation(text(relations))
        assert info.value.pair == ("Q", "Z")
        assert isinstance(info.value, PresentationError)

    def test_unvalidated_missing_bracket(self):
        """Test that validation can be skipped and queried afterwards."""
        relations = "[relations]\n[P,Q] = Z\n[P,Z] = 0\n"
        presentation = load_presentation(text(relations), validate=False)
        assert presentation.missing_brackets() == [("Q", "Z")]

    def test_weight_guard(self):
        """Test that a rule producing heavier words is rejected."""
        relations = "[relations]\n[P,Q] = Z^2\n[P,Z] = 0\n[Q,Z] = 0\n"
        with pytest.raises(WeightGuardViolation) as info:
            load_presentation(text(relations))
        assert info.value.pair == ("Q", "P")
        assert info.value.word == ("Z", "Z")

    def test_equal_weight_sorted_word(self):
        """Test that an equal-weight sorted word of the same length passes the guard."""
        relations = "[relations]\n[P,Q] = Q*P + Z\n[P,Z] = 0\n[Q,Z] = 0\n"
        presentation = load_presentation(text(relations), validate=False)
        assert presentation.weight_guard_failures() == []

    def test_jacobi(self):
        """Test that a table violating the Jacobi identity is rejected."""
        source = """
[parameters]
central = H

[generators]
names = X1 X2 F

[weights]
X1 = 1
X2 = 2
F = 3

[relations]
[X1,X2] = F
[X1,F] = 0
[X2,F] = X2

[casimir]
element = X1
"""
        with pytest.raises(JacobiViolation) as info:
            load_presentation(source)
        assert info.value.triple == ("X1", "X2", "F")
        assert info.value.residual == "-F"

    def test_casimir_not_central(self):
        """Test that a non-central Casimir is rejected."""
        with pytest.raises(CasimirNotCentral) as info:
            load_presentation(text(casimir="[casimir]\nelement = P\n"))
        assert info.value.generator == "Q"
        assert info.value.residual == "Z"

    def test_vanishing_functional_relation(self):
        """Test that a functional relation must not vanish identically."""
        extra = "\n[functional_relations]\ntrivial = Z - Z\n"
        with pytest.raises(PresentationError):
            load_presentation(text(extra=extra))

    def test_module_spec(self):
        """Test a valid module description."""
        extra = "\n[module]\ntemplate = P\norder = P Q Z\nQ = k\nZ = k^2\n"
        spec = load_presentation(text(extra=extra)).module_spec
        assert spec.template == ("P",)
        assert spec.order == ("P", "Q", "Z")
        assert spec.raising == frozenset({"P"})
        assert spec.energy == "E"

    @pytest.mark.parametrize(
        "module",
        [
            "template = P\norder = Q P Z\nQ = k\nZ = k\n",
            "template = P\norder = P Q Z\nQ = k\n",
            "template = P\norder = P Q Z\nQ = Z\nZ = k\n",
            "template = P\norder = P Q\nQ = k\nZ = k\n",
            "template = P\norder = P Q Z\nenergy = W\nQ = k\nZ = k\n",
            "template = P\norder = P Q Z\nP = k\nQ = k\nZ = k\n",
        ],
    )
    def test_invalid_module_spec(self, module):
        """Test that inconsistent module descriptions are rejected."""
        with pytest.raises(PresentationError):
            load_presentation(text(extra="\n[module]\n" + module))

    def test_equality(self):
        """Test that two loads of the same text are equal."""
        assert load_presentation(text()) == load_presentation(text())
        other = load_presentation(text(casimir="[casimir]\nelement = 2*Z\n"))
        assert load_presentation(text()) != other
