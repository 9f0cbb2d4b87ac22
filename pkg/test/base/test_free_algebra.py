"""Test the free algebra and its normal ordering."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrep.base.free_algebra import FreeAlgebra, Generator
from polyrep.base.scalar import Param, make_field
from polyrep.errors import FuelExhausted, IncompleteCommTable, MixedPresentation
from polyrep.utils.config import EngineConfig

FIELD = make_field((Param("h"),))


def weyl(config=None):
    """Heisenberg-type algebra with ``[P, Q] = h`` ordered ``Q`` before ``P``."""
    algebra = FreeAlgebra(FIELD, [Generator("Q", 1), Generator("P", 1)], config)
    algebra.set_bracket("P", "Q", algebra.scalar(FIELD.param("h")))
    return algebra


class TestConstruction:
    """Test generators and the bracket table."""

    def test_generator_weight(self):
        """Test that generators need a positive weight."""
        with pytest.raises(ValueError):
            Generator("X", 0)

    def test_duplicate_generators(self):
        """Test that duplicate generator names are rejected."""
        with pytest.raises(ValueError):
            FreeAlgebra(FIELD, [Generator("X", 1), Generator("X", 2)])

    def test_name_clash(self):
        """Test that a name cannot be both a generator and a parameter."""
        with pytest.raises(ValueError):
            FreeAlgebra(FIELD, [Generator("h", 1)])

    def test_antisymmetric_partner(self):
        """Test that setting a bracket records its negative."""
        algebra = weyl()
        assert algebra.bracket("Q", "P") == -algebra.bracket("P", "Q")
        assert algebra.has_bracket("Q", "P")

    def test_self_bracket(self):
        """Test that the bracket of a generator with itself cannot be set."""
        algebra = weyl()
        with pytest.raises(ValueError):
            algebra.set_bracket("P", "P", algebra.zero)

    def test_unknown_generator(self):
        """Test that unknown generators raise a KeyError."""
        algebra = weyl()
        with pytest.raises(KeyError):
            algebra.gen("R")
        with pytest.raises(KeyError):
            algebra.word(["P", "R"])

    def test_missing_bracket(self):
        """Test that rewriting without a rule raises IncompleteCommTable."""
        algebra = FreeAlgebra(FIELD, [Generator("Q", 1), Generator("P", 1)])
        with pytest.raises(IncompleteCommTable):
            algebra.normal_order(algebra.word(["P", "Q"]))

    def test_specialize(self):
        """Test substituting parameters in the bracket table."""
        algebra = weyl().specialize({"h": 2})
        p, q = algebra.gen("P"), algebra.gen("Q")
        assert algebra.normal_order(p * q) == q * p + 2


class TestAlgElement:
    """Test element arithmetic."""

    def setup_method(self):
        """Set up the algebra."""
        self.algebra = weyl()
        self.p = self.algebra.gen("P")
        self.q = self.algebra.gen("Q")
        self.h = FIELD.param("h")

    def test_free_product(self):
        """Test that products concatenate words without rewriting."""
        assert (self.p * self.q).terms == {("P", "Q"): FIELD.one}

    def test_scalars(self):
        """Test mixing scalars into elements."""
        element = self.h * self.p + 1
        assert element.coefficient(["P"]) == self.h
        assert element.coefficient([]) == 1
        assert element.coefficient(["Q"]) == 0
        assert 2 - self.p == -(self.p - 2)

    def test_zero_terms_dropped(self):
        """Test that cancelling terms vanish."""
        assert not (self.p - self.p)
        assert self.p - self.p == 0

    def test_power(self):
        """Test powers of elements."""
        assert self.p**0 == self.algebra.one
        assert self.p**3 == self.algebra.word(["P"] * 3)
        with pytest.raises(ValueError):
            self.p**-1

    def test_weight(self):
        """Test the largest word weight."""
        assert (self.p * self.q + self.p).weight == 2
        assert self.algebra.zero.weight == 0

    def test_mixed_algebras(self):
        """Test that elements of unrelated algebras do not mix."""
        other = FreeAlgebra(FIELD, [Generator("Z", 1)])
        with pytest.raises(MixedPresentation):
            self.p + other.gen("Z")

    def test_format(self):
        """Test the text of normal forms."""
        element = self.algebra.normal_order(self.p * self.q)
        assert str(element) == "Q*P + h"
        assert str(self.algebra.zero) == "0"
        assert str(self.algebra.normal_order(-2 * self.q * self.q * self.p)) == "-2*Q^2*P"


class TestNormalOrder:
    """Test normal ordering and power commutators."""

    def setup_method(self):
        """Set up the algebra."""
        self.algebra = weyl()
        self.p = self.algebra.gen("P")
        self.q = self.algebra.gen("Q")
        self.h = FIELD.param("h")

    def test_swap(self):
        """Test a single rewrite."""
        assert self.algebra.normal_order(self.p * self.q) == self.q * self.p + self.h

    def test_sorted_words_are_fixed(self):
        """Test that sorted words are left alone."""
        element = self.q * self.q * self.p
        assert self.algebra.normal_order(element) == element

    def test_other_order(self):
        """Test normal ordering in a different generator order."""
        element = self.algebra.normal_order(self.q * self.p, order=("P", "Q"))
        assert element == self.p * self.q - self.h

    def test_invalid_order(self):
        """Test that an order must permute the generators."""
        with pytest.raises(ValueError):
            self.algebra.normal_order(self.p, order=("P",))

    def test_invalid_strategy(self):
        """Test that unknown strategies are rejected."""
        with pytest.raises(ValueError):
            self.algebra.normal_order(self.p, strategy="middle")

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_power_commutator(self, n):
        """Test ``[P^n, Q] = n h P^(n-1)``."""
        expected = n * self.h * self.p ** (n - 1)
        assert self.algebra.power_commutator(self.p, self.q, n) == expected
        assert self.algebra.power_commutator_telescoped(self.p, self.q, n) == expected

    def test_binomial_first_power(self):
        """Test that the binomial form agrees with the expansion at n = 1."""
        direct = self.algebra.power_commutator(self.p, self.q, 1)
        assert self.algebra.binomial_power_commutator(self.p, self.q, 1) == direct

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_binomial_boundary(self, n):
        """Test that the inclusive form only adds the term ``(-1)^n Q``."""
        exclusive = self.algebra.binomial_power_commutator(self.p, self.q, n)
        inclusive = self.algebra.binomial_power_commutator(
            self.p, self.q, n, boundary="inclusive"
        )
        assert inclusive - exclusive == (-1) ** n * self.q

    def test_invalid_boundary(self):
        """Test that unknown boundaries are rejected."""
        with pytest.raises(ValueError):
            self.algebra.binomial_power_commutator(self.p, self.q, 2, boundary="open")

    def test_positive_powers(self):
        """Test that power commutators need n >= 1."""
        with pytest.raises(ValueError):
            self.algebra.power_commutator(self.p, self.q, 0)
        with pytest.raises(ValueError):
            self.algebra.ad_power(self.p, self.q, -1)

    def test_ad_power(self):
        """Test nested commutators."""
        assert self.algebra.ad_power(self.p, self.q, 0) == self.q
        assert self.algebra.ad_power(self.p, self.q, 1) == self.h
        assert self.algebra.ad_power(self.p, self.q, 2) == 0

    def test_anticommutator(self):
        """Test the normal form of ``PQ + QP``."""
        result = self.algebra.anticommutator(self.p, self.q)
        assert result == 2 * self.q * self.p + self.h

    def test_fuel(self):
        """Test that rewriting stops when the step budget runs out."""
        algebra = weyl(EngineConfig(fuel=1))
        p, q = algebra.gen("P"), algebra.gen("Q")
        with pytest.raises(FuelExhausted) as info:
            algebra.normal_order(p * p * q)
        assert info.value.fuel == 1

    def test_fuel_ignores_memo(self):
        """Test that a warm memo does not stretch the step budget."""
        algebra = weyl(EngineConfig(fuel=1))
        p, q = algebra.gen("P"), algebra.gen("Q")
        assert algebra.normal_order(p * q) == q * p + self.h
        with pytest.raises(FuelExhausted):
            algebra.normal_order(p * p * q)
        roomy = weyl(EngineConfig(fuel=2))
        word = roomy.gen("P") * roomy.gen("P") * roomy.gen("Q")
        expected = self.algebra.normal_order(self.p * self.p * self.q)
        assert roomy.normal_order(word).terms == expected.terms

    @settings(max_examples=30, deadline=None)
    @given(word=st.lists(st.sampled_from(["P", "Q"]), max_size=7))
    def test_strategies_agree(self, word):
        """Test that both rewriting strategies reach the same normal form."""
        element = self.algebra.word(word)
        leftmost = self.algebra.normal_order(element)
        rightmost = self.algebra.normal_order(element, strategy="rightmost")
        assert leftmost == rightmost

    @settings(max_examples=30, deadline=None)
    @given(word=st.lists(st.sampled_from(["P", "Q"]), max_size=7))
    def test_normal_words_sorted(self, word):
        """Test that normal forms only contain sorted words."""
        result = self.algebra.normal_order(self.algebra.word(word))
        for w in result.terms:
            assert list(w) == sorted(w, key=("Q", "P").index)
            assert self.algebra.inversions(w, ("Q", "P")) == 0
