"""Free associative algebra over scalars with normal ordering by rewriting."""
from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Literal, Mapping, Sequence

from polyrep.base.scalar import Number, Scalar, ScalarField
from polyrep.errors import FuelExhausted, IncompleteCommTable, MixedPresentation
from polyrep.utils.config import EngineConfig

logger = logging.getLogger(__name__)

Word = tuple[str, ...]
Strategy = Literal["leftmost", "rightmost"]


@dataclass(frozen=True)
class Generator:
    """A noncommuting generator.

    Parameters
    ----------
    name : str
        Identifier of the generator.
    weight : int
        Positive weight used by the termination guard.
    """

    name: str
    weight: int

    def __post_init__(self) -> None:
        if self.weight < 1:
            raise ValueError(f"generator {self.name!r} needs a positive weight")


class _Fuel:
    """Rewrite-step budget of one normal-ordering call.

    Memoized insertions carry the set of insertion keys their derivation
    touched; reusing one charges the keys not yet paid for in this call, so
    the count equals a run on an empty memo.
    """

    __slots__ = ("budget", "used", "seen", "_frames")

    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.used = 0
        self.seen: set = set()
        self._frames: list[set] = []

    def spend(self, steps: int = 1) -> None:
        self.used += steps
        if self.used > self.budget:
            raise FuelExhausted(self.budget)

    def enter(self, key) -> None:
        if key not in self.seen:
            self.seen.add(key)
            self.spend()
        self._frames.append({key})

    def leave(self) -> frozenset:
        closure = frozenset(self._frames.pop())
        if self._frames:
            self._frames[-1] |= closure
        return closure

    def reuse(self, closure: frozenset) -> None:
        fresh = closure - self.seen
        if fresh:
            self.seen |= fresh
            self.spend(len(fresh))
        if self._frames:
            self._frames[-1] |= closure


class AlgElement:
    """Finite scalar combination of words.

    Products are free (concatenation); call :meth:`FreeAlgebra.normal_order`
    for the canonical form.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "FreeAlgebra", terms: Mapping[Word, Scalar]) -> None:
        self.algebra = algebra
        self.terms = {word: c for word, c in terms.items() if c}

    def _check(self, other: "AlgElement") -> None:
        if other.algebra is not self.algebra and not self.algebra.compatible(
            other.algebra
        ):
            raise MixedPresentation(
                f"elements of {self.algebra} and {other.algebra} cannot be combined"
            )

    def _lift(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms[word] + coeff if word in terms else coeff
        return AlgElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            coeff = self.algebra.field.coerce(other)
            return AlgElement(self.algebra, {w: c * coeff for w, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: dict[Word, Scalar] = {}
        for left, a in self.terms.items():
            for right, b in other.terms.items():
                word = left + right
                terms[word] = terms[word] + a * b if word in terms else a * b
        return AlgElement(self.algebra, terms)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "AlgElement":
        if exponent < 0:
            raise ValueError(f"negative power {exponent} of an algebra element")
        result = self.algebra.one
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Scalar, int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"AlgElement({self})"

    def __str__(self) -> str:
        return self.algebra.format(self)

    def coefficient(self, word: Iterable[str]) -> Scalar:
        """Return the coefficient of a word, zero when absent."""
        return self.terms.get(tuple(word), self.algebra.field.zero)

    @property
    def weight(self) -> int:
        """Largest word weight, zero for scalars and the zero element."""
        return max((self.algebra.weight(w) for w in self.terms), default=0)

    def map_coefficients(self, func, algebra: "FreeAlgebra | None" = None) -> "AlgElement":
        """Apply ``func`` to every coefficient, optionally re-homing the element."""
        return AlgElement(algebra or self.algebra, {w: func(c) for w, c in self.terms.items()})

    def substitute(
        self, bindings: Mapping[str, Scalar | Number], algebra: "FreeAlgebra | None" = None
    ) -> "AlgElement":
        """Substitute parameters in every coefficient."""
        return self.map_coefficients(lambda c: c.substitute(bindings), algebra)


class FreeAlgebra:
    """Free algebra on a set of generators together with a bracket table.

    Parameters
    ----------
    field : ScalarField
        Coefficient field. Central elements such as ``H`` live here as params.
    generators : sequence of Generator
        Generators, listed in the default normal-ordering order.
    config : EngineConfig, optional
        Fuel budget for rewriting.
    """

    def __init__(
        self,
        field: ScalarField,
        generators: Sequence[Generator],
        config: EngineConfig | None = None,
    ) -> None:
        self.field = field
        self.generators = {g.name: g for g in generators}
        if len(self.generators) != len(generators):
            raise ValueError("duplicate generator names")
        clash = set(self.generators) & set(field.names)
        if clash:
            raise ValueError(f"names used both as generators and parameters: {clash}")
        self.order: Word = tuple(g.name for g in generators)
        self.config = config or EngineConfig.from_env()
        self._brackets: dict[tuple[str, str], AlgElement] = {}
        # (letter, word) -> (normal form, insertion keys of its derivation)
        self._memo: dict[Word, dict[tuple[str, Word], tuple[dict, frozenset]]] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"FreeAlgebra({', '.join(self.order)})"

    def compatible(self, other: "FreeAlgebra") -> bool:
        return self.field == other.field and self.generators == other.generators

    # elements

    @property
    def zero(self) -> AlgElement:
        return AlgElement(self, {})

    @property
    def one(self) -> AlgElement:
        return AlgElement(self, {(): self.field.one})

    def scalar(self, value: Scalar | Number) -> AlgElement:
        return AlgElement(self, {(): self.field.coerce(value)})

    def gen(self, name: str) -> AlgElement:
        if name not in self.generators:
            raise KeyError(f"{name!r} is not a generator of {self}")
        return AlgElement(self, {(name,): self.field.one})

    def word(self, letters: Iterable[str]) -> AlgElement:
        letters = tuple(letters)
        for name in letters:
            if name not in self.generators:
                raise KeyError(f"{name!r} is not a generator of {self}")
        return AlgElement(self, {letters: self.field.one})

    def weight(self, word: Word) -> int:
        return sum(self.generators[name].weight for name in word)

    @staticmethod
    def inversions(word: Word, order: Sequence[str]) -> int:
        rank = {name: i for i, name in enumerate(order)}
        return sum(
            1
            for i in range(len(word))
            for j in range(i + 1, len(word))
            if rank[word[i]] > rank[word[j]]
        )

    # bracket table

    def set_bracket(self, left: str, right: str, value: AlgElement) -> None:
        """Record ``[left, right] = value`` and its antisymmetric partner."""
        if left == right:
            raise ValueError(f"bracket of {left} with itself is always zero")
        for name in (left, right):
            if name not in self.generators:
                raise KeyError(f"{name!r} is not a generator of {self}")
        self._brackets[(left, right)] = value
        self._brackets[(right, left)] = -value
        self._memo.clear()

    def bracket(self, left: str, right: str) -> AlgElement:
        """Return the table entry ``[left, right]``."""
        try:
            return self._brackets[(left, right)]
        except KeyError:
            raise IncompleteCommTable((left, right)) from None

    def has_bracket(self, left: str, right: str) -> bool:
        return (left, right) in self._brackets

    def specialize(self, bindings: Mapping[str, Scalar | Number]) -> "FreeAlgebra":
        """Return a copy whose bracket table has parameters substituted."""
        algebra = FreeAlgebra(self.field, list(self.generators.values()), self.config)
        for (left, right), value in self._brackets.items():
            if self.order.index(left) < self.order.index(right):
                algebra.set_bracket(left, right, value.substitute(bindings, algebra))
        return algebra

    # normal ordering

    def normal_order(
        self,
        element: AlgElement,
        order: Sequence[str] | None = None,
        strategy: Strategy = "leftmost",
    ) -> AlgElement:
        """Rewrite every word into nondecreasing generator order.

        Parameters
        ----------
        element : AlgElement
            Element to normalize.
        order : sequence of str, optional
            Generator order; defaults to the algebra's order.
        strategy : Literal["leftmost", "rightmost"], default="leftmost"
            ``leftmost`` inserts letters from the left with memoization;
            ``rightmost`` swaps the rightmost inversion first without memo and
            exists to probe confluence.

        Returns
        -------
        AlgElement
            The normal form.

        Raises
        ------
        FuelExhausted
            If more rewrite steps than the configured fuel are needed.
        """
        order = tuple(order or self.order)
        if sorted(order) != sorted(self.generators):
            raise ValueError(f"order {order} is not a permutation of {self.order}")
        fuel = _Fuel(self.config.fuel)
        rank = {name: i for i, name in enumerate(order)}
        total: dict[Word, Scalar] = {}
        match strategy:
            case "leftmost":
                memo = self._memo_for(order)
                for word, coeff in element.terms.items():
                    _accumulate(total, self._normal_word(word, rank, memo, fuel), coeff)
            case "rightmost":
                for word, coeff in element.terms.items():
                    _accumulate(total, self._rightmost(word, rank, fuel), coeff)
            case _:
                raise ValueError(f"Invalid normal ordering strategy {strategy}")
        logger.debug("normal_order used %d rewrite steps", fuel.used)
        return AlgElement(self, total)

    def _memo_for(self, order: Word) -> dict:
        with self._lock:
            return self._memo.setdefault(order, {})

    def _normal_word(self, word: Word, rank, memo, fuel) -> dict[Word, Scalar]:
        current: dict[Word, Scalar] = {(): self.field.one}
        for letter in reversed(word):
            nxt: dict[Word, Scalar] = {}
            for sorted_word, coeff in current.items():
                _accumulate(nxt, self._insert(letter, sorted_word, rank, memo, fuel), coeff)
            current = nxt
        return current

    def _insert(self, letter: str, word: Word, rank, memo, fuel) -> dict[Word, Scalar]:
        """Normal form of ``letter * word`` for a sorted ``word``."""
        if not word or rank[letter] <= rank[word[0]]:
            return {(letter,) + word: self.field.one}
        key = (letter, word)
        cached = memo.get(key)
        if cached is not None:
            result, closure = cached
            fuel.reuse(closure)
            return result
        fuel.enter(key)
        head, rest = word[0], word[1:]
        result: dict[Word, Scalar] = {}
        for moved, coeff in self._insert(letter, rest, rank, memo, fuel).items():
            _accumulate(result, self._insert(head, moved, rank, memo, fuel), coeff)
        for bracket_word, coeff in self.bracket(letter, head).terms.items():
            _accumulate(
                result, self._normal_word(bracket_word + rest, rank, memo, fuel), coeff
            )
        result = {w: c for w, c in result.items() if c}
        memo[key] = (result, fuel.leave())
        return result

    def _rightmost(self, word: Word, rank, fuel) -> dict[Word, Scalar]:
        for i in range(len(word) - 2, -1, -1):
            left, right = word[i], word[i + 1]
            if rank[left] > rank[right]:
                break
        else:
            return {word: self.field.one}
        fuel.spend()
        prefix, suffix = word[:i], word[i + 2 :]
        result = self._rightmost(prefix + (right, left) + suffix, rank, fuel)
        for bracket_word, coeff in self.bracket(left, right).terms.items():
            _accumulate(result, self._rightmost(prefix + bracket_word + suffix, rank, fuel), coeff)
        return {w: c for w, c in result.items() if c}

    # brackets of elements

    def commutator(self, a: AlgElement, b: AlgElement, order=None) -> AlgElement:
        """Normal form of ``ab - ba``."""
        return self.normal_order(a * b - b * a, order)

    def anticommutator(self, a: AlgElement, b: AlgElement, order=None) -> AlgElement:
        """Normal form of ``ab + ba``."""
        return self.normal_order(a * b + b * a, order)

    def ad_power(self, a: AlgElement, b: AlgElement, k: int, order=None) -> AlgElement:
        """Nested commutator ``[a, [a, ..., [a, b]]]`` with ``k`` copies of ``a``."""
        if k < 0:
            raise ValueError(f"ad power needs k >= 0, got {k}")
        result = self.normal_order(b, order)
        for _ in range(k):
            result = self.commutator(a, result, order)
        return result

    def power_commutator(self, a: AlgElement, b: AlgElement, n: int, order=None) -> AlgElement:
        """``[a^n, b]`` by brute expansion."""
        _check_positive(n)
        power = a**n
        return self.normal_order(power * b - b * power, order)

    def power_commutator_telescoped(
        self, a: AlgElement, b: AlgElement, n: int, order=None
    ) -> AlgElement:
        """``[a^n, b]`` as the sum of ``a^(n-j) [a, b] a^(j-1)`` over ``j``."""
        _check_positive(n)
        inner = a * b - b * a
        total = self.zero
        for j in range(1, n + 1):
            total = total + a ** (n - j) * inner * a ** (j - 1)
        return self.normal_order(total, order)

    def binomial_power_commutator(
        self,
        a: AlgElement,
        b: AlgElement,
        n: int,
        boundary: Literal["exclusive", "inclusive"] = "exclusive",
        order=None,
    ) -> AlgElement:
        """Binomial double sum of ``(-1)^j C(n,j) C(j,l) a^l ad_a^(n-j)(b)``.

        The outer index ``l`` runs over ``0..n-1`` and ``j`` over ``0..n-l``.
        With ``boundary="exclusive"`` the depth-zero terms (``j = n``) are left
        out; ``"inclusive"`` keeps them.
        """
        _check_positive(n)
        if boundary not in ("exclusive", "inclusive"):
            raise ValueError(f"Invalid boundary {boundary}")
        depths = [self.ad_power(a, b, k, order) for k in range(n + 1)]
        total = self.zero
        for ell in range(n):
            for j in range(n - ell + 1):
                if boundary == "exclusive" and j == n:
                    continue
                factor = (-1) ** j * comb(n, j) * comb(j, ell)
                if factor:
                    total = total + factor * (a**ell * depths[n - j])
        return self.normal_order(total, order)

    # text

    def format(self, element: AlgElement) -> str:
        """Deterministic text of an element in expression syntax."""
        if not element.terms:
            return "0"
        rank = {name: i for i, name in enumerate(self.order)}
        words = sorted(
            element.terms,
            key=lambda w: (-self.weight(w), -len(w), [rank[x] for x in w]),
        )
        text = ""
        for word in words:
            sign, body = _format_term(element.terms[word], word)
            if not text:
                text = ("-" if sign == "-" else "") + body
            else:
                text += f" {sign} {body}"
        return text


def _format_term(coeff: Scalar, word: Word) -> tuple[str, str]:
    word_text = _format_word(word)
    coeff_text = str(coeff)
    negative = False
    simple = coeff.den.is_ground and len(coeff.num) == 1
    if simple and coeff_text.startswith("-"):
        negative = True
        coeff_text = coeff_text[1:]
    sign = "-" if negative else "+"
    if not word:
        return sign, coeff_text if simple else f"({coeff_text})"
    if coeff_text == "1":
        return sign, word_text
    if not simple:
        coeff_text = f"({coeff_text})"
    return sign, f"{coeff_text}*{word_text}"


def _format_word(word: Word) -> str:
    parts: list[str] = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(word[i] if run == 1 else f"{word[i]}^{run}")
        i = j
    return "*".join(parts)


def _accumulate(total: dict[Word, Scalar], part: Mapping[Word, Scalar], coeff: Scalar) -> None:
    for word, value in part.items():
        term = value * coeff
        total[word] = total[word] + term if word in total else term


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"power commutators need n >= 1, got {n}")
