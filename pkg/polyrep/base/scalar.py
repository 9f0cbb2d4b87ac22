"""Exact scalars: rational functions in named parameters with formal radicals.

A :class:`ScalarField` wraps a lexicographic sympy polynomial ring over ``QQ``
whose generators are the parameters of a presentation, sorted by name. Some
generators are radicals ``g`` carrying a square relation ``g^2 = base``. A
:class:`Scalar` is a fraction ``num / den`` kept in canonical form:

* no monomial of ``num`` or ``den`` contains a radical at power two or more;
* ``den`` is free of radicals (denominators are rationalized);
* ``gcd(num, den) = 1`` and ``den`` is monic.

Equality is equality of canonical forms.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Literal, Mapping, Union

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing

from polyrep.errors import DivisionByZero, InconsistentRadical, MixedPresentation

logger = logging.getLogger(__name__)

ParamKind = Literal["free", "central", "energy", "separation", "radical", "coordinate"]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class Param:
    """A named commutative parameter.

    Parameters
    ----------
    name : str
        Identifier used in expressions.
    kind : ParamKind, default="free"
        Role of the parameter. Radicals need a ``base``.
    base : str or int, optional
        For radicals, the parameter name or integer the radical squares to.
    """

    name: str
    kind: ParamKind = "free"
    base: str | int | None = None

    def __post_init__(self) -> None:
        if (self.kind == "radical") != (self.base is not None):
            raise ValueError(
                f"parameter {self.name!r}: a base is required exactly for radicals"
            )


class ScalarField:
    """Fraction field of ``QQ[params]`` modulo the radical square relations.

    Parameters
    ----------
    params : iterable of Param
        Parameters of the field. Names must be unique.
    """

    def __init__(self, params: Iterable[Param]) -> None:
        params = tuple(params)
        names = [param.name for param in params]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        self.params = {param.name: param for param in sorted(params, key=_name)}
        self.names = tuple(self.params)
        self.ring = PolyRing([Symbol(name) for name in self.names], QQ, lex)
        self._index = {name: i for i, name in enumerate(self.names)}
        self.radicals: list[tuple[int, PolyElement]] = []
        for param in self.params.values():
            if param.kind != "radical":
                continue
            if isinstance(param.base, str):
                if param.base not in self._index:
                    raise ValueError(
                        f"radical {param.name!r} has unknown base {param.base!r}"
                    )
                if self.params[param.base].kind == "radical":
                    raise ValueError(f"radical {param.name!r} has a radical base")
                base = self.ring.gens[self._index[param.base]]
            else:
                base = self.ring.ground_new(QQ(int(param.base)))
            self.radicals.append((self._index[param.name], base))
        self._radical_index = frozenset(i for i, _ in self.radicals)
        self._key = tuple((p.name, p.kind, p.base) for p in self.params.values())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarField) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"ScalarField({', '.join(self.names)})"

    def __contains__(self, name: str) -> bool:
        return name in self._index

    # construction

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.ring.zero, self.ring.one)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.ring.one, self.ring.one)

    def param(self, name: str) -> "Scalar":
        """Return the scalar of a single parameter."""
        try:
            gen = self.ring.gens[self._index[name]]
        except KeyError:
            raise KeyError(f"{name!r} is not a parameter of {self}") from None
        return Scalar(self, gen, self.ring.one)

    def const(self, value: Number) -> "Scalar":
        """Return the scalar of a rational constant."""
        value = Fraction(value)
        coeff = QQ(value.numerator, value.denominator)
        return Scalar(self, self.ring.ground_new(coeff), self.ring.one)

    def coerce(self, value: "Scalar | Number") -> "Scalar":
        """Bring a number or a scalar of a sub-field into this field."""
        if isinstance(value, Scalar):
            if value.field is self or value.field == self:
                return value
            missing = set(value.field.names) - set(self.names)
            if missing:
                raise MixedPresentation(
                    f"cannot coerce scalar over {value.field} into {self}: "
                    f"missing {sorted(missing)}"
                )
            for name, param in value.field.params.items():
                if param != self.params[name]:
                    raise MixedPresentation(f"parameter {name!r} differs between fields")
            return Scalar(
                self, value.num.set_ring(self.ring), value.den.set_ring(self.ring)
            )
        return self.const(value)

    def extend(self, params: Iterable[Param]) -> "ScalarField":
        """Return the field with extra parameters adjoined."""
        return make_field(tuple(self.params.values()) + tuple(params))

    def index(self, name: str) -> int:
        return self._index[name]

    def is_radical(self, name: str) -> bool:
        return self.params[name].kind == "radical"

    # canonical form

    def reduce(self, poly: PolyElement) -> PolyElement:
        """Apply every square relation to a polynomial."""
        if not self._radical_index or not any(
            monom[i] >= 2 for monom in poly for i in self._radical_index
        ):
            return poly
        ring = self.ring
        result = ring.zero
        for monom, coeff in poly.items():
            exps = list(monom)
            factor = ring.one
            for i, base in self.radicals:
                if exps[i] >= 2:
                    power, exps[i] = divmod(exps[i], 2)
                    factor = factor * base**power
            result += ring.term_new(tuple(exps), coeff) * factor
        return result

    def make(self, num: PolyElement, den: PolyElement) -> "Scalar":
        """Canonicalize a fraction of ring polynomials."""
        if not den:
            raise DivisionByZero("zero denominator")
        num = self.reduce(num)
        den = self.reduce(den)
        if not num:
            return self.zero
        for i, _ in self.radicals:
            if den.degree(i) < 1:
                continue
            rest, linear = _split_linear(den, i)
            conjugate = rest - linear
            num = self.reduce(num * conjugate)
            den = self.reduce(den * conjugate)
            if not den:
                raise InconsistentRadical(
                    self.names[i], "denominator is a zero divisor"
                )
        if den.is_ground:
            lc = den.LC
            if lc != QQ.one:
                num = num.quo_ground(lc)
            return Scalar(self, num, self.ring.one)
        num, den = num.cancel(den)
        lc = den.LC
        if lc != QQ.one:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return Scalar(self, num, den)

    def format_poly(self, poly: PolyElement) -> str:
        """Canonical text of a polynomial, highest lex term first."""
        if not poly:
            return "0"
        pieces = []
        for monom, coeff in poly.terms():
            value = Fraction(int(coeff.numerator), int(coeff.denominator))
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.names, monom)
                if e
            ]
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if not factors:
                body = _format_fraction(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_format_fraction(magnitude)] + factors)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


@lru_cache(maxsize=None)
def make_field(params: tuple[Param, ...]) -> ScalarField:
    """Return a shared field for a tuple of parameters."""
    return ScalarField(params)


class Scalar:
    """Immutable element of a :class:`ScalarField`.

    Build scalars through the field (``field.param``, ``field.const``) and
    arithmetic; the constructor trusts its arguments to be canonical.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: ScalarField, num: PolyElement, den: PolyElement) -> None:
        self.field = field
        self.num = num
        self.den = den

    def _lift(self, other: "Scalar | Number") -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise MixedPresentation(f"scalars over {self.field} and {other.field}")
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den.is_ground:
                return Scalar(self.field, self.field.reduce(self.num + other.num), self.den)
            return self.field.make(self.num + other.num, self.den)
        return self.field.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.num, self.den)

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
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return self.field.zero
        if self.den.is_ground and other.den.is_ground:
            return Scalar(self.field, self.field.reduce(self.num * other.num), self.den)
        return self.field.make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise DivisionByZero("division by the zero scalar")
        return self.field.make(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero("division by the zero scalar")
        return self.field.make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            raise TypeError(f"scalar powers need an integer exponent, got {exponent!r}")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not (other.field is self.field or other.field == self.field):
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.field, self.num, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        field = self.field
        if self.den == field.ring.one:
            return field.format_poly(self.num)
        num = field.format_poly(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = field.format_poly(self.den)
        if len(self.den) > 1 or not _is_monomial_text(den):
            den = f"({den})"
        return f"{num}/{den}"

    # queries

    @property
    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def to_fraction(self) -> Fraction:
        """Return the rational value of a constant scalar."""
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        value = self.num.LC if self.num else QQ.zero
        return Fraction(int(value.numerator), int(value.denominator))

    def free_params(self) -> set[str]:
        """Names of the parameters occurring in the scalar."""
        used = set()
        for poly in (self.num, self.den):
            for monom in poly:
                used.update(n for n, e in zip(self.field.names, monom) if e)
        return used

    # operations

    def substitute(self, bindings: Mapping[str, "Scalar | Number"]) -> "Scalar":
        """Replace parameters by scalars of the same field.

        Binding the base of a radical to zero also sends the radical to zero.
        A radical bound explicitly must square to the (substituted) base.

        Raises
        ------
        InconsistentRadical
            If a binding breaks a square relation.
        """
        field = self.field
        values = {name: field.coerce(value) for name, value in bindings.items()}
        for name in values:
            if name not in field:
                raise KeyError(f"{name!r} is not a parameter of {field}")
        for param in field.params.values():
            if param.kind != "radical":
                continue
            base_value = (
                values.get(param.base, field.param(param.base))
                if isinstance(param.base, str)
                else field.const(param.base)
            )
            if param.name in values:
                square = values[param.name] * values[param.name]
                if square != base_value:
                    raise InconsistentRadical(
                        param.name, f"bound value squares to {square}, not {base_value}"
                    )
            elif isinstance(param.base, str) and param.base in values:
                if base_value:
                    raise InconsistentRadical(
                        param.name,
                        f"base {param.base} rebound to {base_value} without a root",
                    )
                values[param.name] = field.zero
        if not values:
            return self
        if all(v.den.is_ground for v in values.values()):
            replacements = [
                (field.ring.gens[field.index(name)], v.num.quo_ground(v.den.LC))
                for name, v in values.items()
            ]
            return field.make(
                self.num.compose(replacements), self.den.compose(replacements)
            )
        return _evaluate(self.num, values) / _evaluate(self.den, values)

    def diff(self, name: str) -> "Scalar":
        """Partial derivative with respect to a non-radical parameter."""
        field = self.field
        if field.is_radical(name):
            raise ValueError(f"cannot differentiate with respect to radical {name!r}")
        gen = field.ring.gens[field.index(name)]
        dnum = self.num.diff(gen)
        if self.den.is_ground:
            return field.make(dnum, self.den)
        dden = self.den.diff(gen)
        return field.make(dnum * self.den - self.num * dden, self.den * self.den)

    def coefficients(self, names: Iterable[str]) -> dict[tuple[int, ...], "Scalar"]:
        """Split the scalar into monomials in ``names``.

        The denominator must not involve ``names``. Returns a map from the
        exponent tuple (in the order of ``names``) to the coefficient scalar.
        """
        field = self.field
        idx = [field.index(name) for name in names]
        if any(self.den.degree(i) > 0 for i in idx):
            raise ValueError(f"denominator of {self} depends on {list(names)}")
        ring = field.ring
        parts: dict[tuple[int, ...], PolyElement] = {}
        for monom, coeff in self.num.items():
            key = tuple(monom[i] for i in idx)
            rest = list(monom)
            for i in idx:
                rest[i] = 0
            term = ring.term_new(tuple(rest), coeff)
            parts[key] = parts[key] + term if key in parts else term
        return {key: field.make(poly, self.den) for key, poly in parts.items()}


def _split_linear(poly: PolyElement, i: int) -> tuple[PolyElement, PolyElement]:
    ring = poly.ring
    rest, linear = ring.zero, ring.zero
    for monom, coeff in poly.items():
        if monom[i]:
            linear += ring.term_new(monom, coeff)
        else:
            rest += ring.term_new(monom, coeff)
    return rest, linear


def _evaluate(poly: PolyElement, values: Mapping[str, Scalar]) -> Scalar:
    field = next(iter(values.values())).field
    total = field.zero
    for monom, coeff in poly.items():
        term = field.const(Fraction(int(coeff.numerator), int(coeff.denominator)))
        for name, e in zip(field.names, monom):
            if not e:
                continue
            term = term * (values[name] ** e if name in values else field.param(name) ** e)
        total = total + term
    return total


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _is_monomial_text(text: str) -> bool:
    return not any(ch in text for ch in "+- /*^")


def _name(param: Param) -> str:
    return param.name
