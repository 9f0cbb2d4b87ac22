"""Expression grammar: parse, lower and format scalars and algebra elements.

Grammar (``^`` binds tighter than juxtaposition, juxtaposition and ``*``
tighter than ``+``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*
    unary  := '-' unary | power
    power  := atom ('^' uint)?
    atom   := rational | ident | '[' expr ',' expr ']' | '{' expr ',' expr '}'
              | '(' expr ')'

Juxtaposition is multiplication and is noncommutative on generators.
Division is allowed only by scalar factors. Commutators and anticommutators
are expanded when lowering; nothing is normal-ordered.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from lark import Lark, Transformer, Tree, v_args
from lark.exceptions import LarkError, UnexpectedCharacters, UnexpectedInput, VisitError

from polyrep.base.free_algebra import AlgElement, FreeAlgebra
from polyrep.base.scalar import Scalar, ScalarField
from polyrep.errors import ParseError, PolyrepError, UnknownIdent

MAX_EXPONENT = 512

GRAMMAR = r"""
?start: expr
?expr: term
     | expr "+" term          -> add
     | expr "-" term          -> sub
?term: unary
     | term "*" unary         -> mul
     | term "/" unary         -> div
     | term power             -> mul
?unary: power
      | "-" unary             -> neg
?power: atom
      | atom "^" INT          -> pow
?atom: RATIONAL               -> number
     | INT                    -> number
     | NAME                   -> ident
     | "[" expr "," expr "]"  -> commutator
     | "{" expr "," expr "}"  -> anticommutator
     | "(" expr ")"
RATIONAL: /\d+\/\d+/
INT: /\d+/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
%ignore /[ \t]+/
"""

_parser = Lark(GRAMMAR, start="start", parser="lalr")


def parse(text: str) -> Tree:
    """Parse expression text into a syntax tree.

    Raises
    ------
    ParseError
        With the 1-based position and the expected token names.
    """
    try:
        return _parser.parse(text)
    except UnexpectedInput as exc:
        expected = frozenset(getattr(exc, "expected", None) or ())
        if isinstance(exc, UnexpectedCharacters):
            expected = frozenset(exc.allowed or ())
        line = max(getattr(exc, "line", 1) or 1, 1)
        column = max(getattr(exc, "column", 1) or 1, 1)
        raise ParseError("unexpected input", line, column, expected) from None
    except LarkError as exc:
        raise ParseError(str(exc)) from None


@dataclass
class Namespace:
    """Resolution table for identifiers.

    Parameters
    ----------
    field : ScalarField
        Parameters resolve to scalars of this field.
    algebra : FreeAlgebra, optional
        Generators resolve to elements of this algebra.
    derived : dict, optional
        Named scalars (derived parameters), already expanded.
    """

    field: ScalarField
    algebra: FreeAlgebra | None = None
    derived: Mapping[str, Scalar] = field(default_factory=dict)

    def resolve(self, name: str) -> Scalar | AlgElement:
        if self.algebra is not None and name in self.algebra.generators:
            return self.algebra.gen(name)
        if name in self.derived:
            return self.derived[name]
        if name in self.field:
            return self.field.param(name)
        raise UnknownIdent(name, "expression")


@v_args(inline=True)
class _Lower(Transformer):
    def __init__(self, namespace: Namespace) -> None:
        super().__init__()
        self.namespace = namespace

    def number(self, token):
        return self.namespace.field.const(Fraction(str(token)))

    def ident(self, token):
        return self.namespace.resolve(str(token))

    def add(self, a, b):
        return _promote(a, b) + b

    def sub(self, a, b):
        return _promote(a, b) - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        if isinstance(a, Scalar) and isinstance(b, AlgElement):
            return b.algebra.scalar(a) * b
        return a * b

    def div(self, a, b):
        if not isinstance(b, Scalar):
            raise ParseError("division is only defined by scalars")
        return a * b.inverse()

    def pow(self, a, token):
        exponent = int(token)
        if exponent > MAX_EXPONENT:
            raise ParseError(f"exponent {exponent} exceeds {MAX_EXPONENT}")
        return a**exponent

    def commutator(self, a, b):
        if isinstance(a, Scalar) or isinstance(b, Scalar):
            return self.namespace.field.zero
        return a * b - b * a

    def anticommutator(self, a, b):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return 2 * a * b
        return self.mul(a, b) + self.mul(b, a)


def _promote(a, b):
    if isinstance(a, Scalar) and isinstance(b, AlgElement):
        return b.algebra.scalar(a)
    return a


def _transform(tree: Tree, namespace: Namespace) -> Scalar | AlgElement:
    try:
        return _Lower(namespace).transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, PolyrepError):
            raise exc.orig_exc from None
        raise


def lower(tree: Tree | str, namespace: Namespace) -> AlgElement:
    """Lower a syntax tree (or text) to an algebra element, not normal-ordered."""
    if namespace.algebra is None:
        raise ValueError("lowering to an algebra element needs an algebra")
    if isinstance(tree, str):
        tree = parse(tree)
    value = _transform(tree, namespace)
    if isinstance(value, Scalar):
        return namespace.algebra.scalar(value)
    return value


def lower_scalar(tree: Tree | str, namespace: Namespace) -> Scalar:
    """Lower a syntax tree (or text) that must not mention generators."""
    if isinstance(tree, str):
        tree = parse(tree)
    value = _transform(tree, namespace)
    if isinstance(value, AlgElement):
        if set(value.terms) - {()}:
            raise ParseError("expected a scalar expression")
        return value.coefficient(())
    return value


def format_element(element: AlgElement) -> str:
    """Canonical text of an algebra element."""
    return element.algebra.format(element)


def format_scalar(value: Scalar) -> str:
    """Canonical text of a scalar."""
    return str(value)
