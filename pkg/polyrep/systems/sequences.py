"""Coefficient families of nested brackets and of lowering actions.

The even family ``a(k, p)`` and the odd family ``b(k, p)`` describe the
normal form of ``ad_F^j(X1)`` in the D_II algebra::

    ad_F^(2p)(X1)   = sum_k a(k, p)   a^(p-k)   b^(p+k) X1^(2k+1)
    ad_F^(2p+1)(X1) = sum_k b(k, p)   a^(p+1-k) b^(p+k) X1^(2k)

with ``[F, X1] = a + b X1^2``. Recurrence values come from the closed seeds
and the upward-coupled recurrence; engine values are read off the normal
forms. Both are kept side by side.
"""
from __future__ import annotations

import logging
import threading
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Literal

import pandas as pd

from polyrep.base.free_algebra import AlgElement
from polyrep.base.presentation import Presentation
from polyrep.base.scalar import Scalar, ScalarField
from polyrep.errors import IndexOutOfRange, Unreachable

logger = logging.getLogger(__name__)

Family = Literal["a", "b"]


class BracketSequences:
    """Memoized even and odd bracket sequences.

    Parameters
    ----------
    shift : Literal["recurrence", "display"], default="display"
        How ``a(2, p)`` is solved. ``"display"`` uses the k = 1 relation as
        printed (``a(1, p+1) = 2^(2p+1) + 18 a(1, p) + 20 a(2, p)``);
        ``"recurrence"`` uses the general k-recurrence at every step.
    """

    def __init__(self, shift: Literal["recurrence", "display"] = "display") -> None:
        if shift not in ("recurrence", "display"):
            raise ValueError(f"Invalid shift {shift}")
        self.shift = shift
        self._even: dict[tuple[int, int], Fraction] = {}
        self._chains: dict[str, list[AlgElement]] = {}
        self._lock = threading.RLock()

    def even_depth(self, k: int, p: int) -> Fraction:
        """``a(k, p)``, for ``k >= 0`` and ``p >= 1``.

        Raises
        ------
        Unreachable
            When the seeds do not determine the entry.
        """
        if k < 0 or p < 1:
            raise Unreachable(f"a({k}, {p}) is not determined by the seeds")
        key = (k, p)
        with self._lock:
            cached = self._even.get(key)
            if cached is not None:
                return cached
            value = self._solve_even(k, p)
            self._even[key] = value
            return value

    def _solve_even(self, k: int, p: int) -> Fraction:
        if k == 0:
            return Fraction(2 ** (2 * p - 1))
        if k == 1:
            return Fraction(4**p, 3)
        if k == 2 and self.shift == "display":
            # a(1, p+1) = 2^(2p+1) + 18 a(1, p) + 20 a(2, p)
            return (
                self.even_depth(1, p + 1) - 2 ** (2 * p + 1) - 18 * self.even_depth(1, p)
            ) / 20
        j = k - 1
        return (
            self.even_depth(j, p + 1)
            - 2 * j * (2 * j - 1) * self.even_depth(j - 1, p)
            - 2 * (2 * j + 1) ** 2 * self.even_depth(j, p)
        ) / (2 * j + 3)

    def odd_depth(self, k: int, p: int) -> Fraction:
        """``b(k, p) = a(k-1, p+1)``; ``b(0, p)`` is the leading ``4^p``."""
        if k < 0 or p < 0:
            raise Unreachable(f"b({k}, {p}) is not determined by the seeds")
        if k == 0:
            return Fraction(4**p)
        return self.even_depth(k - 1, p + 1)

    def seed_identity(self, p: int) -> bool:
        """Whether ``2^(2p+2) = 2 (2^(2p) + 3 a(1, p))`` holds."""
        return Fraction(2 ** (2 * p + 2)) == 2 * (2 ** (2 * p) + 3 * self.even_depth(1, p))

    # engine side

    def chain(self, presentation: Presentation, depth: int) -> list[AlgElement]:
        """Normal forms of ``ad_F^j(X1)`` for ``j = 0..depth``."""
        algebra = presentation.algebra
        with self._lock:
            chain = self._chains.setdefault(presentation.name, [])
            if not chain:
                chain.append(algebra.normal_order(algebra.gen("X1")))
            f = algebra.gen("F")
            while len(chain) <= depth:
                chain.append(algebra.commutator(f, chain[-1]))
                logger.debug("ad_F depth %d has %d terms", len(chain) - 1, len(chain[-1].terms))
            return chain[: depth + 1]

    def bracket_constants(self, presentation: Presentation) -> tuple[Scalar, Scalar]:
        """``a`` and ``b`` in ``[F, X1] = a + b X1^2``."""
        first = self.chain(presentation, 1)[1]
        return first.coefficient(()), first.coefficient(("X1", "X1"))

    def engine_value(self, presentation: Presentation, family: Family, k: int, p: int) -> Scalar:
        """Sequence entry read off the engine's nested brackets."""
        a, b = self.bracket_constants(presentation)
        match family:
            case "a":
                if not 0 <= k <= p:
                    raise IndexOutOfRange(f"a({k}, {p}) needs 0 <= k <= p")
                element = self.chain(presentation, 2 * p)[2 * p]
                return element.coefficient(("X1",) * (2 * k + 1)) / (
                    a ** (p - k) * b ** (p + k)
                )
            case "b":
                if not 0 <= k <= p + 1:
                    raise IndexOutOfRange(f"b({k}, {p}) needs 0 <= k <= p + 1")
                element = self.chain(presentation, 2 * p + 1)[2 * p + 1]
                return element.coefficient(("X1",) * (2 * k)) / (
                    a ** (p + 1 - k) * b ** (p + k)
                )
            case _:
                raise ValueError(f"Invalid sequence family {family}")

    def recurrence_value(self, family: Family, k: int, p: int) -> Fraction | None:
        try:
            return self.even_depth(k, p) if family == "a" else self.odd_depth(k, p)
        except Unreachable:
            return None

    def extract(
        self,
        presentation: Presentation,
        p_max: int,
        families: Iterable[Family] = ("a", "b"),
    ) -> pd.DataFrame:
        """Engine and recurrence values side by side for ``p <= p_max``.

        Returns
        -------
        pandas.DataFrame
            Columns ``family, k, p, engine, recurrence, match``.
        """
        rows = []
        for family in families:
            for p in range(p_max + 1):
                top = p if family == "a" else p + 1
                for k in range(top + 1):
                    rows.append(self._row(presentation, family, k, p))
        return pd.DataFrame(rows, columns=["family", "k", "p", "engine", "recurrence", "match"])

    def table(
        self,
        family: Family,
        ks: Iterable[int],
        ps: Iterable[int],
        presentation: Presentation | None = None,
    ) -> pd.DataFrame:
        """Values over a grid; the engine column is empty without a presentation."""
        if family not in ("a", "b"):
            raise ValueError(f"Invalid sequence family {family}")
        rows = []
        for k in ks:
            for p in ps:
                rows.append(self._row(presentation, family, k, p))
        return pd.DataFrame(rows, columns=["family", "k", "p", "engine", "recurrence", "match"])

    def _row(self, presentation, family: Family, k: int, p: int) -> dict:
        recurrence = self.recurrence_value(family, k, p)
        engine = None
        if presentation is not None:
            try:
                engine = self.engine_value(presentation, family, k, p)
            except IndexOutOfRange:
                engine = None
        match = (
            engine is not None and recurrence is not None and engine == recurrence
        )
        return {
            "family": family,
            "k": k,
            "p": p,
            "engine": "" if engine is None else str(engine),
            "recurrence": "" if recurrence is None else _text(recurrence),
            "match": match,
        }


def dii_lowering_coefficient(
    ell: int,
    m: int,
    field: ScalarField,
    sequences: BracketSequences | None = None,
    energy: str = "E",
) -> Scalar:
    """Closed-form lowering coefficient of ``X1`` on ``F^m Psi`` in D_II.

    Evaluates the displayed double sum with ``a = -2 (a2 E + c2)``, ``b = -2``
    and the separation constant ``t`` (radical ``st``).

    Raises
    ------
    IndexOutOfRange
        Unless ``0 <= ell <= m - 1``.
    """
    if not 0 <= ell <= m - 1:
        raise IndexOutOfRange(f"lowering coefficient needs 0 <= ell < m, got {ell}, {m}")
    sequences = sequences or BracketSequences()
    E, a2, c2 = field.param(energy), field.param("a2"), field.param("c2")
    t, st = field.param("t"), field.param("st")
    a = -2 * (a2 * E + c2)
    b = field.const(-2)

    def inner(n: int) -> Scalar:
        total = 2 ** (2 * n) * a ** (n + 1) * b**n
        for k in range(1, n + 1):
            weight = a ** (n - k) * b ** (n + k) * t**k
            total += weight * (sequences.odd_depth(k, n) + sequences.even_depth(k, n) * st)
        return total + factorial(2 * n) * b ** (2 * n + 1) * t ** (n + 1)

    total = field.zero
    for j in range(m - ell + 1):
        factor = (-1) ** j * comb(m - 1, j) * comb(j, ell)
        if factor:
            total += factor * inner(m - j)
    return total


def quintic_lowering_coefficient(
    ell: int, m: int, field: ScalarField, energy: str = "E"
) -> Scalar:
    """Closed-form lowering coefficient of ``Y1`` on ``K^m Psi``.

    The inner geometric-style sum is expanded term by term.

    Raises
    ------
    IndexOutOfRange
        Unless ``0 <= ell <= m - 1``.
    """
    if not 0 <= ell <= m - 1:
        raise IndexOutOfRange(f"lowering coefficient needs 0 <= ell < m, got {ell}, {m}")
    c0E = field.param("c0") * field.param(energy)
    c1, lam, slam = field.param("c1"), field.param("lam"), field.param("slam")
    n = m - ell
    inner = sum((c0E ** (n - i) * c1**i * lam**i * slam for i in range(n + 1)), field.zero)
    total = sum(
        (comb(m, j) * comb(j, ell) for j in range(m - ell + 1)), 0
    )
    return (-1) ** m * total * inner


def _text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
