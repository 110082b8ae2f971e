"""*-continuous Kleene algebras and the bounded scalar instances.

An algebra is an object carrying the operations; its elements are plain
Python values (``bool`` for the Boolean semiring, :class:`Fraction` or
:data:`INF` for the tropical and fuzzy semirings).  All instances here are
bounded (``x + 1 = 1``), so their star is constantly ``1``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable

INF = math.inf


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction (no floats)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        p, q = p.strip(), q.strip()
        if not _is_int(p) or not _is_int(q) or int(q) == 0:
            raise ValueError(f"not a rational: {text!r}")
        return Fraction(int(p), int(q))
    if not _is_int(s):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(int(s))


def _is_int(s: str) -> bool:
    return s.lstrip("+-").isdigit()


def parse_extended(text) -> Fraction | float:
    """Like :func:`parse_rational` but also accepts ``"inf"``."""
    if isinstance(text, str) and text.strip() == "inf":
        return INF
    return parse_rational(text)


def render_rational(x) -> str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class KleeneAlgebra:
    """Interface of a *-continuous Kleene algebra.

    Subclasses provide ``zero``, ``one``, ``plus``, ``times`` and a closed
    form for ``star``.  Elements must be hashable; equality is ``==``.
    """

    name = "abstract"
    zero: Any
    one: Any
    bounded = False

    def plus(self, x, y):
        raise NotImplementedError

    def times(self, x, y):
        raise NotImplementedError

    def star(self, x):
        raise NotImplementedError

    def eq(self, x, y) -> bool:
        return x == y

    def sum(self, xs: Iterable):
        return reduce(self.plus, xs, self.zero)

    def prod(self, xs: Iterable):
        return reduce(self.times, xs, self.one)

    def power(self, x, n: int):
        out = self.one
        for _ in range(n):
            out = self.times(out, x)
        return out

    def render(self, x) -> str:
        return str(x)

    def parse(self, payload):
        raise NotImplementedError

    def to_json(self, x):
        return self.render(x)

    def __repr__(self):
        return f"<{type(self).__name__}>"


class OmegaAlgebra(KleeneAlgebra):
    """A Kleene algebra paired with a semimodule ``V`` and an ω-operation.

    ``vzero``/``vplus`` make ``V`` a commutative idempotent monoid,
    ``act(x, v)`` is the left action and ``omega(x)`` maps into ``V``.
    """

    vzero: Any

    def vplus(self, u, v):
        raise NotImplementedError

    def act(self, x, v):
        raise NotImplementedError

    def omega(self, x):
        raise NotImplementedError

    def veq(self, u, v) -> bool:
        return u == v

    def vsum(self, vs: Iterable):
        return reduce(self.vplus, vs, self.vzero)

    def vrender(self, v) -> str:
        return str(v)


class BoolAlgebra(KleeneAlgebra):
    name = "bool"
    zero = False
    one = True
    bounded = True

    def plus(self, x, y):
        return x or y

    def times(self, x, y):
        return x and y

    def star(self, x):
        return True

    def render(self, x):
        return "true" if x else "false"

    def parse(self, payload):
        if not isinstance(payload, bool):
            raise ValueError(f"bool weight must be a JSON boolean, got {payload!r}")
        return payload

    def to_json(self, x):
        return bool(x)


class TropicalAlgebra(KleeneAlgebra):
    """(ℚ≥0 ∪ {∞}, min, +, ∞, 0)."""

    name = "tropical"
    zero = INF
    one = Fraction(0)
    bounded = True

    def plus(self, x, y):
        return x if x <= y else y

    def times(self, x, y):
        if x == INF or y == INF:
            return INF
        return x + y

    def star(self, x):
        return self.one

    def render(self, x):
        return render_rational(x)

    def parse(self, payload):
        x = parse_extended(payload)
        if x < 0:
            raise ValueError(f"tropical weight must be nonnegative, got {payload!r}")
        return x


class FuzzyAlgebra(KleeneAlgebra):
    """(ℚ≥0 ∪ {∞}, max, min, 0, ∞)."""

    name = "fuzzy"
    zero = Fraction(0)
    one = INF
    bounded = True

    def plus(self, x, y):
        return x if x >= y else y

    def times(self, x, y):
        return x if x <= y else y

    def star(self, x):
        return self.one

    def render(self, x):
        return render_rational(x)

    def parse(self, payload):
        x = parse_extended(payload)
        if x < 0:
            raise ValueError(f"fuzzy weight must be nonnegative, got {payload!r}")
        return x


BOOL = BoolAlgebra()
TROP = TropicalAlgebra()
FUZZ = FuzzyAlgebra()


def sr_plus(alg: KleeneAlgebra, x, y):
    return alg.plus(x, y)


def sr_times(alg: KleeneAlgebra, x, y):
    return alg.times(x, y)


def sr_star(alg: KleeneAlgebra, x):
    return alg.star(x)
