"""Exact scalars.

Concrete computations use :class:`fractions.Fraction` throughout.  Parametric
computations (independent symbols such as ``sigma`` and ``tau``) use
:class:`SymPoly`, a sparse polynomial with rational coefficients.  Every
``SymPoly`` operation that produces a constant returns a plain ``Fraction``,
so the two scalar kinds mix freely and constants always have one
representation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[Fraction, "SymPoly"]

# a monomial is a sorted tuple of (symbol, power) pairs; () is the constant
Monomial = tuple


def Q(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {value!r} to a rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    powers = dict(a)
    for sym, p in b:
        powers[sym] = powers.get(sym, 0) + p
    return tuple(sorted(powers.items()))


class SymPoly:
    """Polynomial in named commuting symbols with Fraction coefficients.

    Construct through :func:`symbol` or :meth:`from_terms`; arithmetic with
    ints and Fractions is supported on both sides.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction]):
        self._terms = {m: Fraction(c) for m, c in terms.items() if c != 0}
        self._hash = None

    @staticmethod
    def from_terms(terms: Mapping[Monomial, Fraction]) -> Scalar:
        clean = {m: Fraction(c) for m, c in terms.items() if c != 0}
        if not clean:
            return Fraction(0)
        if list(clean) == [()]:
            return clean[()]
        return SymPoly(clean)

    @staticmethod
    def linear(coords: Iterable[Fraction], symbols: Iterable[str]) -> Scalar:
        """``coords[0] + sum coords[i] * symbols[i-1]``."""
        coords = list(coords)
        terms = {(): coords[0]}
        for c, s in zip(coords[1:], symbols):
            terms[((s, 1),)] = c
        return SymPoly.from_terms(terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def symbols(self) -> set[str]:
        return {s for m in self._terms for s, _ in m}

    def degree(self) -> int:
        return max(sum(p for _, p in m) for m in self._terms)

    def linear_coords(self, symbols: tuple[str, ...]) -> tuple[Fraction, ...]:
        """Coordinates over ``[1, *symbols]``; raises if not affine-linear."""
        coords = [self._terms.get((), Fraction(0))]
        for s in symbols:
            coords.append(self._terms.get(((s, 1),), Fraction(0)))
        for m in self._terms:
            if m == ():
                continue
            if len(m) != 1 or m[0][1] != 1 or m[0][0] not in symbols:
                raise ValueError(f"{self} is not linear over {symbols}")
        return tuple(coords)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, SymPoly):
            return other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return {(): Fraction(other)}
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in o.items():
            terms[m] = terms.get(m, 0) + c
        return SymPoly.from_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly.from_terms({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-SymPoly.from_terms(o) if o else 0)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return SymPoly.from_terms(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            inv = 1 / Fraction(other)
            return SymPoly.from_terms({m: c * inv for m, c in self._terms.items()})
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result: Scalar = Fraction(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == {m: c for m, c in o.items() if c != 0}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"SymPoly({format_scalar(self)!r})"


def symbol(name: str) -> SymPoly:
    return SymPoly({((name, 1),): Fraction(1)})


def is_symbolic(x) -> bool:
    return isinstance(x, SymPoly)


def scalar_symbols(x) -> set[str]:
    return x.symbols() if isinstance(x, SymPoly) else set()


def evaluate_scalar(x, values: Mapping[str, object]):
    """Substitute symbol values; exact if the values are Fractions."""
    if not isinstance(x, SymPoly):
        return x
    total = Fraction(0)
    for m, c in x.terms.items():
        term = c
        for s, p in m:
            term = term * values[s] ** p
        total = total + term
    return total


def _format_monomial(m: Monomial) -> str:
    return "*".join(s if p == 1 else f"{s}^{p}" for s, p in m)


def format_scalar(x) -> str:
    """Human-readable form, e.g. ``"1/2*sigma - tau + 3"``."""
    if not isinstance(x, SymPoly):
        return format_rational(x)
    parts = []
    # constant last, higher degree first, then alphabetical
    items = sorted(x.terms.items(), key=lambda mc: (-sum(p for _, p in mc[0]), mc[0]))
    for m, c in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if m == ():
            body = format_rational(mag)
        elif mag == 1:
            body = _format_monomial(m)
        else:
            body = f"{format_rational(mag)}*{_format_monomial(m)}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def scalar_to_json(x):
    """Fractions as ``"p/q"`` strings; symbolic values as term lists."""
    if not isinstance(x, SymPoly):
        return format_rational(x)
    return [
        [format_rational(c), {s: p for s, p in m}]
        for m, c in sorted(x.terms.items())
    ]


def scalar_from_json(data) -> Scalar:
    if isinstance(data, (str, int)) and not isinstance(data, bool):
        return Q(data)
    if isinstance(data, list):
        terms = {}
        for coef, powers in data:
            m = tuple(sorted((str(s), int(p)) for s, p in powers.items()))
            terms[m] = terms.get(m, 0) + Q(coef)
        return SymPoly.from_terms(terms)
    raise ValueError(f"not a scalar: {data!r}")


def to_float(x, values: Mapping[str, float] | None = None) -> float:
    if isinstance(x, SymPoly):
        total = 0.0
        for m, c in x.terms.items():
            term = float(c)
            for s, p in m:
                term *= float(values[s]) ** p
            total += term
        return total
    return float(x)


def factorial_inverse(k: int) -> Fraction:
    return Fraction(1, math.factorial(k))
