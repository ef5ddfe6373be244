"""Exponential sums ``sum_i Q_i(u) exp(gamma_i u)`` in canonical form.

Distinct exponentials are linearly independent over rational functions of
``u``, so merging terms by frequency and dropping zero coefficients yields a
canonical form: two sums denote the same function exactly when their
frequency-to-coefficient maps coincide.  That is the whole equality test;
floating-point evaluation exists only as an independent oracle.

Frequencies are vectors over an ordered basis ``("1", g1, g2, ...)``.  The
default basis ``("1",)`` makes a frequency a plain rational; extra basis
symbols model incommensurable parameters exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import MixedBasis, NegativePowerResidue, NonInvertibleLeadingTerm
from .laurent import LaurentPoly
from .rational import (
    Q,
    Scalar,
    SymPoly,
    format_rational,
    format_scalar,
    scalar_from_json,
    scalar_to_json,
    to_float,
)

DEFAULT_BASIS = ("1",)


@dataclass(frozen=True, order=True)
class Frequency:
    coords: tuple[Fraction, ...]
    basis: tuple[str, ...] = DEFAULT_BASIS

    def __post_init__(self):
        if len(self.coords) != len(self.basis):
            raise ValueError("frequency coordinates do not match the basis")
        if self.basis[0] != "1":
            raise ValueError("a frequency basis starts with '1'")

    @classmethod
    def of(cls, value, basis: tuple[str, ...] = DEFAULT_BASIS) -> Frequency:
        """Frequency of a rational or an affine-linear SymPoly."""
        if isinstance(value, Frequency):
            if value.basis != basis:
                raise MixedBasis(f"{value.basis} vs {basis}")
            return value
        if isinstance(value, SymPoly):
            try:
                coords = value.linear_coords(basis[1:])
            except ValueError as exc:
                raise MixedBasis(str(exc)) from None
            return cls(coords, basis)
        return cls((Q(value),) + (Fraction(0),) * (len(basis) - 1), basis)

    @classmethod
    def zero(cls, basis: tuple[str, ...] = DEFAULT_BASIS) -> Frequency:
        return cls((Fraction(0),) * len(basis), basis)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.basis[1:]

    def as_scalar(self) -> Scalar:
        return SymPoly.linear(self.coords, self.symbols)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other: Frequency):
        if self.basis != other.basis:
            raise MixedBasis(f"{self.basis} vs {other.basis}")

    def __add__(self, other: Frequency) -> Frequency:
        self._check(other)
        return Frequency(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis)

    def __neg__(self) -> Frequency:
        return Frequency(tuple(-a for a in self.coords), self.basis)

    def __sub__(self, other: Frequency) -> Frequency:
        return self + (-other)

    def scale(self, m) -> Frequency:
        m = Fraction(m)
        return Frequency(tuple(a * m for a in self.coords), self.basis)

    def evaluate(self, symbol_values: Sequence[float] = ()) -> float:
        total = float(self.coords[0])
        for c, v in zip(self.coords[1:], symbol_values):
            total += float(c) * float(v)
        return total

    def __str__(self):
        return format_scalar(self.as_scalar())


class ExpSum:
    """Immutable canonical exponential sum (a map Frequency -> LaurentPoly)."""

    __slots__ = ("_terms", "basis", "_hash")

    def __init__(self, terms: Mapping[Frequency, LaurentPoly] | None = None,
                 basis: tuple[str, ...] = DEFAULT_BASIS):
        clean = {}
        for f, q in (terms or {}).items():
            if f.basis != basis:
                raise MixedBasis(f"{f.basis} vs {basis}")
            if q:
                clean[f] = q
        self._terms = clean
        self.basis = tuple(basis)
        self._hash = None

    @classmethod
    def zero(cls, basis=DEFAULT_BASIS) -> ExpSum:
        return cls({}, basis)

    @classmethod
    def one(cls, basis=DEFAULT_BASIS) -> ExpSum:
        return cls.term(Frequency.zero(basis), LaurentPoly.constant(Fraction(1)))

    @classmethod
    def constant(cls, c: Scalar, basis=DEFAULT_BASIS) -> ExpSum:
        return cls.term(Frequency.zero(basis), LaurentPoly.constant(c))

    @classmethod
    def term(cls, freq: Frequency, coeff: LaurentPoly) -> ExpSum:
        return cls({freq: coeff}, freq.basis)

    @classmethod
    def exp(cls, freq: Frequency) -> ExpSum:
        """The single exponential ``exp(freq * u)``."""
        return cls.term(freq, LaurentPoly.constant(Fraction(1)))

    def items(self) -> list[tuple[Frequency, LaurentPoly]]:
        """Terms sorted by frequency (lexicographic over basis coordinates)."""
        return sorted(self._terms.items(), key=lambda t: t[0].coords)

    @property
    def terms(self) -> dict[Frequency, LaurentPoly]:
        return dict(self._terms)

    def frequencies(self) -> list[Frequency]:
        return [f for f, _ in self.items()]

    def coeff(self, freq: Frequency) -> LaurentPoly:
        return self._terms.get(freq, LaurentPoly.zero())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: ExpSum):
        if self.basis != other.basis:
            raise MixedBasis(f"{self.basis} vs {other.basis}")

    def __add__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for f, q in other._terms.items():
            out[f] = out[f] + q if f in out else q
        return ExpSum(out, self.basis)

    def __neg__(self):
        return ExpSum({f: -q for f, q in self._terms.items()}, self.basis)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SymPoly, LaurentPoly)) and not isinstance(other, bool):
            return ExpSum({f: q * other for f, q in self._terms.items()}, self.basis)
        if not isinstance(other, ExpSum):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for f1, q1 in self._terms.items():
            for f2, q2 in other._terms.items():
                f = f1 + f2
                prod = q1 * q2
                out[f] = out[f] + prod if f in out else prod
        return ExpSum(out, self.basis)

    __rmul__ = __mul__

    def shift_frequency(self, freq: Frequency) -> ExpSum:
        """Multiply by ``exp(freq * u)``."""
        return ExpSum({f + freq: q for f, q in self._terms.items()}, self.basis)

    def shift_u(self, k: int) -> ExpSum:
        """Multiply by ``u**k``."""
        return ExpSum({f: q.shift(k) for f, q in self._terms.items()}, self.basis)

    def rescale_u(self, m) -> ExpSum:
        """Substitute ``u -> m*u``."""
        return ExpSum({f.scale(m): q.rescale(m) for f, q in self._terms.items()}, self.basis)

    def is_invertible_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (f, q), = self._terms.items()
        return f.is_zero() and q.is_monomial() and not isinstance(q.items()[0][1], SymPoly)

    def inverse(self) -> ExpSum:
        if not self.is_invertible_unit():
            raise NonInvertibleLeadingTerm(f"cannot invert {self}")
        (f, q), = self._terms.items()
        return ExpSum({f: q.inverse()}, self.basis)

    def __eq__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        return self.basis == other.basis and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis, tuple(self.items())))
        return self._hash

    def __repr__(self):
        return f"ExpSum({to_text(self)})"

    def __str__(self):
        return to_text(self)


def canonicalize(raw_terms: Iterable[tuple[Frequency, LaurentPoly]],
                 basis: tuple[str, ...] | None = None) -> ExpSum:
    """Merge raw (frequency, coefficient) pairs into canonical form."""
    raw_terms = list(raw_terms)
    if basis is None:
        basis = raw_terms[0][0].basis if raw_terms else DEFAULT_BASIS
    out: dict = {}
    for f, q in raw_terms:
        if f.basis != basis:
            raise MixedBasis(f"{f.basis} vs {basis}")
        out[f] = out[f] + q if f in out else q
    return ExpSum(out, basis)


def exp_sum_equal(a: ExpSum, b: ExpSum) -> bool:
    if a.basis != b.basis:
        raise MixedBasis(f"{a.basis} vs {b.basis}")
    return a == b


def u_series(e: ExpSum, max_order: int) -> list[Scalar]:
    """Power-series coefficients of ``u^0 .. u^max_order``.

    Raises NegativePowerResidue(k, value) for the most negative power
    ``u^-k`` whose total coefficient does not cancel.
    """
    lowest = min((q.valuation for q in e.terms.values()), default=0)
    lowest = min(lowest, 0)
    totals: dict[int, Scalar] = {m: Fraction(0) for m in range(lowest, max_order + 1)}
    for f, q in e.items():
        gamma = f.as_scalar()
        # gamma^j / j! for the largest shift needed
        span = max_order - q.valuation
        powers = [Fraction(1)]
        for j in range(1, span + 1):
            powers.append(powers[-1] * gamma / j)
        for d, c in q.items():
            for m in range(max(d, lowest), max_order + 1):
                totals[m] = totals[m] + c * powers[m - d]
    for m in range(lowest, 0):
        if totals[m] != 0:
            raise NegativePowerResidue(-m, totals[m])
    return [totals[m] for m in range(0, max_order + 1)]


def eval_numeric(e: ExpSum, u0: float, symbol_values: Sequence[float] = ()) -> float:
    """Float evaluation at ``u = u0`` (a cross-check, never a verdict)."""
    values = dict(zip(e.basis[1:], symbol_values))
    total = 0.0
    for f, q in e.items():
        total += q.evaluate(u0, values) * math.exp(f.evaluate(symbol_values) * u0)
    return total


# rendering

def _freq_exponent(f: Frequency) -> str:
    text = format_scalar(f.as_scalar())
    if " " in text:
        text = f"({text})"
    return {"1": "", "-1": "-"}.get(text, text + " ")


def to_text(e: ExpSum) -> str:
    """Plain text, e.g. ``(-1/2)u^-2 e^{3/2 u}``; ``0`` for the empty sum."""
    if not e:
        return "0"
    parts = []
    for f, q in e.items():
        for d, c in q.items():
            piece = f"({format_scalar(c)})"
            if d == 1:
                piece += "u"
            elif d != 0:
                piece += f"u^{d}"
            if not f.is_zero():
                piece += f" e^{{{_freq_exponent(f)}u}}"
            parts.append(piece)
    return " + ".join(parts)


def _latex_scalar(c) -> str:
    if isinstance(c, SymPoly):
        return "(" + format_scalar(c).replace("*", " ") + ")"
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _latex_term(c, d: int) -> str:
    if d == 0:
        return _latex_scalar(c)
    if d > 0:
        power = "u" if d == 1 else f"u^{{{d}}}"
        return f"{_latex_scalar(c)}\\,{power}"
    power = "u" if d == -1 else f"u^{{{-d}}}"
    if isinstance(c, SymPoly):
        return f"\\frac{{{format_scalar(c).replace('*', ' ')}}}{{{power}}}"
    c = Fraction(c)
    sign = "-" if c < 0 else ""
    num = abs(c.numerator)
    den = c.denominator
    den_text = power if den == 1 else f"{den}{power}"
    return f"{sign}\\frac{{{num}}}{{{den_text}}}"


def _latex_exp(f: Frequency) -> str:
    if f.is_zero():
        return ""
    text = format_scalar(f.as_scalar()).replace("*", " ")
    if text == "1":
        text = ""
    elif text == "-1":
        text = "-"
    else:
        text += "\\,"
    return f"e^{{{text}u}}"


def to_latex(e: ExpSum, prefactor: Frequency | None = None) -> str:
    """LaTeX rendering; with ``prefactor`` the sum is shown as e^{qu}(...)."""
    if not e:
        return "0"
    source = e if prefactor is None else e.shift_frequency(-prefactor)
    pieces = []
    for f, q in source.items():
        coeff = " + ".join(_latex_term(c, d) for d, c in q.items())
        if len(q) > 1:
            coeff = f"\\left({coeff}\\right)"
        pieces.append(coeff + _latex_exp(f))
    body = " + ".join(pieces).replace("+ -", "- ")
    if prefactor is None or prefactor.is_zero():
        return body
    return f"{_latex_exp(prefactor)}\\left({body}\\right)"


def to_json(e: ExpSum) -> dict:
    return {
        "basis": list(e.basis),
        "terms": [
            {
                "frequency": [format_rational(c) for c in f.coords],
                "coefficients": {str(d): scalar_to_json(c) for d, c in q.items()},
            }
            for f, q in e.items()
        ],
    }


def from_json(data: dict) -> ExpSum:
    basis = tuple(data.get("basis", DEFAULT_BASIS))
    raw = []
    for t in data["terms"]:
        f = Frequency(tuple(Q(c) for c in t["frequency"]), basis)
        q = LaurentPoly({int(d): scalar_from_json(c) for d, c in t["coefficients"].items()})
        raw.append((f, q))
    return canonicalize(raw, basis)


def sinh_sum(x: Scalar | Frequency, basis=DEFAULT_BASIS) -> ExpSum:
    """``sinh(x u)`` as ``(exp(xu) - exp(-xu)) / 2``."""
    f = Frequency.of(x, basis)
    half = Fraction(1, 2)
    return ExpSum.exp(f) * half - ExpSum.exp(-f) * half
