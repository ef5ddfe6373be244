"""Sparse univariate Laurent polynomials in ``u``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .rational import Scalar, SymPoly, format_scalar, to_float


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, SymPoly)) and not isinstance(x, bool)


class LaurentPoly:
    """``sum c_d u^d`` over finitely many integer exponents ``d``.

    Coefficients are Fractions, or SymPoly values in parametric mode.  Zero
    coefficients are never stored, so two polynomials are equal exactly when
    their coefficient maps are.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        clean = {}
        for d, c in (coeffs or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c != 0:
                clean[int(d)] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def monomial(cls, coeff: Scalar, exponent: int = 0) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, coeff: Scalar) -> LaurentPoly:
        return cls({0: coeff})

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    def items(self) -> list[tuple[int, Scalar]]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return sorted(self._coeffs.items())

    def __iter__(self) -> Iterator[tuple[int, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def coeff(self, exponent: int) -> Scalar:
        return self._coeffs.get(exponent, Fraction(0))

    @property
    def degree(self) -> int:
        if not self._coeffs:
            raise ValueError("degree of the zero Laurent polynomial")
        return max(self._coeffs)

    @property
    def valuation(self) -> int:
        if not self._coeffs:
            raise ValueError("valuation of the zero Laurent polynomial")
        return min(self._coeffs)

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    # arithmetic

    def __add__(self, other):
        if _is_scalar(other):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return LaurentPoly({d: c * other for d, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            inv = 1 / Fraction(other)
            return LaurentPoly({d: c * inv for d, c in self._coeffs.items()})
        return NotImplemented

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``u**k``."""
        return LaurentPoly({d + k: c for d, c in self._coeffs.items()})

    def inverse(self) -> LaurentPoly:
        """Inverse of a monomial with an invertible (rational) coefficient."""
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials are invertible")
        (d, c), = self._coeffs.items()
        if isinstance(c, SymPoly):
            raise ZeroDivisionError("symbolic coefficient is not invertible")
        return LaurentPoly({-d: 1 / c})

    def rescale(self, m) -> LaurentPoly:
        """The polynomial ``p(m*u)``."""
        m = Fraction(m)
        return LaurentPoly({d: c * m**d for d, c in self._coeffs.items()})

    def evaluate(self, u: float, symbol_values=None) -> float:
        return sum(to_float(c, symbol_values) * u**d for d, c in self._coeffs.items())

    def __eq__(self, other):
        if _is_scalar(other):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for d, c in self.items():
            if d == 0:
                parts.append(f"({format_scalar(c)})")
            elif d == 1:
                parts.append(f"({format_scalar(c)})u")
            else:
                parts.append(f"({format_scalar(c)})u^{d}")
        return " + ".join(parts)
