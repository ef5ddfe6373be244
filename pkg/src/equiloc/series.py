"""Truncated Laurent series in an auxiliary variable ``eps``.

Coefficients are :class:`ExpSum` values, so a series represents
``sum_k c_k(u) eps^k`` for ``valuation <= k <= order``.  Coefficients beyond
``order`` are unknown and never consulted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NonInvertibleLeadingTerm, TruncationError
from .expsum import DEFAULT_BASIS, ExpSum


@dataclass(frozen=True)
class TruncatedSeries:
    valuation: int
    coeffs: tuple[ExpSum, ...]
    order: int
    basis: tuple[str, ...] = DEFAULT_BASIS

    def __post_init__(self):
        if len(self.coeffs) > self.order - self.valuation + 1:
            raise TruncationError("more coefficients than the truncation order allows")

    @classmethod
    def make(cls, valuation: int, coeffs: Sequence[ExpSum], order: int,
             basis: tuple[str, ...] = DEFAULT_BASIS) -> TruncatedSeries:
        """Build a series, dropping leading zeros and anything past ``order``."""
        coeffs = list(coeffs)[: max(order - valuation + 1, 0)]
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            valuation += 1
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            valuation = order + 1
        return cls(valuation, tuple(coeffs), order, basis)

    @classmethod
    def constant(cls, c: ExpSum, order: int) -> TruncatedSeries:
        return cls.make(0, [c], order, c.basis)

    @classmethod
    def one(cls, order: int, basis=DEFAULT_BASIS) -> TruncatedSeries:
        return cls.make(0, [ExpSum.one(basis)], order, basis)

    def coeff(self, k: int) -> ExpSum:
        if k > self.order:
            raise TruncationError(f"eps^{k} is beyond the truncation order {self.order}")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ExpSum.zero(self.basis)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        order = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        coeffs = [self.coeff(k) + other.coeff(k) for k in range(lo, order + 1)]
        return TruncatedSeries.make(lo, coeffs, order, self.basis)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(self.valuation, tuple(-c for c in self.coeffs), self.order, self.basis)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> TruncatedSeries:
        """Multiply every coefficient by a scalar, LaurentPoly or ExpSum."""
        return TruncatedSeries.make(self.valuation, [x * c for x in self.coeffs], self.order, self.basis)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product, known through ``min(a.order + b.valuation, b.order + a.valuation)``."""
    if a.is_zero() or b.is_zero():
        # zero up to its order; the product is zero up to the known order
        order = min(a.order + (b.valuation if not b.is_zero() else b.order),
                    b.order + (a.valuation if not a.is_zero() else a.order))
        return TruncatedSeries.make(0, [], order, a.basis)
    order = min(a.order + b.valuation, b.order + a.valuation)
    val = a.valuation + b.valuation
    coeffs = []
    for k in range(val, order + 1):
        total = ExpSum.zero(a.basis)
        for i in range(a.valuation, k - b.valuation + 1):
            j = k - i
            if i > a.order or j > b.order:
                continue
            ai = a.coeff(i)
            if not ai:
                continue
            bj = b.coeff(j)
            if bj:
                total = total + ai * bj
        coeffs.append(total)
    return TruncatedSeries.make(val, coeffs, order, a.basis)


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse with the same relative precision as ``a``."""
    if a.is_zero():
        raise NonInvertibleLeadingTerm("cannot invert the zero series")
    lead = a.coeffs[0]
    if not lead.is_invertible_unit():
        raise NonInvertibleLeadingTerm(f"leading coefficient {lead} is not an invertible monomial")
    lead_inv = lead.inverse()
    precision = a.order - a.valuation
    # b_0 = 1/a_0, b_k = -(1/a_0) * sum_{i=1..k} a_i b_{k-i}
    rel = [a.coeff(a.valuation + i) for i in range(precision + 1)]
    out = [lead_inv]
    for k in range(1, precision + 1):
        total = ExpSum.zero(a.basis)
        for i in range(1, k + 1):
            if rel[i] and out[k - i]:
                total = total + rel[i] * out[k - i]
        out.append(-(lead_inv * total))
    return TruncatedSeries.make(-a.valuation, out, -a.valuation + precision, a.basis)
