"""Fixed-point sums regularized by an auxiliary parameter ``eps``.

Each fixed point contributes ``exp(gamma u + delta eps) / prod_i (w_i u + d_i eps)``,
where ``(w_i)`` are the isotropy weights of the circle action and ``(d_i)``
those of a generic probe direction.  Weights that vanish for the circle
action are kept alive by ``eps``; summing the eps-Laurent expansions over all
fixed points, the negative powers of ``eps`` cancel and the ``eps^0``
coefficient is the value of the sum for the degenerate action.  Recomputing
with a second probe guards against an unlucky choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import BadProbe, ProbeDependence, ResidueError, TruncationError
from .expsum import ExpSum, Frequency
from .laurent import LaurentPoly
from .rational import Scalar, format_scalar
from .series import TruncatedSeries, series_mul

TRUNCATION_ENV = "EQUILOC_TRUNCATION"


@dataclass(frozen=True)
class LocalTerm:
    """One fixed point, already paired with a probe direction."""

    gamma: Scalar                         # u-frequency
    delta: Scalar                         # eps-frequency
    weights: tuple[tuple[int, Scalar], ...]   # (u-weight, eps-weight) pairs
    scale: Scalar = Fraction(1)           # constant numerator (orientation sign etc.)


def truncation_order(dim: int) -> int:
    """Relative eps precision: ``dim + 1`` unless overridden by the environment."""
    raw = os.environ.get(TRUNCATION_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise TruncationError(f"{TRUNCATION_ENV}={raw!r} is not an integer") from None
        if value < 0:
            raise TruncationError(f"{TRUNCATION_ENV} must be non-negative")
        return value
    return dim + 1


def _factor_series(w: int, d: Scalar, precision: int, basis) -> TruncatedSeries:
    """Series of ``1/(w u + d eps)`` with ``precision`` terms past the leading one."""
    if w != 0:
        # (1/(w u)) * sum_k (-d eps / (w u))^k
        coeffs = []
        ratio = Fraction(1, 1)
        w = Fraction(w)
        for k in range(precision + 1):
            coeffs.append(ExpSum.term(Frequency.zero(basis), LaurentPoly.monomial(ratio / w, -k - 1)))
            ratio = ratio * (-d) / w
        return TruncatedSeries.make(0, coeffs, precision, basis)
    if d == 0:
        raise BadProbe("probe direction annihilates a degenerate weight")
    if not isinstance(d, (int, Fraction)):
        raise BadProbe("symbolic probe weight")
    return TruncatedSeries.make(-1, [ExpSum.constant(1 / Fraction(d), basis)], -1 + precision, basis)


def _exp_series(delta: Scalar, precision: int, basis) -> TruncatedSeries:
    coeffs = []
    power: Scalar = Fraction(1)
    for k in range(precision + 1):
        coeffs.append(ExpSum.constant(power, basis))
        power = power * delta / (k + 1)
    return TruncatedSeries.make(0, coeffs, precision, basis)


def term_series(term: LocalTerm, precision: int, basis) -> TruncatedSeries:
    series = _exp_series(term.delta, precision, basis)
    for w, d in term.weights:
        series = series_mul(series, _factor_series(w, d, precision, basis))
    freq = Frequency.of(term.gamma, basis)
    coeffs = [c.shift_frequency(freq) * term.scale for c in series.coeffs]
    return TruncatedSeries.make(series.valuation, coeffs, series.order, basis)


def epsilon_limit(terms: Iterable[LocalTerm], basis, precision: int) -> ExpSum:
    """``eps^0`` coefficient of the summed expansions; negative powers must cancel."""
    terms = list(terms)
    poles = max((sum(1 for w, _ in t.weights if w == 0) for t in terms), default=0)
    if precision < poles:
        raise TruncationError(f"truncation order {precision} is below the pole order {poles}")
    lo = -poles
    totals = {k: ExpSum.zero(basis) for k in range(lo, 1)}
    for t in terms:
        s = term_series(t, precision, basis)
        if s.order < 0:
            raise TruncationError("expansion does not reach eps^0")
        for k in range(lo, 1):
            totals[k] = totals[k] + s.coeff(k)
    for k in range(lo, 0):
        if totals[k]:
            raise ResidueError(f"coefficient of eps^{k} does not cancel: {totals[k]}")
    return totals[0]


def regularized_sum(make_terms: Callable[[Sequence[Scalar]], list[LocalTerm]],
                    probes: Iterator[Sequence[Scalar]], basis, precision: int,
                    needs_probe: bool = True, max_attempts: int = 64) -> ExpSum:
    """Evaluate with the first valid probe, then confirm with the next one."""
    if not needs_probe:
        return epsilon_limit(make_terms(None), basis, precision)
    results = []
    used = []
    attempts = 0
    for c in probes:
        attempts += 1
        if attempts > max_attempts:
            break
        try:
            value = epsilon_limit(make_terms(c), basis, precision)
        except BadProbe:
            continue
        results.append(value)
        used.append(c)
        if len(results) == 2:
            break
    if not results:
        raise BadProbe("no valid probe direction found")
    if len(results) == 2 and results[0] != results[1]:
        shown = ", ".join("(" + ", ".join(format_scalar(x) for x in c) + ")" for c in used)
        raise ProbeDependence(f"probes {shown} give different limits")
    return results[0]


def explicit_probes(*probes: Sequence[Scalar]) -> Iterator[Sequence[Scalar]]:
    yield from probes
