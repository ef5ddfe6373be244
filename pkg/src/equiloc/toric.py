"""The class S for circle actions ``X`` on a toric manifold with moment polytope P.

With the moment map normalized by the center of mass, the vertex sum is

    S = exp(q u) u^-n  sum_j exp(-<P_j, X> u) / prod_i <rho_ji, X>,   q = <Cm(P), X>.

When some edge direction is orthogonal to ``X`` the fixed points are not
isolated and the vertex terms have zero weights; the sum is then evaluated as
the limit along ``X u + eps c`` for a generic probe ``c``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .errors import BadProbe, ConsistencyError, DegenerateWeight, DimensionMismatch, ZeroVector
from .expsum import ExpSum, Frequency, canonicalize, u_series
from .laurent import LaurentPoly
from .localization import LocalTerm, regularized_sum, truncation_order
from .polytope import DelzantPolytope, face_type
from .rational import Scalar, is_symbolic


@dataclass(frozen=True)
class FixedPointDatum:
    vertex: tuple
    weights: tuple[int, ...]
    moment_value: Scalar


@dataclass(frozen=True)
class TypeSignature:
    s: int
    profile: tuple[tuple[Frequency, int], ...]

    def degrees(self) -> list[int]:
        return [d for _, d in self.profile]


def basis_of(p: DelzantPolytope) -> tuple[str, ...]:
    return ("1",) + p.symbols


def _check_vector(p: DelzantPolytope, x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(c) for c in x)
    if len(x) != p.n:
        raise DimensionMismatch(f"vector of length {len(x)} in dimension {p.n}")
    if not any(x):
        raise ZeroVector("the generating vector is zero")
    return x


def fixed_point_data(p: DelzantPolytope, x: Sequence[int]) -> list[FixedPointDatum]:
    x = _check_vector(p, x)
    return [
        FixedPointDatum(v, tuple(int(linalg.dot(rho, x)) for rho in frame), linalg.dot(v, x))
        for v, frame in zip(p.vertices, p.frames)
    ]


def moment_shift(p: DelzantPolytope, x: Sequence[int]) -> Scalar:
    """``q = <Cm(P), X>``."""
    return linalg.dot(p.center_of_mass(), x)


def vertex_sum_type0(p: DelzantPolytope, x: Sequence[int]) -> ExpSum:
    """Unnormalized vertex sum (no ``exp(q u)``) for isolated fixed points."""
    basis = basis_of(p)
    raw = []
    for datum in fixed_point_data(p, x):
        denom = Fraction(1)
        for w in datum.weights:
            if w == 0:
                raise DegenerateWeight(f"zero weight at vertex {datum.vertex}; use s_class_general")
            denom *= w
        raw.append((Frequency.of(-datum.moment_value, basis), LaurentPoly.monomial(1 / denom, -p.n)))
    return canonicalize(raw, basis)


def s_class_type0(p: DelzantPolytope, x: Sequence[int]) -> ExpSum:
    basis = basis_of(p)
    return vertex_sum_type0(p, x).shift_frequency(Frequency.of(moment_shift(p, x), basis))


def auto_probes(n: int) -> Iterator[tuple[int, ...]]:
    """Probe directions ``(1, t, t^2, ...)`` for ``t = 1, 2, ...``."""
    for t in itertools.count(1):
        yield tuple(t**i for i in range(n))


def vertex_sum(p: DelzantPolytope, x: Sequence[int], probe="auto") -> ExpSum:
    """Unnormalized vertex sum for any ``X``, regularized when weights vanish."""
    x = _check_vector(p, x)
    basis = basis_of(p)
    data = fixed_point_data(p, x)
    degenerate = any(w == 0 for d in data for w in d.weights)

    def make_terms(c):
        terms = []
        for d, frame in zip(data, p.frames):
            if c is None:
                pairs = tuple((w, Fraction(0)) for w in d.weights)
                delta = Fraction(0)
            else:
                pairs = tuple((w, linalg.dot(rho, c)) for w, rho in zip(d.weights, frame))
                delta = -linalg.dot(d.vertex, c)
            terms.append(LocalTerm(-d.moment_value, delta, pairs))
        return terms

    if probe == "auto":
        probes = auto_probes(p.n)
    else:
        probe = tuple(int(c) for c in probe)
        if len(probe) != p.n:
            raise DimensionMismatch("probe length does not match the dimension")
        if degenerate and any(
            w == 0 and linalg.dot(rho, probe) == 0
            for d, frame in zip(data, p.frames) for w, rho in zip(d.weights, frame)
        ):
            raise BadProbe(f"probe {list(probe)} annihilates a degenerate weight")
        probes = itertools.chain([probe], auto_probes(p.n))
    return regularized_sum(make_terms, probes, basis, truncation_order(p.n), needs_probe=degenerate)


def s_class_general(p: DelzantPolytope, x: Sequence[int], probe="auto") -> ExpSum:
    basis = basis_of(p)
    return vertex_sum(p, x, probe).shift_frequency(Frequency.of(moment_shift(p, x), basis))


def s_class(p: DelzantPolytope, x: Sequence[int]) -> ExpSum:
    """S for any nonzero ``X``; Type(0) vectors skip the regularization."""
    x = _check_vector(p, x)
    if face_type(p, x) == 0:
        return s_class_type0(p, x)
    return s_class_general(p, x)


def kappa_toric(p: DelzantPolytope, x: Sequence[int]) -> tuple[Scalar, Scalar]:
    """``<Cm, X>`` and the series value ``-c1/c0`` of the unnormalized vertex sum.

    In parametric mode ``c0`` is a polynomial in the symbols, so the series
    side is confirmed through ``c1 + q c0 == 0`` and ``q`` is returned twice.
    """
    q = moment_shift(p, x)
    c0, c1 = u_series(vertex_sum(p, x), 1)
    if is_symbolic(c0) or is_symbolic(c1):
        if c1 + q * c0 != 0:
            raise ConsistencyError("series coefficients disagree with the center of mass")
        return q, q
    if c0 == 0:
        raise ConsistencyError("vanishing volume coefficient")
    return q, -c1 / c0


def series_volume(p: DelzantPolytope, x: Sequence[int]) -> Scalar:
    """``u^0`` coefficient of the unnormalized vertex sum."""
    return u_series(vertex_sum(p, x), 0)[0]


def type_signature(p: DelzantPolytope, x: Sequence[int]) -> TypeSignature:
    s_val = s_class(p, x)
    profile = tuple((f, q.degree) for f, q in s_val.items())
    s = max(d for _, d in profile) + p.n
    expected = face_type(p, x)
    if s != expected:
        raise ConsistencyError(f"series degree gives type {s}, faces give type {expected}")
    return TypeSignature(s, profile)


def vertex_pairings(p: DelzantPolytope, x: Sequence[int], centered: bool = True) -> Counter:
    """Multiset of ``<P_j, X>`` over the vertices (of the centered polytope)."""
    x = _check_vector(p, x)
    shift = moment_shift(p, x) if centered else Fraction(0)
    return Counter(linalg.dot(v, x) - shift for v in p.vertices)
