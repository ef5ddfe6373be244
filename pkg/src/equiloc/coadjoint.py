"""Circle actions on SU(n) coadjoint orbits.

An orbit is given by a weakly decreasing spectrum ``r_1 >= ... >= r_n``; runs
of equal values form blocks of sizes ``m_1, ..., m_p``.  Fixed points of the
action generated by ``X = i diag(a)`` are indexed by ordered set partitions
``(B_1, ..., B_p)`` of ``{0, ..., n-1}`` with ``|B_t| = m_t``.  At such a
point the moment value is ``sum_t rho_t sum_{l in B_t} a_l`` (``rho_t`` the
value of block ``t``) and the isotropy weights are ``a_l - a_m`` for ``l`` in
an earlier block than ``m``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .errors import ConsistencyError, DimensionMismatch, InvalidOrbit, NonRegular
from .equivalence import EQUIVALENT, INCONCLUSIVE, NOT_EQUIVALENT, Verdict
from .expsum import ExpSum, Frequency, u_series
from .localization import LocalTerm, regularized_sum, truncation_order
from .rational import Q, format_scalar


@dataclass(frozen=True)
class OrbitSpec:
    n: int
    spectrum: tuple[Fraction, ...]

    def __post_init__(self):
        spectrum = tuple(Q(r) for r in self.spectrum)
        object.__setattr__(self, "spectrum", spectrum)
        if self.n < 2:
            raise InvalidOrbit("n must be at least 2")
        if len(spectrum) != self.n:
            raise InvalidOrbit(f"spectrum has {len(spectrum)} entries, expected {self.n}")
        if any(x < y for x, y in zip(spectrum, spectrum[1:])):
            raise InvalidOrbit("spectrum must be weakly decreasing")
        if spectrum[0] == spectrum[-1]:
            raise InvalidOrbit("spectrum needs at least two distinct values")

    @cached_property
    def blocks(self) -> tuple[int, ...]:
        return tuple(len(list(g)) for _, g in itertools.groupby(self.spectrum))

    @cached_property
    def block_values(self) -> tuple[Fraction, ...]:
        return tuple(v for v, _ in itertools.groupby(self.spectrum))

    @property
    def root_count(self) -> int:
        """Number of positive roots of the orbit (its complex dimension)."""
        b = self.blocks
        return sum(b[s] * b[t] for s in range(len(b)) for t in range(s + 1, len(b)))


@dataclass(frozen=True)
class SuVector:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if sum(a) != 0:
            raise InvalidOrbit(f"vector {list(a)} is not trace-free")

    @property
    def regular(self) -> bool:
        return len(set(self.a)) == len(self.a)

    def __len__(self):
        return len(self.a)


@dataclass(frozen=True)
class CosetPoint:
    blocks: tuple[tuple[int, ...], ...]
    moment_value: Fraction
    euler_coeff: Fraction


def _as_vector(x) -> SuVector:
    return x if isinstance(x, SuVector) else SuVector(tuple(x))


def _check(spec: OrbitSpec, x: SuVector):
    if len(x) != spec.n:
        raise DimensionMismatch(f"vector of length {len(x)} for an orbit in SU({spec.n})")


def enumerate_cosets(spec: OrbitSpec) -> list[tuple[tuple[int, ...], ...]]:
    """Ordered set partitions of ``range(n)`` with the spectrum's block sizes."""
    out = []

    def rec(remaining: tuple[int, ...], sizes: tuple[int, ...], acc):
        if not sizes:
            out.append(tuple(acc))
            return
        for chosen in itertools.combinations(remaining, sizes[0]):
            rest = tuple(i for i in remaining if i not in chosen)
            rec(rest, sizes[1:], acc + [chosen])

    rec(tuple(range(spec.n)), spec.blocks, [])
    return out


def _root_pairs(coset) -> list[tuple[int, int]]:
    return [(l, m) for s, bs in enumerate(coset) for bt in coset[s + 1:] for l in bs for m in bt]


def fixed_point_weights(spec: OrbitSpec, x, coset, allow_degenerate: bool = False) -> list[int]:
    x = _as_vector(x)
    _check(spec, x)
    weights = [x.a[l] - x.a[m] for l, m in _root_pairs(coset)]
    if not allow_degenerate and 0 in weights:
        from .errors import DegenerateWeight
        raise DegenerateWeight("zero weight at a fixed point; the vector is not regular for this orbit")
    return weights


def moment_value(spec: OrbitSpec, values: Sequence, coset):
    total = Fraction(0)
    for rho, block in zip(spec.block_values, coset):
        for l in block:
            total = total + rho * values[l]
    return total


def coset_points(spec: OrbitSpec, x) -> list[CosetPoint]:
    x = _as_vector(x)
    pts = []
    for coset in enumerate_cosets(spec):
        e = Fraction(1)
        for w in fixed_point_weights(spec, x, coset, allow_degenerate=True):
            e *= w
        pts.append(CosetPoint(coset, moment_value(spec, x.a, coset), e))
    return pts


def orbit_probes(n: int) -> Iterator[tuple[Fraction, ...]]:
    """Trace-free probes with distinct entries: ``j^t - mean`` for t = 1, 2, ..."""
    for t in itertools.count(1):
        raw = [Fraction(j**t) for j in range(1, n + 1)]
        mean = sum(raw) / n
        yield tuple(v - mean for v in raw)


def orbit_sum(spec: OrbitSpec, x) -> ExpSum:
    """Unnormalized orbit sum ``sum_w exp(eta(w X) u) / (e_w u^m)``."""
    x = _as_vector(x)
    _check(spec, x)
    cosets = enumerate_cosets(spec)
    degenerate = any(x.a[l] == x.a[m] for c in cosets for l, m in _root_pairs(c))

    def make_terms(c):
        terms = []
        for coset in cosets:
            pairs = []
            for l, m in _root_pairs(coset):
                d = Fraction(0) if c is None else c[l] - c[m]
                pairs.append((x.a[l] - x.a[m], d))
            delta = Fraction(0) if c is None else moment_value(spec, c, coset)
            terms.append(LocalTerm(moment_value(spec, x.a, coset), delta, tuple(pairs)))
        return terms

    return regularized_sum(make_terms, orbit_probes(spec.n), ("1",),
                           truncation_order(spec.root_count), needs_probe=degenerate)


def kappa_orbit(spec: OrbitSpec, x) -> Fraction:
    c0, c1 = u_series(orbit_sum(spec, x), 1)
    if c0 <= 0:
        raise ConsistencyError(f"volume coefficient {format_scalar(c0)} is not positive")
    return -c1 / c0


def s_class_orbit(spec: OrbitSpec, x) -> ExpSum:
    x = _as_vector(x)
    return orbit_sum(spec, x).shift_frequency(Frequency.of(kappa_orbit(spec, x)))


# decisions

def weyl_orbit_test(x, y) -> Verdict:
    x, y = _as_vector(x), _as_vector(y)
    if sorted(x.a) == sorted(y.a):
        perm = _matching_permutation(x.a, y.a)
        return Verdict(EQUIVALENT, {"permutation": perm}, ["weyl_orbit"])
    return Verdict(INCONCLUSIVE, None, ["weyl_orbit"])


def _matching_permutation(a, b) -> list[int]:
    """``p`` with ``b[j] == a[p[j]]``."""
    used = set()
    perm = []
    for v in b:
        j = next(i for i, w in enumerate(a) if w == v and i not in used)
        used.add(j)
        perm.append(j)
    return perm


def _is_projective(spec: OrbitSpec) -> bool:
    return spec.blocks in ((1, spec.n - 1), (spec.n - 1, 1))


def cpn_decide(spec: OrbitSpec, x, y) -> Verdict:
    """Complete decision on projective space: equivalent iff same entries."""
    if not _is_projective(spec):
        raise InvalidOrbit(f"blocks {spec.blocks} do not describe a projective space")
    x, y = _as_vector(x), _as_vector(y)
    _check(spec, x)
    _check(spec, y)
    same = sorted(x.a) == sorted(y.a)
    s_equal = s_class_orbit(spec, x) == s_class_orbit(spec, y)
    if same != s_equal:
        raise ConsistencyError(f"permutation test says {same} but S comparison says {s_equal}")
    tests = ["weyl_orbit", "s_class_orbit"]
    if same:
        return Verdict(EQUIVALENT, {"permutation": _matching_permutation(x.a, y.a)}, tests)
    return Verdict(NOT_EQUIVALENT, "S-inequality", tests)


def _require_regular(*vectors: SuVector):
    for v in vectors:
        if not v.regular:
            raise NonRegular(f"vector {list(v.a)} has repeated entries")


def _translation(m1: Counter, m2: Counter):
    """The shift ``beta`` with ``m1 + beta == m2``, or None."""
    n1 = sum(m1.values())
    if n1 != sum(m2.values()):
        return None
    beta = (sum(m2.elements()) - sum(m1.elements())) / n1
    if Counter(v + beta for v in m1.elements()) == m2:
        return beta
    return None


def _shift_verdict(m1: Counter, m2: Counter, test: str) -> Verdict:
    beta = _translation(m1, m2)
    details = {"multiset_x": sorted(m1.elements()), "multiset_y": sorted(m2.elements())}
    if beta is None:
        return Verdict(NOT_EQUIVALENT, "no-translation", [test], details)
    details["beta"] = beta
    return Verdict(INCONCLUSIVE, {"beta": beta}, [test], details)


def grassmann_multiset(x: SuVector, k: int) -> Counter:
    return Counter(sum((x.a[l] for l in d), 0) for d in itertools.combinations(range(len(x)), k))


def grassmann_necessary(spec: OrbitSpec, x, y) -> Verdict:
    if len(spec.blocks) != 2 or not 1 < spec.blocks[0] < spec.n:
        raise InvalidOrbit(f"blocks {spec.blocks} do not describe a Grassmannian with 1 < k < n")
    x, y = _as_vector(x), _as_vector(y)
    _check(spec, x)
    _check(spec, y)
    _require_regular(x, y)
    k = spec.blocks[0]
    return _shift_verdict(grassmann_multiset(x, k), grassmann_multiset(y, k), "grassmann_subset_sums")


def flag_multiset(spec: OrbitSpec, x: SuVector) -> Counter:
    r = spec.spectrum
    return Counter(sum((rj * x.a[p] for rj, p in zip(r, perm)), Fraction(0))
                   for perm in itertools.permutations(range(spec.n)))


def flag_necessary(spec: OrbitSpec, x, y) -> Verdict:
    if any(b != 1 for b in spec.blocks):
        raise InvalidOrbit("flag test needs a strictly decreasing spectrum")
    x, y = _as_vector(x), _as_vector(y)
    _check(spec, x)
    _check(spec, y)
    _require_regular(x, y)
    return _shift_verdict(flag_multiset(spec, x), flag_multiset(spec, y), "flag_weighted_sums")


def orbit_value_multiset(spec: OrbitSpec, x: SuVector) -> Counter:
    return Counter(moment_value(spec, x.a, c) for c in enumerate_cosets(spec))


def _affine_match(m1: Counter, m2: Counter):
    """Nonzero integer ``lam`` and shift ``a`` with ``lam * m1 + a == m2``."""
    e1, e2 = sorted(m1.elements()), sorted(m2.elements())
    if len(e1) != len(e2):
        return None
    spread1, spread2 = e1[-1] - e1[0], e2[-1] - e2[0]
    if spread1 == 0:
        candidates = [1, -1] if spread2 == 0 else []
    else:
        ratio = spread2 / spread1
        candidates = [] if ratio.denominator != 1 or ratio == 0 else [int(ratio), -int(ratio)]
    for lam in candidates:
        shift = (sum(e2) - lam * sum(e1)) / len(e1)
        if Counter(lam * v + shift for v in e1) == m2:
            return lam, shift
    return None


def orbit_value_tests(spec: OrbitSpec, x, y) -> Verdict:
    x, y = _as_vector(x), _as_vector(y)
    _check(spec, x)
    _check(spec, y)
    _require_regular(x, y)
    m1, m2 = orbit_value_multiset(spec, x), orbit_value_multiset(spec, y)
    verdict = _shift_verdict(m1, m2, "moment_value_translation")
    match = _affine_match(m1, m2)
    if match is None:
        reparam = Verdict(NOT_EQUIVALENT, "no-integer-affine-map", ["moment_value_affine"],
                          relation="~rp")
    else:
        lam, shift = match
        reparam = Verdict(INCONCLUSIVE, {"lambda": lam, "shift": shift}, ["moment_value_affine"],
                          relation="~rp")
    verdict.tests_run.append("moment_value_affine")
    verdict.details["reparam"] = reparam.to_json()
    return verdict
