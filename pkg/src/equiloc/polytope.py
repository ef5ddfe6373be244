"""Delzant polytopes: construction, vertices, edge frames, faces, volume, centroid.

A polytope is given by half-spaces ``<x, v_i> <= k_i`` with primitive integer
normals.  Offsets are exact rationals, or affine symbols (``sigma``, ``tau``)
in parametric mode; parametric mode is limited to products of simplices,
where the combinatorics does not depend on the parameters and the centroid
is the vertex average, hence linear in the symbols.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    Degenerate,
    DimensionMismatch,
    EmptyPolytope,
    InfeasibleParameters,
    NonPrimitiveNormal,
    NotDelzant,
    ParametricUnsupported,
    Unbounded,
    ZeroNormal,
    ZeroVector,
)
from .rational import Q, Scalar, SymPoly, evaluate_scalar, format_scalar, is_symbolic

Vector = tuple  # of Scalars


@dataclass(frozen=True)
class HalfSpace:
    """The constraint ``<x, normal> <= offset``."""

    normal: tuple[int, ...]
    offset: Scalar

    def __post_init__(self):
        normal = tuple(int(x) for x in self.normal)
        object.__setattr__(self, "normal", normal)
        if not is_symbolic(self.offset):
            object.__setattr__(self, "offset", Q(self.offset))
        g = 0
        for x in normal:
            g = math.gcd(g, x)
        if g == 0:
            raise ZeroNormal(f"normal {list(normal)} is zero")
        if g != 1:
            raise NonPrimitiveNormal(f"non-primitive normal {list(normal)}")

    def slack(self, x: Sequence) -> Scalar:
        return self.offset - linalg.dot(self.normal, x)


@dataclass
class DelzantReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


def _witness_value(x: Scalar, witness: Mapping | None) -> Fraction:
    if is_symbolic(x):
        if witness is None:
            raise ParametricUnsupported("symbolic value without parameter witness")
        return evaluate_scalar(x, witness)
    return x


def _raw_vertices(n: int, halfspaces: Sequence[HalfSpace], witness=None):
    """Vertex candidates with their tight constraint sets.

    Returns a list of (vertex, frozenset of tight indices).  Feasibility is
    decided at the witness point; tightness is decided exactly.
    """
    found: dict = {}
    for subset in itertools.combinations(range(len(halfspaces)), n):
        a = [halfspaces[i].normal for i in subset]
        if linalg.det(a) == 0:
            continue
        inv = linalg.inverse(a)
        x = linalg.mat_vec(inv, [halfspaces[i].offset for i in subset])
        feasible = True
        tight = set()
        for j, h in enumerate(halfspaces):
            s = h.slack(x)
            sv = _witness_value(s, witness)
            if sv < 0:
                feasible = False
                break
            if s == 0:
                tight.add(j)
        if feasible:
            found[x] = frozenset(tight)
    return list(found.items())


def _sort_key(witness):
    def key(v):
        return (tuple(_witness_value(c, witness) for c in v), tuple(format_scalar(c) for c in v))
    return key


def enumerate_vertices(halfspaces: Sequence[HalfSpace], n: int | None = None, witness=None) -> list[Vector]:
    """Vertices of a bounded simple polytope, sorted lexicographically."""
    halfspaces = list(halfspaces)
    if n is None:
        n = len(halfspaces[0].normal)
    raw = _raw_vertices(n, halfspaces, witness)
    _check_bounded(n, halfspaces, raw)
    for x, tight in raw:
        if len(tight) != n:
            raise Degenerate(f"{len(tight)} facets meet at vertex {_fmt_vec(x)}")
    return sorted((x for x, _ in raw), key=_sort_key(witness))


def _check_bounded(n, halfspaces, raw):
    if not raw:
        if linalg.rank([h.normal for h in halfspaces]) < n:
            raise Unbounded("normals do not span the ambient space")
        raise EmptyPolytope("no feasible vertex")
    if linalg.rank([h.normal for h in halfspaces]) < n:
        raise Unbounded("normals do not span the ambient space")
    # a pointed unbounded polyhedron has an unbounded edge at some vertex
    for x, tight in raw:
        if len(tight) != n:
            continue
        idx = sorted(tight)
        inv = linalg.inverse([halfspaces[i].normal for i in idx])
        for col in range(n):
            rho = [-inv[r][col] for r in range(n)]
            if not any(linalg.dot(h.normal, rho) > 0 for h in halfspaces):
                raise Unbounded(f"unbounded edge at vertex {_fmt_vec(x)}")


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_scalar(c) for c in v) + ")"


class DelzantPolytope:
    """Immutable polytope with eagerly derived vertices, frames and faces.

    ``frames[j][i]`` is the primitive direction of the edge leaving vertex
    ``j`` along which the ``i``-th tight facet is released; the edges point
    into the polytope.
    """

    def __init__(self, n: int, halfspaces: Iterable[HalfSpace], *, validate: bool = True,
                 witness: Mapping[str, Fraction] | None = None, simplex_product: bool = False,
                 label: str | None = None):
        halfspaces = list(halfspaces)
        for h in halfspaces:
            if len(h.normal) != n:
                raise DimensionMismatch(f"normal {list(h.normal)} is not in dimension {n}")
        if any(is_symbolic(h.offset) for h in halfspaces):
            if witness is None:
                raise ParametricUnsupported("symbolic offsets need a parametric model builder")
            if not simplex_product:
                raise ParametricUnsupported("parametric mode is limited to products of simplices")
        self.n = n
        self.halfspaces = tuple(halfspaces)
        self.witness = dict(witness) if witness else None
        self.simplex_product = simplex_product
        self.label = label
        raw = _raw_vertices(n, self.halfspaces, self.witness)
        _check_bounded(n, self.halfspaces, raw)
        vkey = _sort_key(self.witness)
        raw.sort(key=lambda item: vkey(item[0]))
        self.vertices: tuple[Vector, ...] = tuple(x for x, _ in raw)
        self.tight: tuple[frozenset, ...] = tuple(t for _, t in raw)
        self.simple = all(len(t) == n for t in self.tight)
        if validate and not self.simple:
            bad = next(x for x, t in raw if len(t) != n)
            raise Degenerate(f"more than {n} facets meet at vertex {_fmt_vec(bad)}")
        self.facet_order: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(t)) for t in self.tight)
        self.frames: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
            self._frame(idx) for idx in self.facet_order
        ) if self.simple else ()
        if validate:
            report = check_delzant(self)
            if not report.ok:
                raise NotDelzant(report)

    def _frame(self, idx):
        a = [self.halfspaces[i].normal for i in idx]
        inv = linalg.inverse(a)
        return tuple(linalg.primitive([-inv[r][c] for r in range(self.n)]) for c in range(self.n))

    @property
    def is_symbolic(self) -> bool:
        return self.witness is not None

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(sorted(self.witness)) if self.witness else ()

    def at_witness(self, x: Scalar) -> Fraction:
        return _witness_value(x, self.witness)

    def vertex_index(self, v: Sequence) -> int:
        return self.vertices.index(tuple(v))

    # faces

    def face_vertices(self, facets: frozenset) -> tuple[int, ...]:
        return tuple(j for j, t in enumerate(self.tight) if facets <= t)

    def edges(self) -> list[tuple[int, int]]:
        """Vertex index pairs joined by an edge."""
        out = set()
        for j, t in enumerate(self.tight):
            for i in t:
                verts = self.face_vertices(t - {i})
                for other in verts:
                    if other != j:
                        out.add((min(j, other), max(j, other)))
        return sorted(out)

    def _subfaces(self, facets: frozenset) -> list[frozenset]:
        verts = self.face_vertices(facets)
        candidates = set()
        for j in verts:
            for i in self.tight[j] - facets:
                candidates.add(facets | {i})
        return sorted(candidates, key=sorted)

    @cached_property
    def triangulation(self) -> tuple[tuple[int, ...], ...]:
        """Full-dimensional simplices (vertex indices) of a pulling triangulation."""
        memo: dict = {}

        def tri(facets: frozenset, dim: int):
            if facets in memo:
                return memo[facets]
            verts = self.face_vertices(facets)
            if dim == 0:
                result = [(verts[0],)]
            else:
                apex = verts[0]
                result = []
                for sub in self._subfaces(facets):
                    if apex in self.face_vertices(sub):
                        continue
                    for s in tri(sub, dim - 1):
                        result.append((apex,) + s)
            memo[facets] = result
            return result

        return tuple(tri(frozenset(), self.n))

    def _simplex_volume(self, simplex) -> Scalar:
        p0 = self.vertices[simplex[0]]
        rows = [[c - c0 for c, c0 in zip(self.vertices[j], p0)] for j in simplex[1:]]
        d = _det_scalar(rows)
        if self.at_witness(d) < 0:
            d = -d
        return d / math.factorial(self.n)

    def volume(self) -> Scalar:
        total = Fraction(0)
        for s in self.triangulation:
            total = total + self._simplex_volume(s)
        return total

    def center_of_mass(self) -> Vector:
        if self.is_symbolic:
            # products of simplices: the centroid is the vertex average
            m = len(self.vertices)
            return tuple(sum((v[i] for v in self.vertices), Fraction(0)) / m for i in range(self.n))
        weighted = [Fraction(0)] * self.n
        total = Fraction(0)
        for s in self.triangulation:
            vol = self._simplex_volume(s)
            total += vol
            for i in range(self.n):
                weighted[i] += vol * sum(self.vertices[j][i] for j in s) / (self.n + 1)
        return tuple(w / total for w in weighted)

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        for h in self.halfspaces:
            s = self.at_witness(h.slack(x))
            if s < 0 or (strict and s == 0):
                return False
        return True

    # transformations

    def translate(self, t: Sequence) -> DelzantPolytope:
        hs = [HalfSpace(h.normal, h.offset + linalg.dot(h.normal, t)) for h in self.halfspaces]
        return self._rebuild(hs)

    def recentered(self) -> DelzantPolytope:
        return self.translate(tuple(-c for c in self.center_of_mass()))

    def transform(self, v: Sequence[Sequence[int]]) -> DelzantPolytope:
        """Image under ``x -> V x`` for V in GL(n, Z)."""
        if not linalg.is_unimodular(v):
            raise ValueError("transformation is not in GL(n, Z)")
        inv_t = linalg.transpose(linalg.inverse(v))
        hs = [HalfSpace(tuple(int(c) for c in linalg.mat_vec(inv_t, h.normal)), h.offset)
              for h in self.halfspaces]
        return self._rebuild(hs)

    def _rebuild(self, hs):
        return DelzantPolytope(self.n, hs, witness=self.witness,
                               simplex_product=self.simplex_product, label=self.label)

    def __repr__(self):
        verts = ", ".join(_fmt_vec(v) for v in self.vertices)
        return f"DelzantPolytope(n={self.n}, vertices=[{verts}])"


def _det_scalar(rows) -> Scalar:
    """Determinant by cofactor expansion (entries may be symbolic)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if all(not is_symbolic(x) for row in rows for x in row):
        return linalg.det(rows)
    total = Fraction(0)
    for c in range(n):
        if rows[0][c] == 0:
            continue
        minor = [row[:c] + row[c + 1:] for row in rows[1:]]
        term = rows[0][c] * _det_scalar(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


def check_delzant(p: DelzantPolytope) -> DelzantReport:
    """Simplicity and unimodularity of every vertex frame."""
    violations = []
    for x, t in zip(p.vertices, p.tight):
        if len(t) != p.n:
            violations.append(f"{len(t)} facets meet at vertex {_fmt_vec(x)}, expected {p.n}")
            continue
        a = [p.halfspaces[i].normal for i in sorted(t)]
        d = linalg.det(a)
        if abs(d) != 1:
            violations.append(f"frame determinant {format_scalar(abs(d))} at vertex {_fmt_vec(x)}")
    return DelzantReport(not violations, violations)


def face_type(p: DelzantPolytope, x: Sequence[int]) -> int:
    """Largest dimension of a face on which ``<., X>`` is constant."""
    if len(x) != p.n:
        raise DimensionMismatch(f"vector of length {len(x)} in dimension {p.n}")
    if not any(x):
        raise ZeroVector("the generating vector is zero")
    return max(sum(1 for rho in frame if linalg.dot(rho, x) == 0) for frame in p.frames)


def volume(p: DelzantPolytope) -> Scalar:
    return p.volume()


def center_of_mass(p: DelzantPolytope) -> Vector:
    return p.center_of_mass()


# model builders

PARAMETRIC_SYMBOLS = ("sigma", "tau")


def _param(value, name: str) -> Scalar:
    if isinstance(value, SymPoly):
        terms = value.terms
        if len(terms) != 1 or list(terms.values())[0] <= 0 or len(list(terms)[0]) != 1 or list(terms)[0][0][1] != 1:
            raise ParametricUnsupported(f"{name} must be a positive multiple of one symbol")
        return value
    v = Q(value)
    if v <= 0:
        raise InfeasibleParameters(f"{name} = {format_scalar(v)} must be positive")
    return v


def _witness_for(*values) -> dict | None:
    syms = sorted({s for v in values if is_symbolic(v) for s in v.symbols()})
    if not syms:
        return None
    return {s: Fraction(i + 2) for i, s in enumerate(syms)}


def simplex(n: int, sigma=1) -> DelzantPolytope:
    if n < 1:
        raise DimensionMismatch("simplex dimension must be at least 1")
    sigma = _param(sigma, "sigma")
    hs = [HalfSpace(tuple(-int(i == j) for i in range(n)), 0) for j in range(n)]
    hs.append(HalfSpace((1,) * n, sigma))
    return DelzantPolytope(n, hs, witness=_witness_for(sigma), simplex_product=True,
                           label=f"simplex({n}, {format_scalar(sigma)})")


def pl_bundle(a: Sequence[int], sigma, tau) -> DelzantPolytope:
    """Moment polytope of P(L_1 + ... + L_{n-1} + C) with twists ``a``."""
    a = [int(x) for x in a]
    n = len(a) + 1
    sigma = _param(sigma, "sigma")
    tau = _param(tau, "tau")
    symbolic = is_symbolic(sigma) or is_symbolic(tau)
    if symbolic and any(a):
        raise ParametricUnsupported("parametric mode needs a product of simplices (all twists zero)")
    for ai in a:
        if not symbolic and tau + ai * sigma <= 0:
            raise InfeasibleParameters(
                f"tau + a_i*sigma = {format_scalar(tau + ai * sigma)} must be positive")
    hs = [HalfSpace(tuple(-int(i == j) for i in range(n)), 0) for j in range(n)]
    hs.append(HalfSpace(tuple(1 if i < n - 1 else 0 for i in range(n)), sigma))
    hs.append(HalfSpace(tuple(-a[i] if i < n - 1 else 1 for i in range(n)), tau))
    return DelzantPolytope(n, hs, witness=_witness_for(sigma, tau), simplex_product=not any(a),
                           label=f"pl_bundle({a}, {format_scalar(sigma)}, {format_scalar(tau)})")


def hirzebruch(k: int, sigma, tau) -> DelzantPolytope:
    """Trapezoid with vertices (0,0), (0,tau), (sigma,0), (sigma, tau - k*sigma)."""
    p = pl_bundle([-int(k)], sigma, tau)
    p.label = f"hirzebruch({k}, {format_scalar(p.halfspaces[2].offset)}, {format_scalar(p.halfspaces[3].offset)})"
    return p


def product_of_segments(sigma, tau) -> DelzantPolytope:
    """The rectangle [0, sigma] x [0, tau] (moment polytope of S^2 x S^2)."""
    p = pl_bundle([0], sigma, tau)
    p.label = f"product_of_segments({format_scalar(p.halfspaces[2].offset)}, {format_scalar(p.halfspaces[3].offset)})"
    return p


MODEL_KINDS = ("simplex", "hirzebruch", "pl_bundle", "product_of_segments", "s2xs2")


def build_model(kind: str, **params) -> DelzantPolytope:
    if kind == "simplex":
        return simplex(int(params["n"]), params.get("sigma", 1))
    if kind == "hirzebruch":
        return hirzebruch(int(params["k"]), params["sigma"], params["tau"])
    if kind == "pl_bundle":
        return pl_bundle(params["a"], params["sigma"], params["tau"])
    if kind in ("product_of_segments", "s2xs2"):
        return product_of_segments(params["sigma"], params["tau"])
    raise ValueError(f"unknown model kind {kind!r}")


def from_halfspaces(n: int, rows: Iterable[tuple[Sequence[int], Scalar]], validate: bool = True) -> DelzantPolytope:
    return DelzantPolytope(n, [HalfSpace(tuple(v), k) for v, k in rows], validate=validate)
