"""Decision procedures for circle actions on toric manifolds.

Most tests are one-directional: a difference in S (or in anything S
determines) shows two actions are not homotopic through circle actions, while
agreement proves nothing.  ``Equivalent`` is only returned where an explicit
homotopy is known to exist (the involution on projectivized bundles, sign
flips on S^2 x S^2 with incommensurable areas, identical vectors).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import linalg
from .errors import ConsistencyError, DimensionMismatch, TypeNotZero, ZeroComponent, ZeroVector
from .polytope import DelzantPolytope, face_type, hirzebruch, product_of_segments
from .rational import Q, format_scalar, symbol
from .toric import s_class, vertex_pairings

EQUIVALENT = "Equivalent"
NOT_EQUIVALENT = "NotEquivalent"
INCONCLUSIVE = "InconclusiveNecessaryPassed"


@dataclass
class Verdict:
    status: str
    witness: object = None
    tests_run: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    # "~" is homotopy through circle actions, "~rp" the same up to reparametrization
    relation: str = "~"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": _jsonable(self.witness),
            "tests_run": list(self.tests_run),
            "relation": self.relation,
            "details": _jsonable(self.details),
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Counter):
        return _jsonable(sorted(x.elements()))
    if x is None or isinstance(x, (bool, int, str, float)):
        return x
    return str(x)


def _nonzero(x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(int(c) for c in x)
    if not any(x):
        raise ZeroVector("the generating vector is zero")
    return x


# necessary conditions

def compare_s(p: DelzantPolytope, x: Sequence[int], y: Sequence[int]) -> Verdict:
    x, y = _nonzero(x), _nonzero(y)
    sx, sy = s_class(p, x), s_class(p, y)
    if sx != sy:
        return Verdict(NOT_EQUIVALENT, "S-inequality", ["s_class"])
    return Verdict(INCONCLUSIVE, None, ["s_class"])


def _require_type0(p, *vectors):
    for v in vectors:
        if face_type(p, v) != 0:
            raise TypeNotZero(f"vector {list(v)} has an edge direction orthogonal to it")


def _sorted_multiset(c: Counter) -> list:
    return sorted(c.elements())


def vertex_multiset_test(p: DelzantPolytope, x: Sequence[int], y: Sequence[int]) -> Verdict:
    x, y = _nonzero(x), _nonzero(y)
    _require_type0(p, x, y)
    mx, my = vertex_pairings(p, x), vertex_pairings(p, y)
    details = {"pairings_x": _sorted_multiset(mx), "pairings_y": _sorted_multiset(my)}
    if mx != my:
        return Verdict(NOT_EQUIVALENT, "vertex-pairing-multiset", ["vertex_multiset"], details)
    return Verdict(INCONCLUSIVE, None, ["vertex_multiset"], details)


def _reparam_scan(mx: Counter, my: Counter) -> tuple[list[int], int]:
    """Nonzero integers ``lam`` with ``lam * mx == my``, and the scan bound."""
    xs = [abs(v) for v in mx.elements() if v != 0]
    ys = [abs(v) for v in my.elements()]
    if not xs:
        return ([1, -1] if mx == my else []), 1
    bound = math.floor(max(ys, default=0) / min(xs))
    found = []
    for lam in range(1, bound + 1):
        for signed in (lam, -lam):
            if Counter(signed * v for v in mx.elements()) == my:
                found.append(signed)
    return found, bound


def reparam_test(p: DelzantPolytope, x: Sequence[int], y: Sequence[int]) -> Verdict:
    x, y = _nonzero(x), _nonzero(y)
    _require_type0(p, x, y)
    mx, my = vertex_pairings(p, x), vertex_pairings(p, y)
    found, bound = _reparam_scan(mx, my)
    details = {"lambda_bound": bound, "lambdas": found}
    if bound < 1:
        details["note"] = "scan is vacuous: no nonzero integer lambda fits the pairing ranges"
    if found:
        return Verdict(INCONCLUSIVE, {"lambda": found[0]}, ["reparam"], details, relation="~rp")
    return Verdict(NOT_EQUIVALENT, "no-integer-reparametrization", ["reparam"], details, relation="~rp")


def type_test(p: DelzantPolytope, x: Sequence[int], y: Sequence[int]) -> Verdict:
    tx, ty = face_type(p, x), face_type(p, y)
    details = {"type_x": tx, "type_y": ty}
    if tx != ty:
        return Verdict(NOT_EQUIVALENT, "different-type", ["type"], details)
    return Verdict(INCONCLUSIVE, None, ["type"], details)


def necessary_tests(p: DelzantPolytope, x: Sequence[int], y: Sequence[int]) -> Verdict:
    """Run every applicable necessary condition; stop at the first failure."""
    run = []
    details: dict = {}
    for test in (type_test, compare_s):
        v = test(p, x, y)
        run += v.tests_run
        details.update(v.details)
        if v.status == NOT_EQUIVALENT:
            return Verdict(NOT_EQUIVALENT, v.witness, run, details)
    if face_type(p, x) == 0:
        v = vertex_multiset_test(p, x, y)
        run += v.tests_run
        details.update(v.details)
        if v.status == NOT_EQUIVALENT:
            return Verdict(NOT_EQUIVALENT, v.witness, run, details)
        r = reparam_test(p, x, y)
        run += r.tests_run
        details["reparam"] = r.to_json()
    if tuple(x) == tuple(y):
        return Verdict(EQUIVALENT, "identical-vectors", run, details)
    return Verdict(INCONCLUSIVE, None, run, details)


# polytope equivalence

def _centered_vertex_set(p: DelzantPolytope) -> frozenset:
    cm = p.center_of_mass()
    return frozenset(tuple(c - m for c, m in zip(v, cm)) for v in p.vertices)


def gl_witnesses(p: DelzantPolytope, q: DelzantPolytope) -> Iterator[list[list[int]]]:
    """Every V in GL(n, Z) with V(P - Cm(P)) = Q - Cm(Q)."""
    if p.n != q.n:
        raise DimensionMismatch("polytopes of different dimension")
    if len(p.vertices) != len(q.vertices):
        return
    target = _centered_vertex_set(q)
    source = _centered_vertex_set(p)
    f_inv = linalg.inverse(linalg.transpose(p.frames[0]))
    seen = set()
    for frame in q.frames:
        for perm in itertools.permutations(frame):
            g = linalg.transpose(perm)
            v = linalg.mat_mul(g, f_inv)
            if not linalg.is_unimodular(v):
                continue
            key = tuple(tuple(r) for r in v)
            if key in seen:
                continue
            seen.add(key)
            image = frozenset(linalg.mat_vec(v, x) for x in source)
            if image == target:
                yield [[int(c) for c in row] for row in v]


def polytope_tests(p: DelzantPolytope, q: DelzantPolytope) -> dict:
    if p.n != q.n:
        raise DimensionMismatch("polytopes of different dimension")
    equal_centered = _centered_vertex_set(p) == _centered_vertex_set(q)
    witness = next(gl_witnesses(p, q), None)
    return {"equal_centered": equal_centered, "gl_witness": witness}


# projectivized bundles and Hirzebruch surfaces

def pl_involution(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``(b_j + a_j b_n, ..., -b_n)``."""
    a, b = list(a), list(b)
    return tuple(b[j] + a[j] * b[-1] for j in range(len(a))) + (-b[-1],)


def pl_equiv(a: Sequence[int], b: Sequence[int], b2: Sequence[int]) -> bool:
    if not (len(b) == len(b2) == len(a) + 1):
        raise DimensionMismatch("vectors must have length len(a) + 1")
    b, b2 = tuple(b), tuple(b2)
    return b2 == b or b2 == pl_involution(a, b)


def hirzebruch_decide(k: int, sigma, tau, b: Sequence[int], b2: Sequence[int],
                      polytope: DelzantPolytope | None = None) -> Verdict:
    """Complete decision for k != 0: equivalent exactly when related by the involution."""
    if k == 0:
        raise ValueError("use s2xs2_decide for k = 0")
    b, b2 = _nonzero(b), _nonzero(b2)
    p = polytope or hirzebruch(k, sigma, tau)
    related = pl_equiv([-k], b, b2)
    s_equal = s_class(p, b) == s_class(p, b2)
    if related != s_equal:
        raise ConsistencyError(
            f"involution test says {related} but S comparison says {s_equal} for {list(b)}, {list(b2)}")
    details = {"involution_image": list(pl_involution([-k], b)), "s_equal": s_equal}
    tests = ["pl_equiv", "s_class"]
    if related:
        witness = "identical-vectors" if b == b2 else "pl-involution"
        return Verdict(EQUIVALENT, witness, tests, details)
    return Verdict(NOT_EQUIVALENT, "S-inequality", tests, details)


def hirzebruch_subtype(k: int, sigma, tau, b: Sequence[int]) -> str:
    """Subtype of ``b`` from the coincidences among the four vertex frequencies."""
    b1, b2 = (int(c) for c in b)
    if b1 == 0 and b2 == 0:
        raise ZeroVector("the generating vector is zero")
    sigma, tau = Q(sigma), Q(tau)
    b0 = b1 - k * b2
    if b2 == 0:
        return "Type1_α"
    if b1 == 0 or b0 == 0:
        return "Type1_β"
    # alpha_2 - alpha_3 and alpha_1 - alpha_4 do not involve the center of mass
    d23 = sigma * b1 - tau * b2
    d14 = tau * b2 + sigma * b0
    if d23 != 0 and d14 != 0:
        return "Type0_α"
    if d23 == 0 and d14 == 0:
        return "Type0_γ"
    return "Type0_β"


SUBTYPES = ("Type0_α", "Type0_β", "Type0_γ", "Type1_α", "Type1_β")


# S^2 x S^2

def _sphere_conditions(sigma, tau, b, b2) -> dict:
    (x1, x2), (y1, y2) = b, b2
    same_abs = abs(x1) == abs(y1) and abs(x2) == abs(y2)
    # (ii) sigma b1 = +-tau b2' and tau b2 = +-sigma b1' with matching signs,
    # (iii) the same with opposite signs; together: equal absolute values
    ii = iii = False
    for s1 in (1, -1):
        for s2 in (1, -1):
            if sigma * x1 == s1 * tau * y2 and tau * x2 == s2 * sigma * y1:
                if s1 == s2:
                    ii = True
                else:
                    iii = True
    return {"i": same_abs, "ii": ii, "iii": iii}


def s2xs2_decide(sigma, tau, b: Sequence[int], b2: Sequence[int], mode: str = "concrete") -> Verdict:
    b, b2 = tuple(int(c) for c in b), tuple(int(c) for c in b2)
    if 0 in b or 0 in b2:
        raise ZeroComponent("both components of each vector must be nonzero")
    tests = ["component_abs", "swap_conditions", "s_class"]
    if mode == "incommensurable":
        p = product_of_segments(symbol("sigma"), symbol("tau"))
        conds = {"i": abs(b[0]) == abs(b2[0]) and abs(b[1]) == abs(b2[1]), "ii": False, "iii": False}
    elif mode == "concrete":
        sigma, tau = Q(sigma), Q(tau)
        p = product_of_segments(sigma, tau)
        conds = _sphere_conditions(sigma, tau, b, b2)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    s_equal = s_class(p, b) == s_class(p, b2)
    if s_equal != any(conds.values()):
        raise ConsistencyError(f"S comparison ({s_equal}) disagrees with conditions {conds}")
    details = {"conditions": conds, "s_equal": s_equal, "mode": mode}
    if conds["i"]:
        witness = "identical-vectors" if b == b2 else "component-sign-flips"
        return Verdict(EQUIVALENT, witness, tests, details)
    if s_equal:
        return Verdict(INCONCLUSIVE, "area-swap-coincidence", tests, details)
    return Verdict(NOT_EQUIVALENT, "S-inequality", tests, details)
