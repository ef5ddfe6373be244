import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equiloc.errors import MixedBasis, NegativePowerResidue
from equiloc.expsum import (
    ExpSum,
    Frequency,
    canonicalize,
    eval_numeric,
    exp_sum_equal,
    from_json,
    sinh_sum,
    to_json,
    to_latex,
    to_text,
    u_series,
)
from equiloc.laurent import LaurentPoly
from equiloc.polytope import product_of_segments, simplex
from equiloc.rational import symbol
from equiloc.toric import s_class
from oracles import raw_vertex_sum_float
from strategies import SAMPLE_POINTS, exp_sums, raw_terms

SYM = ("1", "sigma")


def mono(c, d=0):
    return LaurentPoly.monomial(Fraction(c), d)


def f(x, basis=("1",)):
    return Frequency.of(x, basis)


def test_canonicalize_cancellation():
    assert not canonicalize([(f(1), mono(1, 1)), (f(1), mono(-1, 1))])


def test_canonicalize_keeps_distinct_frequencies():
    e = canonicalize([(f(0), mono(1, -1)), (f(1), mono(1, -1))])
    assert len(e.terms) == 2


def test_canonicalize_symbolic_sinh():
    s = symbol("sigma")
    e = canonicalize([(f(s / 2, SYM), mono(1, -1)), (f(-s / 2, SYM), mono(-1, -1))])
    assert e == sinh_sum(s / 2, SYM) * mono(2, -1)


def test_canonicalize_mixed_basis():
    with pytest.raises(MixedBasis):
        canonicalize([(f(1), mono(1)), (f(1, SYM), mono(1))])


def test_equal_independent_of_build_order():
    a = ExpSum.term(f(1), mono(1, -1)) - ExpSum.term(f(-1), mono(1, -1))
    b = ExpSum.term(f(-1), mono(-1, -1)) + ExpSum.term(f(1), mono(1, -1))
    assert exp_sum_equal(a, b)


def test_cp1_different_generators_differ():
    p = simplex(1)
    assert not exp_sum_equal(s_class(p, [1]), s_class(p, [2]))


def test_sphere_remark_case_equal():
    p = product_of_segments(1, 1)
    assert exp_sum_equal(s_class(p, [1, 0]), s_class(p, [0, 1]))


def test_equal_mixed_basis():
    with pytest.raises(MixedBasis):
        exp_sum_equal(ExpSum.one(), ExpSum.one(SYM))


def test_u_series_exp_minus_one():
    a = Fraction(3, 2)
    e = ExpSum.term(f(a), mono(1, -1)) - ExpSum.term(f(0), mono(1, -1))
    assert u_series(e, 3) == [a, a**2 / 2, a**3 / 6, a**4 / 24]


def test_u_series_sinh():
    e = sinh_sum(1) * mono(1, -1)
    coeffs = u_series(e, 5)
    assert coeffs[0] == 1 and coeffs[2] == Fraction(1, 6) and coeffs[4] == Fraction(1, 120)
    assert coeffs[1] == coeffs[3] == coeffs[5] == 0


def test_u_series_residue():
    with pytest.raises(NegativePowerResidue) as info:
        u_series(ExpSum.term(f(0), mono(1, -1)), 2)
    assert (info.value.k, info.value.value) == (1, 1)


def test_eval_numeric():
    e = sinh_sum(1) * mono(2, -1)
    assert eval_numeric(e, 1.0) == pytest.approx(2 * math.sinh(1), abs=1e-12)
    assert eval_numeric(ExpSum.zero(), 0.7) == 0.0


def test_eval_numeric_matches_raw_unit_square():
    p = product_of_segments(1, 1)
    x = [1, 1]
    raw = raw_vertex_sum_float(p.vertices, p.frames, p.center_of_mass(), x, 0.5)
    assert eval_numeric(s_class(p, x), 0.5) == pytest.approx(raw, abs=1e-9)


def test_rendering():
    e = ExpSum.term(f(Fraction(3, 2)), mono(Fraction(-1, 2), -2))
    assert to_text(e) == "(-1/2)u^-2 e^{3/2 u}"
    assert to_text(ExpSum.zero()) == "0"
    assert to_latex(sinh_sum(1) * mono(2, -1)) == "-\\frac{1}{u}e^{-u} + \\frac{1}{u}e^{u}"


@given(exp_sums())
def test_json_round_trip(e):
    assert from_json(to_json(e)) == e


def test_json_sorted_by_frequency():
    e = ExpSum.exp(f(2)) + ExpSum.exp(f(-1)) + ExpSum.one()
    assert [t["frequency"] for t in to_json(e)["terms"]] == [["-1"], ["0"], ["2"]]


@given(raw_terms, st.randoms(use_true_random=False))
def test_canonicalize_idempotent_and_order_independent(raw, rnd):
    e = canonicalize(raw, ("1",))
    shuffled = list(raw)
    rnd.shuffle(shuffled)
    assert canonicalize(shuffled, ("1",)) == e
    assert canonicalize(e.items(), ("1",)) == e


@settings(max_examples=500, deadline=None)
@given(exp_sums(), exp_sums())
def test_canonical_form_soundness(a, b):
    diffs = [abs(eval_numeric(a, float(t)) - eval_numeric(b, float(t))) for t in SAMPLE_POINTS]
    if exp_sum_equal(a, b):
        assert all(d == 0 for d in diffs)
    else:
        assert max(diffs) > 0


@given(exp_sums())
def test_u_series_matches_evaluation(e):
    # coefficient degrees are >= -3, so this clears every pole
    e = e * LaurentPoly.monomial(Fraction(1), 4)
    coeffs = u_series(e, 30)
    t = 0.05
    approx = sum(float(c) * t**m for m, c in enumerate(coeffs))
    assert approx == pytest.approx(eval_numeric(e, t), rel=1e-9, abs=1e-12)
