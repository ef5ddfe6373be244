"""Independent closed forms used as test oracles.

Nothing here calls the localization engine: every expression is built
directly from its formula with the ExpSum constructors, and geometric inputs
(centroids, areas) come from elementary integration.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from equiloc.expsum import ExpSum, Frequency, sinh_sum
from equiloc.laurent import LaurentPoly


def F(x) -> Fraction:
    return Fraction(x)


def term(freq, coeff, degree, basis=("1",)) -> ExpSum:
    return ExpSum.term(Frequency.of(freq, basis), LaurentPoly.monomial(coeff, degree))


# Hirzebruch trapezoid with vertices (0,0), (0,tau), (sigma,0), (sigma, tau - k sigma)

def trapezoid_area(k, sigma, tau) -> Fraction:
    a = -F(k)
    return sigma * tau + a * sigma**2 / 2


def trapezoid_centroid(k, sigma, tau) -> tuple[Fraction, Fraction]:
    """Integrate x and y over 0 <= x <= sigma, 0 <= y <= tau + a x."""
    a = -F(k)
    sigma, tau = F(sigma), F(tau)
    area = trapezoid_area(k, sigma, tau)
    mx = tau * sigma**2 / 2 + a * sigma**3 / 3
    if a == 0:
        my = tau**2 * sigma / 2
    else:
        my = ((tau + a * sigma) ** 3 - tau**3) / (6 * a)
    return mx / area, my / area


def hirzebruch_q(k, sigma, tau, b) -> Fraction:
    cx, cy = trapezoid_centroid(k, sigma, tau)
    return cx * b[0] + cy * b[1]


def hirzebruch_type0(k, sigma, tau, b) -> ExpSum:
    """u^2 S = e^{qu}(A - B e^{-tau b2 u} - A e^{-sigma b1 u} + B e^{-(tau b2 + sigma b0) u})."""
    b1, b2 = b
    b0 = b1 - k * b2
    q = hirzebruch_q(k, sigma, tau, b)
    A = F(1) / (b1 * b2)
    B = F(1) / (b0 * b2)
    return (term(q, A, -2) + term(q - tau * b2, -B, -2) + term(q - sigma * b1, -A, -2)
            + term(q - (tau * b2 + sigma * b0), B, -2))


def hirzebruch_b2_zero(k, sigma, tau, b1) -> ExpSum:
    """e^{qu}[(1/(b1 u))(tau - k/(b1 u)) - (e^{-sigma b1 u}/(b1 u))(lam - k/(b1 u))]."""
    q = hirzebruch_q(k, sigma, tau, (b1, 0))
    lam = tau - k * sigma
    b1 = F(b1)
    return (term(q, tau / b1, -1) + term(q, -k / b1**2, -2)
            + term(q - sigma * b1, -lam / b1, -1) + term(q - sigma * b1, k / b1**2, -2))


def hirzebruch_b1_zero(k, sigma, tau, b2) -> ExpSum:
    """e^{qu}(e^{-tau b2 u}/(k (b2 u)^2) - e^{-lam b2 u}/(k (b2 u)^2) + sigma/(b2 u))."""
    q = hirzebruch_q(k, sigma, tau, (0, b2))
    lam = tau - k * sigma
    b2 = F(b2)
    c = 1 / (k * b2**2)
    return term(q - tau * b2, c, -2) + term(q - lam * b2, -c, -2) + term(q, sigma / b2, -1)


def hirzebruch_b0_zero(k, sigma, tau, b2) -> ExpSum:
    """b = (k b2, b2): e^{qu}(1/(k (b2 u)^2) - e^{-sigma k b2 u}/(k (b2 u)^2) - sigma e^{-tau b2 u}/(b2 u))."""
    q = hirzebruch_q(k, sigma, tau, (k * b2, b2))
    b2 = F(b2)
    c = 1 / (k * b2**2)
    return term(q, c, -2) + term(q - sigma * k * b2, -c, -2) + term(q - tau * b2, -sigma / b2, -1)


def hirzebruch_closed_form(k, sigma, tau, b) -> ExpSum:
    b1, b2 = b
    if b2 == 0:
        return hirzebruch_b2_zero(k, sigma, tau, b1)
    if b1 == 0:
        return hirzebruch_b1_zero(k, sigma, tau, b2)
    if b1 == k * b2:
        return hirzebruch_b0_zero(k, sigma, tau, b2)
    return hirzebruch_type0(k, sigma, tau, b)


# S^2 x S^2 (sigma, tau may be symbols; basis must then contain them)

def sphere_closed_form(sigma, tau, b, basis=("1",)) -> ExpSum:
    b1, b2 = b
    if b1 and b2:
        # 4/(b1 b2 u^2) sinh(sigma b1 u/2) sinh(tau b2 u/2)
        s = sinh_sum(sigma * F(b1) / 2, basis) * sinh_sum(tau * F(b2) / 2, basis)
        return s * LaurentPoly.monomial(F(4) / (b1 * b2), -2)
    if b2 == 0:
        # 2 tau/(b1 u) sinh(sigma b1 u/2)
        return sinh_sum(sigma * F(b1) / 2, basis) * LaurentPoly.monomial(tau * F(2) / b1, -1)
    return sinh_sum(tau * F(b2) / 2, basis) * LaurentPoly.monomial(sigma * F(2) / b2, -1)


# coadjoint orbits (unnormalized, i.e. kappa = 0)

def cpn_closed_form(a, r=1) -> ExpSum:
    n = len(a)
    total = ExpSum.zero()
    for k in range(n):
        denom = F(1)
        for s in range(n):
            if s != k:
                denom *= a[k] - a[s]
        total = total + term(F(r) * a[k], 1 / denom, -(n - 1))
    return total


def grassmann_closed_form(a, k, r=1) -> ExpSum:
    """Sum over k-subsets c of e^{r alpha_c u} / (p_c u^{k(n-k)}), p_c = prod (a_l - a_m), l in c, m not in c."""
    n = len(a)
    total = ExpSum.zero()
    for c in itertools.combinations(range(n), k):
        p = F(1)
        for l in c:
            for m in range(n):
                if m not in c:
                    p *= a[l] - a[m]
        total = total + term(F(r) * sum(a[l] for l in c), 1 / p, -k * (n - k))
    return total


def _signature(perm) -> int:
    sign = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            sign = -sign
    return sign


def fullflag_closed_form(r, a) -> ExpSum:
    """(1/(u^m prod_{i<j}(a_i - a_j))) sum_perm sign(perm) exp(u sum_j r_j a_perm(j))."""
    n = len(a)
    m = n * (n - 1) // 2
    vander = F(1)
    for i, j in itertools.combinations(range(n), 2):
        vander *= a[i] - a[j]
    total = ExpSum.zero()
    for perm in itertools.permutations(range(n)):
        freq = sum((F(rj) * a[p] for rj, p in zip(r, perm)), F(0))
        total = total + term(freq, F(_signature(perm)) / vander, -m)
    return total


# brute-force float evaluation of a Type(0) vertex sum

def raw_vertex_sum_float(vertices, frames, cm, x, u0: float) -> float:
    q = sum(float(c) * xi for c, xi in zip(cm, x))
    total = 0.0
    n = len(x)
    for v, frame in zip(vertices, frames):
        prod = 1.0
        for rho in frame:
            prod *= sum(r * xi for r, xi in zip(rho, x))
        pair = sum(float(c) * xi for c, xi in zip(v, x))
        total += math.exp((q - pair) * u0) / prod
    return total / u0**n
