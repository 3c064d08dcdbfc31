"""Harer-Zagier closed form and three-term recursion for ``E[tr Z^{2m}]``."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from ..engine import Ensemble, MomentCache, moment
from ..polynomial import MomentPolynomial


def _binomial_poly(r: int) -> list[Fraction]:
    """Coefficients (ascending powers of n) of ``n (n-1) ... (n-r+1) / r!``."""
    coeffs = [Fraction(1)]
    for j in range(r):
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= j * c
        coeffs = nxt
    return [c / factorial(r) for c in coeffs]


def hz_closed_form(m: int) -> MomentPolynomial:
    """``(2m)!/m! * sum_{r=1}^{m+1} C(n,r) C(m,r-1) / 2^{m+1-r}`` as a polynomial in n.

    The upper limit ``min(n, m+1)`` becomes ``m+1``: the polynomial ``C(n, r)``
    already vanishes at every integer ``0 <= n < r``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = [Fraction(0)] * (m + 2)
    for r in range(1, m + 2):
        w = Fraction(comb(m, r - 1), 2 ** (m + 1 - r))
        for i, c in enumerate(_binomial_poly(r)):
            total[i] += w * c
    prefactor = factorial(2 * m) // factorial(m)
    terms = {}
    for i, c in enumerate(total):
        c *= prefactor
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer coefficient {c} of n^{i} at m={m}")
        terms[(i, 0)] = int(c)
    return MomentPolynomial(terms)


def three_term_residual(t_m: MomentPolynomial, t_m1: MomentPolynomial,
                        t_m2: MomentPolynomial, m: int) -> MomentPolynomial:
    """``(m+1) T_m - (4m-2) n T_{m-1} - (m-1)(2m-1)(2m-3) T_{m-2}``; zero iff the identity holds."""
    return t_m.scale(m + 1) - t_m1.shift(1, 0, 4 * m - 2) - t_m2.scale((m - 1) * (2 * m - 1) * (2 * m - 3))


def hz_three_term_check(m_max: int, cache: MomentCache | None = None) -> bool:
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    t = [moment(Ensemble.GUE, (2 * m,), cache) for m in range(m_max + 1)]
    return all(not three_term_residual(t[m], t[m - 1], t[m - 2], m) for m in range(2, m_max + 1))
