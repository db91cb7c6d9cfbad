"""Exact resultants via fraction-free elimination on the Sylvester matrix.

The determinant is computed with the Bareiss one-step scheme, whose interior
divisions are exact over any integral domain, so the same code path serves
exact rationals and Laurent-polynomial coefficients.  The orientation of the
Sylvester matrix is fixed by Res(X - a, X - b) = b - a, i.e. the resultant
equals lead(g)^deg(f) times the product of f over the roots of g.  For the
discriminant pair (f, f') the two usual orientations agree, because
deg(f) * deg(f') is even.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VanishingDiscriminant, ZeroPolynomial
from .fields import exact_div


@dataclass(frozen=True)
class DiscriminantInfo:
    """Res(f, f') together with its valuation r."""

    resultant: object
    valuation: int


def _dense(f, degree):
    return [f.coefficient(i) for i in range(degree + 1)]


def sylvester_matrix(f, g):
    """Sylvester matrix with g's coefficient rows first (see module note)."""
    m, n = f.degree, g.degree
    size = m + n
    fd = _dense(f, m)
    gd = _dense(g, n)
    zero = f.ctx.zero()
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gd)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fd)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix, ctx):
    """Exact determinant by Bareiss fraction-free Gaussian elimination."""
    size = len(matrix)
    if size == 0:
        return ctx.one()
    m = [row[:] for row in matrix]
    sign = 1
    prev = ctx.one()
    for k in range(size - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, size) if not m[i][k].is_zero()), None
            )
            if pivot_row is None:
                return ctx.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = ctx.zero()
        prev = pivot
    det = m[size - 1][size - 1]
    return -det if sign < 0 else det


def resultant(f, g):
    """Exact Res_X(f, g) for nonzero f, g."""
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant requires nonzero polynomials")
    return bareiss_determinant(sylvester_matrix(f, g), f.ctx)


def discriminant_valuation(f):
    """Res(f, f') and its valuation; error when the resultant vanishes."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no discriminant")
    if f.degree < 1:
        raise ZeroPolynomial("discriminant needs degree >= 1")
    fprime = f.derivative()
    if fprime.is_zero():
        raise VanishingDiscriminant("f' vanishes identically")
    res = resultant(f, fprime)
    if res.is_zero():
        raise VanishingDiscriminant("Res(f, f') = 0: repeated root present")
    return DiscriminantInfo(resultant=res, valuation=res.valuation().as_integer())


def binomial_discriminant(n, a0):
    """Closed-form discriminant of X^n + a0.

    Equals (-1)^(n(n-1)/2) * n^n * a0^(n-1), which matches the same sign
    factor applied to Res(X^n + a0, n X^(n-1)).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if a0.is_zero():
        raise ZeroPolynomial("binomial constant term must be nonzero")
    ctx = a0.ctx
    value = ctx.from_int(n) ** n * a0 ** (n - 1)
    if (n * (n - 1) // 2) % 2:
        value = -value
    return value
