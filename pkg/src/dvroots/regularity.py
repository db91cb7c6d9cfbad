"""Regularity testing and exact root counting in K* for regular polynomials.

A polynomial is regular when every lower edge of its Newton polygon carries
exactly two support points and the residue characteristic does not divide
the edge's horizontal length.  For regular input, the number of roots in K*
is the sum over lower edges of the root count of the two-term polynomial cut
out by the edge's endpoints, and each such count has a closed form: writing
the edge's binomial as X^n + a_0 up to a unit monomial, there are no roots
unless n divides v(a_0), and otherwise gcd(n, q-1) or 0 roots according to
whether -delta(a_0) is an n-th power in the residue field.

Counting for non-regular polynomials is deliberately a hard error; the
closed form is only valid under regularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotRegular, ZeroPolynomial
from .fields import is_nth_power
from .newton import LowerEdge, lower_edges, newton_polygon
from .polynomials import Poly

TOO_MANY_SUPPORT_POINTS = "TooManySupportPoints"
CHAR_DIVIDES_LENGTH = "CharDividesLength"


@dataclass(frozen=True)
class EdgeVerdict:
    edge: LowerEdge
    ok: bool
    failure: str | None


@dataclass(frozen=True)
class RegularityReport:
    regular: bool
    per_edge: tuple


@dataclass(frozen=True)
class LowerBinomial:
    """The two-term polynomial a_s' X^s' + a_s X^s cut out by a lower edge."""

    s_prime: int
    a_s_prime: object
    s: int
    a_s: object
    edge: LowerEdge


@dataclass(frozen=True)
class RootCount:
    zero_root_multiplicity: int
    per_slope: tuple  # (root valuation, count) pairs, one per lower edge
    total_nonzero: int
    bound: int


def is_regular(f):
    """Check both regularity conditions on every lower edge of f."""
    if f.is_zero():
        raise ZeroPolynomial("regularity is undefined for the zero polynomial")
    p = f.ctx.residue.char
    verdicts = []
    for edge in lower_edges(newton_polygon(f)):
        if len(edge.support_on_edge) != 2:
            verdicts.append(EdgeVerdict(edge, False, TOO_MANY_SUPPORT_POINTS))
        elif edge.length % p == 0:
            verdicts.append(EdgeVerdict(edge, False, CHAR_DIVIDES_LENGTH))
        else:
            verdicts.append(EdgeVerdict(edge, True, None))
    return RegularityReport(
        regular=all(v.ok for v in verdicts), per_edge=tuple(verdicts)
    )


def lower_binomials(f):
    """One binomial per lower edge; requires f to be regular."""
    report = is_regular(f)
    if not report.regular:
        raise NotRegular("polynomial is not regular", report)
    out = []
    for verdict in report.per_edge:
        edge = verdict.edge
        s_prime, s = edge.left[0], edge.right[0]
        out.append(
            LowerBinomial(
                s_prime=s_prime,
                a_s_prime=f.coefficient(s_prime),
                s=s,
                a_s=f.coefficient(s),
                edge=edge,
            )
        )
    return out


def count_binomial_roots(binomial):
    """(number of roots in K*, their valuation) for one lower binomial.

    The binomial reduces to X^n + a_0 with n = s - s' and a_0 = a_s'/a_s.
    Only l = v(a_0) and the first digit of a_0 are needed, so no division
    in K is ever performed.
    """
    n = binomial.s - binomial.s_prime
    l = (
        binomial.a_s_prime.valuation().as_integer()
        - binomial.a_s.valuation().as_integer()
    )
    root_valuation = Fraction(l, n)
    if l % n:
        return 0, root_valuation
    delta = binomial.a_s_prime.first_digit() / binomial.a_s.first_digit()
    if is_nth_power(-delta, n):
        q = binomial.a_s.ctx.q
        return gcd(n, q - 1), root_valuation
    return 0, root_valuation


def count_roots(f):
    """Exact number of roots of a regular f in K*, with per-slope breakdown.

    The zero root (when the constant term vanishes) is reported separately
    via its multiplicity ord(f) and never enters the K* total.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    binomials = lower_binomials(f)
    per_slope = []
    total = 0
    for b in binomials:
        count, root_val = count_binomial_roots(b)
        per_slope.append((root_val, count))
        total += count
    q = f.ctx.q
    return RootCount(
        zero_root_multiplicity=f.order,
        per_slope=tuple(per_slope),
        total_nonzero=total,
        bound=len(binomials) * (q - 1),
    )


def sharp_family(t, ctx):
    """The t-edge family attaining the t(q-1) bound on roots in K*.

    f = sum_{i=0..t} (-1)^i pi^(i^2 (q-1)) X^(i (q-1)); its polygon has t
    lower edges with vertices (i(q-1), i^2(q-1)), every edge carries exactly
    its two endpoints, and each binomial contributes q-1 roots.
    """
    if t < 1:
        raise ValueError("family parameter must be >= 1")
    q = ctx.q
    coeffs = {}
    for i in range(t + 1):
        c = ctx.uniformizer_pow(i * i * (q - 1))
        if i % 2:
            c = -c
        coeffs[i * (q - 1)] = c
    return Poly(ctx, coeffs)
