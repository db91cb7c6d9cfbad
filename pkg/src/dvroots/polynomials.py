"""Sparse univariate polynomials with exact coefficients over a field context.

Coefficients are exact :class:`~dvroots.fields.KElement` values keyed by
exponent; zero coefficients are never stored.  Polynomials are immutable and
support the ring operations plus the substitutions the root-counting
pipeline needs (scaling the variable by a power of the uniformizer, shifting
exponents, clearing content).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroPolynomial
from .fields import KElement, LaurentK, RationalK


class Poly:
    """Univariate polynomial as a finitely supported map exponent -> coefficient."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        clean = {}
        for e, c in dict(coeffs).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            c = ctx.coerce(c)
            if not c.is_zero():
                clean[int(e)] = c
        self.ctx = ctx
        self.coeffs = clean

    @classmethod
    def from_pairs(cls, ctx, pairs):
        acc = {}
        for e, c in pairs:
            c = ctx.coerce(c)
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        return cls(ctx, acc)

    @classmethod
    def x(cls, ctx):
        return cls(ctx, {1: 1})

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, {0: c})

    @classmethod
    def monomial(cls, ctx, e, c=1):
        return cls(ctx, {e: c})

    # -- structure -----------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def order(self):
        """Least exponent with a nonzero coefficient."""
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(self.coeffs)

    @property
    def support(self):
        return sorted(self.coeffs)

    @property
    def num_terms(self):
        return len(self.coeffs)

    def coefficient(self, e):
        return self.coeffs.get(e, self.ctx.zero())

    @property
    def leading_coefficient(self):
        return self.coeffs[self.degree]

    def is_monic(self):
        return self.leading_coefficient == self.ctx.one()

    def is_integral(self):
        """Whether every coefficient lies in the valuation ring."""
        return all(c.valuation() >= 0 for c in self.coeffs.values())

    def content_valuation(self):
        """min over the support of v(coefficient), as a plain integer."""
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no content")
        return min(c.valuation().as_integer() for c in self.coeffs.values())

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self.coeffs)
        for e, c in other.coeffs.items():
            merged[e] = merged[e] + c if e in merged else c
        return Poly(self.ctx, merged)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return Poly(self.ctx, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("mixed field contexts")
            return other
        if isinstance(other, (int, Fraction, KElement)):
            return Poly.constant(self.ctx, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, tuple(sorted((e, c) for e, c in self.coeffs.items()))))

    # -- calculus and substitutions ---------------------------------------------

    def derivative(self):
        out = {}
        for e, c in self.coeffs.items():
            if e:
                out[e - 1] = c * self.ctx.from_int(e)
        return Poly(self.ctx, out)

    def scaled(self, c):
        """c * f for a scalar c."""
        c = self.ctx.coerce(c)
        return Poly(self.ctx, {e: a * c for e, a in self.coeffs.items()})

    def scale_variable(self, c):
        """f(c*X) for an exact scalar c."""
        c = self.ctx.coerce(c)
        return Poly(self.ctx, {e: a * c**e for e, a in self.coeffs.items()})

    def scale_variable_uniformizer(self, m):
        """f(pi^m X); exact in both modes for any integer m."""
        ctx = self.ctx
        return Poly(
            ctx, {e: a * ctx.uniformizer_pow(m * e) for e, a in self.coeffs.items()}
        )

    def shifted(self, k):
        """f * X^k (k may be negative if it does not push exponents below 0)."""
        if not self.coeffs:
            return self
        if k < 0 and self.order < -k:
            raise ValueError("shift would create negative exponents")
        return Poly(self.ctx, {e + k: c for e, c in self.coeffs.items()})

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, x):
        """Exact Horner evaluation at a KElement (or int/Fraction)."""
        x = self.ctx.coerce(x)
        if not self.coeffs:
            return self.ctx.zero()
        exps = sorted(self.coeffs, reverse=True)
        acc = self.coeffs[exps[0]]
        prev = exps[0]
        for e in exps[1:]:
            acc = acc * x ** (prev - e) + self.coeffs[e]
            prev = e
        if prev:
            acc = acc * x**prev
        return acc

    def ring_coefficients(self, ring):
        """Dense raw coefficient list (lowest degree first) reduced in a residue ring."""
        out = [ring.zero()] * (self.degree + 1)
        for e, c in self.coeffs.items():
            out[e] = ring.from_exact(c)
        return out

    def evaluate_mod(self, ring, raw):
        """Evaluate at a raw residue-ring value."""
        return ring.eval_poly(self.ring_coefficients(ring), raw)

    # -- display --------------------------------------------------------------------

    def pretty(self):
        """Canonical textual form; parseable back by the expression parser."""
        if not self.coeffs:
            return "0"
        parts = []  # (sign, body) pairs
        for e in sorted(self.coeffs, reverse=True):
            parts.extend(_render_term(self.ctx, e, self.coeffs[e]))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign < 0 else "") + first_body
        for sign, body in parts[1:]:
            text += (" - " if sign < 0 else " + ") + body
        return text

    def __repr__(self):
        return f"Poly({self.pretty()!r}, {self.ctx!r})"


def _render_term(ctx, e, coeff):
    xpart = None if e == 0 else ("x" if e == 1 else f"x^{e}")
    if isinstance(coeff, RationalK):
        value = coeff.value
        sign = -1 if value < 0 else 1
        mag = -value if sign < 0 else value
        if mag == 1 and xpart:
            return [(sign, xpart)]
        body = str(mag)
        if xpart:
            body += f"*{xpart}"
        return [(sign, body)]
    assert isinstance(coeff, LaurentK)
    out = []
    for texp, code in coeff.terms:
        out.append((1, _render_laurent_monomial(ctx, texp, code, xpart)))
    return out


def _render_laurent_monomial(ctx, texp, code, xpart):
    bits = []
    if ctx.f > 1:
        bits.append("[" + ",".join(str(c) for c in ctx.residue.decode(code)) + "]")
    elif code != 1:
        bits.append(str(code))
    if texp:
        bits.append("t" if texp == 1 else f"t^{texp}")
    if xpart:
        bits.append(xpart)
    if not bits:
        bits.append("1")
    return "*".join(bits)
