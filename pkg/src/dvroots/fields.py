"""Exact arithmetic over complete discretely valued fields with finite residue field.

Two kinds of base field are supported:

* ``padic`` mode: the p-adic numbers.  Exact elements are arbitrary-precision
  rationals (the denominator may contain the prime), the uniformizer is p
  itself and the residue field is F_p.
* ``laurent`` mode: formal Laurent series over F_q with q = p^f.  Exact
  elements are Laurent polynomials in the uniformizer t with finitely many
  terms; the residue field is F_q, built on a deterministic irreducible
  modulus when f > 1.

Both modes share one valuation interface, normalized so that the uniformizer
has valuation 1 and v(0) = +infinity.  Lifted roots are represented by
:class:`TruncatedK`: an exact approximant together with the power of the
uniformizer modulo which the value is known.  All values are immutable and
every operation is pure, so everything here is safe to share between threads.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .errors import (
    BadFieldElement,
    NotIntegral,
    PrecisionError,
    ZeroElement,
    ZeroInverse,
)

MODE_PADIC = "padic"
MODE_LAURENT = "laurent"

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_valuation(n, p):
    """Exponent of p in the nonzero integer n."""
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


class ExtendedRational:
    """An exact rational extended with a distinguished +infinity.

    Valuations live here: v(0) = +infinity.  Infinity absorbs addition and
    dominates every comparison.  Finite values compare and mix freely with
    ints and Fractions.
    """

    __slots__ = ("_value",)

    def __init__(self, value=None):
        if value is not None and not isinstance(value, Fraction):
            value = Fraction(value)
        self._value = value

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self._value is None

    @property
    def value(self):
        if self._value is None:
            raise ValueError("+infinity has no finite value")
        return self._value

    def as_integer(self):
        v = self.value
        if v.denominator != 1:
            raise ValueError(f"{v} is not an integer")
        return v.numerator

    @staticmethod
    def _lift(other):
        if isinstance(other, ExtendedRational):
            return other._value
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return NotImplemented

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self._value == o

    def __lt__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self._value is None:
            return False
        if o is None:
            return True
        return self._value < o

    def __le__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return True
        if self._value is None:
            return False
        return self._value <= o

    def __gt__(self, other):
        le = self.__le__(other)
        return NotImplemented if le is NotImplemented else not le

    def __ge__(self, other):
        lt = self.__lt__(other)
        return NotImplemented if lt is NotImplemented else not lt

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self._value is None or o is None:
            return ExtendedRational.infinity()
        return ExtendedRational(self._value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            raise ValueError("cannot subtract +infinity")
        if self._value is None:
            return ExtendedRational.infinity()
        return ExtendedRational(self._value - o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self._value is None or o is None:
            return ExtendedRational.infinity()
        return ExtendedRational(self._value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return ExtendedRational(-self.value)

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return "+inf" if self._value is None else str(self._value)


# --------------------------------------------------------------------------
# Residue field F_q
# --------------------------------------------------------------------------

def _fp_divmod(num, den, p):
    # coefficient lists, low-to-high, over F_p; den nonzero
    num = list(num)
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(0, len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] % p
        if c:
            q = c * inv_lead % p
            quot[k - dd] = q
            for j, dj in enumerate(den):
                num[k - dd + j] = (num[k - dd + j] - q * dj) % p
    rem = [c % p for c in num[:dd]]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def _fp_is_irreducible(coeffs, p):
    # monic, low-to-high, degree >= 1; trial division by all monic divisors
    deg = len(coeffs) - 1
    if coeffs[0] == 0:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = list(tail) + [1]
            _, rem = _fp_divmod(coeffs, den, p)
            if not rem:
                return False
    return True


def _lex_smallest_irreducible(p, f):
    # low-to-high coefficient tuples in lexicographic order, monic of degree f
    for tail in itertools.product(range(p), repeat=f):
        cand = list(tail) + [1]
        if _fp_is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {f} over F_{p}")


_RESIDUE_FIELD_CACHE = {}


class ResidueField:
    """The finite field F_q, q = p^f, with elements stored as integer codes.

    A code encodes the coefficient vector (c_0, ..., c_{f-1}) of the residue
    polynomial in the field generator as sum(c_i * p^i); for f = 1 the code
    is simply the canonical representative in [0, p).  The modulus for f > 1
    is the lexicographically smallest monic irreducible of degree f over F_p
    (coefficients compared low-to-high), so constructions are reproducible.
    """

    __slots__ = ("p", "f", "q", "modulus", "_xk_red")

    def __new__(cls, p, f=1):
        key = (p, f)
        cached = _RESIDUE_FIELD_CACHE.get(key)
        if cached is not None:
            return cached
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1:
            raise ValueError("residue degree must be >= 1")
        self = super().__new__(cls)
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = _lex_smallest_irreducible(p, f) if f > 1 else (0, 1)
        if f > 1:
            # reduction of x^(f+i) modulo the modulus, i = 0..f-2
            red = []
            cur = [(-c) % p for c in self.modulus[:-1]]  # x^f
            red.append(tuple(cur))
            for _ in range(f - 2):
                cur = [0] + cur
                lead = cur.pop()
                if lead:
                    cur = [(cj + lead * rj) % p for cj, rj in zip(cur, red[0])]
                red.append(tuple(cur))
            self._xk_red = tuple(red)
        else:
            self._xk_red = ()
        _RESIDUE_FIELD_CACHE[key] = self
        return self

    @property
    def char(self):
        return self.p

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and (self.p, self.f) == (other.p, other.f)
        )

    def __hash__(self):
        return hash((self.p, self.f))

    def __repr__(self):
        return f"F_{self.q}" if self.f == 1 else f"F_{self.q} (F_{self.p}^{self.f})"

    # -- code-level arithmetic ---------------------------------------------

    def decode(self, code):
        """Coefficient tuple (c_0, ..., c_{f-1}) of a code."""
        if self.f == 1:
            return (code,)
        out = []
        for _ in range(self.f):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def encode(self, coeffs):
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c % self.p
        return code

    def add(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x + y for x, y in zip(ca, cb)])

    def sub(self, a, b):
        if self.f == 1:
            return (a - b) % self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x - y for x, y in zip(ca, cb)])

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        return self.encode([-x for x in self.decode(a)])

    def mul(self, a, b):
        if self.f == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        p, f = self.p, self.f
        ca, cb = self.decode(a), self.decode(b)
        conv = [0] * (2 * f - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:f]]
        for k in range(f, 2 * f - 1):
            c = conv[k] % p
            if c:
                red = self._xk_red[k - f]
                out = [(o + c * r) % p for o, r in zip(out, red)]
        return self.encode(out)

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.f == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("zero has no inverse in the residue field")
        if self.f == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def embed_int(self, n):
        """Image of the rational integer n in F_q (through the prime field)."""
        return n % self.p

    def codes(self):
        return range(self.q)

    def nonzero_codes(self):
        return range(1, self.q)

    # -- element-level API ---------------------------------------------------

    def element(self, value):
        """Coerce an int (via the prime field) or coefficient tuple/list."""
        if isinstance(value, ResidueElement):
            if value.field != self:
                raise BadFieldElement(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return ResidueElement(self, self.embed_int(value))
        if isinstance(value, (tuple, list)):
            if len(value) != self.f:
                raise BadFieldElement(
                    f"coefficient vector needs {self.f} entries, got {len(value)}"
                )
            return ResidueElement(self, self.encode([int(c) for c in value]))
        raise BadFieldElement(f"cannot coerce {value!r} into {self}")

    def from_code(self, code):
        if not 0 <= code < self.q:
            raise BadFieldElement(f"code {code} out of range for {self}")
        return ResidueElement(self, code)

    def zero(self):
        return ResidueElement(self, 0)

    def one(self):
        return ResidueElement(self, 1)


class ResidueElement:
    """An element of the residue field, in canonical form."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def coeffs(self):
        return self.field.decode(self.code)

    def is_zero(self):
        return self.code == 0

    def _coerce(self, other):
        if isinstance(other, ResidueElement):
            if other.field != self.field:
                raise BadFieldElement("residue elements from different fields")
            return other.code
        if isinstance(other, int):
            return self.field.embed_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElement(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ResidueElement(self.field, self.field.mul(self.code, self.field.inv(o)))

    def __neg__(self):
        return ResidueElement(self.field, self.field.neg(self.code))

    def __pow__(self, e):
        return ResidueElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return ResidueElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, ResidueElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.embed_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.field.f == 1:
            return str(self.code)
        return "[" + ",".join(str(c) for c in self.coeffs()) + "]"


def residue_pow(c, e):
    """c^e in the residue field; negative e inverts (c nonzero then)."""
    if e < 0 and c.is_zero():
        raise ZeroInverse("zero has no negative power")
    return c**e


def residue_inv(c):
    """Multiplicative inverse in the residue field."""
    return c.inverse()


def is_nth_power(c, n):
    """Whether the nonzero residue c is an n-th power.

    Uses the cyclic structure of the multiplicative group: c is an n-th
    power exactly when c^((q-1)/gcd(n, q-1)) = 1.
    """
    if c.is_zero():
        raise ZeroElement("n-th power test needs a nonzero residue")
    if n < 1:
        raise ValueError("exponent must be >= 1")
    q = c.field.q
    d = gcd(n, q - 1)
    return c.field.pow(c.code, (q - 1) // d) == 1


# --------------------------------------------------------------------------
# Field context and elements of K
# --------------------------------------------------------------------------

class FieldContext:
    """Description of the base field: which mode, which prime, which q.

    ``padic`` mode supports q = p only; general q = p^f is available in
    ``laurent`` mode, where the residue field needs no lifting to
    characteristic zero.
    """

    __slots__ = ("mode", "p", "f", "q", "residue")

    def __init__(self, mode, p, f=1):
        if mode not in (MODE_PADIC, MODE_LAURENT):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == MODE_PADIC and f != 1:
            raise ValueError("padic mode supports residue degree 1 only")
        self.mode = mode
        self.residue = ResidueField(p, f)
        self.p = p
        self.f = f
        self.q = self.residue.q

    @classmethod
    def padic(cls, p):
        return cls(MODE_PADIC, p)

    @classmethod
    def laurent(cls, p, f=1):
        return cls(MODE_LAURENT, p, f)

    @property
    def uniformizer_symbol(self):
        return "p" if self.mode == MODE_PADIC else "t"

    def __eq__(self, other):
        return (
            isinstance(other, FieldContext)
            and (self.mode, self.p, self.f) == (other.mode, other.p, other.f)
        )

    def __hash__(self):
        return hash((self.mode, self.p, self.f))

    def __repr__(self):
        if self.mode == MODE_PADIC:
            return f"Q_{self.p}"
        return f"F_{self.q}((t))"

    # -- element constructors ------------------------------------------------

    def zero(self):
        if self.mode == MODE_PADIC:
            return RationalK(self, Fraction(0))
        return LaurentK(self, ())

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        if self.mode == MODE_PADIC:
            return RationalK(self, Fraction(n))
        c = self.residue.embed_int(n)
        return LaurentK(self, ((0, c),) if c else ())

    def from_fraction(self, value):
        value = Fraction(value)
        if self.mode == MODE_PADIC:
            return RationalK(self, value)
        den = self.residue.embed_int(value.denominator)
        if den == 0:
            raise BadFieldElement(
                f"denominator {value.denominator} is zero in characteristic {self.p}"
            )
        num = self.residue.embed_int(value.numerator)
        c = self.residue.mul(num, self.residue.inv(den))
        return LaurentK(self, ((0, c),) if c else ())

    def laurent_element(self, terms):
        """Laurent element from {exponent: code-or-ResidueElement}."""
        if self.mode != MODE_LAURENT:
            raise BadFieldElement("laurent elements only exist in laurent mode")
        clean = {}
        for e, c in dict(terms).items():
            code = c.code if isinstance(c, ResidueElement) else c % self.q
            if code:
                clean[int(e)] = code
        return LaurentK(self, tuple(sorted(clean.items())))

    def from_residue(self, c):
        """Canonical lift of a residue-field element (constant digit)."""
        c = self.residue.element(c)
        if self.mode == MODE_PADIC:
            return RationalK(self, Fraction(c.code))
        return LaurentK(self, ((0, c.code),) if c.code else ())

    def uniformizer(self):
        return self.uniformizer_pow(1)

    def uniformizer_pow(self, m):
        if self.mode == MODE_PADIC:
            return RationalK(self, Fraction(self.p) ** m)
        return LaurentK(self, ((m, 1),))

    def coerce(self, value):
        if isinstance(value, KElement):
            if value.ctx != self:
                raise BadFieldElement(f"element of {value.ctx} used in {self}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, ResidueElement):
            return self.from_residue(value)
        raise BadFieldElement(f"cannot coerce {value!r} into {self}")

    def residue_ring(self, N):
        return ResidueRing(self, N)


class KElement:
    """Base class for elements of the field K.  Immutable.

    Exact kinds are :class:`RationalK` (padic mode) and :class:`LaurentK`
    (laurent mode); :class:`TruncatedK` wraps an exact approximant that is
    only known modulo a power of the uniformizer.
    """

    __slots__ = ("ctx",)

    def is_zero(self):
        raise NotImplementedError

    def valuation(self):
        raise NotImplementedError

    def _binary(self, other, op):
        try:
            other = self.ctx.coerce(other)
        except BadFieldElement:
            return NotImplemented
        except TypeError:
            return NotImplemented
        return op(self, other)

    def __add__(self, other):
        return self._binary(other, _k_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: _k_add(a, _k_neg(b)))

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: _k_add(_k_neg(a), b))

    def __mul__(self, other):
        return self._binary(other, _k_mul)

    __rmul__ = __mul__

    def __neg__(self):
        return _k_neg(self)

    def __bool__(self):
        return not self.is_zero()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        raise BadFieldElement(f"cannot invert {self!r} exactly")


class RationalK(KElement):
    """Exact element of the p-adic field: an arbitrary-precision rational."""

    __slots__ = ("value",)

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    def is_zero(self):
        return self.value == 0

    def valuation(self):
        if self.value == 0:
            return ExtendedRational.infinity()
        p = self.ctx.p
        v = _int_valuation(self.value.numerator, p) - _int_valuation(
            self.value.denominator, p
        )
        return ExtendedRational(v)

    def unit_part(self):
        """The rational u with self = p^v * u and v(u) = 0."""
        v = self.valuation().as_integer()
        return self.value / Fraction(self.ctx.p) ** v

    def first_digit(self):
        if self.value == 0:
            raise ZeroElement("zero has no first digit")
        p = self.ctx.p
        u = self.unit_part()
        code = u.numerator * pow(u.denominator, -1, p) % p
        return ResidueElement(self.ctx.residue, code)

    def inverse(self):
        if self.value == 0:
            raise ZeroInverse("zero has no inverse")
        return RationalK(self.ctx, 1 / self.value)

    def __eq__(self, other):
        if isinstance(other, RationalK):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __repr__(self):
        return str(self.value)


class LaurentK(KElement):
    """Exact element of F_q((t)) with finite support: a Laurent polynomial.

    ``terms`` is a sorted tuple of (exponent, nonzero residue code).
    """

    __slots__ = ("terms",)

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def valuation(self):
        if not self.terms:
            return ExtendedRational.infinity()
        return ExtendedRational(self.terms[0][0])

    def first_digit(self):
        if not self.terms:
            raise ZeroElement("zero has no first digit")
        return ResidueElement(self.ctx.residue, self.terms[0][1])

    def coefficient(self, exponent):
        """Residue code of the digit at the given exponent."""
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def inverse(self):
        if not self.terms:
            raise ZeroInverse("zero has no inverse")
        if len(self.terms) != 1:
            raise BadFieldElement(
                "only monomials invert exactly in the Laurent representation"
            )
        e, c = self.terms[0]
        return LaurentK(self.ctx, ((-e, self.ctx.residue.inv(c)),))

    def __eq__(self, other):
        if isinstance(other, LaurentK):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.terms:
            coeff = repr(ResidueElement(self.ctx.residue, c))
            if e == 0:
                bits.append(coeff)
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                bits.append(tpow if c == 1 and self.ctx.f == 1 else f"{coeff}*{tpow}")
        return " + ".join(bits)


class TruncatedK(KElement):
    """A field element known only modulo pi^known_mod.

    ``approx`` is an exact element that agrees with the represented value
    modulo pi^known_mod; digits below known_mod are meaningful, everything
    above is not.  Arithmetic propagates the window conservatively.
    """

    __slots__ = ("approx", "known_mod")

    def __init__(self, ctx, approx, known_mod):
        self.ctx = ctx
        self.approx = approx
        self.known_mod = known_mod

    def is_zero(self):
        # zero to the known precision; exact zero is not decidable
        return self.approx.is_zero() or self.approx.valuation() >= self.known_mod

    def valuation(self):
        v = self.approx.valuation()
        if v >= self.known_mod:
            raise PrecisionError(
                f"valuation >= {self.known_mod} not resolved by the known window"
            )
        return v

    def first_digit(self):
        return _shift_exact(self.approx, -self.valuation().as_integer()).first_digit()

    def digits(self, count=None):
        """Residue codes d_0, d_1, ... of the unit part, lowest first."""
        v = self.valuation().as_integer()
        avail = self.known_mod - v
        n = avail if count is None else min(count, avail)
        return _expansion_digits(_shift_exact(self.approx, -v), n)

    def precision(self):
        """Number of known digits of the unit part."""
        return self.known_mod - self.valuation().as_integer()

    def __eq__(self, other):
        if isinstance(other, TruncatedK):
            return (
                self.ctx == other.ctx
                and self.known_mod == other.known_mod
                and self.approx == other.approx
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.approx, self.known_mod))

    def __repr__(self):
        return f"{self.approx!r} + O(pi^{self.known_mod})"


def _window_floor(x):
    # lowest digit position contributing uncertainty; exact values give +inf
    if isinstance(x, TruncatedK):
        return x.known_mod
    return None


def _approx_of(x):
    return x.approx if isinstance(x, TruncatedK) else x


def _k_add(a, b):
    ra = _approx_of(a)
    rb = _approx_of(b)
    value = _exact_add(ra, rb)
    wa, wb = _window_floor(a), _window_floor(b)
    if wa is None and wb is None:
        return value
    mods = [w for w in (wa, wb) if w is not None]
    return TruncatedK(a.ctx, value, min(mods))


def _k_neg(a):
    ra = _exact_neg(_approx_of(a))
    if isinstance(a, TruncatedK):
        return TruncatedK(a.ctx, ra, a.known_mod)
    return ra


def _k_mul(a, b):
    ra = _approx_of(a)
    rb = _approx_of(b)
    value = _exact_mul(ra, rb)
    wa, wb = _window_floor(a), _window_floor(b)
    if wa is None and wb is None:
        return value
    # multiplying by an exact zero yields an exact zero
    if (wa is None and ra.is_zero()) or (wb is None and rb.is_zero()):
        return value

    def low(approx, window):
        v = approx.valuation()
        return window if v.is_infinite else v.as_integer()

    mods = []
    if wa is not None:
        mods.append(wa + low(rb, wb if wb is not None else wa))
    if wb is not None:
        mods.append(wb + low(ra, wa if wa is not None else wb))
    return TruncatedK(a.ctx, value, min(mods))


def _exact_add(a, b):
    if isinstance(a, RationalK):
        return RationalK(a.ctx, a.value + b.value)
    merged = dict(a.terms)
    res = a.ctx.residue
    for e, c in b.terms:
        s = res.add(merged.get(e, 0), c)
        if s:
            merged[e] = s
        else:
            merged.pop(e, None)
    return LaurentK(a.ctx, tuple(sorted(merged.items())))


def _exact_neg(a):
    if isinstance(a, RationalK):
        return RationalK(a.ctx, -a.value)
    res = a.ctx.residue
    return LaurentK(a.ctx, tuple((e, res.neg(c)) for e, c in a.terms))


def _exact_mul(a, b):
    if isinstance(a, RationalK):
        return RationalK(a.ctx, a.value * b.value)
    res = a.ctx.residue
    out = {}
    for e1, c1 in a.terms:
        for e2, c2 in b.terms:
            e = e1 + e2
            s = res.add(out.get(e, 0), res.mul(c1, c2))
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return LaurentK(a.ctx, tuple(sorted(out.items())))


def _shift_exact(x, m):
    """x * pi^m for an exact element."""
    return _exact_mul(x, x.ctx.uniformizer_pow(m)) if m else x


def exact_div(a, b):
    """Exact quotient a / b inside the coefficient domain.

    For rationals this is plain division; for Laurent polynomials the
    division must leave no remainder (used by fraction-free elimination,
    which guarantees divisibility).
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero element")
    if a.is_zero():
        return a
    if isinstance(a, RationalK):
        return RationalK(a.ctx, a.value / b.value)
    res = a.ctx.residue
    sa, sb = a.terms[0][0], b.terms[0][0]
    num = {e - sa: c for e, c in a.terms}
    den = {e - sb: c for e, c in b.terms}
    nd = max(num)
    dd = max(den)
    den_list = [den.get(i, 0) for i in range(dd + 1)]
    num_list = [num.get(i, 0) for i in range(nd + 1)]
    inv_lead = res.inv(den_list[-1])
    quot = {}
    for k in range(nd, dd - 1, -1):
        c = num_list[k]
        if c:
            qc = res.mul(c, inv_lead)
            quot[k - dd] = qc
            for j, dj in enumerate(den_list):
                if dj:
                    num_list[k - dd + j] = res.sub(num_list[k - dd + j], res.mul(qc, dj))
    if any(num_list[:dd]):
        raise ValueError("inexact Laurent division")
    shift = sa - sb
    return LaurentK(a.ctx, tuple(sorted((e + shift, c) for e, c in quot.items())))


def _expansion_digits(unit, n):
    """First n digit codes of an element with valuation 0 (or zero)."""
    ctx = unit.ctx
    if isinstance(unit, LaurentK):
        table = dict(unit.terms)
        return [table.get(i, 0) for i in range(n)]
    p = ctx.p
    num, den = unit.value.numerator, unit.value.denominator
    inv_den = pow(den, -1, p**n) if n else 1
    u = num * inv_den % p**n
    digits = []
    for _ in range(n):
        u, d = divmod(u, p)
        digits.append(d)
    return digits


# --------------------------------------------------------------------------
# Residue rings A / pi^N
# --------------------------------------------------------------------------

class ResidueRing:
    """The quotient A/pi^N with canonical representatives and exact ops.

    In padic mode raw values are integers in [0, p^N); in laurent mode they
    are length-N tuples of residue codes (digit i multiplies pi^i).  The raw
    representation is exposed for hot loops; :class:`ResidueRingElement`
    wraps a raw value for the public API.
    """

    __slots__ = ("ctx", "N", "modulus")

    def __init__(self, ctx, N):
        if N < 1:
            raise ValueError("precision must be >= 1")
        self.ctx = ctx
        self.N = N
        self.modulus = ctx.p**N if ctx.mode == MODE_PADIC else None

    def __eq__(self, other):
        return (
            isinstance(other, ResidueRing)
            and self.ctx == other.ctx
            and self.N == other.N
        )

    def __hash__(self):
        return hash((self.ctx, self.N))

    def __repr__(self):
        pi = self.ctx.uniformizer_symbol
        return f"{self.ctx!r} mod {pi}^{self.N}"

    @property
    def size(self):
        return self.ctx.q**self.N

    def zero(self):
        if self.modulus is not None:
            return 0
        return (0,) * self.N

    def one(self):
        if self.modulus is not None:
            return 1
        return (1,) + (0,) * (self.N - 1)

    def from_int(self, n):
        if self.modulus is not None:
            return n % self.modulus
        c = self.ctx.residue.embed_int(n)
        return (c,) + (0,) * (self.N - 1)

    def from_exact(self, x):
        if isinstance(x, TruncatedK):
            if x.known_mod < self.N:
                raise PrecisionError(
                    f"known modulo pi^{x.known_mod} but reduction mod pi^{self.N} requested"
                )
            x = x.approx
        v = x.valuation()
        if v < 0:
            raise NotIntegral(f"{x!r} has negative valuation {v!r}")
        if self.modulus is not None:
            value = x.value
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        digits = [0] * self.N
        for e, c in x.terms:
            if e < self.N:
                digits[e] = c
        return tuple(digits)

    def to_exact(self, raw):
        if self.modulus is not None:
            return RationalK(self.ctx, Fraction(raw))
        return LaurentK(self.ctx, tuple((i, c) for i, c in enumerate(raw) if c))

    def to_truncated(self, raw):
        return TruncatedK(self.ctx, self.to_exact(raw), self.N)

    def add(self, a, b):
        if self.modulus is not None:
            return (a + b) % self.modulus
        res = self.ctx.residue
        return tuple(res.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.modulus is not None:
            return (a - b) % self.modulus
        res = self.ctx.residue
        return tuple(res.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.modulus is not None:
            return (-a) % self.modulus
        res = self.ctx.residue
        return tuple(res.neg(x) for x in a)

    def mul(self, a, b):
        if self.modulus is not None:
            return a * b % self.modulus
        res = self.ctx.residue
        N = self.N
        out = [0] * N
        for i, x in enumerate(a):
            if x:
                for j in range(N - i):
                    y = b[j]
                    if y:
                        out[i + j] = res.add(out[i + j], res.mul(x, y))
        return tuple(out)

    def inv(self, a):
        """Inverse of a unit (valuation 0)."""
        if self.modulus is not None:
            try:
                return pow(a, -1, self.modulus)
            except ValueError:
                raise ZeroInverse(f"{a} is not a unit mod {self.modulus}") from None
        res = self.ctx.residue
        if a[0] == 0:
            raise ZeroInverse("not a unit in the residue ring")
        b0 = res.inv(a[0])
        out = [b0] + [0] * (self.N - 1)
        for k in range(1, self.N):
            acc = 0
            for i in range(1, k + 1):
                if a[i] and out[k - i]:
                    acc = res.add(acc, res.mul(a[i], out[k - i]))
            out[k] = res.neg(res.mul(b0, acc))
        return tuple(out)

    def valuation(self, a):
        """Uniformizer-adic valuation of the representative, capped at N."""
        if self.modulus is not None:
            if a == 0:
                return self.N
            return _int_valuation(a, self.ctx.p)
        for i, c in enumerate(a):
            if c:
                return i
        return self.N

    def is_zero(self, a):
        return a == 0 if self.modulus is not None else not any(a)

    def shift_down(self, a, e):
        """Exact division by pi^e; low digits must vanish.

        The result is only meaningful modulo pi^(N-e); high digits are
        zero-filled.
        """
        if e == 0:
            return a
        if self.modulus is not None:
            pe = self.ctx.p**e
            if a % pe:
                raise ValueError("value not divisible by pi^e")
            return a // pe
        if any(a[:e]):
            raise ValueError("value not divisible by pi^e")
        return a[e:] + (0,) * e

    def truncate(self, a, M):
        """Image in A/pi^M for M <= N, as a raw value of the smaller ring."""
        if M > self.N:
            raise PrecisionError(f"cannot extend precision {self.N} to {M}")
        if self.modulus is not None:
            return a % self.ctx.p**M
        return a[:M]

    def digits(self, a):
        if self.modulus is not None:
            out = []
            v = a
            for _ in range(self.N):
                v, d = divmod(v, self.ctx.p)
                out.append(d)
            return out
        return list(a)

    def eval_poly(self, coeffs, x):
        """Horner evaluation; ``coeffs`` raw ring values, lowest degree first."""
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def enumerate_raw(self):
        """All raw values in canonical order."""
        if self.modulus is not None:
            return range(self.modulus)
        return (self._decode_code(code) for code in range(self.size))

    def _decode_code(self, code):
        q = self.ctx.q
        out = []
        for _ in range(self.N):
            code, d = divmod(code, q)
            out.append(d)
        return tuple(out)

    def sort_key(self, a):
        return a if self.modulus is not None else tuple(a)

    def wrap(self, raw):
        return ResidueRingElement(self, raw)


class ResidueRingElement:
    """Canonical representative of an element of A/pi^N."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    @property
    def precision(self):
        return self.ring.N

    def digits(self):
        return self.ring.digits(self.value)

    def valuation(self):
        return self.ring.valuation(self.value)

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def to_exact(self):
        return self.ring.to_exact(self.value)

    def sort_key(self):
        return self.ring.sort_key(self.value)

    def __eq__(self, other):
        return (
            isinstance(other, ResidueRingElement)
            and self.ring == other.ring
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.ring, self.sort_key()))

    def __repr__(self):
        pi = self.ring.ctx.uniformizer_symbol
        if self.ring.modulus is not None:
            return f"{self.value} (mod {pi}^{self.ring.N})"
        return f"{list(self.value)} (mod {pi}^{self.ring.N})"


# --------------------------------------------------------------------------
# Module-level operations
# --------------------------------------------------------------------------

def valuation(x):
    """The normalized valuation v(x), with v(0) = +infinity."""
    return x.valuation()


def first_digit(x):
    """The leading digit of a nonzero x: the residue of x / pi^v(x)."""
    return x.first_digit()


def reduce_mod(x, N):
    """Canonical image of an integral x in A/pi^N."""
    ring = x.ctx.residue_ring(N)
    return ring.wrap(ring.from_exact(x))
