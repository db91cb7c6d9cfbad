import random
from fractions import Fraction

import pytest

import dvroots as dv

Q2 = dv.FieldContext.padic(2)
Q3 = dv.FieldContext.padic(3)
Q5 = dv.FieldContext.padic(5)
F3T = dv.FieldContext.laurent(3)
F9T = dv.FieldContext.laurent(3, 2)


def test_valuation_examples():
    assert dv.valuation(Q5.from_int(50)) == 2
    assert dv.valuation(Q5.zero()).is_infinite
    assert dv.valuation(Q3.from_fraction(Fraction(1, 9))) == -2


def test_valuation_laurent():
    x = F3T.laurent_element({-2: 1, 0: 2})
    assert dv.valuation(x) == -2
    assert dv.valuation(F3T.uniformizer()) == 1
    assert dv.valuation(F3T.zero()).is_infinite


def test_first_digit_examples():
    assert dv.first_digit(Q5.from_int(50)).code == 2
    assert dv.first_digit(Q3.from_fraction(Fraction(1, 9))).code == 1
    # oracle: the unique residue r with v(-6 - r) > 0
    matches = [r for r in range(5) if dv.valuation(Q5.from_int(-6 - r)) >= 1]
    assert matches == [4]
    assert dv.first_digit(Q5.from_int(-6)).code == 4


def test_first_digit_of_zero_raises():
    with pytest.raises(dv.ZeroElement):
        dv.first_digit(Q5.zero())


def test_residue_pow_and_inv():
    F5 = dv.ResidueField(5)
    F7 = dv.ResidueField(7)
    assert dv.residue_pow(F5.from_code(2), 4).code == 1
    assert dv.residue_inv(F7.from_code(3)).code == 5
    with pytest.raises(dv.ZeroInverse):
        dv.residue_inv(F5.zero())


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)])
def test_frobenius_fixes_field(p, f):
    field = dv.ResidueField(p, f)
    for code in field.codes():
        assert field.pow(code, field.q) == code


def test_small_field_multiplication_tables():
    # F4 = F2[g]/(g^2 + g + 1): g*g = g + 1, g*(g+1) = 1
    F4 = dv.ResidueField(2, 2)
    assert F4.modulus == (1, 1, 1)
    g = F4.from_code(2)
    assert (g * g).code == 3
    assert (g * F4.from_code(3)).code == 1
    # F9 = F3[i]/(i^2 + 1): i*i = -1
    F9 = dv.ResidueField(3, 2)
    assert F9.modulus == (1, 0, 1)
    i = F9.from_code(3)
    assert (i * i) == -1


@pytest.mark.parametrize(
    "p,f",
    [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (2, 4),
     (3, 3), (2, 5), (7, 2)],
)
def test_nth_power_matches_enumeration(p, f):
    # exhaustive oracle over all q <= 49
    field = dv.ResidueField(p, f)
    for n in (1, 2, 3, 4, 5, 6, 7, 12):
        attained = {field.pow(y, n) for y in field.nonzero_codes()}
        for c in field.nonzero_codes():
            assert dv.is_nth_power(field.from_code(c), n) == (c in attained)
    assert dv.is_nth_power(field.one(), 11)


def test_nth_power_examples():
    assert dv.is_nth_power(dv.ResidueField(5).from_code(4), 2)
    assert not dv.is_nth_power(dv.ResidueField(3).from_code(2), 2)


def test_reduce_mod_examples():
    assert dv.reduce_mod(Q5.from_int(7), 2).value == 7
    assert dv.reduce_mod(Q5.from_fraction(Fraction(1, 2)), 2).value == 13
    assert dv.reduce_mod(Q2.from_int(-1), 3).value == 7


def test_reduce_mod_rejects_non_integral():
    with pytest.raises(dv.NotIntegral):
        dv.reduce_mod(Q5.from_fraction(Fraction(1, 5)), 2)
    with pytest.raises(dv.NotIntegral):
        dv.reduce_mod(F3T.uniformizer_pow(-1), 2)


def _random_rational(rng, p):
    num = rng.randint(-400, 400)
    den = rng.randint(1, 60)
    return Fraction(num, den)


def _random_laurent(rng, ctx):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        terms[rng.randint(-4, 6)] = rng.randint(0, ctx.q - 1)
    return ctx.laurent_element(terms)


@pytest.mark.parametrize("ctx", [Q2, Q3, Q5, F3T, F9T], ids=repr)
def test_valuation_ultrametric_and_multiplicative(ctx):
    rng = random.Random(987)
    for _ in range(300):
        if ctx.mode == "padic":
            x = ctx.from_fraction(_random_rational(rng, ctx.p))
            y = ctx.from_fraction(_random_rational(rng, ctx.p))
        else:
            x = _random_laurent(rng, ctx)
            y = _random_laurent(rng, ctx)
        vx, vy = dv.valuation(x), dv.valuation(y)
        assert dv.valuation(x * y) == vx + vy
        vsum = dv.valuation(x + y)
        assert vsum >= min(vx, vy)
        if vx != vy:
            assert vsum == min(vx, vy)
        if x and y:
            assert dv.first_digit(x * y) == dv.first_digit(x) * dv.first_digit(y)


@pytest.mark.parametrize("ctx", [Q3, Q5, F3T], ids=repr)
def test_reduce_mod_is_ring_homomorphism(ctx):
    rng = random.Random(555)
    ring = ctx.residue_ring(4)
    for _ in range(200):
        if ctx.mode == "padic":
            # integral rationals: denominator prime to p
            def draw():
                den = ctx.p
                while den % ctx.p == 0:
                    den = rng.randint(1, 50)
                return ctx.from_fraction(Fraction(rng.randint(-200, 200), den))
        else:
            def draw():
                terms = {rng.randint(0, 6): rng.randint(0, ctx.q - 1)
                         for _ in range(rng.randint(0, 4))}
                return ctx.laurent_element(terms)
        x, y = draw(), draw()
        rx, ry = ring.from_exact(x), ring.from_exact(y)
        assert ring.from_exact(x + y) == ring.add(rx, ry)
        assert ring.from_exact(x * y) == ring.mul(rx, ry)


def test_residue_ring_inverse_roundtrip():
    for ctx in (Q5, F3T, F9T):
        ring = ctx.residue_ring(5)
        rng = random.Random(31)
        for _ in range(40):
            raw = ring.from_int(rng.randint(1, 10_000))
            if ring.valuation(raw) != 0:
                continue
            assert ring.mul(raw, ring.inv(raw)) == ring.one()


def test_truncated_digits_and_valuation():
    ring = Q5.residue_ring(4)
    t = ring.to_truncated(ring.from_int(182))
    assert t.digits() == [2, 1, 2, 1]
    assert dv.valuation(t) == 0
    shifted = t * Q5.uniformizer_pow(2)
    assert dv.valuation(shifted) == 2
    assert shifted.known_mod == 6
    with pytest.raises(dv.PrecisionError):
        ring.to_truncated(ring.zero()).valuation()


def test_truncated_window_propagation():
    ring = Q3.residue_ring(5)
    a = ring.to_truncated(ring.from_int(7))
    b = ring.to_truncated(ring.from_int(11))
    assert (a + b).known_mod == 5
    assert (a - b).known_mod == 5
    # v(b) = 0, so the product window stays at 5
    assert (a * b).known_mod == 5


def test_extended_rational_ordering_and_arithmetic():
    inf = dv.ExtendedRational.infinity()
    two = dv.ExtendedRational(2)
    assert inf > two
    assert two < inf
    assert inf >= inf and inf == inf
    assert (inf + 5).is_infinite
    assert (two + Fraction(1, 2)) == Fraction(5, 2)
    assert min(inf, two) == two
    assert two.as_integer() == 2
    with pytest.raises(ValueError):
        inf.as_integer()


def test_field_context_validation():
    with pytest.raises(ValueError):
        dv.FieldContext.padic(6)
    with pytest.raises(ValueError):
        dv.FieldContext("padic", 3, 2)
    ctx = dv.FieldContext.laurent(2, 3)
    assert ctx.q == 8
    # modulus is the lex-smallest irreducible cubic over F2: 1 + x^2 + x^3
    assert ctx.residue.modulus == (1, 0, 1, 1)


def test_coercion_between_contexts_rejected():
    with pytest.raises(dv.BadFieldElement):
        Q3.coerce(Q5.from_int(1))
    with pytest.raises(dv.BadFieldElement):
        F3T.from_fraction(Fraction(1, 3))
