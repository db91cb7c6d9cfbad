import random
from fractions import Fraction

import pytest

import dvroots as dv
from dvroots.regularity import CHAR_DIVIDES_LENGTH, TOO_MANY_SUPPORT_POINTS

Q2 = dv.FieldContext.padic(2)
Q3 = dv.FieldContext.padic(3)
Q5 = dv.FieldContext.padic(5)
F3T = dv.FieldContext.laurent(3)
F5T = dv.FieldContext.laurent(5)


def test_sharp_family_is_regular():
    for ctx in (Q3, F3T):
        for t in (1, 2, 3):
            assert dv.is_regular(dv.sharp_family(t, ctx)).regular


def test_char_divides_length_detected():
    x = dv.Poly.x(Q2)
    f = x**2 + 2 * x + 2
    report = dv.is_regular(f)
    assert not report.regular
    assert report.per_edge[0].failure == CHAR_DIVIDES_LENGTH


def test_too_many_support_points_detected():
    x = dv.Poly.x(Q3)
    f = x**2 + 3 * x + 9
    report = dv.is_regular(f)
    assert not report.regular
    assert report.per_edge[0].failure == TOO_MANY_SUPPORT_POINTS


def test_monomial_vacuously_regular():
    report = dv.is_regular(dv.Poly.monomial(Q3, 4, 5))
    assert report.regular and report.per_edge == ()


def test_lower_binomials_requires_regular():
    x = dv.Poly.x(Q3)
    with pytest.raises(dv.NotRegular) as excinfo:
        dv.lower_binomials(x**2 + 3 * x + 9)
    assert not excinfo.value.report.regular


def test_lower_binomials_examples():
    x5 = dv.Poly.x(Q5)
    (b,) = dv.lower_binomials(x5**2 - 5)
    assert (b.s_prime, b.s) == (0, 2)
    assert b.a_s_prime == Q5.from_int(-5) and b.a_s == Q5.one()

    f = 1 + x5 + dv.Poly.monomial(Q5, 2, 5)
    b1, b2 = dv.lower_binomials(f)
    assert (b1.s_prime, b1.s) == (0, 1)
    assert (b2.s_prime, b2.s) == (1, 2)

    fam = dv.sharp_family(2, Q3)
    binomials = dv.lower_binomials(fam)
    assert [(b.s_prime, b.s) for b in binomials] == [(0, 2), (2, 4)]


def test_sharp_family_polygon_vertices():
    for t in (1, 2, 3):
        fam = dv.sharp_family(t, Q3)
        polygon = dv.newton_polygon(fam)
        q = Q3.q
        expected = tuple((i * (q - 1), i * i * (q - 1)) for i in range(t + 1))
        assert polygon.lower_vertices == expected
        assert len(dv.lower_edges(polygon)) == t


def test_sharp_family_t1_value():
    fam = dv.sharp_family(1, Q3)
    assert fam == dv.Poly(Q3, {0: 1, 2: -9})


def test_count_binomial_roots_examples():
    x5 = dv.Poly.x(Q5)
    (b,) = dv.lower_binomials(x5**2 - 5)
    assert dv.count_binomial_roots(b) == (0, Fraction(1, 2))

    (b,) = dv.lower_binomials(x5**2 + 1)
    assert dv.count_binomial_roots(b) == (2, Fraction(0))

    x3 = dv.Poly.x(Q3)
    (b,) = dv.lower_binomials(x3**2 + 1)
    assert dv.count_binomial_roots(b) == (0, Fraction(0))


def test_count_roots_examples():
    assert dv.count_roots(dv.sharp_family(3, Q3)).total_nonzero == 6
    for ctx in (Q2, Q3, Q5, F3T):
        assert dv.count_roots(dv.Poly.x(ctx) - 1).total_nonzero == 1
    f = 1 + dv.Poly.x(Q5) + dv.Poly.monomial(Q5, 2, 5)
    result = dv.count_roots(f)
    assert result.total_nonzero == 2
    assert result.per_slope == ((Fraction(0), 1), (Fraction(-1), 1))
    assert result.zero_root_multiplicity == 0
    assert result.bound == 8


def test_count_roots_zero_multiplicity():
    x3 = dv.Poly.x(Q3)
    f = (x3**2 + 1) * dv.Poly.monomial(Q3, 2, 1)
    result = dv.count_roots(f)
    assert result.zero_root_multiplicity == 2
    assert result.total_nonzero == 0


def test_count_roots_rejects_non_regular():
    x2 = dv.Poly.x(Q2)
    with pytest.raises(dv.NotRegular):
        dv.count_roots(x2**2 + 2 * x2 + 2)


def test_count_matches_exhaustive_residue_search_mod_p():
    # for unit-edge polynomials with r = 0, roots in K* biject with
    # nonzero residue roots; check against a direct mod-p enumeration
    rng = random.Random(99)
    for _ in range(60):
        p = rng.choice((3, 5, 7))
        ctx = dv.FieldContext.padic(p)
        degree = rng.randint(1, 4)
        coeffs = {degree: 1}
        for e in range(degree):
            coeffs[e] = rng.randint(0, p - 1)
        f = dv.Poly(ctx, coeffs)
        if f.is_zero() or f.num_terms < 2:
            continue
        try:
            r = dv.discriminant_valuation(f).valuation
        except dv.VanishingDiscriminant:
            continue
        if r != 0 or not dv.is_regular(f).regular:
            continue
        brute = sum(
            1
            for a in range(1, p)
            if f.evaluate(ctx.from_int(a)).valuation() >= 1
        )
        assert dv.count_roots(f).total_nonzero == brute


def test_binomial_count_invariances():
    rng = random.Random(7)
    for _ in range(80):
        p = rng.choice((3, 5))
        ctx = dv.FieldContext.padic(p)
        n = rng.choice((1, 2, 3, 4))
        if n % p == 0:
            continue
        sp = rng.randint(0, 2)
        a = rng.choice((1, -1)) * rng.randint(1, p - 1) * p ** rng.randint(0, 3)
        b = rng.choice((1, -1)) * rng.randint(1, p - 1) * p ** rng.randint(0, 3)
        f = dv.Poly(ctx, {sp: a, sp + n: b})
        (binom,) = dv.lower_binomials(f)
        count, root_val = dv.count_binomial_roots(binom)
        # scaling the binomial by a nonzero constant changes nothing
        (binom_scaled,) = dv.lower_binomials(f.scaled(ctx.from_int(p * 3)))
        assert dv.count_binomial_roots(binom_scaled)[0] == count
        # substituting X -> uX with first digit 1 changes nothing
        u = ctx.from_int(1 + p)
        (binom_sub,) = dv.lower_binomials(f.scale_variable(u))
        assert dv.count_binomial_roots(binom_sub)[0] == count
        # the count is 0 or exactly gcd(n, q - 1)
        import math

        assert count in (0, math.gcd(n, ctx.q - 1))


def test_counts_against_oracle_on_corpus_sample(corpus):
    for f, r in corpus[:40]:
        rc = dv.count_roots(f)
        expected = rc.total_nonzero + (1 if rc.zero_root_multiplicity else 0)
        assert dv.count_roots_oracle(f) == expected
