"""Shared fixtures: deterministic random corpus of monic regular polynomials."""

import random

import pytest

import dvroots as dv

CORPUS_SEED = 20240811
CORPUS_BUDGET = dv.DEFAULT_BUDGET
CORPUS_PRIMES = (2, 3, 5)
CORPUS_SIZE = 200


def random_coefficient(rng, p, max_valuation=3, zero_chance=0.15):
    """A random element of Z with valuation in 0..max_valuation, or zero."""
    if rng.random() < zero_chance:
        return 0
    v = rng.randint(0, max_valuation)
    unit = rng.randint(1, p - 1) + p * rng.randint(0, 3)
    sign = -1 if rng.random() < 0.5 else 1
    return sign * unit * p**v


def make_corpus(count=CORPUS_SIZE, primes=CORPUS_PRIMES, seed=CORPUS_SEED,
                budget=CORPUS_BUDGET):
    """Monic squarefree regular polynomials with a feasible residue scan.

    Each entry is (poly, r) with r the discriminant valuation and
    q^(2r+1) <= budget.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice(primes)
        ctx = dv.FieldContext.padic(p)
        degree = rng.randint(2, 5)
        coeffs = {degree: 1}
        for e in range(degree):
            c = random_coefficient(rng, p)
            if c:
                coeffs[e] = c
        f = dv.Poly(ctx, coeffs)
        if f.order >= 2:
            continue
        try:
            r = dv.discriminant_valuation(f).valuation
        except dv.VanishingDiscriminant:
            continue
        if not dv.is_regular(f).regular:
            continue
        if ctx.q ** (2 * r + 1) > budget:
            continue
        out.append((f, r))
    return out


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()
