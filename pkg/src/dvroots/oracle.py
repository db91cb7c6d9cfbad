"""Brute-force verification oracle: exhaustive root scans modulo pi^N.

Everything here counts by enumeration, on purpose: the scan evaluates the
reduced polynomial at every residue of A/pi^N and keeps the zeros, then
groups them by congruence classes.  Grouping the roots of the reduction at
N = 2r + 1 (r the discriminant valuation) modulo pi^(r+1) puts the classes
in bijection with the roots of f in K, which is what makes this an
independent check of the Newton-polygon counting pipeline.

The padic-mode scan is vectorized with numpy when the modulus is large
(Horner on int64 blocks); the generic path is a plain Python loop.  Scans
refuse to start when they would exceed the evaluation budget.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, NotIntegral
from .resultants import discriminant_valuation

DEFAULT_BUDGET = 10_000_000

# (3e9)^2 < 2^63, so int64 Horner steps cannot overflow below this modulus
_NUMPY_MAX_MODULUS = 3_000_000_000
_NUMPY_MIN_MODULUS = 1 << 12
_CHUNK = 1 << 20


class Relation(enum.Enum):
    """Equivalence used to group residue roots.

    APPROX groups modulo pi^(r+1) (or degenerates to equality when N <= r);
    FINE groups modulo pi^(N-r).
    """

    APPROX = "approx"
    FINE = "fine"


@dataclass(frozen=True)
class ResidueRootSet:
    """All roots of the reduction of f in A/pi^N, canonically sorted."""

    ring: object
    roots: tuple  # ResidueRingElement, sorted by canonical key
    r: int  # discriminant valuation used for classing

    @property
    def N(self):
        return self.ring.N


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple  # tuple of tuples of ResidueRingElement
    relation: Relation
    modulus_exponent: int | None  # None when the relation degenerated to equality

    def __len__(self):
        return len(self.classes)

    def as_sets(self):
        return frozenset(
            frozenset(x.sort_key() for x in cls) for cls in self.classes
        )


def _require_monic_integral(f):
    if f.is_zero():
        raise NotIntegral("expected a nonzero monic integral polynomial")
    if not f.is_integral():
        raise NotIntegral("polynomial has a coefficient of negative valuation")
    if not f.is_monic():
        raise ValueError("oracle requires a monic polynomial; normalize first")


def _scan_padic_numpy(coeffs, modulus):
    roots = []
    for start in range(0, modulus, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, modulus), dtype=np.int64)
        acc = np.full(xs.shape, coeffs[-1], dtype=np.int64)
        for c in reversed(coeffs[:-1]):
            acc = (acc * xs + c) % modulus
        for hit in xs[acc == 0]:
            roots.append(int(hit))
    return roots


def roots_mod(f, N, budget=DEFAULT_BUDGET, r=None):
    """Exhaustively find all roots of f mod pi^N.

    f must be monic with integral coefficients; the scan costs q^N
    evaluations and refuses to exceed the budget.
    """
    _require_monic_integral(f)
    ring = f.ctx.residue_ring(N)
    needed = ring.size
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    if r is None:
        r = discriminant_valuation(f).valuation
    coeffs = f.ring_coefficients(ring)
    if ring.modulus is not None and _NUMPY_MIN_MODULUS <= ring.modulus <= _NUMPY_MAX_MODULUS:
        raw_roots = _scan_padic_numpy(coeffs, ring.modulus)
    else:
        raw_roots = [x for x in ring.enumerate_raw() if ring.is_zero(ring.eval_poly(coeffs, x))]
    roots = tuple(ring.wrap(x) for x in sorted(raw_roots, key=ring.sort_key))
    return ResidueRootSet(ring=ring, roots=roots, r=r)


def partition_roots(rootset, relation=Relation.APPROX):
    """Group a residue root set under the requested equivalence."""
    ring = rootset.ring
    N, r = ring.N, rootset.r
    if relation is Relation.APPROX:
        if N <= r:
            # degenerate branch: equality
            classes = tuple((x,) for x in rootset.roots)
            return ClassPartition(classes, relation, None)
        k = r + 1
    else:
        if N <= r:
            raise ValueError("the fine relation needs N > r")
        k = N - r
    buckets = {}
    for x in rootset.roots:
        key = ring.sort_key(ring.truncate(x.value, k))
        buckets.setdefault(key, []).append(x)
    classes = tuple(tuple(v) for _, v in sorted(buckets.items()))
    return ClassPartition(classes, relation, k)


def count_roots_oracle(f, budget=DEFAULT_BUDGET, N=None):
    """Number of roots of f in K, counted as |S_N / approx| at N = 2r + 1."""
    r = discriminant_valuation(f).valuation
    if N is None:
        N = 2 * r + 1
    rootset = roots_mod(f, N, budget, r=r)
    return len(partition_roots(rootset, Relation.APPROX))


def equivalence_agreement(f, budget=DEFAULT_BUDGET, N=None):
    """Whether the coarse and fine partitions coincide as set partitions."""
    r = discriminant_valuation(f).valuation
    if N is None:
        N = 2 * r + 1
    rootset = roots_mod(f, N, budget, r=r)
    coarse = partition_roots(rootset, Relation.APPROX)
    fine = partition_roots(rootset, Relation.FINE)
    return coarse.as_sets() == fine.as_sets()


@dataclass(frozen=True)
class BoundCheck:
    name: str
    passed: bool
    observed: int
    limit: int
    note: str = ""


@dataclass(frozen=True)
class BoundCheckReport:
    r: int
    N: int
    root_count: int  # |S_N / approx| = number of roots of f in K
    residue_root_count: int  # |S_N|
    checks: tuple

    @property
    def all_pass(self):
        return all(c.passed for c in self.checks)


def check_bounds(f, budget=DEFAULT_BUDGET, N=None):
    """Verify the size bounds tying |S_N|, the class count and q powers.

    Checks, with q the residue cardinality and r the discriminant valuation:
    the K-root count is at most q^(floor(r/2)+1); |S_N| is at most q^r times
    the K-root count and at most q^(r+floor(r/2)+1); and when r = 0, |S_N|
    equals the K-root count for every N >= 1 (swept here for N up to 2r+2).
    """
    r = discriminant_valuation(f).valuation
    if N is None:
        N = 2 * r + 1
    q = f.ctx.q
    rootset = roots_mod(f, N, budget, r=r)
    classes = partition_roots(rootset, Relation.APPROX)
    k_count = len(classes)
    s_count = len(rootset.roots)
    checks = [
        BoundCheck(
            name="k_roots_vs_separation",
            passed=k_count <= q ** (r // 2 + 1),
            observed=k_count,
            limit=q ** (r // 2 + 1),
            note="number of roots in K <= q^(floor(r/2)+1)",
        ),
        BoundCheck(
            name="residue_roots_vs_classes",
            passed=s_count <= q**r * k_count,
            observed=s_count,
            limit=q**r * k_count,
            note="|S_N| <= q^r * (number of roots in K)",
        ),
        BoundCheck(
            name="residue_roots_absolute",
            passed=s_count <= q ** (r + r // 2 + 1),
            observed=s_count,
            limit=q ** (r + r // 2 + 1),
            note="|S_N| <= q^(r + floor(r/2) + 1)",
        ),
    ]
    if r == 0:
        for n_sweep in range(1, 2 * r + 3):
            sweep_set = roots_mod(f, n_sweep, budget, r=r)
            checks.append(
                BoundCheck(
                    name=f"exact_count_at_N_{n_sweep}",
                    passed=len(sweep_set.roots) == k_count,
                    observed=len(sweep_set.roots),
                    limit=k_count,
                    note="r = 0: |S_N| equals the K-root count for all N >= 1",
                )
            )
    return BoundCheckReport(
        r=r,
        N=N,
        root_count=k_count,
        residue_root_count=s_count,
        checks=tuple(checks),
    )
