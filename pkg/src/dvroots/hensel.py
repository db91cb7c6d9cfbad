"""Hensel lifting and exact root finding in K to prescribed precision.

The workhorse is a Newton iteration carried out in a residue ring A/pi^W:
every iterate is an exact ring element, the only indeterminacy is the usual
loss of e = v(f'(gamma)) digits in each division, and the iteration is
self-correcting, so a working window of (target + e + slack) digits certifies
the result.  Residuals are certified by evaluating f exactly at the returned
approximant.

``find_roots`` turns root finding over K into batches of the counting
bijection: reduce to a monic integral polynomial, enumerate its residue
roots at N = 2r + 1 via the oracle scan, group them modulo pi^(r+1), and
lift one representative per class.  Polynomials whose leading coefficient is
a unit (after clearing content) need a single batch; otherwise each lower
edge of integer slope is rescaled so its roots become units, at the price of
a larger discriminant for the rescaled batch (the budget guard reports
honestly when that becomes infeasible).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    HenselHypothesisFailed,
    NotIntegral,
    VanishingDiscriminant,
    ZeroPolynomial,
)
from .fields import TruncatedK
from .newton import lower_edges, newton_polygon
from .oracle import DEFAULT_BUDGET, Relation, partition_roots, roots_mod
from .polynomials import Poly
from .resultants import discriminant_valuation

_MAX_NEWTON_STEPS = 200


@dataclass(frozen=True)
class ApproxRoot:
    """A lifted root: truncated value, certified residual, class key.

    ``residual_valuation`` is a certified lower bound for v(f(value)),
    obtained by exact evaluation at the approximant.  ``class_id`` is the
    reduction modulo pi^(r+1) of the root of the monic batch polynomial the
    lift came from (None when no discriminant data is available).
    """

    value: TruncatedK
    residual_valuation: int
    class_id: object

    @property
    def valuation(self):
        return self.value.valuation().as_integer()

    def digits(self, count=None):
        return self.value.digits(count)

    def __repr__(self):
        return (
            f"ApproxRoot(v={self.valuation}, digits={self.digits()}, "
            f"residual>={self.residual_valuation})"
        )


@dataclass(frozen=True)
class RootSearchResult:
    roots: tuple
    zero_root_multiplicity: int

    def __len__(self):
        return len(self.roots)


def _exact_valuation(x):
    v = x.valuation()
    return None if v.is_infinite else v.as_integer()


def _newton_refine(f, gamma, target):
    """Newton-iterate from an exact gamma in A to residual >= target.

    Requires v(f(gamma)) > 2 v(f'(gamma)).  Returns (value, residual,
    window): the truncated root, the certified residual valuation and the
    number of digits the value is known modulo.
    """
    ctx = f.ctx
    fgamma = f.evaluate(gamma)
    if fgamma.is_zero():
        window = target + 2
        return TruncatedK(ctx, gamma, window), target, window
    c0 = _exact_valuation(fgamma)
    fprime = f.derivative()
    fpgamma = fprime.evaluate(gamma)
    if fpgamma.is_zero():
        raise HenselHypothesisFailed("f'(gamma) = 0")
    e = _exact_valuation(fpgamma)
    if not c0 > 2 * e:
        raise HenselHypothesisFailed(
            f"v(f(gamma)) = {c0} does not exceed 2 v(f'(gamma)) = {2 * e}"
        )
    t_eff = max(target, c0 + 1)
    window = t_eff + e + 2
    ring = ctx.residue_ring(window)
    fc = f.ring_coefficients(ring)
    fpc = fprime.ring_coefficients(ring)
    x = ring.from_exact(gamma)
    residual = c0
    for _ in range(_MAX_NEWTON_STEPS):
        fx = ring.eval_poly(fc, x)
        residual = ring.valuation(fx)
        if residual >= t_eff:
            break
        fpx = ring.eval_poly(fpc, x)
        if ring.valuation(fpx) != e:
            raise AssertionError("derivative valuation drifted during lifting")
        num = ring.shift_down(fx, e)
        den = ring.shift_down(fpx, e)
        x = ring.sub(x, ring.mul(num, ring.inv(den)))
    else:
        raise AssertionError("Newton iteration failed to converge")
    # the true root xi satisfies v(x - xi) >= residual - e, and the displacement
    # from gamma must have valuation exactly c0 - e
    moved = ring.sub(x, ring.from_exact(gamma))
    if ring.valuation(moved) != c0 - e:
        raise AssertionError("lifted root does not satisfy the distance contract")
    return ring.to_truncated(x), residual, residual - e


def hensel_lift(f, gamma, target_precision):
    """Lift an approximate root gamma of f to certified precision.

    Preconditions: f has integral coefficients, v(gamma) >= 0 and
    v(f(gamma)) > 2 v(f'(gamma)).  The returned root xi satisfies
    v(xi - gamma) = v(f(gamma)/f'(gamma)) and v(f(xi)) >= target_precision.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot lift a root of the zero polynomial")
    if target_precision < 1:
        raise ValueError("target precision must be >= 1")
    if not f.is_integral():
        raise NotIntegral("hensel_lift expects coefficients in the valuation ring")
    gamma = f.ctx.coerce(gamma)
    if isinstance(gamma, TruncatedK):
        gamma = gamma.approx
    if not gamma.is_zero() and gamma.valuation() < 0:
        raise NotIntegral("the starting point must lie in the valuation ring")
    trunc, residual, window = _newton_refine(f, gamma, target_precision)
    value = TruncatedK(f.ctx, trunc.approx, window)
    certified = _exact_valuation(f.evaluate(value.approx))
    if certified is None:
        certified = max(target_precision, window)
    class_id = None
    try:
        r = discriminant_valuation(f).valuation
        if window >= r + 1:
            ring = f.ctx.residue_ring(r + 1)
            class_id = ring.wrap(ring.from_exact(value.approx))
    except VanishingDiscriminant:
        pass
    return ApproxRoot(value=value, residual_valuation=certified, class_id=class_id)


def _monicize(h):
    """Monic integral g with g(u X) = u^(n-1) h(X), u the leading coefficient.

    Only multiplications are used, so the construction is exact in both
    field modes; roots of h correspond to roots of g scaled by u.
    """
    n = h.degree
    u = h.leading_coefficient
    coeffs = {n: h.ctx.one()}
    for e, c in h.coeffs.items():
        if e != n:
            coeffs[e] = c * u ** (n - 1 - e)
    return Poly(h.ctx, coeffs), u


def _divide_truncated(value, divisor):
    """value / divisor for an exact divisor with v(divisor) <= v(value).

    Performed in a residue ring after shifting the common uniformizer power
    out, so it is exact in both modes; the quotient window shrinks by
    v(divisor).
    """
    ctx = value.ctx
    dv = divisor.valuation().as_integer()
    num = value.approx * ctx.uniformizer_pow(-dv)
    den = divisor * ctx.uniformizer_pow(-dv)
    window = value.known_mod - dv
    ring = ctx.residue_ring(window)
    raw = ring.mul(ring.from_exact(num), ring.inv(ring.from_exact(den)))
    return TruncatedK(ctx, ring.to_exact(raw), window)


def _lift_batch(F, m, units_only, target, budget, edge=None):
    """Lift roots of F through the scale X -> pi^m X.

    With ``units_only`` the batch keeps exactly the roots of F of valuation
    m (the units of the rescaled polynomial); otherwise it returns every
    root of F in K, which is valid when F has unit leading coefficient.
    ``target`` is the residual goal for F at the returned approximants.
    """
    ctx = F.ctx
    h = F.scale_variable_uniformizer(m) if m else F
    low = h.content_valuation()
    if low:
        h = h.scaled(ctx.uniformizer_pow(-low))
    n = h.degree
    g, u = _monicize(h)
    d = u.valuation().as_integer()
    r = discriminant_valuation(g).valuation
    N = 2 * r + 1
    needed = ctx.q**N
    if needed > budget:
        raise BudgetExceeded(needed, budget, edge=edge)
    rootset = roots_mod(g, N, budget, r=r)
    classes = partition_roots(rootset, Relation.APPROX)
    # residual bookkeeping: F(pi^m x) = pi^low h(x) and g(u x) = u^(n-1) h(x),
    # so v(F(xi)) = low + v(g(y)) - (n-1) d for y = u x.
    g0val = _exact_valuation(g.coefficient(0))
    t_g = max(
        N,
        target - low + (n - 1) * d,
        target + r + 1,
        d + r + 2,
        (g0val if g0val is not None else 0) + r + 2,
    )
    class_ring = ctx.residue_ring(r + 1)
    out = []
    for cls in classes.classes:
        rep = cls[0]
        rep_val = rep.valuation()
        if units_only and rep_val < min(d, rep.precision):
            # the whole class consists of roots of valuation rep_val < d
            continue
        y, _, window = _newton_refine(g, rep.to_exact(), t_g)
        y_val = _exact_valuation(y.approx)
        if y_val is None or y_val >= window:
            # zero beyond the window: valuation exceeds every candidate d
            if units_only:
                continue
            raise AssertionError("unresolvable root valuation in batch lift")
        if units_only and y_val != d:
            continue
        x = _divide_truncated(y, u)
        xi = x * ctx.uniformizer_pow(m) if m else x
        class_id = class_ring.wrap(class_ring.from_exact(y.approx))
        out.append((xi, class_id))
    return out


def find_roots(f, target_precision, budget=DEFAULT_BUDGET):
    """All roots of f in K, each certified to v(f(root)) >= target_precision.

    The zero root is reported through its multiplicity ord(f); nonzero roots
    come back as ApproxRoots sorted by (valuation, class key).  Requires a
    nonzero discriminant.  Edges of non-integer slope carry no roots in K
    and are skipped.  Raises BudgetExceeded (with no partial results) when
    some batch would need more than ``budget`` residue evaluations.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot find roots of the zero polynomial")
    if target_precision < 1:
        raise ValueError("target precision must be >= 1")
    ctx = f.ctx
    zero_mult = f.order
    if zero_mult >= 2:
        raise VanishingDiscriminant("0 is a repeated root")
    F = f.shifted(-zero_mult)
    if F.degree == 0:
        return RootSearchResult(roots=(), zero_root_multiplicity=zero_mult)
    content = F.content_valuation()
    if content:
        F = F.scaled(ctx.uniformizer_pow(-content))

    collected = []
    if F.leading_coefficient.valuation() == 0:
        # every root of F in K is integral: one batch covers them all
        collected.extend(_lift_batch(F, 0, False, target_precision, budget))
    else:
        for edge in lower_edges(newton_polygon(F)):
            root_val = -edge.slope
            if root_val.denominator != 1:
                continue
            m = int(root_val)
            # v(f(xi)) = zero_mult * m + v(F(xi)) at a root of valuation m
            target_f = target_precision - zero_mult * m
            collected.extend(
                _lift_batch(F, m, True, max(target_f, 1), budget, edge=edge)
            )

    roots = []
    for xi, class_id in collected:
        certified = _check_residual(f, xi, target_precision)
        roots.append(
            ApproxRoot(value=xi, residual_valuation=certified, class_id=class_id)
        )
    roots.sort(key=lambda root: (root.valuation, _class_key(root.class_id)))
    return RootSearchResult(roots=tuple(roots), zero_root_multiplicity=zero_mult)


def _class_key(class_id):
    if class_id is None:
        return ()
    key = class_id.sort_key()
    return key if isinstance(key, tuple) else (key,)


def _check_residual(f, xi, target):
    value = f.evaluate(xi.approx)
    certified = _exact_valuation(value)
    if certified is None:
        return max(target, xi.known_mod)
    if certified < target:
        raise AssertionError(
            f"lifted root certifies only v(f(x)) = {certified} < {target}"
        )
    return certified
