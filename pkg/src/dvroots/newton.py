"""Newton polygons: exact lower hulls of coefficient-valuation point sets.

The lower hull is computed by a monotone chain with exact rational
cross-product tests; no floating point is involved anywhere.  Each lower
edge reports its exact slope, its horizontal length and every support point
lying on it, which is what both the root-valuation read-off and the
regularity test consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroPolynomial


def _as_point(pt):
    x, y = pt
    return (int(x), Fraction(y))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Strictly convex lower-hull vertices of a point set, left to right.

    Collinear interior points are not vertices.  Duplicate abscissas are
    allowed; only the lowest point at each end can be a vertex.
    """
    pts = sorted({_as_point(p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        # a later point with the same abscissa sits directly above: skip it
        if hull and hull[-1][0] == p[0]:
            continue
        hull.append(p)
    return hull


@dataclass(frozen=True)
class LowerEdge:
    """One lower edge: endpoints, exact slope, horizontal length, support on it."""

    left: tuple
    right: tuple
    slope: Fraction
    length: int
    support_on_edge: tuple

    def __repr__(self):
        return (
            f"LowerEdge({self.left} -> {self.right}, slope={self.slope}, "
            f"length={self.length})"
        )


@dataclass(frozen=True)
class NewtonPolygon:
    """Support points together with the lower-hull vertices."""

    support: tuple
    lower_vertices: tuple

    @property
    def edges(self):
        return lower_edges(self)


def newton_polygon_from_points(points):
    """Polygon of an abstract point set (testing/inspection entry point)."""
    support = tuple(sorted({_as_point(p) for p in points}))
    if not support:
        raise ValueError("empty point set")
    return NewtonPolygon(support=support, lower_vertices=tuple(lower_hull(support)))


def newton_polygon(f):
    """Newton polygon of a nonzero polynomial: hull of {(i, v(a_i))}."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    points = [(e, c.valuation().value) for e, c in f.coeffs.items()]
    return newton_polygon_from_points(points)


def lower_edges(polygon):
    """Lower edges ordered by increasing abscissa; slopes strictly increase."""
    verts = polygon.lower_vertices
    out = []
    for left, right in zip(verts, verts[1:]):
        slope = Fraction(right[1] - left[1], right[0] - left[0])
        on_edge = tuple(
            p
            for p in polygon.support
            if left[0] <= p[0] <= right[0]
            and (p[1] - left[1]) * (right[0] - left[0])
            == (right[1] - left[1]) * (p[0] - left[0])
        )
        out.append(
            LowerEdge(
                left=left,
                right=right,
                slope=slope,
                length=right[0] - left[0],
                support_on_edge=on_edge,
            )
        )
    return out


def edge_root_data(edge):
    """(number of roots in the algebraic closure, their common valuation).

    The count is the horizontal length; the valuation is the negated slope.
    Membership of those roots in K itself is a separate question answered by
    the regularity counting.
    """
    return edge.length, -edge.slope
