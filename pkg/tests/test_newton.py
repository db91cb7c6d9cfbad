import random
from fractions import Fraction

import pytest

import dvroots as dv

Q3 = dv.FieldContext.padic(3)
Q5 = dv.FieldContext.padic(5)

HEXAGON = [(-3, 1), (-1, 0), (1, 0), (3, 1), (-1, 2), (1, 2)]


def test_hexagon_has_three_lower_edges():
    polygon = dv.newton_polygon_from_points(HEXAGON)
    edges = dv.lower_edges(polygon)
    assert len(edges) == 3
    assert [e.slope for e in edges] == [Fraction(-1, 2), 0, Fraction(1, 2)]
    assert polygon.lower_vertices == ((-3, 1), (-1, 0), (1, 0), (3, 1))


def test_two_point_polygons():
    x = dv.Poly.x(Q5)
    single = dv.lower_edges(dv.newton_polygon(x - 5))
    assert len(single) == 1
    assert single[0].slope == -1 and single[0].length == 1

    sq = dv.lower_edges(dv.newton_polygon(x**2 - 5))
    assert len(sq) == 1
    assert sq[0].slope == Fraction(-1, 2) and sq[0].length == 2


def test_monomial_has_no_edges():
    f = dv.Poly.monomial(Q5, 3, 7)
    assert dv.lower_edges(dv.newton_polygon(f)) == []


def test_zero_polynomial_rejected():
    with pytest.raises(dv.ZeroPolynomial):
        dv.newton_polygon(dv.Poly(Q5, {}))


def test_edge_root_data_examples():
    x = dv.Poly.x(Q5)
    (edge,) = dv.lower_edges(dv.newton_polygon(x**2 - 5))
    assert dv.edge_root_data(edge) == (2, Fraction(1, 2))
    (edge,) = dv.lower_edges(dv.newton_polygon(x - 5))
    assert dv.edge_root_data(edge) == (1, 1)
    # hull of {(0,0),(1,0),(2,1)}: counts 1 and 1 at valuations 0 and -1
    f = 1 + x + dv.Poly.monomial(Q5, 2, 5)
    data = [dv.edge_root_data(e) for e in dv.lower_edges(dv.newton_polygon(f))]
    assert data == [(1, 0), (1, -1)]


def test_collinear_support_is_recorded_not_vertex():
    # {(0,2),(1,1),(2,0)} all on one segment of slope -1
    f = dv.Poly(Q3, {0: 9, 1: 3, 2: 1})
    polygon = dv.newton_polygon(f)
    assert polygon.lower_vertices == ((0, 2), (2, 0))
    (edge,) = dv.lower_edges(polygon)
    assert len(edge.support_on_edge) == 3


def _random_poly(rng, ctx, max_degree=8):
    coeffs = {}
    for e in range(max_degree + 1):
        if rng.random() < 0.5:
            v = rng.randint(0, 6)
            unit = rng.randint(1, ctx.p - 1)
            coeffs[e] = unit * ctx.p**v
    if not coeffs:
        coeffs[0] = 1
    return dv.Poly(ctx, coeffs)


def test_edge_lengths_cover_support_span():
    rng = random.Random(13)
    for _ in range(100):
        f = _random_poly(rng, Q3)
        if f.num_terms < 2:
            continue
        edges = dv.lower_edges(dv.newton_polygon(f))
        assert sum(e.length for e in edges) == f.degree - f.order


def test_support_lies_on_or_above_every_edge():
    rng = random.Random(14)
    for _ in range(100):
        f = _random_poly(rng, Q5)
        polygon = dv.newton_polygon(f)
        for edge in dv.lower_edges(polygon):
            (x0, y0), (x1, y1) = edge.left, edge.right
            for (px, py) in polygon.support:
                # exact half-plane test against the edge's full line
                assert (py - y0) * (x1 - x0) >= (y1 - y0) * (px - x0)


def test_slopes_strictly_increase():
    rng = random.Random(15)
    for _ in range(100):
        f = _random_poly(rng, Q3)
        slopes = [e.slope for e in dv.lower_edges(dv.newton_polygon(f))]
        assert all(a < b for a, b in zip(slopes, slopes[1:]))


def test_constant_multiple_shifts_polygon_vertically():
    rng = random.Random(16)
    for _ in range(50):
        f = _random_poly(rng, Q3)
        if f.num_terms < 2:
            continue
        c = 9  # valuation 2
        edges = dv.lower_edges(dv.newton_polygon(f))
        scaled_edges = dv.lower_edges(dv.newton_polygon(f.scaled(c)))
        assert [(e.slope, e.length) for e in edges] == [
            (e.slope, e.length) for e in scaled_edges
        ]
        assert all(
            se.left[1] == e.left[1] + 2
            for e, se in zip(edges, scaled_edges)
        )


def test_uniformizer_scale_shifts_slopes():
    # substituting X -> pi X divides each root by pi, so every slope rises by 1
    rng = random.Random(17)
    for _ in range(50):
        f = _random_poly(rng, Q5)
        if f.num_terms < 2:
            continue
        base = [(e.slope, e.length) for e in dv.lower_edges(dv.newton_polygon(f))]
        up = [
            (e.slope, e.length)
            for e in dv.lower_edges(dv.newton_polygon(f.scale_variable_uniformizer(1)))
        ]
        down = [
            (e.slope, e.length)
            for e in dv.lower_edges(dv.newton_polygon(f.scale_variable_uniformizer(-1)))
        ]
        assert up == [(s + 1, w) for s, w in base]
        assert down == [(s - 1, w) for s, w in base]
