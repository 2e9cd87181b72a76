import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackychow.arith import LaurentPoly2, UniPoly
from stackychow.parsing import parse_laurent
from stackychow.sampling import random_laurent, random_rays
from stackychow.toric import (
    P2_FAN,
    Fan2D,
    convex_hull,
    det,
    edge_data,
    edge_polynomial,
    minkowski_sum,
    newton_polygon,
    smooth_complete_fan,
)

EXAMPLE = "x^2-3*x+2+y"


def test_newton_polygon_of_example():
    gamma = newton_polygon(parse_laurent(EXAMPLE))
    assert gamma.kind == "polygon"
    assert set(gamma.vertices) == {(0, 0), (2, 0), (0, 1)}


def test_edge_data_of_example():
    edges = edge_data(newton_polygon(parse_laurent(EXAMPLE)))
    got = {e.rho: e.lam for e in edges}
    assert got == {(0, 1): 0, (-1, -2): -2, (1, 0): 0}
    for e in edges:
        assert e.lam == min(e.rho[0] * v[0] + e.rho[1] * v[1] for v in [(0, 0), (2, 0), (0, 1)])


@pytest.mark.parametrize(
    "rho, poly",
    [((0, 1), [2, -3, 1]), ((-1, -2), [1, 1]), ((1, 0), [1, 2])],
)
def test_edge_polynomials_of_example(rho, poly):
    f = parse_laurent(EXAMPLE)
    (e,) = [e for e in edge_data(newton_polygon(f)) if e.rho == rho]
    assert edge_polynomial(f, e) == UniPoly(poly)


def test_segment_has_two_opposite_edges():
    gamma = newton_polygon(parse_laurent("x + y"))
    assert gamma.kind == "segment"
    rhos = sorted(e.rho for e in edge_data(gamma))
    assert rhos == [(-1, -1), (1, 1)]


def test_degenerate_inputs():
    with pytest.raises(ValueError):
        newton_polygon(LaurentPoly2())
    with pytest.raises(ValueError):
        edge_data(newton_polygon(parse_laurent("3*x*y")))


def test_normals_wind_once(rng):
    for _ in range(50):
        edges = edge_data(newton_polygon(random_laurent(rng)))
        sx = sum(e.direction[0] * e.steps for e in edges)
        sy = sum(e.direction[1] * e.steps for e in edges)
        assert (sx, sy) == (0, 0)
        if len(edges) > 2:
            for a, b in zip(edges, edges[1:] + edges[:1]):
                assert det(a.rho, b.rho) > 0


def test_minkowski_property(rng):
    # the Newton polygon of a product is the sum of the Newton polygons
    for _ in range(30):
        f, g = random_laurent(rng), random_laurent(rng)
        assert newton_polygon(f * g).vertices == minkowski_sum(newton_polygon(f), newton_polygon(g)).vertices


def test_convex_hull_drops_interior_and_collinear_points():
    hull = convex_hull([(0, 0), (1, 0), (2, 0), (1, 1), (0, 2), (2, 2), (1, 2)])
    assert hull.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_p2_fan_is_smooth_and_complete():
    assert P2_FAN.is_complete() and P2_FAN.is_smooth()


def test_fan_example_inserts_11():
    fan = smooth_complete_fan([(1, 0), (1, 2)])
    assert (1, 1) in fan.rays
    assert fan.is_complete() and fan.is_smooth()


def test_fan_from_example_normals():
    fan = smooth_complete_fan([(0, 1), (-1, -2), (1, 0)])
    assert {(0, 1), (-1, -2), (1, 0)} <= set(fan.rays)
    assert fan.is_smooth()


def test_incomplete_fans_are_detected():
    assert not Fan2D([(1, 0), (0, 1)]).is_complete()
    singular = Fan2D([(1, 0), (0, 1), (-1, 1), (-1, -1)])
    assert singular.is_complete() and not singular.is_smooth()
    assert not Fan2D([(0, 1), (1, 0), (-1, -1)]).is_complete()


@given(st.integers(0, 10**6))
def test_fan_audit_random(seed):
    rays = random_rays(random.Random(seed))
    fan = smooth_complete_fan(rays)
    assert set(rays) <= set(fan.rays)
    assert fan.is_complete()
    assert all(d == 1 for d in fan.adjacent_determinants())


def test_fan_rejects_non_primitive():
    with pytest.raises(ValueError):
        smooth_complete_fan([(2, 0)])


def test_edge_polynomial_rejects_foreign_edges():
    f = parse_laurent(EXAMPLE)
    g = parse_laurent("x^3 + y + 1")
    (e,) = [e for e in edge_data(newton_polygon(g)) if e.rho == (0, 1)]
    with pytest.raises(ValueError):
        edge_polynomial(f, e)
