import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackychow.chow import point_ring, projective_space
from stackychow.equivariant import (
    FixedComponentData,
    LaurentT,
    check_t_independence,
    invert_ctop,
    localize_integrate,
    parse_laurent_t,
    pn_fixed_point_data,
)


def test_p1_sign_convention():
    pt = point_ring()
    comps = [
        FixedComponentData(pt, LaurentT.t(pt), LaurentT.t(pt)),
        FixedComponentData(pt, LaurentT(pt), LaurentT.t(pt, 1, -1)),
    ]
    raw = localize_integrate(comps)
    assert check_t_independence(raw) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pn_hyperplane_power(n):
    data = pn_fixed_point_data(n, lambda h, _w: h**n)
    assert check_t_independence(localize_integrate(data)) == (projective_space(n).gen("h") ** n).integrate() == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pn_unit_integrates_to_zero(n):
    pt = point_ring()
    data = pn_fixed_point_data(n, lambda h, _w: LaurentT.constant(1, pt))
    assert localize_integrate(data).is_zero()


@pytest.mark.parametrize("n, k", [(n, k) for n in (1, 2, 3) for k in range(n)])
def test_pn_low_powers_vanish(n, k):
    data = pn_fixed_point_data(n, lambda h, _w: h**k)
    assert localize_integrate(data).is_zero()


def test_high_power_depends_on_t():
    data = pn_fixed_point_data(1, lambda h, _w: h**2)
    with pytest.raises(ValueError):
        check_t_independence(localize_integrate(data))


def test_weights_do_not_matter():
    data = pn_fixed_point_data(2, lambda h, _w: h**2, weights=[3, -1, 7])
    assert check_t_independence(localize_integrate(data)) == 1


@given(st.integers(0, 10**9))
def test_inverse_is_two_sided(seed):
    rng = random.Random(seed)
    ring = projective_space(rng.randint(1, 3))
    h = LaurentT.constant(ring.gen("h"))
    k = rng.randint(-2, 3)
    c = LaurentT.t(ring, k, rng.choice([-3, -1, 2, 5])) + h * rng.randint(-4, 4) + h * h * LaurentT.t(ring, k - 1, rng.randint(-4, 4))
    inv = invert_ctop(c)
    one = LaurentT.constant(1, ring)
    assert c * inv == one
    assert inv * c == one


def test_non_invertible_is_rejected():
    ring = projective_space(2)
    h = LaurentT.constant(ring.gen("h"))
    with pytest.raises(ValueError):
        invert_ctop(h)
    with pytest.raises(ValueError):
        invert_ctop(LaurentT.t(ring, 1) + LaurentT.t(ring, 2))
    with pytest.raises(ValueError):
        FixedComponentData(ring, h, h)


@given(st.integers(0, 10**9))
def test_localization_is_linear(seed):
    rng = random.Random(seed)
    a, b = rng.randint(-5, 5), rng.randint(-5, 5)
    da = pn_fixed_point_data(2, lambda h, _w: h**2 * a)
    db = pn_fixed_point_data(2, lambda h, _w: h**2 * b)
    dab = pn_fixed_point_data(2, lambda h, _w: h**2 * (a + b))
    assert localize_integrate(dab) == localize_integrate(da) + localize_integrate(db)


def test_p2_with_a_fixed_line():
    # torus weights (0, 0, 1): a fixed line {z2 = 0} and a fixed point
    line = projective_space(1, name="u")
    u = LaurentT.constant(line.gen("u"))
    t_line = LaurentT.t(line)
    pt = point_ring()
    t_pt = LaurentT.t(pt)
    # h restricts to u on the line and to -t at the point; normal weights t + u and -t, -t
    for k, expected in [(2, 1), (1, 0), (0, 0)]:
        comps = [
            FixedComponentData(line, u**k, t_line + u),
            FixedComponentData(pt, (-t_pt) ** k, t_pt * t_pt),
        ]
        assert check_t_independence(localize_integrate(comps)) == expected


def test_parse_laurent_t():
    ring = projective_space(2)
    c = parse_laurent_t("t^2 - 3*h*t + h^2", ring)
    assert c.coefficient(2) == ring.one()
    assert c.coefficient(1) == ring.gen("h") * -3
    assert str(parse_laurent_t("-1/2*t^-1", point_ring())) == "-1/2*t^-1"
