import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicritical.coords import (
    CoordParams,
    big_g,
    extrema_locations,
    g_bound_constants,
    g_r,
    grand_coords,
    grand_inverse_bookkept,
    level_maps,
    symmetry_center,
    y_level,
    y_level_mp,
    y_rs,
    y_rs_inverse_im,
    y_rs_mp,
)
from bicritical.errors import DomainError

from conftest import GOLDEN, SILVER, expand

params = st.builds(
    lambda r, f: CoordParams(r, min(0.5, f * 0.5)),
    st.floats(0.003, 0.5),
    st.floats(0.0, 1.0),
)


def test_normalised_at_zero():
    for r, s in [(0.3, 0.0), (0.1, 0.05), (0.01, 0.5)]:
        re, im = y_rs(CoordParams(r, s), 0.0, 0.0)
        assert re == 0.0 and abs(im) < 1e-15


@settings(max_examples=60, deadline=None)
@given(params, st.floats(-50, 50), st.floats(-1, 30))
def test_f1_translation(p, x, y):
    a = np.array(y_rs(p, x, y))
    b = np.array(y_rs(p, x + 1 / p.r, y))
    assert np.allclose(b - a, [1.0, 0.0], atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(params, st.floats(-1, 30))
def test_f2_seam(p, t):
    a = np.array(y_rs(p, 0.0, t))
    b = np.array(y_rs(p, 1 / p.r - 1, t))
    assert np.allclose(b - a, [1 - p.r, 0.0], atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(params, st.floats(-1, 30))
def test_f3_on_critical_lines(p, t):
    a = np.array(y_rs(p, 0.0, t))
    b = np.array(y_rs(p, p.s / p.r, t))
    assert np.allclose(b - [p.s, 0.0], a, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(params, st.floats(-20, 20), st.floats(-1, 30))
def test_reflection_about_symmetry_center(p, d, y):
    c = symmetry_center(p)
    assert y_rs(p, c + d, y)[1] == pytest.approx(y_rs(p, c - d, y)[1], abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(params, st.floats(0, 1), st.floats(-1, 20), st.floats(-1, 1), st.floats(-1, 1))
def test_contraction(p, u, y, dx, dy):
    x1 = u / p.r
    y2 = max(-1.0, y + dy)
    a = np.array(y_rs(p, x1, y))
    b = np.array(y_rs(p, x1 + dx, y2))
    assert np.hypot(*(a - b)) <= 0.9 * math.hypot(dx, y2 - y) + 1e-9


def test_re_is_linear():
    p = CoordParams(0.1, 0.03)
    x = np.linspace(-20, 20, 101)
    re, _ = y_rs(p, x, np.full_like(x, 2.0))
    assert np.allclose(re, p.r * x, atol=1e-12)


def test_domain_checks():
    with pytest.raises(DomainError):
        CoordParams(0.6, 0.1)
    with pytest.raises(DomainError):
        y_rs(CoordParams(0.3, 0.1), 0.0, -1.5)


def test_image_in_upper_half():
    p = CoordParams(0.2, 0.1)
    x = np.linspace(0, 5, 200)
    _, im = y_rs(p, x, np.full_like(x, -1.0))
    assert np.all(im > -1)


@pytest.mark.parametrize("r,s", [(0.3, 0.1), (0.02, 0.01), (0.1, 0.5)])
def test_inverse_round_trip(r, s):
    p = CoordParams(r, s)
    x = np.linspace(0, 1 / r, 37)
    y = np.linspace(0, 8, 37)
    _, im = y_rs(p, x, y)
    assert np.allclose(y_rs_inverse_im(p, x, im), y, atol=1e-9)


def test_mp_path_agrees_with_float():
    p = CoordParams(0.07, 0.03)
    for x, y in [(0.0, 0.0), (3.3, 1.2), (-7.1, 0.4)]:
        with mpmath.workprec(120):
            re, im = y_rs_mp(p.r, p.s, x, y)
        fre, fim = y_rs(p, x, y)
        assert float(re) == pytest.approx(float(fre), abs=1e-12)
        assert float(im) == pytest.approx(float(fim), abs=1e-11)


def test_g_r_periodic_and_g_real_part():
    r = 0.2
    assert g_r(r, 1.3, 0.4) == pytest.approx(g_r(r, 1.3 + 1 / r, 0.4))
    re, _ = big_g(CoordParams(r, 0.1), 2.0, 0.5)
    assert re == pytest.approx(0.4)
    c, d = g_bound_constants(0.25, 0.0)
    assert c == 2.0 and d == 2.0


def test_max_location_beats_minima():
    p = CoordParams(0.1, 0.05)
    _, _, (hmax, hmin0, hmin1) = extrema_locations(p, 3.0)
    assert hmax > hmin0 and hmax > hmin1


@pytest.mark.parametrize("alpha,beta", [(GOLDEN, "1/4"), (SILVER, "3/10")])
def test_level_map_real_part(alpha, beta):
    s = expand(alpha, beta, 8)
    x = np.linspace(0, 2, 11)
    for lm in level_maps(s)[:5]:
        re, _ = y_level(lm, x, np.ones_like(x))
        assert np.allclose(re, -lm.eps * lm.r * x, atol=1e-12)
        assert abs(y_level(lm, 0.0, 0.0)[1]) < 1e-12


def test_level_map_mp_agrees(golden_quarter):
    lm = level_maps(golden_quarter)[2]
    with mpmath.workprec(100):
        re, im = y_level_mp(lm, 1.7, 0.3)
    fre, fim = y_level(lm, 1.7, 0.3)
    assert float(re) == pytest.approx(float(fre), abs=1e-12)
    assert float(im) == pytest.approx(float(fim), abs=1e-11)


def test_grand_coords_round_trip(golden_quarter):
    s = golden_quarter
    x = np.array([0.2, 0.5, 0.8])
    y = np.array([0.5, 1.0, 2.0])
    u, v = grand_coords(s, -1, 4, x, y, "inverse")
    back = grand_coords(s, -1, 4, u, v)
    assert np.allclose(back, [x, y], atol=1e-8)
    u2, v2 = grand_inverse_bookkept(s, -1, 4, x, y)
    assert np.allclose(grand_coords(s, -1, 4, u2, v2), [x, y], atol=1e-8)


def test_grand_coords_contract(golden_quarter):
    s = golden_quarter
    a = np.array(grand_coords(s, -1, 5, np.array([0.3]), np.array([1.0])))
    b = np.array(grand_coords(s, -1, 5, np.array([0.35]), np.array([1.1])))
    assert np.hypot(*(a - b).ravel()) <= 0.9 ** 5 * math.hypot(0.05, 0.1)
