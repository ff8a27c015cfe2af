import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from affine_moduli import region_geometry as rg
from affine_moduli import type_a as ta
from affine_moduli.errors import DomainError
from affine_moduli.tensor_core import invariants_batch

tpos = st.floats(0.05, 20, allow_nan=False)
xs = st.floats(0.05, 3.0)
ys = st.floats(0.0, 5.0)


def test_pinned_curve_points():
    assert rg.sigma_plus(1.0) == (7.0, 10.0)
    np.testing.assert_allclose(rg.sigma_minus(rg.T_CUSP), rg.CUSP, atol=1e-14)
    with pytest.raises(DomainError):
        rg.sigma_plus(0.0)


@given(tpos)
def test_sigma_curves_lie_on_cubic(t):
    for curve in (rg.sigma_plus, rg.sigma_minus):
        p, P = curve(t)
        scale = (1 + abs(p) + abs(P)) ** 3
        assert abs(rg.boundary_cubic(p, P)) <= 1e-12 * scale


@given(tpos)
def test_sigma_plus_is_image_of_boundary_normal_form(t):
    p, P = invariants_batch(ta.gamma_plus(t, 0.0).as_vector())
    np.testing.assert_allclose((p, P), rg.sigma_plus(t), rtol=1e-12)


@given(tpos)
def test_invert_sigma_recovers_parameter(t):
    for sign, curve in ((1, rg.sigma_plus), (-1, rg.sigma_minus)):
        p, P = curve(t)
        cands = rg.invert_sigma(sign, p, P)
        assert min(abs(c - t) for c in cands) <= 1e-6 * (1 + t)


@given(tpos)
def test_curve_points_classified_on_boundary(t):
    tag = rg.region_classify(*rg.sigma_plus(t))
    assert tag.position == "on_sigma_plus" and tag.in_closure("C_zero")
    p, P = rg.sigma_minus(t)
    tag = rg.region_classify(p, P)
    assert tag.position in ("on_sigma_minus", "cusp")


def test_region_interiors():
    assert rg.region_classify(20.0, 10.0).which == "C_plus"
    assert rg.region_classify(-20.0, 10.0).which == "C_minus"
    assert rg.region_classify(0.0, 0.0).which == "C_zero"
    assert rg.region_classify(-2.0, 1.0).position == "cusp"
    assert rg.region_classify(6.0, 5.0).position == "on_sigma_plus"


@given(xs, ys)
def test_theta_closed_form_matches_symbols(x, y):
    for sign in (1, -1):
        p, P = invariants_batch(ta.gamma_def(sign, x, y).as_vector())
        cp, cP = rg.theta_definite(sign, x, y)
        assert p == pytest.approx(float(cp), rel=1e-9, abs=1e-9)
        assert P == pytest.approx(float(cP), rel=1e-9, abs=1e-9)


@given(st.floats(0.2, 2.5), st.floats(0.05, 4.0))
def test_jacobian_matches_finite_differences(x, y):
    h = 1e-6
    for sign in (1, -1):
        f = lambda a, b: np.array(rg.theta_definite(sign, a, b), dtype=float)
        J = np.column_stack([(f(x + h, y) - f(x - h, y)) / (2 * h),
                             (f(x, y + h) - f(x, y - h)) / (2 * h)])
        fd = np.linalg.det(J)
        assert rg.jacobian_det(sign, x, y) == pytest.approx(fd, rel=1e-4, abs=1e-4 * np.abs(J).max() ** 2)


@given(st.floats(0.1, 0.99))
def test_jacobi_locus_forms_agree_and_vanish(x):
    for sign in (1, -1):
        Y = rg.jacobi_locus_y(sign, x)
        assert Y == pytest.approx(float(rg.jacobi_locus_y_factored(sign, x)), rel=1e-10)
        J = rg.jacobian_det(sign, x, Y)
        assert abs(J) <= 1e-7 * (1 + abs(rg.jacobian_det(sign, x, Y + 0.5)))


def test_jacobi_plus_touches_axis_at_one():
    assert rg.jacobi_locus_y(+1, 1.0) == 0.0
    assert rg.jacobi_locus_y(+1, 1.2) is None
    assert rg.jacobi_locus_y_factored(-1, 1 / np.sqrt(2)) == pytest.approx(0.0, abs=1e-15)


@given(st.floats(0.2, 2.5), st.floats(0.0, 4.0))
def test_u_roots_solve_quadratic(x, y):
    for sign in (1, -1):
        for u in rg.u_pm(sign, x, y):
            if u is None:
                continue
            a = (x * x - 1) if sign > 0 else (1 + x * x)
            assert abs(a * u * u + x * y * u - x * x) <= 1e-9 * (1 + u * u) * (1 + x * x + x * y)


def test_u_plus_absent_in_zone_one():
    assert rg.u_pm(+1, 0.5, 0.5) == (None, None)
    assert rg.zone_plus(0.5, 0.5) == 1


def test_zone_labels():
    assert rg.zone_plus(0.5, 1.8) == 2
    assert rg.zone_plus(0.5, 10.0) == 3
    assert rg.zone_plus(1.5, 1.0) == 4
    assert rg.zone_plus(1.0, 1.0) == 0
    assert rg.zone_minus(0.3, 0.2) == 1
    assert rg.zone_minus(0.3, 50.0) == 2
    assert rg.zone_minus(0.9, 0.1) == 3


def test_fundamental_domain_membership():
    assert rg.in_fundamental_domain(+1, 0.1, 2.2)
    assert not rg.in_fundamental_domain(+1, 1.5, 1.0)
    assert rg.in_fundamental_domain(-1, rg.T_CUSP, 0.0)
    assert not rg.in_fundamental_domain(-1, 0.8, 0.0)


def test_region_codes_vectorized():
    p = np.array([20.0, -20.0, 0.0, 7.0, -2.0])
    P = np.array([10.0, 10.0, 0.0, 10.0, 1.0])
    np.testing.assert_array_equal(rg.region_codes(p, P), [2, 0, 1, 3, 5])
