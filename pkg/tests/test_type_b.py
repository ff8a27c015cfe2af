import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from affine_moduli import type_b as tb
from affine_moduli.errors import InvalidGaugeError, MembershipError
from affine_moduli.sampling import make_rng, random_gauge, sample_type_b
from affine_moduli.tensor_core import ricci_oracle

coef = st.floats(-2, 2, allow_nan=False)
sym6 = st.lists(coef, min_size=6, max_size=6).map(np.array)
bs = st.floats(-3, 3)
cs = st.floats(0.2, 3)
seeds = st.integers(0, 2**31)


def _transform(T, F):
    if T.ndim == 1:
        return F @ T
    if T.ndim == 2:
        return F @ T @ F.T
    return np.einsum("ia,jb,kc,abc->ijk", F, F, F, T)


@given(sym6)
def test_ricci_decomposition_matches_oracle(v):
    r = tb.ricci_b_matrix(v)
    t = tb.invariant_tensors_b(v)
    np.testing.assert_allclose(r, t.rho1 + t.rho2 - t.rho3, atol=1e-12)
    np.testing.assert_allclose(r, tb.ricci_b_oracle_matrix(v), atol=1e-12 * max(1, np.abs(r).max()))
    np.testing.assert_allclose(r, ricci_oracle(v, "B").matrix, atol=1e-12 * max(1, np.abs(r).max()))


@given(sym6, bs, st.floats(-3, 3))
def test_formulas_match_tensor_pullback(v, b, c):
    assume(abs(c) > 0.1)
    np.testing.assert_allclose(tb.pullback_b_formulas(v, b, c), tb.pullback_b(v, (b, c)).as_vector(),
                               atol=1e-10 * (1 + abs(b)) ** 3 * (1 + abs(c) + 1 / abs(c)) ** 3)


@given(sym6, seeds)
def test_gauge_composition_is_an_action(v, seed):
    rng = make_rng(seed)
    g1, g2 = random_gauge(rng), random_gauge(rng)
    lhs = tb.pullback_b(tb.pullback_b(v, g1), g2).as_vector()
    rhs = tb.pullback_b(v, g1.compose(g2)).as_vector()
    np.testing.assert_allclose(lhs, rhs, atol=1e-10 * max(1, np.abs(lhs).max()))


@given(sym6, seeds)
def test_invariant_tensors_transform_as_tensors(v, seed):
    g = random_gauge(make_rng(seed))
    t0 = tb.invariant_tensors_b(v)
    t1 = tb.invariant_tensors_b(tb.pullback_b(v, g))
    F = g.frame()
    for name in ("rho0", "rho1", "rho2", "rho3", "rho4"):
        exp = _transform(getattr(t0, name), F)
        np.testing.assert_allclose(getattr(t1, name), exp, atol=1e-9 * max(1, np.abs(exp).max()))


@given(st.sampled_from([1, -1]), bs, cs)
def test_k_family_is_flat(sign, b, c):
    v = tb.k_pm(sign, b, c).as_vector()
    assert np.abs(tb.ricci_b_matrix(v)).max() <= 1e-12 * max(1, np.abs(v).max()) ** 2
    assert tb.membership_b(v) == "Flat"
    P = tb.P_PLUS if sign > 0 else tb.P_MINUS
    np.testing.assert_allclose(tb.pullback_b(P, (b, c)).as_vector(), v, atol=1e-12 * (1 + b * b) * 10)


def test_membership_examples():
    assert tb.membership_b(tb.P_PLUS) == "Flat"
    assert tb.membership_b(np.zeros(6)) == "Flat"
    assert tb.membership_b([1.0, 2.0, 0.0, 3.0, 0.0, 0.0]) == "KappaFour"
    assert tb.membership_b([0.0, 0.0, 1.0, 0.0, 0.0, -1.0]) == "Z23B"
    with pytest.raises(MembershipError):
        tb.chart_assign(tb.P_PLUS)


def test_gauge_validation():
    with pytest.raises(InvalidGaugeError):
        tb.GaugeTransform(1.0, 0.0)
    g = tb.GaugeTransform.from_effective(0.5, -2.0)
    assert g.flip and g.effective == (0.5, -2.0) and not g.orientation_preserving


def test_chart_examples():
    ca = tb.chart_assign([0.0, 0.0, 1.0, 0.0, 0.0, -1.0])
    assert ca.chart == "O3_plus"
    assert ca.gauge.effective == pytest.approx((0.0, 1.0))
    ca = tb.chart_assign([0.3, 0.7, 0.0, 0.2, -1.0, 0.0])
    assert ca.chart == "O1_plus"


@given(seeds)
def test_chart_is_gauge_invariant_and_normalized(seed):
    rng = make_rng(seed)
    (v,) = sample_type_b(rng, 1)
    ca = tb.chart_assign(v)
    w = tb.pullback_b(v, ca.gauge).as_vector()
    assert tb.chart_normalization_residual(ca.chart, w) <= 1e-9 * max(1, np.abs(w).max())
    np.testing.assert_allclose(tb.chart_symbol(ca.chart, ca.z).as_vector(), w,
                               atol=1e-9 * max(1, np.abs(w).max()))
    h = tb.pullback_b(v, random_gauge(rng, allow_negative=False))
    cb = tb.chart_assign(h)
    assert cb.chart == ca.chart
    np.testing.assert_allclose(cb.z, ca.z, rtol=1e-7, atol=1e-7)


@given(seeds)
def test_equivalence_solver(seed):
    rng = make_rng(seed)
    v, u = sample_type_b(rng, 2)
    g = random_gauge(rng)
    w = tb.pullback_b(v, g).as_vector()
    found = tb.equivalent_b(v, w)
    assert found is not None
    np.testing.assert_allclose(tb.pullback_b(v, found).as_vector(), w, atol=1e-8 * max(1, np.abs(w).max()))
    assume(np.linalg.norm(tb.invariant_tensors_b(u).rho0 - tb.invariant_tensors_b(v).rho0) > 1e-3
           or np.linalg.norm(u - v) > 1e-3)
    if tb.chart_assign(u).z != pytest.approx(tb.chart_assign(v).z, abs=1e-6):
        assert tb.equivalent_b(v, u) is None


def test_orbit_pair_gauge_one_two():
    v = np.array([0.3, -0.4, 0.7, 0.1, 0.9, -0.2])
    w = tb.pullback_b(v, (1.0, 2.0)).as_vector()
    g = tb.equivalent_b(v, w, oriented=True)
    assert g.effective == pytest.approx((1.0, 2.0))


@given(seeds)
def test_amphichirality_agrees_with_criterion(seed):
    rng = make_rng(seed)
    (v,) = sample_type_b(rng, 1)
    assert tb.amphichiral_b(v) == tb.amphichiral_criterion(v)
    # amphichiral family: C11^1 = C12^2 = +-C22^1, others zero, translated
    k = rng.uniform(0.3, 2) * rng.choice([-1, 1])
    s = rng.choice([-1, 1])
    base = np.array([k, 0.0, 0.0, k, s * k, 0.0])
    if tb.membership_b(base) == "Z23B":
        w = tb.pullback_b(base, random_gauge(rng)).as_vector()
        assert tb.amphichiral_b(w) and tb.amphichiral_criterion(w)


def test_report_fields():
    r = tb.report_b([0.3, -0.4, 0.7, 0.1, 0.9, -0.2])
    assert r.membership == "Z23B" and r.kappa == "two_or_three"
    assert r.iso_plus == 1 and r.iso_full in (1, 2)
    r = tb.report_b(tb.P_MINUS)
    assert r.membership == "Flat" and r.chart is None
